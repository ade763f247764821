#include "aoisched/tga.hpp"

#include "aoisched/errors.hpp"
#include "aoisched/schedulers.hpp"
#include "aoisched/verify.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace aoisched {

namespace {

void check_limits(const SearchLimits& limits) {
    if (limits.deadline && std::chrono::steady_clock::now() > *limits.deadline)
        throw BudgetExceeded("grouping search exceeded its time budget");
}

// Sources not yet claimed by HSI, bucketed by distinct deadline value.
class SourcePool {
public:
    explicit SourcePool(const AoiConstraints& d) {
        SourceIndex next = 0;
        for (const auto& [value, count] : d.summary()) {
            values_.push_back(value);
            auto& bucket = buckets_.emplace_back();
            for (std::int64_t c = 0; c < count; ++c) bucket.push_back(next++);
        }
    }

    [[nodiscard]] std::size_t num_values() const { return values_.size(); }
    [[nodiscard]] std::int64_t value(std::size_t j) const { return values_[j]; }
    [[nodiscard]] std::int64_t count(std::size_t j) const { return static_cast<std::int64_t>(buckets_[j].size() - taken_[j]); }

    // Whole bundles available to a family with base `base` drawing on value j:
    // floor(o_j * base / u_j), each bundle being u_j / base sources.
    [[nodiscard]] std::int64_t bundles(std::size_t j, std::int64_t base) const {
        return count(j) / (values_[j] / base);
    }

    // Removes the lowest-indexed `n` remaining sources of value j.
    std::vector<SourceIndex> take(std::size_t j, std::int64_t n) {
        auto first = buckets_[j].begin() + static_cast<std::ptrdiff_t>(taken_[j]);
        std::vector<SourceIndex> out(first, first + n);
        taken_[j] += static_cast<std::size_t>(n);
        return out;
    }

    [[nodiscard]] std::vector<std::int64_t> remaining_values() const {
        std::vector<std::int64_t> out;
        for (std::size_t j = 0; j < values_.size(); ++j)
            if (count(j) > 0) out.push_back(values_[j]);
        return out;
    }

    [[nodiscard]] std::vector<SourceIndex> remaining_sources() const {
        std::vector<SourceIndex> out;
        for (std::size_t j = 0; j < values_.size(); ++j)
            out.insert(out.end(), buckets_[j].begin() + static_cast<std::ptrdiff_t>(taken_[j]), buckets_[j].end());
        std::sort(out.begin(), out.end());
        return out;
    }

    void init_taken() { taken_.assign(values_.size(), 0); }

private:
    std::vector<std::int64_t> values_;
    std::vector<std::vector<SourceIndex>> buckets_;
    std::vector<std::size_t> taken_;
};

// Value indices usable by a family with base value(i): multiples of the base,
// minus multiples of `exclude` when non-zero.
std::vector<std::size_t> family_values(const SourcePool& pool, std::int64_t base, std::int64_t exclude) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < pool.num_values(); ++j) {
        const std::int64_t u = pool.value(j);
        if (u % base != 0) continue;
        if (exclude != 0 && u % exclude == 0) continue;
        out.push_back(j);
    }
    return out;
}

std::int64_t total_bundles(const SourcePool& pool, std::int64_t base, const std::vector<std::size_t>& f) {
    std::int64_t total = 0;
    for (std::size_t j : f) total += pool.bundles(j, base);
    return total;
}

// Removes the first `wanted` bundles (ascending deadline) from the pool.
detail::HarmonicFamily take_bundles(SourcePool& pool, std::int64_t base, const std::vector<std::size_t>& f,
                                    std::int64_t wanted) {
    detail::HarmonicFamily family;
    family.base = base;
    for (std::size_t j : f) {
        if (wanted == 0) break;
        const std::int64_t n = std::min(wanted, pool.bundles(j, base));
        const std::int64_t ratio = pool.value(j) / base;
        for (SourceIndex s : pool.take(j, n * ratio)) {
            family.sources.push_back(s);
            family.deadlines.push_back(pool.value(j));
        }
        wanted -= n;
    }
    if (wanted != 0) throw InternalError("hsi: requested more bundles than available");
    return family;
}

} // namespace

HsiResult hsi(const AoiConstraints& d, HsiPasses passes) {
    HsiResult result;
    if (d.empty()) return result;
    SourcePool pool(d);
    pool.init_taken();
    ScheduleBuilder builder;

    auto record = [&](int pass, std::int64_t base, std::int64_t pair_base, std::vector<SourceIndex> sources,
                      std::int64_t channels) {
        result.harmonic_sources.insert(result.harmonic_sources.end(), sources.begin(), sources.end());
        result.components.push_back({pass, base, pair_base, std::move(sources), channels});
        result.channels_used += channels;
    };

    // First pass: for each base value, the longest bundle prefix whose load is
    // a whole number of channels.
    for (std::size_t i = 0; i < pool.num_values(); ++i) {
        const std::int64_t base = pool.value(i);
        const auto f = family_values(pool, base, 0);
        const std::int64_t channels = total_bundles(pool, base, f) / base;
        if (channels == 0) continue;
        auto family = take_bundles(pool, base, f, channels * base);
        const ChannelIndex used = detail::schedule_family(family, builder);
        if (used != channels) throw InternalError("hsi: harmonic family used an unexpected channel count");
        record(1, base, 0, family.sources, channels);
    }
    result.values_after_first_pass = pool.remaining_values();

    // Second pass: pairs (u_i, u_j), u_i < u_j, sharing a factor with u_j not
    // a multiple of u_i, combined by STV when their loads add to an integer.
    if (passes == HsiPasses::both) {
        for (std::size_t i = 0; i < pool.num_values(); ++i) {
            const std::int64_t ui = pool.value(i);
            for (std::size_t j = i + 1; j < pool.num_values(); ++j) {
                const std::int64_t uj = pool.value(j);
                if (std::gcd(ui, uj) <= 1 || uj % ui == 0) continue;
                const auto fi = family_values(pool, ui, 0);
                const auto fj = family_values(pool, uj, ui);
                const std::int64_t si = total_bundles(pool, ui, fi);
                const std::int64_t sj = total_bundles(pool, uj, fj);
                if (si == 0 || sj == 0) continue;
                const std::int64_t b = (Rational(si, ui) + Rational(sj, uj)).floor();
                if (b < 1) continue;
                // Largest si' <= si with sj' = (b*ui*uj - uj*si') / ui a positive integer.
                std::int64_t si_taken = 0;
                std::int64_t sj_taken = 0;
                for (std::int64_t cand = si; cand >= 1; --cand) {
                    const std::int64_t num = b * ui * uj - uj * cand;
                    if (num > 0 && num % ui == 0) {
                        si_taken = cand;
                        sj_taken = num / ui;
                        break;
                    }
                }
                if (si_taken == 0 || sj_taken > sj) continue;
                auto family_i = take_bundles(pool, ui, fi, si_taken);
                auto family_j = take_bundles(pool, uj, fj, sj_taken);
                const ChannelIndex used = detail::schedule_family_pair(family_i, family_j, builder);
                if (used != b) throw InternalError("hsi: harmonic pair used an unexpected channel count");
                std::vector<SourceIndex> sources = family_i.sources;
                sources.insert(sources.end(), family_j.sources.begin(), family_j.sources.end());
                record(2, ui, uj, std::move(sources), b);
            }
        }
    }
    result.values_after_second_pass = pool.remaining_values();

    std::sort(result.harmonic_sources.begin(), result.harmonic_sources.end());
    result.remainder = pool.remaining_sources();
    result.schedule = builder.build();
    if (result.schedule.num_channels() != result.channels_used)
        throw InternalError("hsi: schedule channel count differs from the harmonic load");
    if (!result.harmonic_sources.empty()) {
        const auto sub = AoiConstraints::subset(d, result.harmonic_sources);
        // The builder indexed sources by their position in d; verify through
        // a remapped copy indexed like `sub`.
        std::vector<SourceIndex> to_sub(d.size(), CyclicSchedule::kIdle);
        for (std::size_t k = 0; k < result.harmonic_sources.size(); ++k)
            to_sub[static_cast<std::size_t>(result.harmonic_sources[k])] = static_cast<SourceIndex>(k);
        CyclicSchedule local;
        local.append(result.schedule, to_sub);
        detail::require_feasible(local, sub, "hsi");
        Rational load;
        for (SourceIndex s : result.harmonic_sources) load += Rational(1, d.deadline(s));
        if (load != Rational(result.channels_used)) throw InternalError("hsi: channels not fully utilised");
    }
    return result;
}

Rational distance(std::int64_t center_deadline, std::int64_t deadline) {
    if (center_deadline < 1 || deadline < 1) throw InvalidInput("distance: deadlines must be positive");
    const std::int64_t c = center_deadline;
    if (deadline >= c) return Rational(1, (deadline / c) * c) - Rational(1, deadline);
    const std::int64_t q = (c + deadline - 1) / deadline;
    return Rational(q, c) - Rational(1, deadline);
}

CyclicSchedule GroupingScheme::combined_schedule() const {
    CyclicSchedule out;
    for (const auto& g : groups) out.append(g.sub_schedule, g.members);
    return out;
}

namespace {

Rational unused_of(const Rational& load) {
    return Rational(load.ceil()) - load;
}

class ChainCache {
public:
    explicit ChainCache(const AoiConstraints& d) : d_(d) {}

    const ChainSolution& solve(const std::vector<SourceIndex>& members) {
        std::vector<std::int64_t> key;
        for (SourceIndex s : members) {
            const std::int64_t v = d_.deadline(s);
            if (key.size() >= 2 && key[key.size() - 2] == v)
                ++key.back();
            else {
                key.push_back(v);
                key.push_back(1);
            }
        }
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        return cache_.emplace(std::move(key), solve_chain(AoiConstraints::subset(d_, members))).first->second;
    }

private:
    const AoiConstraints& d_;
    std::map<std::vector<std::int64_t>, ChainSolution> cache_;
};

struct Candidate {
    std::vector<std::vector<SourceIndex>> members;
    std::vector<std::int64_t> centers;
    std::int64_t channels = 0;
};

// Nearest-center assignment followed by the unused-part rearrangement.
// Groups are indexed like `centers` (ascending deadline).
std::vector<std::vector<SourceIndex>> assign_groups(const AoiConstraints& d, const std::vector<std::int64_t>& centers,
                                                    const Rational& gamma) {
    const std::size_t g_count = centers.size();
    const std::size_t n = d.size();
    std::vector<std::size_t> group_of(n);
    std::vector<std::vector<Rational>> dist(g_count);
    for (std::size_t g = 0; g < g_count; ++g) {
        dist[g].resize(d.num_distinct());
        for (std::size_t j = 0; j < d.num_distinct(); ++j) dist[g][j] = distance(centers[g], d.summary()[j].value);
    }
    std::vector<std::size_t> value_of(n);
    {
        std::size_t j = 0;
        for (std::size_t s = 0; s < n; ++s) {
            while (d.summary()[j].value != d.deadline(static_cast<SourceIndex>(s))) ++j;
            value_of[s] = j;
        }
    }
    auto rate = [&](std::size_t g, std::size_t s) {
        return dist[g][value_of[s]] + Rational(1, d.deadline(static_cast<SourceIndex>(s)));
    };

    std::vector<std::vector<SourceIndex>> members(g_count);
    std::vector<Rational> load(g_count);
    for (std::size_t s = 0; s < n; ++s) {
        std::size_t best = 0;
        for (std::size_t g = 1; g < g_count; ++g)
            if (dist[g][value_of[s]] < dist[best][value_of[s]]) best = g;
        group_of[s] = best;
        members[best].push_back(static_cast<SourceIndex>(s));
        load[best] += rate(best, s);
    }

    std::vector<std::size_t> wasteful;
    for (std::size_t g = 0; g < g_count; ++g)
        if (unused_of(load[g]) > gamma) wasteful.push_back(g);

    for (std::size_t g : wasteful) {
        std::vector<SourceIndex> order = members[g];
        std::vector<Rational> r(order.size());
        for (std::size_t k = 0; k < order.size(); ++k) r[k] = rate(g, static_cast<std::size_t>(order[k]));
        std::vector<std::size_t> idx(order.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return r[x] > r[y]; });
        const Rational total = load[g];
        const Rational cap(total.floor());
        Rational prefix;
        std::size_t keep = 0;
        while (keep < idx.size() && prefix + r[idx[keep]] <= cap) prefix += r[idx[keep++]];
        if (keep == idx.size()) continue;

        std::vector<SourceIndex> kept;
        for (std::size_t k = 0; k < keep; ++k) kept.push_back(order[idx[k]]);
        std::sort(kept.begin(), kept.end());
        members[g] = kept;
        load[g] = prefix;

        for (std::size_t k = keep; k < idx.size(); ++k) {
            const auto s = static_cast<std::size_t>(order[idx[k]]);
            std::optional<std::size_t> target;
            for (std::size_t h = 0; h < g_count; ++h) {
                if (h == g) continue;
                if (rate(h, s) > unused_of(load[h])) continue;
                if (!target || dist[h][value_of[s]] < dist[*target][value_of[s]]) target = h;
            }
            const std::size_t dest = target.value_or(0);
            auto& dm = members[dest];
            dm.insert(std::upper_bound(dm.begin(), dm.end(), static_cast<SourceIndex>(s)), static_cast<SourceIndex>(s));
            load[dest] += rate(dest, s);
        }
    }
    return members;
}

// Visits all size-k subsets of [0, n) in lexicographic order until `visit`
// returns false. Returns false if stopped early.
template <typename Visit>
bool for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
    if (k > n) return true;
    std::vector<std::size_t> pick(k);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    while (true) {
        if (!visit(pick)) return false;
        std::size_t pos = k;
        while (pos > 0 && pick[pos - 1] == n - k + pos - 1) --pos;
        if (pos == 0) return true;
        ++pick[pos - 1];
        for (std::size_t q = pos; q < k; ++q) pick[q] = pick[q - 1] + 1;
    }
}

} // namespace

GroupingScheme hga(const AoiConstraints& d, const Rational& gamma, const SearchLimits& limits) {
    if (d.empty()) throw InvalidInput("hga: empty constraint set");
    if (gamma < Rational(0) || gamma >= Rational(1)) throw InvalidInput("hga: gamma must lie in [0, 1)");
    check_limits(limits);

    const std::int64_t lb = lower_bound(d);
    ChainCache cache(d);
    std::vector<SourceIndex> everyone(d.size());
    std::iota(everyone.begin(), everyone.end(), SourceIndex{0});
    const ChainSolution& whole = cache.solve(everyone);
    const std::int64_t k1 = whole.channels;

    Candidate best;
    best.members = {everyone};
    best.centers = {d.deadline(static_cast<SourceIndex>(whole.witness_index))};
    best.channels = k1;

    if (k1 > lb) {
        const std::size_t v = d.num_distinct();
        const std::size_t max_groups = std::min<std::size_t>(static_cast<std::size_t>(k1 - 1), v);
        bool done = false;
        for (std::size_t count = 2; count <= max_groups && !done; ++count) {
            for_each_subset(v, count, [&](const std::vector<std::size_t>& pick) {
                check_limits(limits);
                std::vector<std::int64_t> centers;
                for (std::size_t j : pick) centers.push_back(d.summary()[j].value);
                auto members = assign_groups(d, centers, gamma);

                std::vector<std::int64_t> group_bound(members.size());
                std::int64_t bound = 0;
                for (std::size_t g = 0; g < members.size(); ++g) {
                    Rational load;
                    for (SourceIndex s : members[g]) load += Rational(1, d.deadline(s));
                    group_bound[g] = load.ceil();
                    bound += group_bound[g];
                }
                if (bound > k1) return true;

                // Only a strictly better scheme can replace the best, so stop
                // solving once the solved groups plus the remaining bounds
                // reach it.
                std::int64_t channels = bound;
                for (std::size_t g = 0; g < members.size() && channels < best.channels; ++g)
                    if (!members[g].empty()) channels += cache.solve(members[g]).channels - group_bound[g];
                if (channels < best.channels) {
                    best.members = std::move(members);
                    best.centers = std::move(centers);
                    best.channels = channels;
                }
                if (best.channels == lb) {
                    done = true;
                    return false;
                }
                return true;
            });
        }
    }

    GroupingScheme scheme;
    for (std::size_t g = 0; g < best.members.size(); ++g) {
        if (best.members[g].empty()) continue;
        Group group;
        group.members = best.members[g];
        group.center_deadline = best.centers[g];
        group.chain = cache.solve(group.members);
        group.sub_schedule = schedule_from_chain(group.chain, AoiConstraints::subset(d, group.members));
        scheme.total_channels += group.chain.channels;
        scheme.groups.push_back(std::move(group));
    }
    if (scheme.total_channels != best.channels) throw InternalError("hga: channel total mismatch");
    return scheme;
}

TgaResult tga(const AoiConstraints& d, const Rational& gamma, const SearchLimits& limits) {
    if (d.empty()) throw InvalidInput("tga: empty constraint set");
    TgaResult result;
    result.harmonic = hsi(d, HsiPasses::both);
    const bool second_pass_found = std::any_of(result.harmonic.components.begin(), result.harmonic.components.end(),
                                               [](const HsiComponent& c) { return c.pass == 2; });
    if (second_pass_found && result.harmonic.values_after_first_pass == result.harmonic.values_after_second_pass) {
        result.harmonic = hsi(d, HsiPasses::first_only);
        result.second_pass_rolled_back = true;
    }
    result.grouped_sources = result.harmonic.remainder;

    result.schedule = result.harmonic.schedule;
    if (!result.grouped_sources.empty()) {
        const auto rest = AoiConstraints::subset(d, result.grouped_sources);
        result.grouping = hga(rest, gamma, limits);
        result.schedule.append(result.grouping.combined_schedule(), result.grouped_sources);
    }
    result.channels = result.harmonic.channels_used + result.grouping.total_channels;
    if (result.schedule.num_channels() != result.channels) throw InternalError("tga: channel count mismatch");
    detail::require_feasible(result.schedule, d, "tga");
    return result;
}

} // namespace aoisched
