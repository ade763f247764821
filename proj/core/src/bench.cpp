#include "aoisched/bench.hpp"

#include "aoisched/errors.hpp"
#include "aoisched/interval_optimizer.hpp"
#include "aoisched/oracle.hpp"
#include "aoisched/schedulers.hpp"
#include "aoisched/tga.hpp"
#include "aoisched/verify.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

namespace aoisched {

std::string to_string(Algorithm a) {
    switch (a) {
    case Algorithm::lb: return "lb";
    case Algorithm::gd: return "gd";
    case Algorithm::aion: return "aion";
    case Algorithm::tga: return "tga";
    case Algorithm::oracle: return "oracle";
    }
    return "?";
}

Algorithm parse_algorithm(const std::string& name) {
    for (Algorithm a : {Algorithm::lb, Algorithm::gd, Algorithm::aion, Algorithm::tga, Algorithm::oracle})
        if (to_string(a) == name) return a;
    throw InvalidInput("unknown algorithm \"" + name + "\" (expected lb, gd, aion, tga or oracle)");
}

void BenchmarkConfig::validate() const {
    if (d_min < 2 || d_max < d_min) throw InvalidInput("deadline bounds must satisfy 2 <= d_min <= d_max");
    if (instances < 1) throw InvalidInput("instances must be at least 1");
    if (n_values.empty()) throw InvalidInput("at least one source count is required");
    for (std::int64_t n : n_values)
        if (n < 1) throw InvalidInput("source counts must be positive");
    if (oracle_state_budget < 1) throw InvalidInput("state budget must be positive");
}

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::int64_t SplitMix64::uniform(std::int64_t lo, std::int64_t hi) {
    if (hi < lo) throw InvalidInput("uniform: empty range");
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return lo + static_cast<std::int64_t>(x % range);
}

std::uint64_t instance_seed(std::uint64_t master, std::int64_t n, std::int64_t idx) {
    SplitMix64 a(master);
    SplitMix64 b(a.next() ^ static_cast<std::uint64_t>(n));
    SplitMix64 c(b.next() ^ static_cast<std::uint64_t>(idx));
    return c.next();
}

AoiConstraints generate_instance(std::int64_t n, std::int64_t d_min, std::int64_t d_max, std::uint64_t seed) {
    if (n < 1) throw InvalidInput("generate_instance: n must be positive");
    if (d_min < 1 || d_max < d_min) throw InvalidInput("generate_instance: invalid deadline bounds");
    SplitMix64 rng(seed);
    std::vector<std::int64_t> d(static_cast<std::size_t>(n));
    for (auto& v : d) v = rng.uniform(d_min, d_max);
    return AoiConstraints(std::move(d));
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

void check(const CyclicSchedule& schedule, const AoiConstraints& d, const char* who, const BenchmarkRecord& r) {
    const auto report = verify(schedule, d);
    if (!report.feasible)
        throw InternalError(std::string(who) + " produced an infeasible schedule at n=" + std::to_string(r.n) +
                            " idx=" + std::to_string(r.idx) + " seed=" + std::to_string(r.seed));
}

bool wants(const BenchmarkConfig& cfg, Algorithm a) {
    return std::find(cfg.algorithms.begin(), cfg.algorithms.end(), a) != cfg.algorithms.end();
}

BenchmarkRecord run_instance(const BenchmarkConfig& cfg, std::int64_t n, std::int64_t idx) {
    BenchmarkRecord r;
    r.n = n;
    r.idx = idx;
    r.seed = instance_seed(cfg.seed, n, idx);
    const AoiConstraints d = generate_instance(n, cfg.d_min, cfg.d_max, r.seed);
    r.lb = lower_bound(d);

    if (wants(cfg, Algorithm::gd)) {
        const auto start = Clock::now();
        const auto s = gd(d);
        r.gd.millis = elapsed_ms(start);
        check(s, d, "gd", r);
        r.gd.ran = true;
        r.gd.channels = s.num_channels();
    }
    if (wants(cfg, Algorithm::aion)) {
        const auto start = Clock::now();
        const auto sol = solve_chain(d);
        const auto s = schedule_from_chain(sol);
        r.aion.millis = elapsed_ms(start);
        check(s, d, "aion", r);
        r.aion.ran = true;
        r.aion.channels = s.num_channels();
    }
    if (wants(cfg, Algorithm::tga)) {
        const SearchLimits limits = cfg.time_budget ? SearchLimits::within(*cfg.time_budget) : SearchLimits{};
        const auto start = Clock::now();
        r.tga.ran = true;
        try {
            const auto res = tga(d, cfg.gamma, limits);
            r.tga.millis = elapsed_ms(start);
            check(res.schedule, d, "tga", r);
            r.tga.channels = res.channels;
        } catch (const BudgetExceeded&) {
            r.tga.millis = elapsed_ms(start);
            r.tga.timed_out = true;
        }
    }
    if (wants(cfg, Algorithm::oracle)) {
        r.oracle.ran = true;
        const auto start = Clock::now();
        try {
            const OracleLimits limits{cfg.oracle_state_budget};
            r.oracle.channels = optimal_channels(d, limits);
            check(extract_witness(d, r.oracle.channels, limits), d, "oracle", r);
        } catch (const BudgetExceeded&) {
            r.oracle.timed_out = true;
        }
        r.oracle.millis = elapsed_ms(start);
    }

    auto done = [](const Measurement& m) { return m.ran && !m.timed_out; };
    const bool sane = (!done(r.gd) || r.gd.channels >= r.lb) && (!done(r.aion) || r.aion.channels >= r.lb) &&
                      (!done(r.tga) || r.tga.channels >= r.lb) &&
                      (!done(r.tga) || !done(r.aion) || r.tga.channels <= r.aion.channels) &&
                      (!done(r.oracle) || (r.oracle.channels >= r.lb &&
                                           (!done(r.tga) || r.oracle.channels <= r.tga.channels)));
    if (!sane)
        throw InternalError("channel counts out of order at n=" + std::to_string(n) + " idx=" + std::to_string(idx));
    return r;
}

std::string count_cell(const Measurement& m) {
    if (!m.ran) return "";
    if (m.timed_out) return "timeout";
    return std::to_string(m.channels);
}

std::string time_cell(const Measurement& m) {
    if (!m.ran) return "";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", m.millis);
    return buf;
}

std::string fixed(std::optional<double> v, int digits) {
    if (!v) return "-";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, *v);
    return buf;
}

} // namespace

std::vector<BenchmarkRecord> run_benchmark(const BenchmarkConfig& cfg,
                                           const std::function<void(const BenchmarkRecord&)>& on_record) {
    cfg.validate();
    std::vector<std::int64_t> sizes = cfg.n_values;
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());

    std::vector<BenchmarkRecord> records;
    for (std::int64_t n : sizes) {
        for (std::int64_t idx = 0; idx < cfg.instances; ++idx) {
            records.push_back(run_instance(cfg, n, idx));
            if (on_record) on_record(records.back());
        }
    }
    return records;
}

std::string csv_header() {
    return "n,idx,seed,lb,gd,aion,tga,oracle,t_gd_ms,t_aion_ms,t_tga_ms";
}

std::string csv_row(const BenchmarkRecord& r) {
    std::ostringstream out;
    out << r.n << ',' << r.idx << ',' << r.seed << ',' << r.lb << ',' << count_cell(r.gd) << ','
        << count_cell(r.aion) << ',' << count_cell(r.tga) << ',' << count_cell(r.oracle) << ','
        << time_cell(r.gd) << ',' << time_cell(r.aion) << ',' << time_cell(r.tga);
    return out.str();
}

std::vector<SummaryRow> summarize(const std::vector<BenchmarkRecord>& records) {
    struct Acc {
        double sum = 0.0, gap = 0.0;
        std::int64_t count = 0;
        bool ran = false;
        void add(const Measurement& m, std::int64_t lb, std::int64_t& timeouts) {
            if (!m.ran) return;
            ran = true;
            if (m.timed_out) {
                ++timeouts;
                return;
            }
            sum += static_cast<double>(m.channels);
            gap += static_cast<double>(m.channels - lb);
            ++count;
        }
        [[nodiscard]] std::optional<double> mean() const {
            return ran && count > 0 ? std::optional(sum / static_cast<double>(count)) : std::nullopt;
        }
        [[nodiscard]] std::optional<double> mean_gap() const {
            return ran && count > 0 ? std::optional(gap / static_cast<double>(count)) : std::nullopt;
        }
    };
    struct PerN {
        std::int64_t instances = 0, timeouts = 0;
        double lb = 0.0;
        Acc gd, aion, tga, oracle;
    };
    std::map<std::int64_t, PerN> by_n;
    for (const auto& r : records) {
        auto& p = by_n[r.n];
        ++p.instances;
        p.lb += static_cast<double>(r.lb);
        p.gd.add(r.gd, r.lb, p.timeouts);
        p.aion.add(r.aion, r.lb, p.timeouts);
        p.tga.add(r.tga, r.lb, p.timeouts);
        p.oracle.add(r.oracle, r.lb, p.timeouts);
    }
    std::vector<SummaryRow> rows;
    for (const auto& [n, p] : by_n) {
        SummaryRow row;
        row.n = n;
        row.instances = p.instances;
        row.mean_lb = p.lb / static_cast<double>(p.instances);
        row.mean_gd = p.gd.mean();
        row.mean_aion = p.aion.mean();
        row.mean_tga = p.tga.mean();
        row.mean_oracle = p.oracle.mean();
        row.gap_gd = p.gd.mean_gap();
        row.gap_aion = p.aion.mean_gap();
        row.gap_tga = p.tga.mean_gap();
        row.gap_oracle = p.oracle.mean_gap();
        row.timeouts = p.timeouts;
        rows.push_back(row);
    }
    return rows;
}

std::string format_summary(const std::vector<SummaryRow>& rows) {
    std::ostringstream out;
    char line[256];
    std::snprintf(line, sizeof line, "%6s %6s %9s %9s %9s %9s %9s %9s %9s %9s %8s\n", "n", "inst", "lb", "gd", "aion",
                  "tga", "oracle", "gap_gd", "gap_aion", "gap_tga", "timeouts");
    out << line;
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%6lld %6lld %9.3f %9s %9s %9s %9s %9s %9s %9s %8lld\n",
                      static_cast<long long>(r.n), static_cast<long long>(r.instances), r.mean_lb,
                      fixed(r.mean_gd, 3).c_str(), fixed(r.mean_aion, 3).c_str(), fixed(r.mean_tga, 3).c_str(),
                      fixed(r.mean_oracle, 3).c_str(), fixed(r.gap_gd, 3).c_str(), fixed(r.gap_aion, 3).c_str(),
                      fixed(r.gap_tga, 3).c_str(), static_cast<long long>(r.timeouts));
        out << line;
    }
    return out.str();
}

} // namespace aoisched
