#pragma once

// Reference implementations used only by tests. They share no code with the
// library beyond reading a CyclicSchedule cell by cell.

#include <aoisched/schedule.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

namespace oracle {

/// Plain fraction, reduced after every operation.
struct Frac {
    std::int64_t n = 0;
    std::int64_t d = 1;

    Frac() = default;
    Frac(std::int64_t num, std::int64_t den = 1) : n(num), d(den) {
        if (d < 0) {
            n = -n;
            d = -d;
        }
        std::int64_t g = std::gcd(n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
    }
    friend Frac operator+(Frac a, Frac b) { return {a.n * b.d + b.n * a.d, a.d * b.d}; }
    friend Frac operator-(Frac a, Frac b) { return {a.n * b.d - b.n * a.d, a.d * b.d}; }
    friend bool operator<(Frac a, Frac b) { return a.n * b.d < b.n * a.d; }
    friend bool operator==(Frac a, Frac b) { return a.n == b.n && a.d == b.d; }
    std::int64_t ceil() const { return n >= 0 ? (n + d - 1) / d : -((-n) / d); }
};

inline Frac load(const std::vector<std::int64_t>& d) {
    Frac s;
    for (auto x : d) s = s + Frac(1, x);
    return s;
}

/// Channels carrying each source, found by reading every channel over its
/// own period, plus whether any cell names a source outside [0, n).
struct Carriers {
    std::vector<std::vector<aoisched::ChannelIndex>> of;
    bool stray = false;
};

inline Carriers carriers(const aoisched::CyclicSchedule& s, std::size_t n) {
    Carriers c;
    c.of.resize(n);
    for (aoisched::ChannelIndex k = 0; k < s.num_channels(); ++k) {
        for (std::int64_t t = 0; t < s.channel_period(k); ++t) {
            auto src = s.at(k, t);
            if (src < 0) continue;
            if (static_cast<std::size_t>(src) >= n) {
                c.stray = true;
                continue;
            }
            auto& list = c.of[static_cast<std::size_t>(src)];
            if (list.empty() || list.back() != k) list.push_back(k);
        }
    }
    return c;
}

/// Worst cyclic gap per source, read slot by slot across two periods of the
/// channels carrying it. nullopt for a source that never transmits.
inline std::vector<std::optional<std::int64_t>> gaps(const aoisched::CyclicSchedule& s, std::size_t n) {
    const auto carry = carriers(s, n);
    std::vector<std::optional<std::int64_t>> worst(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t p = 1;
        for (auto k : carry.of[i]) p = std::lcm(p, s.channel_period(k));
        std::int64_t last = -1;
        for (std::int64_t t = 0; t < 2 * p; ++t) {
            bool here = false;
            for (auto k : carry.of[i]) here = here || s.at(k, t) == static_cast<aoisched::SourceIndex>(i);
            if (!here) continue;
            if (last >= 0) {
                std::int64_t g = t - last;
                if (!worst[i] || *worst[i] < g) worst[i] = g;
            }
            last = t;
        }
    }
    return worst;
}

/// Independent feasibility check: no overwritten cell, no reference to a
/// missing source, every source present with every cyclic gap within its
/// deadline.
inline bool feasible(const aoisched::CyclicSchedule& s, const std::vector<std::int64_t>& d) {
    if (!s.conflicts().empty()) return false;
    if (carriers(s, d.size()).stray) return false;
    auto g = gaps(s, d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (!g[i] || *g[i] > d[i]) return false;
    }
    return true;
}

/// Smallest sum of 1/l_n over chains l (sorted like d, each l_n a multiple
/// of its predecessor, 1 <= l_n <= d_n), enumerating one multiplier per
/// source rather than per distinct value. Bases range over d_i / k.
inline Frac min_chain_load(std::vector<std::int64_t> d) {
    std::sort(d.begin(), d.end());
    std::optional<Frac> best;
    std::function<void(std::size_t, Frac, Frac)> walk = [&](std::size_t i, Frac prev, Frac acc) {
        if (best && !(acc < *best) && !(acc == *best)) return;
        if (i == d.size()) {
            if (!best || acc < *best) best = acc;
            return;
        }
        for (std::int64_t m = 1;; ++m) {
            Frac l(prev.n * m, prev.d);
            if (Frac(d[i]) < l) break;
            walk(i + 1, l, acc + Frac(l.d, l.n));
        }
    };
    for (auto di : d) {
        for (std::int64_t k = 1; k <= di; ++k) {
            Frac b(di, k);
            if (Frac(d[0]) < b) continue;
            walk(1, b, Frac(b.d, b.n));
        }
    }
    return *best;
}

/// Smallest K admitting an infinite valid schedule. A state is the age
/// vector; from the all-ones state (componentwise minimal, so its futures
/// contain every other state's) a DFS over every subset of at most K
/// sources looks for a reachable cycle.
inline std::int64_t min_channels(const std::vector<std::int64_t>& d) {
    const std::size_t n = d.size();
    auto has_cycle = [&](std::int64_t k) {
        std::map<std::vector<std::int64_t>, int> color;
        std::function<bool(const std::vector<std::int64_t>&)> dfs = [&](const std::vector<std::int64_t>& a) {
            color[a] = 1;
            for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
                if (std::popcount(mask) > k) continue;
                std::vector<std::int64_t> b(n);
                bool ok = true;
                for (std::size_t i = 0; i < n && ok; ++i) {
                    b[i] = (mask >> i & 1u) ? 1 : a[i] + 1;
                    ok = b[i] <= d[i];
                }
                if (!ok) continue;
                auto it = color.find(b);
                if (it != color.end()) {
                    if (it->second == 1) return true;
                    continue;
                }
                if (dfs(b)) return true;
            }
            color[a] = 2;
            return false;
        };
        return dfs(std::vector<std::int64_t>(n, 1));
    };
    for (std::int64_t k = 1;; ++k) {
        if (has_cycle(k)) return k;
    }
}

} // namespace oracle
