#pragma once

// Random instance families for property tests.

#include <aoisched/rational.hpp>

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace gen {

inline std::int64_t pick(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

/// N in [1, max_n] deadlines uniform on [2, max_d].
inline std::vector<std::int64_t> uniform(std::mt19937_64& rng, std::int64_t max_n, std::int64_t max_d) {
    std::vector<std::int64_t> d(static_cast<std::size_t>(pick(rng, 1, max_n)));
    for (auto& x : d) x = pick(rng, 2, max_d);
    return d;
}

/// Ascending deadlines, each a multiple of its predecessor.
inline std::vector<std::int64_t> integer_chain(std::mt19937_64& rng, std::int64_t max_n, std::int64_t max_d) {
    const auto n = pick(rng, 1, max_n);
    std::vector<std::int64_t> d{pick(rng, 2, max_d)};
    while (static_cast<std::int64_t>(d.size()) < n) {
        const auto prev = d.back();
        const auto m = pick(rng, 1, std::max<std::int64_t>(1, std::min<std::int64_t>(4, max_d / prev)));
        d.push_back(prev * m);
    }
    return d;
}

/// At least two distinct values, all multiples of the smallest, each
/// non-smallest value v occurring a multiple of v/base times.
inline std::vector<std::int64_t> harmonic(std::mt19937_64& rng, std::int64_t max_n, std::int64_t max_d) {
    const auto base = pick(rng, 2, max_d / 2);
    std::vector<std::int64_t> d(static_cast<std::size_t>(pick(rng, 1, 3)), base);
    bool extra = false;
    for (std::int64_t m = 2; base * m <= max_d; ++m) {
        if (extra && pick(rng, 0, 2) == 0) continue;
        const auto reps = pick(rng, 1, 2);
        if (static_cast<std::int64_t>(d.size()) + m * reps > max_n) break;
        d.insert(d.end(), static_cast<std::size_t>(m * reps), base * m);
        extra = true;
    }
    if (!extra) d.insert(d.end(), 2, base * 2);
    return d;
}

struct StvParams {
    std::int64_t u1, o1, u2, o2;
    std::vector<std::int64_t> deadlines() const {
        std::vector<std::int64_t> d(static_cast<std::size_t>(o1), u1);
        d.insert(d.end(), static_cast<std::size_t>(o2), u2);
        return d;
    }
};

/// u1 < u2 in [2, max_d] with o1/u1 + o2/u2 a positive integer.
inline StvParams stv_params(std::mt19937_64& rng, std::int64_t max_d) {
    for (;;) {
        const auto u1 = pick(rng, 2, max_d - 1);
        const auto u2 = pick(rng, u1 + 1, max_d);
        const auto b = pick(rng, 1, 3);
        std::vector<std::int64_t> options;
        for (std::int64_t o1 = 1; o1 < b * u1; ++o1) {
            // o2 = (b - o1/u1) * u2 must be a positive integer.
            const auto num = (b * u1 - o1) * u2;
            if (num % u1 == 0) options.push_back(o1);
        }
        if (options.empty()) continue;
        const auto o1 = options[static_cast<std::size_t>(pick(rng, 0, static_cast<std::int64_t>(options.size()) - 1))];
        return {u1, o1, u2, (b * u1 - o1) * u2 / u1};
    }
}

/// Consecutively divisible rational intervals with l_1 = p/q >= 1 and every
/// interval at most max_d.
inline std::vector<aoisched::Rational> rational_chain(std::mt19937_64& rng, std::int64_t max_n, std::int64_t max_d) {
    const auto q = pick(rng, 1, 4);
    const auto p = pick(rng, q, std::min<std::int64_t>(4 * q, max_d * q));
    aoisched::Rational base(p, q);
    const auto n = pick(rng, 1, max_n);
    std::vector<aoisched::Rational> l{base};
    while (static_cast<std::int64_t>(l.size()) < n) {
        const auto limit = (aoisched::Rational(max_d) / l.back()).floor();
        const auto m = pick(rng, 1, std::max<std::int64_t>(1, std::min<std::int64_t>(3, limit)));
        l.push_back(l.back() * aoisched::Rational(m));
    }
    return l;
}

} // namespace gen
