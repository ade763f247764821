// Acceptance suite. Prints one PASS/FAIL line per criterion; criteria 1-5
// always run, 6 only with --long. Exit status is non-zero if any criterion
// that ran failed.

#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <aoisched/bench.hpp>
#include <aoisched/constraints.hpp>
#include <aoisched/interval_optimizer.hpp>
#include <aoisched/oracle.hpp>
#include <aoisched/schedulers.hpp>
#include <aoisched/tga.hpp>
#include <aoisched/verify.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace aoisched;

namespace {

// Collects the reasons a criterion failed.
struct Check {
    std::vector<std::string> failures;
    std::vector<std::string> notes;

    void expect(bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    }
    template <typename A, typename B>
    void expect_eq(const A& got, const B& want, const std::string& what) {
        if (!(got == want)) {
            std::ostringstream os;
            os << what << ": got " << got << ", want " << want;
            failures.push_back(os.str());
        }
    }
};

std::string show(const std::vector<std::int64_t>& d) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
    os << ']';
    return os.str();
}

std::vector<std::int64_t> as_vector(const AoiConstraints& d) { return {d.deadlines().begin(), d.deadlines().end()}; }

bool verifies(const CyclicSchedule& s, const AoiConstraints& d) {
    return verify(s, d).feasible && oracle::feasible(s, as_vector(d));
}

void worked_examples(Check& c) {
    AoiConstraints ex({3, 5, 5, 5, 6, 6, 6, 7, 7, 7});
    c.expect_eq(lower_bound(ex), 2, "example lower bound");

    auto sol = solve_chain(ex);
    std::vector<Rational> want{Rational(5, 2), 5, 5, 5, 5, 5, 5, 5, 5, 5};
    c.expect(sol.intervals.intervals == want, "example chain is [2.5,5,...,5]");
    auto cs_sched = schedule_from_chain(sol, ex);
    c.expect_eq(cs_sched.num_channels(), 3, "example CS channels");
    c.expect(verifies(cs_sched, ex), "example CS schedule verifies");

    auto t = tga(ex);
    c.expect_eq(t.channels, 2, "example TGA channels");
    c.expect(verifies(t.schedule, ex), "example TGA schedule verifies");

    AoiConstraints harm({2, 4, 4, 4, 4, 6, 6, 6});
    auto g = gd(harm);
    c.expect_eq(g.num_channels(), 3, "harmonic GD channels");
    c.expect(verifies(g, harm), "harmonic GD schedule verifies");
    auto h = hs(harm);
    c.expect_eq(h.num_channels(), 2, "harmonic HS channels");
    c.expect(verifies(h, harm), "harmonic HS schedule verifies");

    AoiConstraints two({6, 6, 6, 6, 6, 7, 7, 9, 9, 9, 9, 9, 9, 9});
    auto grouping = hga(two);
    c.expect_eq(grouping.total_channels, 2, "two-group HGA channels");
    c.expect(verifies(grouping.combined_schedule(), two), "two-group HGA schedule verifies");
}

void oracle_equivalence(Check& c) {
    std::vector<std::vector<std::int64_t>> cases;
    for (std::int64_t a = 2; a <= 6; ++a)
        for (std::int64_t b = a; b <= 6; ++b) {
            cases.push_back({a, b});
            for (std::int64_t e = b; e <= 6; ++e) cases.push_back({a, b, e});
        }
    const std::size_t exhaustive = cases.size();
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 200; ++i) {
        std::vector<std::int64_t> d(4);
        for (auto& x : d) x = gen::pick(rng, 2, 8);
        cases.push_back(d);
    }

    int harmonic = 0, chains = 0, gaps = 0;
    bool surfaced = false;
    for (const auto& dv : cases) {
        AoiConstraints d(dv);
        const auto lb = lower_bound(d);
        const auto k = optimal_channels(d);
        const auto independent = oracle::min_channels(dv);
        const auto t = tga(d);
        const auto aion = solve_chain(d).channels;
        const std::string name = show(as_vector(d));
        c.expect_eq(k, independent, name + " oracle vs forward search");
        c.expect(lb <= k && k <= t.channels && t.channels <= aion,
                 name + " ordering lb <= oracle <= tga <= aion: " + std::to_string(lb) + " " + std::to_string(k) +
                     " " + std::to_string(t.channels) + " " + std::to_string(aion));
        c.expect(verifies(t.schedule, d), name + " tga schedule verifies");
        c.expect(verifies(extract_witness(d, k), d), name + " witness verifies");
        if (is_harmonic(d)) {
            ++harmonic;
            c.expect_eq(hs(d).num_channels(), k, name + " hs vs oracle");
        }
        if (is_consecutively_divisible(d.deadlines())) {
            ++chains;
            c.expect_eq(cas(d).num_channels(), k, name + " cas vs oracle");
        }
        if (k > lb) ++gaps;
        if (as_vector(d) == std::vector<std::int64_t>{2, 3, 6} && k == 2 && lb == 1) surfaced = true;
    }
    c.expect(surfaced, "[2,3,6] surfaced with oracle 2 > lower bound 1");
    c.notes.push_back(std::to_string(exhaustive) + " exhaustive + 200 random; " + std::to_string(harmonic) +
                      " harmonic, " + std::to_string(chains) + " chains, " + std::to_string(gaps) +
                      " with oracle above the lower bound");
}

void verification_totality(Check& c) {
    std::mt19937_64 rng(77);
    const int rounds = 10000;
    std::map<std::string, int> counts;
    auto record = [&](const std::string& who, const CyclicSchedule& s, const AoiConstraints& d) {
        ++counts[who];
        if (!verifies(s, d)) c.failures.push_back(who + " failed on " + show(as_vector(d)));
    };
    for (int i = 0; i < rounds && c.failures.size() < 10; ++i) {
        AoiConstraints d(gen::uniform(rng, 30, 20));
        record("gd", gd(d), d);
        record("cs", schedule_from_chain(solve_chain(d), d), d);
        record("tga", tga(d).schedule, d);
        if (is_harmonic(d)) record("hs", hs(d), d);
        if (is_consecutively_divisible(d.deadlines())) record("cas", cas(d), d);

        AoiConstraints h(gen::harmonic(rng, 30, 20));
        record("hs", hs(h), h);

        auto p = gen::stv_params(rng, 20);
        record("stv", stv(p.u1, p.o1, p.u2, p.o2), AoiConstraints(p.deadlines()));

        AoiConstraints chain(gen::integer_chain(rng, 30, 20));
        record("cas", cas(chain), chain);
    }
    std::ostringstream os;
    for (const auto& [who, n] : counts) os << who << "=" << n << " ";
    c.notes.push_back(os.str());
    for (const char* who : {"gd", "hs", "stv", "cas", "cs", "tga"})
        c.expect(counts[who] >= rounds, std::string(who) + " ran on fewer than " + std::to_string(rounds) + " instances");
}

struct FigureRun {
    std::vector<SummaryRow> rows;
    const SummaryRow& at(std::int64_t n) const {
        for (const auto& r : rows)
            if (r.n == n) return r;
        throw std::out_of_range("no summary row for n=" + std::to_string(n));
    }
};

FigureRun run_figure(std::int64_t d_max, std::vector<std::int64_t> sizes, std::int64_t instances) {
    BenchmarkConfig cfg;
    cfg.n_values = std::move(sizes);
    cfg.d_min = 2;
    cfg.d_max = d_max;
    cfg.instances = instances;
    cfg.seed = 42;
    cfg.gamma = Rational(1, 2);
    cfg.algorithms = {Algorithm::lb, Algorithm::gd, Algorithm::aion, Algorithm::tga};
    return {summarize(run_benchmark(cfg))};
}

std::string fixed(double v, int digits = 3) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

const std::vector<std::int64_t> kDeskSizes{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};

std::optional<FigureRun> narrow_run;

const FigureRun& narrow() {
    if (!narrow_run) narrow_run = run_figure(10, kDeskSizes, 100);
    return *narrow_run;
}

void figure_narrow(Check& c) {
    const auto& run = narrow();
    double prev = -1.0;
    for (const auto& r : run.rows) {
        const double tga_gap = r.gap_tga.value_or(1e9);
        const double aion_gap = r.gap_aion.value_or(-1.0);
        c.expect(tga_gap <= 0.2, "N=" + std::to_string(r.n) + " TGA gap " + fixed(tga_gap) + " > 0.2");
        if (r.n >= 30) {
            c.expect(aion_gap > prev, "N=" + std::to_string(r.n) + " Aion gap " + fixed(aion_gap) +
                                          " not above previous " + fixed(prev));
        }
        prev = aion_gap;
    }
    const auto& last = run.at(100);
    const double margin = last.gap_aion.value_or(0) - last.gap_tga.value_or(0);
    c.expect(margin >= 1.0, "N=100 Aion gap exceeds TGA gap by only " + fixed(margin));
    c.notes.push_back("N=100 gaps: tga " + fixed(last.gap_tga.value_or(0)) + ", aion " +
                      fixed(last.gap_aion.value_or(0)));
}

void figure_wide(Check& c) {
    const auto wide = run_figure(20, kDeskSizes, 100);
    const auto& w = wide.at(100);
    const double rel = w.gap_tga.value_or(1e9) / w.mean_lb;
    c.expect(rel <= 0.02, "[2,20] N=100 TGA gap / LB = " + fixed(100 * rel, 2) + "% > 2%");
    const double w_gd = w.mean_gd.value_or(0), w_aion = w.mean_aion.value_or(0);
    c.expect(!(w_gd < w_aion), "[2,20] N=100 GD " + fixed(w_gd) + " already below Aion " + fixed(w_aion));
    const auto& n = narrow().at(100);
    const double n_gd = n.mean_gd.value_or(0), n_aion = n.mean_aion.value_or(0);
    c.expect(n_gd < n_aion, "[2,10] N=100 GD " + fixed(n_gd) + " not below Aion " + fixed(n_aion));
    c.notes.push_back("[2,20] N=100: lb " + fixed(w.mean_lb) + ", tga gap " + fixed(100 * rel, 2) + "%, gd " +
                      fixed(w_gd) + ", aion " + fixed(w_aion) + "; [2,10] N=100: gd " + fixed(n_gd) + ", aion " +
                      fixed(n_aion));
}

void headline(Check& c) {
    const auto run = run_figure(10, {300}, 1000);
    const auto& r = run.at(300);
    auto within = [&](double got, double want, double tol, const std::string& what) {
        c.expect(std::abs(got - want) <= tol * want,
                 what + " " + fixed(got) + " outside " + fixed(want) + " +/- " + fixed(100 * tol, 1) + "%");
    };
    within(r.mean_lb, 64.867, 0.015, "mean LB");
    within(r.mean_tga.value_or(0), 64.961, 0.015, "mean TGA");
    within(r.mean_aion.value_or(0), 79.638, 0.025, "mean Aion");
    c.notes.push_back("N=300: lb " + fixed(r.mean_lb) + ", tga " + fixed(r.mean_tga.value_or(0)) + ", aion " +
                      fixed(r.mean_aion.value_or(0)));
}

struct Criterion {
    int id;
    const char* title;
    std::function<void(Check&)> body;
    bool long_only = false;
};

} // namespace

int main(int argc, char** argv) {
    bool long_run = false;
    std::vector<int> only;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--long") == 0) {
            long_run = true;
        } else if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only.push_back(std::atoi(argv[++i]));
        } else {
            std::cerr << "usage: " << argv[0] << " [--long] [--only N]...\n";
            return 2;
        }
    }

    const std::vector<Criterion> criteria{
        {1, "worked-example exactness", worked_examples},
        {2, "oracle equivalence on small instances", oracle_equivalence},
        {3, "every emitted schedule verifies", verification_totality},
        {4, "desk-scale [2,10] sweep: TGA gap and Aion growth", figure_narrow},
        {5, "desk-scale [2,20] sweep: relative TGA gap and GD/Aion crossover", figure_wide},
        {6, "N=300 headline means", headline, true},
    };

    bool all_passed = true;
    for (const auto& cr : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), cr.id) == only.end()) continue;
        if (cr.long_only && !long_run) {
            std::cout << "SKIP " << cr.id << " " << cr.title << " (needs --long)\n";
            continue;
        }
        Check c;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            cr.body(c);
        } catch (const std::exception& e) {
            c.failures.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool ok = c.failures.empty();
        all_passed = all_passed && ok;
        std::cout << (ok ? "PASS " : "FAIL ") << cr.id << " " << cr.title << " (" << fixed(secs, 1) << " s)\n";
        for (std::size_t i = 0; i < c.failures.size() && i < 20; ++i) std::cout << "    " << c.failures[i] << "\n";
        for (const auto& n : c.notes) std::cout << "    " << n << "\n";
        std::cout << std::flush;
    }
    return all_passed ? 0 : 1;
}
