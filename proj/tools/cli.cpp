#include "cli.hpp"

#include "aoisched/bench.hpp"
#include "aoisched/constraints.hpp"
#include "aoisched/errors.hpp"
#include "aoisched/interval_optimizer.hpp"
#include "aoisched/json_io.hpp"
#include "aoisched/oracle.hpp"
#include "aoisched/schedulers.hpp"
#include "aoisched/tga.hpp"
#include "aoisched/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace aoisched::cli {

namespace {

using nlohmann::json;

std::string read_input(const std::string& path) {
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open " + path);
    buf << in.rdbuf();
    return buf.str();
}

// Writes to --output when given, otherwise to `out`.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path);
    if (!file) throw InvalidInput("cannot write " + path);
    file << text;
}

std::int64_t parse_int(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size()) throw InvalidInput(what + ": \"" + s + "\" is not an integer");
    return v;
}

// "50" or "lo:hi:step".
std::vector<std::int64_t> expand_sizes(const std::vector<std::string>& specs) {
    std::vector<std::int64_t> out;
    for (const auto& spec : specs) {
        const auto first = spec.find(':');
        if (first == std::string::npos) {
            out.push_back(parse_int(spec, "--n"));
            continue;
        }
        const auto second = spec.find(':', first + 1);
        if (second == std::string::npos) throw InvalidInput("--n: range must be lo:hi:step");
        const std::int64_t lo = parse_int(spec.substr(0, first), "--n");
        const std::int64_t hi = parse_int(spec.substr(first + 1, second - first - 1), "--n");
        const std::int64_t step = parse_int(spec.substr(second + 1), "--n");
        if (step < 1 || hi < lo) throw InvalidInput("--n: range needs lo <= hi and step >= 1");
        for (std::int64_t n = lo; n <= hi; n += step) out.push_back(n);
    }
    return out;
}

std::vector<Algorithm> parse_algorithms(const std::string& list) {
    std::vector<Algorithm> out;
    std::stringstream ss(list);
    std::string name;
    while (std::getline(ss, name, ','))
        if (!name.empty()) out.push_back(parse_algorithm(name));
    if (out.empty()) throw InvalidInput("--algorithms: empty list");
    return out;
}

CyclicSchedule run_algorithm(const std::string& algorithm, const AoiConstraints& d, const Rational& gamma,
                             const SearchLimits& limits, const OracleLimits& oracle_limits) {
    if (algorithm == "tga") return tga(d, gamma, limits).schedule;
    if (algorithm == "aion") return schedule_from_chain(solve_chain(d), d);
    if (algorithm == "gd") return gd(d);
    if (algorithm == "hs") return hs(d);
    if (algorithm == "cas") return cas(d);
    if (algorithm == "stv") {
        const auto summary = d.summary();
        if (summary.size() != 2) throw InvalidInput("stv needs exactly two distinct deadlines");
        return stv(summary[0].value, summary[0].count, summary[1].value, summary[1].count);
    }
    if (algorithm == "exact") return extract_witness(d, optimal_channels(d, oracle_limits), oracle_limits);
    throw InvalidInput("unknown algorithm \"" + algorithm + "\"");
}

void apply_config_file(const std::string& path, BenchmarkConfig& cfg) {
    json doc;
    try {
        doc = json::parse(read_input(path));
    } catch (const json::parse_error& e) {
        throw InvalidInput(path + ": malformed JSON: " + e.what());
    }
    if (!doc.is_object()) throw InvalidInput(path + ": expected an object");
    try {
        if (doc.contains("n_values")) cfg.n_values = doc.at("n_values").get<std::vector<std::int64_t>>();
        if (doc.contains("d_min")) cfg.d_min = doc.at("d_min").get<std::int64_t>();
        if (doc.contains("d_max")) cfg.d_max = doc.at("d_max").get<std::int64_t>();
        if (doc.contains("instances")) cfg.instances = doc.at("instances").get<std::int64_t>();
        if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
        if (doc.contains("gamma")) cfg.gamma = Rational::parse(doc.at("gamma").get<std::string>());
        if (doc.contains("algorithms")) {
            cfg.algorithms.clear();
            for (const auto& a : doc.at("algorithms")) cfg.algorithms.push_back(parse_algorithm(a.get<std::string>()));
        }
        if (doc.contains("time_budget_ms"))
            cfg.time_budget = std::chrono::milliseconds(doc.at("time_budget_ms").get<std::int64_t>());
        if (doc.contains("state_budget")) cfg.oracle_state_budget = doc.at("state_budget").get<std::int64_t>();
    } catch (const json::exception& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

json record_json(const BenchmarkRecord& r) {
    json row{{"n", r.n}, {"idx", r.idx}, {"seed", r.seed}, {"lb", r.lb}};
    auto put = [&](const char* name, const Measurement& m) {
        if (!m.ran) return;
        row[name] = m.timed_out ? json("timeout") : json(m.channels);
        row[std::string("t_") + name + "_ms"] = m.millis;
    };
    put("gd", r.gd);
    put("aion", r.aion);
    put("tga", r.tga);
    put("oracle", r.oracle);
    return row;
}

} // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multi-channel AoI-constrained scheduling"};
    app.require_subcommand(1);

    std::string output;
    std::string gamma_text = "1/2";
    std::int64_t state_budget = 2'000'000;
    std::int64_t time_budget_ms = 0;

    auto* schedule_cmd = app.add_subcommand("schedule", "Build a schedule for a constraints file");
    std::string constraints_path;
    std::string algorithm = "tga";
    int indent = -1;
    schedule_cmd->add_option("constraints", constraints_path, "Constraints JSON ('-' for stdin)")->required();
    schedule_cmd->add_option("-a,--algorithm", algorithm, "tga|aion|gd|hs|stv|cas|exact")
        ->check(CLI::IsMember({"tga", "aion", "gd", "hs", "stv", "cas", "exact"}));
    schedule_cmd->add_option("--gamma", gamma_text, "HGA unused-part threshold");
    schedule_cmd->add_option("--time-budget", time_budget_ms, "Grouping search limit in ms (0 = none)");
    schedule_cmd->add_option("--state-budget", state_budget, "Oracle state limit");
    schedule_cmd->add_option("--indent", indent, "Pretty-print JSON with this indent");
    schedule_cmd->add_option("-o,--output", output, "Output file");

    auto* verify_cmd = app.add_subcommand("verify", "Check a schedule against constraints");
    std::string schedule_path;
    verify_cmd->add_option("schedule", schedule_path, "Schedule JSON")->required();
    verify_cmd->add_option("constraints", constraints_path, "Constraints JSON")->required();
    verify_cmd->add_option("-o,--output", output, "Output file");

    auto* bound_cmd = app.add_subcommand("bound", "Print the lower bound and the GD upper bound");
    std::string format = "json";
    bound_cmd->add_option("constraints", constraints_path, "Constraints JSON")->required();
    bound_cmd->add_option("--format", format, "json|text")->check(CLI::IsMember({"json", "text"}));

    auto* oracle_cmd = app.add_subcommand("oracle", "Exact minimum channel count with a witness schedule");
    oracle_cmd->add_option("constraints", constraints_path, "Constraints JSON")->required();
    oracle_cmd->add_option("--state-budget", state_budget, "Largest state space to enumerate");
    oracle_cmd->add_option("-o,--output", output, "Output file");

    auto* bench_cmd = app.add_subcommand("bench", "Run the random-instance benchmark");
    std::vector<std::string> sizes;
    BenchmarkConfig cfg;
    std::string algorithms_text;
    std::string config_path;
    std::string bench_format = "csv";
    bool quiet = false;
    bench_cmd->add_option("--config", config_path, "JSON file with benchmark settings; flags override it");
    bench_cmd->add_option("--n", sizes, "Source count, or lo:hi:step; repeatable");
    std::int64_t d_min = cfg.d_min;
    std::int64_t d_max = cfg.d_max;
    std::int64_t instances = cfg.instances;
    std::uint64_t seed = cfg.seed;
    auto* d_min_opt = bench_cmd->add_option("--d-min", d_min, "Smallest deadline");
    auto* d_max_opt = bench_cmd->add_option("--d-max", d_max, "Largest deadline");
    auto* instances_opt = bench_cmd->add_option("--instances", instances, "Instances per source count");
    auto* seed_opt = bench_cmd->add_option("--seed", seed, "Master seed");
    auto* gamma_opt = bench_cmd->add_option("--gamma", gamma_text, "HGA unused-part threshold");
    bench_cmd->add_option("--algorithms", algorithms_text, "Comma-separated subset of lb,gd,aion,tga,oracle");
    auto* time_opt = bench_cmd->add_option("--time-budget", time_budget_ms, "Per-instance TGA limit in ms (0 = none)");
    auto* state_opt = bench_cmd->add_option("--state-budget", state_budget, "Oracle state limit");
    bench_cmd->add_option("--format", bench_format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    bench_cmd->add_option("-o,--output", output, "Output file");
    bench_cmd->add_flag("-q,--quiet", quiet, "Do not print the summary table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (schedule_cmd->parsed()) {
            const auto d = parse_constraints_json(read_input(constraints_path));
            SearchLimits limits;
            if (time_budget_ms > 0) limits = SearchLimits::within(std::chrono::milliseconds(time_budget_ms));
            const auto schedule =
                run_algorithm(algorithm, d, Rational::parse(gamma_text), limits, OracleLimits{state_budget});
            ScheduleJsonOptions opts;
            opts.indent = indent;
            emit(schedule_to_json(schedule, d, opts) + "\n", output, out);
            return kOk;
        }
        if (verify_cmd->parsed()) {
            const auto d = parse_constraints_json(read_input(constraints_path));
            const auto parsed = parse_schedule_json(read_input(schedule_path), d);
            const auto report = verify(parsed.schedule, d);
            emit(report_to_json(report, d, parsed.unknown_ids) + "\n", output, out);
            return report.feasible ? kOk : kInfeasible;
        }
        if (bound_cmd->parsed()) {
            const auto d = parse_constraints_json(read_input(constraints_path));
            const Rational load = total_load(d);
            if (format == "json") {
                json doc{{"load", load.str()}, {"lower_bound", lower_bound(d)}, {"gd_upper_bound", gd_upper_bound(d)}};
                out << doc.dump() << "\n";
            } else {
                out << "load " << load.str() << "\nlower_bound " << lower_bound(d) << "\ngd_upper_bound "
                    << gd_upper_bound(d) << "\n";
            }
            return kOk;
        }
        if (oracle_cmd->parsed()) {
            const auto d = parse_constraints_json(read_input(constraints_path));
            const OracleLimits limits{state_budget};
            const std::int64_t k = optimal_channels(d, limits);
            const auto witness = extract_witness(d, k, limits);
            json doc{{"lower_bound", lower_bound(d)},
                     {"optimal_channels", k},
                     {"witness", json::parse(schedule_to_json(witness, d))}};
            emit(doc.dump() + "\n", output, out);
            return kOk;
        }
        if (bench_cmd->parsed()) {
            if (!config_path.empty()) apply_config_file(config_path, cfg);
            // Flags given explicitly take precedence over the config file.
            if (!sizes.empty()) cfg.n_values = expand_sizes(sizes);
            if (d_min_opt->count() > 0) cfg.d_min = d_min;
            if (d_max_opt->count() > 0) cfg.d_max = d_max;
            if (instances_opt->count() > 0) cfg.instances = instances;
            if (seed_opt->count() > 0) cfg.seed = seed;
            if (gamma_opt->count() > 0) cfg.gamma = Rational::parse(gamma_text);
            if (!algorithms_text.empty()) cfg.algorithms = parse_algorithms(algorithms_text);
            if (time_opt->count() > 0) {
                if (time_budget_ms > 0)
                    cfg.time_budget = std::chrono::milliseconds(time_budget_ms);
                else
                    cfg.time_budget.reset();
            }
            if (state_opt->count() > 0) cfg.oracle_state_budget = state_budget;
            cfg.validate();

            std::ofstream file;
            std::ostream* sink = &out;
            if (!output.empty() && output != "-") {
                file.open(output);
                if (!file) throw InvalidInput("cannot write " + output);
                sink = &file;
            }
            std::vector<BenchmarkRecord> records;
            if (bench_format == "csv") {
                *sink << csv_header() << "\n";
                records = run_benchmark(cfg, [&](const BenchmarkRecord& r) { *sink << csv_row(r) << "\n" << std::flush; });
            } else {
                records = run_benchmark(cfg);
                json rows = json::array();
                for (const auto& r : records) rows.push_back(record_json(r));
                *sink << rows.dump(2) << "\n";
            }
            if (!quiet) err << format_summary(summarize(records));
            return kOk;
        }
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kBudget;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return kInfeasible;
    } catch (const std::overflow_error& e) {
        err << "error: " << e.what() << "\n";
        return kBudget;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInfeasible;
    }
    return kUsage;
}

} // namespace aoisched::cli
