#ifndef MOGP_HARNESS_CLI_HPP
#define MOGP_HARNESS_CLI_HPP

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "mogp/harness/growth.hpp"
#include "mogp/harness/init.hpp"
#include "mogp/harness/suite.hpp"
#include "mogp/harness/validate.hpp"
#include "mogp/oracle.hpp"

namespace mogp {

namespace detail {

// Flat "key = value" lines; '#' starts a comment.
inline std::vector<std::pair<std::string, std::string>> read_key_values(std::string const& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
        }
        auto key = trim(line.substr(0, eq));
        auto value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key");
        }
        out.emplace_back(std::move(key), std::move(value));
    }
    return out;
}

inline std::string summary_path_for(std::string const& csv_path)
{
    if (csv_path.size() > 4 && csv_path.ends_with(".csv")) {
        return csv_path.substr(0, csv_path.size() - 4) + ".summary.json";
    }
    return csv_path + ".summary.json";
}

template <typename Fn>
void write_file(std::string const& path, Fn&& fn)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write '" + path + "'");
    }
    fn(out);
    out.flush();
    if (!out) {
        throw ConfigError("write failed for '" + path + "'");
    }
}

inline void print_cells(std::ostream& out, SuiteSummary const& summary)
{
    out << std::left << std::setw(7) << "n" << std::setw(10) << "t_init" << std::setw(10) << "success" << std::setw(16)
        << "mean" << std::setw(16) << "median" << "stddev\n";
    for (auto const& c : summary.cells) {
        out << std::setw(7) << c.n << std::setw(10) << c.t_init << std::setw(10)
            << (std::to_string(c.successes) + "/" + std::to_string(c.trials)) << std::setw(16) << format_number(c.mean)
            << std::setw(16) << format_number(c.median) << format_number(c.stddev) << '\n';
    }
}

inline void print_fits(std::ostream& out, std::vector<GrowthFit> const& fits)
{
    for (auto const& f : fits) {
        out << (f.best ? "* " : "  ") << std::left << std::setw(22) << f.name << " spread " << std::setw(12)
            << format_number(f.spread) << " constant " << format_number(f.constant) << '\n';
    }
}

} // namespace detail

/// Entry point of the `mogp` tool; `args` excludes the program name.
/// Subcommands: run, fit, front, validate.
inline int run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Runtime experiments for (1+1)-GP and SMO-GP on ORDER/MAJORITY problems", "mogp"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Execute a seeded trial suite");
    std::string config_path, problem = "mo-order", weights = "unit", algo = "gp-single", selection = "mo-parsimony";
    std::string init = "empty", out_path, summary_path, trace_path;
    std::vector<std::size_t> n_grid{10}, init_sizes{0};
    std::size_t trials = 10;
    std::uint64_t budget = 100'000'000, seed = 1;
    unsigned threads = 1;
    bool audit = false, strict = false;
    run->add_option("--config", config_path, "Flat key = value file; flags override it");
    run->add_option("--problem", problem, "mo-order | mo-majority | mo-worder | mo-wmajority");
    run->add_option("--weights", weights, "unit | harmonic | pow2 | file:<path>");
    run->add_option("--algo", algo, "gp-single | gp-multi | smogp-single | smogp-multi");
    run->add_option("--selection", selection, "f-only | mo-parsimony ((1+1)-GP only)");
    run->add_option("--n", n_grid, "Problem sizes, comma separated")->delimiter(',');
    run->add_option("--init", init, "empty | random | non-redundant | redundant");
    run->add_option("--init-size", init_sizes, "Leaves (random, redundant) or variables (non-redundant)")
        ->delimiter(',');
    run->add_option("--trials", trials, "Trials per cell");
    run->add_option("--budget", budget, "Evaluation budget per trial");
    run->add_option("--seed", seed, "Master seed");
    run->add_option("--threads", threads, "Worker threads");
    run->add_option("--trace", trace_path, "Write accepted-step traces to this CSV");
    run->add_option("--summary", summary_path, "Summary JSON path (default: <out>.summary.json)");
    run->add_option("--out", out_path, "Raw per-trial CSV");
    run->add_flag("--audit", audit, "Audit archive and population invariants on every accepted step");
    run->add_flag("--strict-target", strict, "(1+1)-GP: require a non-redundant optimum");

    // fit
    auto* fit = app.add_subcommand("fit", "Fit growth laws to the means in a raw CSV");
    std::string fit_in, fit_out;
    std::vector<std::string> laws;
    fit->add_option("--in", fit_in, "Raw CSV from `run`")->required();
    fit->add_option("--laws", laws, "Candidates, e.g. n,n_log_n,n2 or t_init+n_log_n")->delimiter(',');
    fit->add_option("--out", fit_out, "Write the regenerated summary JSON here");

    // front
    auto* front = app.add_subcommand("front", "Print the Pareto front");
    std::string front_problem = "mo-order", front_weights = "unit";
    std::size_t front_n = 0;
    front->add_option("--problem", front_problem);
    front->add_option("--weights", front_weights, "unit | harmonic | pow2 | file:<path>");
    front->add_option("--n", front_n)->required();

    // validate
    auto* validate = app.add_subcommand("validate", "Brute-force-vs-oracle and invariant checks");
    std::size_t validate_n = 3;
    std::uint64_t validate_seed = 1;
    validate->add_option("--n", validate_n, "Largest n to check (1..4)");
    validate->add_option("--seed", validate_seed);

    std::vector<std::string> argv_storage{"mogp"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) {
        argv.push_back(a.data());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (CLI::ParseError const& e) {
        return app.exit(e, out, err);
    }

    try {
        if (run->parsed()) {
            if (!config_path.empty()) {
                for (auto const& [key, value] : detail::read_key_values(config_path)) {
                    CLI::Option* opt = nullptr;
                    try {
                        opt = run->get_option("--" + key);
                    } catch (CLI::OptionNotFound const&) {
                        throw ConfigError(config_path + ": unknown key '" + key + "'");
                    }
                    if (key == "config") {
                        throw ConfigError(config_path + ": nested config is not supported");
                    }
                    if (opt->count() == 0) {
                        try {
                            opt->add_result(value);
                            opt->run_callback();
                        } catch (CLI::Error const& e) {
                            throw ConfigError(config_path + ": bad value for '" + key + "': " + e.what());
                        }
                    }
                }
            }
            if (out_path.empty()) {
                throw ConfigError("--out is required");
            }
            ExperimentConfig cfg;
            cfg.problem = parse_problem(problem);
            cfg.weight_family = weights;
            cfg.algo = parse_algorithm(algo);
            cfg.selection = parse_selection(selection);
            cfg.n_grid = n_grid;
            cfg.init = parse_init(init);
            cfg.init_sizes = init_sizes;
            cfg.trials = trials;
            cfg.budget = budget;
            cfg.seed = seed;
            cfg.trace = !trace_path.empty();
            cfg.audit = audit;
            cfg.strict_target = strict;
            cfg.threads = threads;

            const auto result = run_suite(cfg);
            detail::write_file(out_path, [&](std::ostream& o) { write_csv(o, result.rows); });
            const auto json_path = summary_path.empty() ? detail::summary_path_for(out_path) : summary_path;
            detail::write_file(json_path, [&](std::ostream& o) { o << to_json(result.summary).dump(2) << '\n'; });
            if (cfg.trace) {
                detail::write_file(trace_path, [&](std::ostream& o) { write_trace_csv(o, result); });
            }
            detail::print_cells(out, result.summary);
            detail::print_fits(out, result.summary.fits);
            if (!result.audit.clean()) {
                err << "audit failed: " << result.audit.invalid_trees << " invalid trees, "
                    << result.audit.archive_violations << " archive violations, "
                    << result.audit.population_limit_violations << " population-limit violations, "
                    << result.audit.redundant_admissions << " redundant admissions\n";
                return 3;
            }
            return 0;
        }

        if (fit->parsed()) {
            std::ifstream in(fit_in);
            if (!in) {
                throw ConfigError("cannot open '" + fit_in + "'");
            }
            const auto rows = read_csv(in);
            if (rows.empty()) {
                throw ConfigError(fit_in + ": no rows");
            }
            auto summary = summarize(rows);
            std::vector<GrowthPoint> points;
            for (auto const& c : summary.cells) {
                if (c.successes > 0) {
                    points.push_back({static_cast<double>(c.n), static_cast<double>(c.t_init), c.mean});
                }
            }
            std::vector<GrowthLaw> candidates;
            if (laws.empty()) {
                candidates = default_growth_laws();
            } else {
                for (auto const& l : laws) {
                    candidates.push_back(growth_law(l));
                }
            }
            summary.fits = fit_growth(points, candidates);
            detail::print_cells(out, summary);
            detail::print_fits(out, summary.fits);
            if (!fit_out.empty()) {
                detail::write_file(fit_out, [&](std::ostream& o) { o << to_json(summary).dump(2) << '\n'; });
            }
            return 0;
        }

        if (front->parsed()) {
            if (front_n < 1) {
                throw ConfigError("--n must be >= 1");
            }
            const auto w = make_weights(front_weights, front_n);
            out << format_front(pareto_front(parse_problem(front_problem), w)) << '\n';
            return 0;
        }

        if (validate->parsed()) {
            bool all_ok = true;
            for (auto const& check : run_validation(validate_n, validate_seed)) {
                out << (check.ok ? "ok   " : "FAIL ") << check.name << '\n';
                all_ok = all_ok && check.ok;
            }
            return all_ok ? 0 : 1;
        }
    } catch (std::exception const& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

} // namespace mogp

#endif
