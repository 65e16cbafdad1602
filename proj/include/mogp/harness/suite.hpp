#ifndef MOGP_HARNESS_SUITE_HPP
#define MOGP_HARNESS_SUITE_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "mogp/evolve.hpp"
#include "mogp/fitness.hpp"
#include "mogp/harness/growth.hpp"
#include "mogp/harness/init.hpp"
#include "mogp/random.hpp"

namespace mogp {

struct ExperimentConfig {
    ProblemKind problem = ProblemKind::order;
    std::string weight_family = "unit";
    Algorithm algo = Algorithm::gp_single;
    SelectionRule selection = SelectionRule::mo_parsimony;
    std::vector<std::size_t> n_grid{10};
    InitKind init = InitKind::empty;
    std::vector<std::size_t> init_sizes{0};
    std::size_t trials = 10;
    std::uint64_t budget = 100'000'000;
    std::uint64_t seed = 1;
    bool trace = false;
    bool audit = false;
    bool strict_target = false;
    unsigned threads = 1;

    void validate() const
    {
        if (trials < 1) throw ConfigError("trials must be >= 1");
        if (budget < 1) throw ConfigError("budget must be >= 1");
        if (n_grid.empty() || init_sizes.empty()) throw ConfigError("grids must not be empty");
        for (auto n : n_grid) {
            if (n < 1) throw ConfigError("grid values must be >= 1");
        }
        for (auto s : init_sizes) {
            // non-redundant size 0 means m = n
            if (s < 1 && init == InitKind::redundant_blowup) {
                throw ConfigError("redundant init sizes must be >= 1");
            }
        }
        if (threads < 1) throw ConfigError("threads must be >= 1");
        if (trials > 0xffffffffULL || n_grid.size() * init_sizes.size() > 0xffffffffULL) {
            throw ConfigError("grid too large");
        }
    }
};

// One CSV row. Label columns are kept as text so rows read back from a file
// compare equal to freshly produced ones.
struct TrialResult {
    std::string problem;
    std::string algo;
    std::string selection;
    std::string mode;
    std::size_t n = 0;
    std::size_t t_init = 0;  // nodes
    std::string weight_family;
    std::uint64_t seed = 0;
    std::uint64_t evaluations = 0;  // budget when unsuccessful
    bool success = false;
    std::size_t max_tree_size = 0;
    std::size_t final_pop_size = 0;

    friend bool operator==(TrialResult const&, TrialResult const&) = default;
};

inline constexpr const char* kCsvHeader =
    "problem,algo,selection,mode,n,t_init,weight_family,seed,evaluations,success,max_tree_size,final_pop_size";

struct CellSummary {
    std::string problem, algo, selection, mode, weight_family;
    std::size_t n = 0;
    std::size_t t_init = 0;
    std::size_t trials = 0;
    std::size_t successes = 0;
    double success_rate = 0.0;
    // over successful trials only; zero when there are none
    double mean = 0.0;
    double median = 0.0;
    double stddev = 0.0;
};

struct SuiteSummary {
    std::vector<CellSummary> cells;
    std::vector<GrowthFit> fits;  // empty unless >= 3 cells had successes
};

struct SuiteResult {
    std::vector<TrialResult> rows;
    SuiteSummary summary;
    // per trial, in row order; filled only when tracing
    std::vector<std::vector<TraceRecord>> traces;
    AuditReport audit;  // summed over all trials
};

inline SuiteSummary summarize(std::vector<TrialResult> const& rows)
{
    using Key = std::tuple<std::string, std::string, std::string, std::string, std::string, std::size_t, std::size_t>;
    std::map<Key, std::vector<TrialResult const*>> cells;
    for (auto const& r : rows) {
        cells[{r.problem, r.algo, r.selection, r.mode, r.weight_family, r.n, r.t_init}].push_back(&r);
    }
    SuiteSummary summary;
    for (auto const& [key, members] : cells) {
        CellSummary c;
        std::tie(c.problem, c.algo, c.selection, c.mode, c.weight_family, c.n, c.t_init) = key;
        c.trials = members.size();
        std::vector<double> evals;
        for (auto const* r : members) {
            if (r->success) {
                evals.push_back(static_cast<double>(r->evaluations));
            }
        }
        c.successes = evals.size();
        c.success_rate = static_cast<double>(c.successes) / static_cast<double>(c.trials);
        if (!evals.empty()) {
            std::sort(evals.begin(), evals.end());
            double sum = 0.0;
            for (auto e : evals) sum += e;
            c.mean = sum / static_cast<double>(evals.size());
            const auto mid = evals.size() / 2;
            c.median = evals.size() % 2 == 1 ? evals[mid] : 0.5 * (evals[mid - 1] + evals[mid]);
            if (evals.size() > 1) {
                double ss = 0.0;
                for (auto e : evals) ss += (e - c.mean) * (e - c.mean);
                c.stddev = std::sqrt(ss / static_cast<double>(evals.size() - 1));
            }
        }
        summary.cells.push_back(std::move(c));
    }
    std::vector<GrowthPoint> points;
    for (auto const& c : summary.cells) {
        if (c.successes > 0) {
            points.push_back({static_cast<double>(c.n), static_cast<double>(c.t_init), c.mean});
        }
    }
    if (points.size() >= 3) {
        const auto laws = default_growth_laws();
        summary.fits = fit_growth(points, laws);
    }
    return summary;
}

inline nlohmann::json to_json(SuiteSummary const& summary)
{
    nlohmann::json cells = nlohmann::json::array();
    for (auto const& c : summary.cells) {
        cells.push_back({{"problem", c.problem},
                         {"algo", c.algo},
                         {"selection", c.selection},
                         {"mode", c.mode},
                         {"weight_family", c.weight_family},
                         {"n", c.n},
                         {"t_init", c.t_init},
                         {"trials", c.trials},
                         {"successes", c.successes},
                         {"success_rate", c.success_rate},
                         {"mean", c.mean},
                         {"median", c.median},
                         {"stddev", c.stddev}});
    }
    nlohmann::json fits = nlohmann::json::array();
    for (auto const& f : summary.fits) {
        fits.push_back({{"law", f.name},
                        {"ratios", f.ratios},
                        {"spread", f.spread},
                        {"constant", f.constant},
                        {"best", f.best}});
    }
    return {{"cells", cells}, {"fits", fits}};
}

inline void write_csv(std::ostream& out, std::vector<TrialResult> const& rows)
{
    out << kCsvHeader << '\n';
    for (auto const& r : rows) {
        out << r.problem << ',' << r.algo << ',' << r.selection << ',' << r.mode << ',' << r.n << ',' << r.t_init
            << ',' << r.weight_family << ',' << r.seed << ',' << r.evaluations << ',' << (r.success ? 1 : 0) << ','
            << r.max_tree_size << ',' << r.final_pop_size << '\n';
    }
}

inline std::vector<TrialResult> read_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw ConfigError("CSV header mismatch; expected: " + std::string(kCsvHeader));
    }
    std::vector<TrialResult> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            f.push_back(field);
        }
        if (f.size() != 12) {
            throw ConfigError("CSV line " + std::to_string(line_no) + ": expected 12 fields");
        }
        try {
            TrialResult r;
            r.problem = f[0];
            r.algo = f[1];
            r.selection = f[2];
            r.mode = f[3];
            r.n = std::stoull(f[4]);
            r.t_init = std::stoull(f[5]);
            r.weight_family = f[6];
            r.seed = std::stoull(f[7]);
            r.evaluations = std::stoull(f[8]);
            r.success = f[9] == "1";
            r.max_tree_size = std::stoull(f[10]);
            r.final_pop_size = std::stoull(f[11]);
            rows.push_back(std::move(r));
        } catch (std::exception const&) {
            throw ConfigError("CSV line " + std::to_string(line_no) + ": bad number");
        }
    }
    return rows;
}

inline void write_trace_csv(std::ostream& out, SuiteResult const& result)
{
    out << "n,t_init,seed,iteration,f,c,s,k\n";
    out.precision(17);
    for (std::size_t i = 0; i < result.traces.size(); ++i) {
        auto const& row = result.rows[i];
        for (auto const& t : result.traces[i]) {
            out << row.n << ',' << row.t_init << ',' << row.seed << ',' << t.iteration << ',' << t.f_value << ','
                << t.complexity << ',' << t.s << ',' << t.k << '\n';
        }
    }
}

/// Population bound the theory guarantees for this configuration, or 0.
inline std::size_t expected_population_limit(ExperimentConfig const& cfg, std::size_t n)
{
    if (!is_population_based(cfg.algo)) {
        return 1;
    }
    if (!is_weighted(cfg.problem)) {
        return n + 1;
    }
    const bool non_redundant_start = cfg.init == InitKind::empty || cfg.init == InitKind::non_redundant;
    return non_redundant_start && mode_of(cfg.algo) == MutationMode::single ? n + 1 : 0;
}

/// Runs `trials` seeded trials for every (n, init size) cell. Trial j of cell
/// i uses derive_seed(seed, i, j); rows come out in (cell, trial) order no
/// matter how many threads run them.
inline SuiteResult run_suite(ExperimentConfig const& cfg)
{
    cfg.validate();
    struct Task {
        std::size_t n;
        std::size_t init_size;
        std::uint32_t cell;
        std::uint32_t trial;
    };
    std::vector<Task> tasks;
    std::uint32_t cell = 0;
    for (auto n : cfg.n_grid) {
        for (auto size : cfg.init_sizes) {
            for (std::uint32_t j = 0; j < cfg.trials; ++j) {
                tasks.push_back({n, size, cell, j});
            }
            ++cell;
        }
    }
    // weights are built up front so configuration errors surface before any work
    std::map<std::size_t, WeightVector> weights;
    for (auto n : cfg.n_grid) {
        weights.emplace(n, make_weights(cfg.weight_family, n));
    }

    SuiteResult result;
    result.rows.resize(tasks.size());
    result.traces.resize(cfg.trace ? tasks.size() : 0);
    std::vector<AuditReport> audits(tasks.size());

    auto run_task = [&](std::size_t i) {
        auto const& task = tasks[i];
        const auto seed = derive_seed(cfg.seed, task.cell, task.trial);
        RandomSource rng(seed);
        auto const& w = weights.at(task.n);
        const auto init_size = cfg.init == InitKind::non_redundant && task.init_size == 0 ? task.n : task.init_size;
        auto init = make_init({cfg.init, init_size}, task.n, rng);
        const auto t_init = init.complexity();

        RunOptions opt;
        opt.budget = cfg.budget;
        opt.trace = cfg.trace;
        opt.audit = cfg.audit;
        opt.strict_target = cfg.strict_target;
        if (cfg.audit) {
            opt.population_limit = expected_population_limit(cfg, task.n);
            opt.audit_non_redundant = is_population_based(cfg.algo) && is_weighted(cfg.problem) &&
                                      opt.population_limit != 0;
        }
        Evaluator eval(cfg.problem, w);
        auto run = run_algorithm(cfg.algo, cfg.selection, eval, std::move(init), opt, rng);

        auto& row = result.rows[i];
        row.problem = std::string(to_string(cfg.problem));
        row.algo = std::string(to_string(cfg.algo));
        row.selection = is_population_based(cfg.algo) ? "pareto" : std::string(to_string(cfg.selection));
        row.mode = std::string(to_string(mode_of(cfg.algo)));
        row.n = task.n;
        row.t_init = t_init;
        row.weight_family = !is_weighted(cfg.problem) ? "unit" : cfg.weight_family.starts_with("file:") ? "file" : cfg.weight_family;
        row.seed = seed;
        row.evaluations = run.evaluations;
        row.success = run.success;
        row.max_tree_size = run.max_tree_size;
        row.final_pop_size = run.final_population_size;
        audits[i] = run.audit;
        if (cfg.trace) {
            result.traces[i] = std::move(run.trace);
        }
    };

    const auto workers = std::min<std::size_t>(cfg.threads, tasks.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            run_task(i);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::mutex error_mutex;
        std::exception_ptr error;
        {
            std::vector<std::jthread> pool;
            for (std::size_t w = 0; w < workers; ++w) {
                pool.emplace_back([&] {
                    for (auto i = next++; i < tasks.size(); i = next++) {
                        try {
                            run_task(i);
                        } catch (...) {
                            std::lock_guard lock(error_mutex);
                            if (!error) error = std::current_exception();
                            next = tasks.size();
                        }
                    }
                });
            }
        }
        if (error) {
            std::rethrow_exception(error);
        }
    }

    for (auto const& a : audits) {
        result.audit.invalid_trees += a.invalid_trees;
        result.audit.archive_violations += a.archive_violations;
        result.audit.population_limit_violations += a.population_limit_violations;
        result.audit.redundant_admissions += a.redundant_admissions;
    }
    result.summary = summarize(result.rows);
    return result;
}

} // namespace mogp

#endif
