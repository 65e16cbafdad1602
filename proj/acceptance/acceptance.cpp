// Acceptance checks A1..A9. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails. Tolerances are fixed below.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mogp/harness/suite.hpp"
#include "mogp/harness/validate.hpp"
#include "mogp/mogp.hpp"

using namespace mogp;

namespace tol {
constexpr double a3_max_spread = 3.0;
constexpr double a4_max_ratio = 12.0;
constexpr double a8_mean_k = 0.01;
constexpr double a8_p_one = 0.005;
constexpr double a8_op_freq = 0.01;
} // namespace tol

namespace {

constexpr std::uint64_t kMasterSeed = 20260101;

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Outcome {
    bool ok;
    std::string detail;
};

std::string fmt(double x, int precision = 4)
{
    std::ostringstream s;
    s.precision(precision);
    s << x;
    return s.str();
}

Outcome a1_oracle_equivalence()
{
    int checked = 0;
    for (std::size_t n = 1; n <= 3; ++n) {
        const std::vector<WeightVector> families{WeightVector::unit(n), WeightVector::pow2(n),
                                                 random_weights(n, kMasterSeed + n)};
        for (auto const& w : families) {
            for (auto kind : {ProblemKind::worder, ProblemKind::wmajority}) {
                if (brute_force_front(kind, w, n + 2) != pareto_front(kind, w)) {
                    return {false, "mismatch for " + std::string(to_string(kind)) + " n=" + std::to_string(n)};
                }
                ++checked;
            }
        }
    }
    return {true, std::to_string(checked) + " fronts equal"};
}

Outcome a2_worked_example()
{
    const auto tree = SyntaxTree::parse(
        "(J (J (J x1 ~x4) (J x2 ~x1)) (J (J ~x3 (J ~x6 x4)) (J x3 (J ~x5 x3))))");
    const WeightVector w({13, 11, 8, 7, 5, 3});
    const double wo = evaluate(ProblemKind::worder, tree, w);
    const double wm = evaluate(ProblemKind::wmajority, tree, w);
    const auto c = tree.complexity();
    return {wo == 24.0 && wm == 39.0 && c == 19,
            "WORDER=" + fmt(wo) + " WMAJORITY=" + fmt(wm) + " C=" + std::to_string(c)};
}

double spread_of(std::vector<GrowthFit> const& fits, std::string const& name)
{
    for (auto const& f : fits) {
        if (f.name == name) return f.spread;
    }
    return INFINITY;
}

Outcome a3_n_log_n()
{
    std::string detail;
    bool ok = true;
    for (auto kind : {ProblemKind::order, ProblemKind::majority}) {
        ExperimentConfig cfg;
        cfg.problem = kind;
        cfg.algo = Algorithm::gp_single;
        cfg.selection = SelectionRule::mo_parsimony;
        cfg.n_grid = {25, 50, 100, 200, 400};
        cfg.trials = 200;
        // from the empty tree both problems accept the same steps, so give
        // each its own stream
        cfg.seed = kMasterSeed + 3 + static_cast<std::uint64_t>(kind) * 1000;
        cfg.threads = worker_count();
        const auto r = run_suite(cfg);
        bool all = true;
        for (auto const& c : r.summary.cells) all = all && c.successes == c.trials;
        const double s_nlogn = spread_of(r.summary.fits, "n_log_n");
        const double s_n = spread_of(r.summary.fits, "n");
        const double s_n2 = spread_of(r.summary.fits, "n2");
        const bool pass = all && s_nlogn <= tol::a3_max_spread && s_nlogn < s_n && s_nlogn < s_n2;
        ok = ok && pass;
        detail += std::string(to_string(kind)) + ": spread n_log_n=" + fmt(s_nlogn) + " n=" + fmt(s_n) +
                  " n2=" + fmt(s_n2) + (all ? "" : " (failed trials)") + "; ";
    }
    return {ok, detail};
}

Outcome a4_t_init_linear()
{
    std::string detail;
    bool ok = true;
    for (auto kind : {ProblemKind::worder, ProblemKind::wmajority}) {
        ExperimentConfig cfg;
        cfg.problem = kind;
        cfg.weight_family = "harmonic";
        cfg.algo = Algorithm::gp_single;
        cfg.selection = SelectionRule::mo_parsimony;
        cfg.n_grid = {50};
        cfg.init = InitKind::redundant_blowup;
        cfg.init_sizes = {101, 1001, 10001};  // 201, 2001, 20001 nodes
        cfg.trials = 100;
        cfg.seed = kMasterSeed + 4 + static_cast<std::uint64_t>(kind) * 1000;
        cfg.threads = worker_count();
        const auto r = run_suite(cfg);
        std::map<std::size_t, CellSummary> by_t;
        for (auto const& c : r.summary.cells) by_t[c.t_init] = c;
        bool all = by_t.size() == 3;
        for (auto const& [t, c] : by_t) all = all && c.successes == c.trials;
        const double ratio = all ? by_t.at(20001).mean / by_t.at(2001).mean : INFINITY;
        ok = ok && all && ratio <= tol::a4_max_ratio;
        detail += std::string(to_string(kind)) + ": means";
        for (auto const& [t, c] : by_t) detail += " " + fmt(c.mean, 6);
        detail += " ratio=" + fmt(ratio) + "; ";
    }
    return {ok, detail};
}

Outcome a5_s_minus_k()
{
    ExperimentConfig cfg;
    cfg.problem = ProblemKind::worder;
    cfg.weight_family = "harmonic";
    cfg.algo = Algorithm::gp_single;
    cfg.selection = SelectionRule::mo_parsimony;
    cfg.n_grid = {20};
    cfg.init = InitKind::redundant_blowup;
    cfg.init_sizes = {200};
    cfg.trials = 50;
    cfg.trace = true;
    cfg.seed = kMasterSeed + 5;
    cfg.threads = worker_count();
    const auto r = run_suite(cfg);
    std::size_t violations = 0, steps = 0, successes = 0;
    for (std::size_t i = 0; i < r.traces.size(); ++i) {
        successes += r.rows[i].success;
        auto const& t = r.traces[i];
        for (std::size_t j = 1; j < t.size(); ++j) {
            ++steps;
            violations += t[j].s_minus_k() > t[j - 1].s_minus_k();
        }
    }
    return {violations == 0 && r.traces.size() == 50,
            std::to_string(violations) + " violations over " + std::to_string(steps) + " accepted steps (" +
                std::to_string(successes) + "/50 reached the optimum)"};
}

Outcome a6_smo_gp_front()
{
    std::string detail;
    bool ok = true;
    for (auto algo : {Algorithm::smogp_single, Algorithm::smogp_multi}) {
        for (auto kind : {ProblemKind::order, ProblemKind::majority}) {
            std::size_t trials = 0, successes = 0;
            AuditReport audit;
            for (std::size_t n : {10, 20, 40}) {
                ExperimentConfig cfg;
                cfg.problem = kind;
                cfg.algo = algo;
                cfg.n_grid = {n};
                cfg.trials = 100;
                cfg.budget = static_cast<std::uint64_t>(
                    std::floor(200.0 * static_cast<double>(n * n) * std::log(static_cast<double>(n))));
                cfg.audit = true;
                cfg.seed = kMasterSeed + 6;
                cfg.threads = worker_count();
                const auto r = run_suite(cfg);
                for (auto const& row : r.rows) {
                    ++trials;
                    successes += row.success;
                }
                audit.invalid_trees += r.audit.invalid_trees;
                audit.archive_violations += r.audit.archive_violations;
                audit.population_limit_violations += r.audit.population_limit_violations;
            }
            ok = ok && successes == trials && audit.clean();
            detail += std::string(to_string(algo)) + "/" + std::string(to_string(kind)) + " " +
                      std::to_string(successes) + "/" + std::to_string(trials) + " audit " +
                      (audit.clean() ? "clean" : "VIOLATED") + "; ";
        }
    }
    return {ok, detail};
}

Outcome a7_weighted_cubic()
{
    std::string detail;
    bool ok = true;
    for (auto kind : {ProblemKind::worder, ProblemKind::wmajority}) {
        std::size_t trials = 0, successes = 0;
        AuditReport audit;
        for (std::size_t n : {10, 20, 30}) {
            ExperimentConfig cfg;
            cfg.problem = kind;
            cfg.weight_family = "pow2";
            cfg.algo = Algorithm::smogp_single;
            cfg.n_grid = {n};
            cfg.init = InitKind::non_redundant;
            cfg.init_sizes = {n};
            cfg.trials = 100;
            cfg.budget = 100 * n * n * n;
            cfg.audit = true;  // enables the per-step redundancy audit here
            cfg.seed = kMasterSeed + 7;
            cfg.threads = worker_count();
            const auto r = run_suite(cfg);
            for (auto const& row : r.rows) {
                ++trials;
                successes += row.success;
            }
            audit.invalid_trees += r.audit.invalid_trees;
            audit.archive_violations += r.audit.archive_violations;
            audit.population_limit_violations += r.audit.population_limit_violations;
            audit.redundant_admissions += r.audit.redundant_admissions;
        }
        ok = ok && successes == trials && audit.clean();
        detail += std::string(to_string(kind)) + " " + std::to_string(successes) + "/" + std::to_string(trials) +
                  " redundant admissions " + std::to_string(audit.redundant_admissions) + "; ";
    }
    return {ok, detail};
}

Outcome a8_mutation_distribution()
{
    constexpr int kSamples = 1'000'000;
    RandomSource rng(kMasterSeed + 8);
    double sum = 0;
    int ones = 0;
    for (int i = 0; i < kSamples; ++i) {
        const auto k = mutate(SyntaxTree{}, MutationMode::multi, 10, rng).k_used;
        sum += static_cast<double>(k);
        ones += k == 1;
    }
    const double mean = sum / kSamples;
    const double p1 = static_cast<double>(ones) / kSamples;

    std::array<int, 3> ops{};
    const auto base = SyntaxTree::parse("(J (J x1 ~x2) (J x3 x4))");
    SyntaxTree tree;
    for (int i = 0; i < kSamples; ++i) {
        tree = base;
        ops[static_cast<std::size_t>(apply_hvl_prime(tree, 10, rng))]++;
    }
    bool ok = std::abs(mean - 2.0) <= tol::a8_mean_k && std::abs(p1 - std::exp(-1.0)) <= tol::a8_p_one;
    std::string detail = "mean k=" + fmt(mean, 6) + " P(k=1)=" + fmt(p1, 6) + " ops";
    for (auto c : ops) {
        const double f = static_cast<double>(c) / kSamples;
        ok = ok && std::abs(f - 1.0 / 3.0) <= tol::a8_op_freq;
        detail += " " + fmt(f, 6);
    }
    return {ok, detail};
}

Outcome a9_determinism()
{
    ExperimentConfig cfg;
    cfg.problem = ProblemKind::wmajority;
    cfg.weight_family = "harmonic";
    cfg.algo = Algorithm::smogp_multi;
    cfg.n_grid = {8, 16};
    cfg.init = InitKind::random_tree;
    cfg.init_sizes = {10, 40};
    cfg.trials = 20;
    cfg.seed = kMasterSeed + 9;
    auto csv = [](ExperimentConfig const& c) {
        std::ostringstream s;
        write_csv(s, run_suite(c).rows);
        return s.str();
    };
    const auto first = csv(cfg);
    cfg.threads = worker_count() + 1;  // scheduling must not matter either
    const auto second = csv(cfg);
    return {first == second, std::to_string(first.size()) + " bytes, identical=" + (first == second ? "yes" : "no")};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"A1 oracle equivalence", a1_oracle_equivalence},
        {"A2 worked example", a2_worked_example},
        {"A3 n log n scaling of (1+1)-GP", a3_n_log_n},
        {"A4 linear in T_init", a4_t_init_linear},
        {"A5 s-k never increases", a5_s_minus_k},
        {"A6 SMO-GP computes the front", a6_smo_gp_front},
        {"A7 weighted SMO-GP within 100 n^3", a7_weighted_cubic},
        {"A8 mutation distribution", a8_mutation_distribution},
        {"A9 deterministic CSV", a9_determinism},
    };
    int failures = 0;
    for (auto const& [name, check] : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = check();
        } catch (std::exception const& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !o.ok;
        std::printf("%s %-36s %s [%.1fs]\n", o.ok ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
