#ifndef MOGP_EVOLVE_HPP
#define MOGP_EVOLVE_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mogp/fitness.hpp"
#include "mogp/oracle.hpp"
#include "mogp/random.hpp"
#include "mogp/selection.hpp"
#include "mogp/tree.hpp"
#include "mogp/variation.hpp"

namespace mogp {

struct Individual {
    SyntaxTree tree;
    MoFitness fitness;
};

enum class OfferOutcome { rejected, replaced_equal, inserted };

/// SMO-GP archive. Members are pairwise non-dominated and hold distinct
/// objective vectors.
class Population {
public:
    explicit Population(Individual initial) { members_.push_back(std::move(initial)); }

    std::size_t size() const { return members_.size(); }
    Individual const& operator[](std::size_t i) const { return members_[i]; }
    std::span<const Individual> members() const { return members_; }

    std::vector<MoFitness> vectors() const
    {
        std::vector<MoFitness> out;
        out.reserve(members_.size());
        for (auto const& m : members_) {
            out.push_back(m.fitness);
        }
        return out;
    }

    // Rejects y if some member strictly dominates it; otherwise removes every
    // member y weakly dominates (equal vectors included) and adds y.
    OfferOutcome offer(Individual y)
    {
        for (auto const& m : members_) {
            if (dominates(m.fitness, y.fitness)) {
                return OfferOutcome::rejected;
            }
        }
        const auto before = members_.size();
        bool equal_present = false;
        std::erase_if(members_, [&](Individual const& m) {
            equal_present = equal_present || m.fitness == y.fitness;
            return weakly_dominates(y.fitness, m.fitness);
        });
        const bool unchanged_vectors = equal_present && members_.size() + 1 == before;
        members_.push_back(std::move(y));
        return unchanged_vectors ? OfferOutcome::replaced_equal : OfferOutcome::inserted;
    }

    // Exhaustive pairwise audit: no member weakly dominates another.
    bool is_mutually_non_dominated() const
    {
        for (std::size_t a = 0; a < members_.size(); ++a) {
            for (std::size_t b = 0; b < members_.size(); ++b) {
                if (a != b && weakly_dominates(members_[a].fitness, members_[b].fitness)) {
                    return false;
                }
            }
        }
        return true;
    }

private:
    std::vector<Individual> members_;
};

// One (1+1)-GP iteration in place. `scratch` is reused storage for the
// offspring. Returns true if the offspring replaced `current`.
inline bool one_plus_one_step(Individual& current, Individual& scratch, SelectionRule rule, MutationMode mode,
                              Evaluator& eval, RandomSource& rng)
{
    scratch.tree = current.tree;
    apply_mutation(scratch.tree, mode, eval.n(), rng);
    scratch.fitness = eval.mo_evaluate(scratch.tree);
    if (favors(rule, scratch.fitness, current.fitness)) {
        std::swap(current, scratch);
        return true;
    }
    return false;
}

inline Individual one_plus_one_step(Individual const& current, SelectionRule rule, MutationMode mode, Evaluator& eval,
                                    RandomSource& rng)
{
    Individual out = current;
    Individual scratch;
    one_plus_one_step(out, scratch, rule, mode, eval, rng);
    return out;
}

// One SMO-GP iteration in place: uniform parent, one offspring, archive update.
inline OfferOutcome smo_gp_step(Population& pop, MutationMode mode, Evaluator& eval, RandomSource& rng)
{
    Individual child{pop[rng.below(pop.size())].tree, {}};
    apply_mutation(child.tree, mode, eval.n(), rng);
    child.fitness = eval.mo_evaluate(child.tree);
    return pop.offer(std::move(child));
}

enum class Algorithm { gp_single, gp_multi, smogp_single, smogp_multi };

inline std::string_view to_string(Algorithm algo)
{
    switch (algo) {
    case Algorithm::gp_single: return "gp-single";
    case Algorithm::gp_multi: return "gp-multi";
    case Algorithm::smogp_single: return "smogp-single";
    case Algorithm::smogp_multi: return "smogp-multi";
    }
    return "?";
}

inline Algorithm parse_algorithm(std::string_view name)
{
    if (name == "gp-single" || name == "gp_single") return Algorithm::gp_single;
    if (name == "gp-multi" || name == "gp_multi") return Algorithm::gp_multi;
    if (name == "smogp-single" || name == "smogp_single") return Algorithm::smogp_single;
    if (name == "smogp-multi" || name == "smogp_multi") return Algorithm::smogp_multi;
    throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

constexpr bool is_population_based(Algorithm algo)
{
    return algo == Algorithm::smogp_single || algo == Algorithm::smogp_multi;
}

constexpr MutationMode mode_of(Algorithm algo)
{
    return algo == Algorithm::gp_single || algo == Algorithm::smogp_single ? MutationMode::single : MutationMode::multi;
}

// One row per accepted step (iteration 0 is the initial solution).
// s = leaves, k = expressed variables.
struct TraceRecord {
    std::uint64_t iteration;
    double f_value;
    std::size_t complexity;
    std::size_t s;
    std::size_t k;

    std::int64_t s_minus_k() const { return static_cast<std::int64_t>(s) - static_cast<std::int64_t>(k); }
};

struct RunOptions {
    std::uint64_t budget = 100'000'000;  // evaluations, the initial one included
    bool trace = false;
    bool audit = false;                  // structural and archive checks per accepted step
    bool audit_non_redundant = false;    // count redundant individuals accepted
    std::size_t population_limit = 0;    // audited when non-zero
    bool strict_target = false;          // (1+1)-GP: also require a non-redundant optimum
};

struct AuditReport {
    std::uint64_t invalid_trees = 0;
    std::uint64_t archive_violations = 0;
    std::uint64_t population_limit_violations = 0;
    std::uint64_t redundant_admissions = 0;

    bool clean() const
    {
        return invalid_trees == 0 && archive_violations == 0 && population_limit_violations == 0 &&
               redundant_admissions == 0;
    }
};

struct RunResult {
    std::uint64_t evaluations = 0;
    bool success = false;
    std::size_t max_tree_size = 0;  // largest accepted tree, initial included
    std::size_t final_population_size = 0;
    std::vector<TraceRecord> trace;
    AuditReport audit;
};

namespace detail {

inline RunResult run_one_plus_one(MutationMode mode, SelectionRule rule, Evaluator& eval, SyntaxTree init,
                                  RunOptions const& opt, RandomSource& rng)
{
    const double optimum = eval.weights().total();
    RunResult result;
    Individual current{std::move(init), {}};
    current.fitness = eval.mo_evaluate(current.tree);
    std::size_t expressed = eval.last_expressed_count();
    result.evaluations = 1;
    result.max_tree_size = current.fitness.complexity;
    result.final_population_size = 1;

    auto reached = [&] {
        if (current.fitness.f_value != optimum) {
            return false;
        }
        return !opt.strict_target || current.tree.empty() || current.fitness.complexity + 1 == 2 * expressed;
    };
    auto record = [&](std::uint64_t iteration) {
        if (opt.trace) {
            result.trace.push_back({iteration, current.fitness.f_value, current.fitness.complexity,
                                    current.tree.leaf_count(), expressed});
        }
    };

    record(0);
    Individual scratch;
    bool done = reached();
    while (!done && result.evaluations < opt.budget) {
        const bool accepted = one_plus_one_step(current, scratch, rule, mode, eval, rng);
        ++result.evaluations;
        if (!accepted) {
            continue;
        }
        expressed = eval.last_expressed_count();
        if (opt.audit && !current.tree.is_valid()) {
            ++result.audit.invalid_trees;
        }
        if (opt.audit_non_redundant && !current.tree.empty() && current.fitness.complexity + 1 != 2 * expressed) {
            ++result.audit.redundant_admissions;
        }
        result.max_tree_size = std::max(result.max_tree_size, current.fitness.complexity);
        record(result.evaluations - 1);
        done = reached();
    }
    result.success = done;
    return result;
}

inline RunResult run_smo_gp(MutationMode mode, Evaluator& eval, SyntaxTree init, RunOptions const& opt,
                            RandomSource& rng)
{
    const auto front = pareto_front(eval.kind(), eval.weights());
    RunResult result;
    Individual first{std::move(init), {}};
    first.fitness = eval.mo_evaluate(first.tree);
    result.evaluations = 1;
    result.max_tree_size = first.fitness.complexity;
    if (opt.trace) {
        result.trace.push_back({0, first.fitness.f_value, first.fitness.complexity, first.tree.leaf_count(),
                                eval.last_expressed_count()});
    }
    Population pop(std::move(first));

    bool done = covers_front(pop.vectors(), front);
    while (!done && result.evaluations < opt.budget) {
        const auto outcome = smo_gp_step(pop, mode, eval, rng);
        ++result.evaluations;
        if (outcome == OfferOutcome::rejected) {
            continue;
        }
        // the offspring is always appended last
        auto const& child = pop[pop.size() - 1];
        const auto expressed = eval.last_expressed_count();
        if (opt.audit) {
            if (!child.tree.is_valid()) {
                ++result.audit.invalid_trees;
            }
            if (!pop.is_mutually_non_dominated()) {
                ++result.audit.archive_violations;
            }
        }
        if (opt.population_limit != 0 && pop.size() > opt.population_limit) {
            ++result.audit.population_limit_violations;
        }
        if (opt.audit_non_redundant && !child.tree.empty() && child.fitness.complexity + 1 != 2 * expressed) {
            ++result.audit.redundant_admissions;
        }
        result.max_tree_size = std::max(result.max_tree_size, child.fitness.complexity);
        if (opt.trace) {
            result.trace.push_back({result.evaluations - 1, child.fitness.f_value, child.fitness.complexity,
                                    child.tree.leaf_count(), expressed});
        }
        if (outcome == OfferOutcome::inserted) {
            done = covers_front(pop.vectors(), front);
        }
    }
    result.success = done;
    result.final_population_size = pop.size();
    return result;
}

} // namespace detail

/// Runs until the oracle target holds or the evaluation budget is spent.
/// (1+1)-GP succeeds once F reaches the optimum; SMO-GP once its archive
/// holds every Pareto-front vector. The selection rule applies to (1+1)-GP
/// only.
inline RunResult run_algorithm(Algorithm algo, SelectionRule rule, Evaluator& eval, SyntaxTree init,
                               RunOptions const& opt, RandomSource& rng)
{
    if (opt.budget < 1) {
        throw ConfigError("budget must be at least 1");
    }
    if (is_population_based(algo)) {
        return detail::run_smo_gp(mode_of(algo), eval, std::move(init), opt, rng);
    }
    return detail::run_one_plus_one(mode_of(algo), rule, eval, std::move(init), opt, rng);
}

inline RunResult run_algorithm(Algorithm algo, SelectionRule rule, ProblemKind kind, WeightVector const& w,
                               SyntaxTree init, RunOptions const& opt, RandomSource& rng)
{
    Evaluator eval(kind, w);
    return run_algorithm(algo, rule, eval, std::move(init), opt, rng);
}

} // namespace mogp

#endif
