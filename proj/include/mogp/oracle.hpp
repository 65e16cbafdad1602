#ifndef MOGP_ORACLE_HPP
#define MOGP_ORACLE_HPP

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "mogp/fitness.hpp"
#include "mogp/selection.hpp"
#include "mogp/tree.hpp"

namespace mogp {

// Objective vectors sorted by ascending complexity.
using ParetoFront = std::vector<MoFitness>;

// Every variable expressed: the sum of all effective weights.
inline double optimum_value(ProblemKind kind, WeightVector const& w)
{
    return Evaluator(kind, w).weights().total();
}

/// {(0,0)} plus, for j = 1..n, the sum of the j largest weights at
/// complexity 2j-1 (the tree holding exactly those j positive variables).
/// The same for all four problems; ORDER and MAJORITY use unit weights.
inline ParetoFront pareto_front(ProblemKind kind, WeightVector const& w)
{
    Evaluator eval(kind, w);
    ParetoFront front{{0.0, 0}};
    double prefix = 0.0;
    std::size_t j = 0;
    for (auto i : eval.weights().rank_order()) {
        prefix += eval.weights()[i];
        ++j;
        front.push_back({prefix, 2 * j - 1});
    }
    return front;
}

/// Independent front by exhaustive enumeration of leaf sequences. Fitness
/// depends only on the inorder leaf sequence, and every tree with L leaves
/// has complexity 2L-1, so enumerating sequences of length 0..max_leaves
/// covers every tree of up to that many leaves.
inline ParetoFront brute_force_front(ProblemKind kind, WeightVector const& w, std::size_t max_leaves)
{
    const auto n = w.size();
    if (n > 4 || max_leaves > 8) {
        throw ConfigError("brute force limited to n <= 4 and max_leaves <= 8");
    }
    Evaluator eval(kind, w);
    const auto alphabet = 2 * n;
    std::vector<MoFitness> best;  // best F per sequence length
    std::vector<Terminal> seq;
    std::vector<std::size_t> digits;
    for (std::size_t len = 0; len <= max_leaves; ++len) {
        digits.assign(len, 0);
        seq.resize(len);
        double top = 0.0;
        bool first = true;
        while (true) {
            for (std::size_t p = 0; p < len; ++p) {
                const auto index = static_cast<std::uint32_t>(digits[p] / 2 + 1);
                seq[p] = digits[p] % 2 == 0 ? Terminal::positive(index) : Terminal::negated(index);
            }
            const double f = eval.evaluate(seq);
            if (first || f > top) {
                top = f;
                first = false;
            }
            std::size_t p = 0;
            while (p < len && ++digits[p] == alphabet) {
                digits[p] = 0;
                ++p;
            }
            if (p == len) {
                break;
            }
        }
        best.push_back({top, len == 0 ? 0 : 2 * len - 1});
    }
    ParetoFront front;
    for (auto const& candidate : best) {
        const bool dominated = std::any_of(best.begin(), best.end(),
                                           [&](MoFitness const& other) { return dominates(other, candidate); });
        const bool duplicate = std::find(front.begin(), front.end(), candidate) != front.end();
        if (!dominated && !duplicate) {
            front.push_back(candidate);
        }
    }
    std::sort(front.begin(), front.end(), [](auto const& a, auto const& b) { return a.complexity < b.complexity; });
    return front;
}

// Complexity equals 2k-1 for k expressed variables; the empty tree counts.
inline bool is_non_redundant(SyntaxTree const& tree, Evaluator& eval)
{
    if (tree.empty()) {
        return true;
    }
    return tree.complexity() + 1 == 2 * eval.expressed_count(tree);
}

inline bool is_non_redundant(SyntaxTree const& tree, ProblemKind kind, WeightVector const& w)
{
    Evaluator eval(kind, w);
    return is_non_redundant(tree, eval);
}

// Every front vector appears among the given vectors.
inline bool covers_front(std::span<const MoFitness> vectors, ParetoFront const& front)
{
    return std::all_of(front.begin(), front.end(), [&](MoFitness const& target) {
        return std::find(vectors.begin(), vectors.end(), target) != vectors.end();
    });
}

// Single-objective success is judged on F alone.
inline bool target_reached(MoFitness const& current, ProblemKind kind, WeightVector const& w)
{
    return current.f_value == optimum_value(kind, w);
}

inline bool target_reached(std::span<const MoFitness> archive, ProblemKind kind, WeightVector const& w)
{
    return covers_front(archive, pareto_front(kind, w));
}

} // namespace mogp

#endif
