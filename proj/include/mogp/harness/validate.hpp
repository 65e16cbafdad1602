#ifndef MOGP_HARNESS_VALIDATE_HPP
#define MOGP_HARNESS_VALIDATE_HPP

#include <charconv>
#include <cstddef>
#include <string>
#include <vector>

#include "mogp/evolve.hpp"
#include "mogp/fitness.hpp"
#include "mogp/harness/init.hpp"
#include "mogp/oracle.hpp"
#include "mogp/random.hpp"
#include "mogp/variation.hpp"

namespace mogp {

// Shortest decimal that round-trips; integral values print without a point.
inline std::string format_number(double value)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return ec == std::errc{} ? std::string(buf, end) : std::to_string(value);
}

inline std::string format_front(ParetoFront const& front)
{
    std::string out = "{";
    for (std::size_t i = 0; i < front.size(); ++i) {
        if (i > 0) out += ',';
        out += '(' + format_number(front[i].f_value) + ',' + std::to_string(front[i].complexity) + ')';
    }
    return out + '}';
}

struct ValidationCheck {
    std::string name;
    bool ok;
};

// A positive weight vector with entries in [0.5, 10), drawn from `seed`.
inline WeightVector random_weights(std::size_t n, std::uint64_t seed)
{
    RandomSource rng(seed);
    std::vector<double> w(n);
    for (auto& x : w) {
        x = 0.5 + 9.5 * rng.uniform01();
    }
    return WeightVector(std::move(w));
}

/// Oracle-equivalence and invariant checks for every size 1..max_n (<= 4).
inline std::vector<ValidationCheck> run_validation(std::size_t max_n, std::uint64_t seed)
{
    if (max_n < 1 || max_n > 4) {
        throw ConfigError("validate supports 1 <= n <= 4");
    }
    std::vector<ValidationCheck> checks;
    const ProblemKind kinds[] = {ProblemKind::order, ProblemKind::majority, ProblemKind::worder, ProblemKind::wmajority};
    for (std::size_t n = 1; n <= max_n; ++n) {
        const std::vector<std::pair<std::string, WeightVector>> families{
            {"unit", WeightVector::unit(n)},
            {"pow2", WeightVector::pow2(n)},
            {"harmonic", WeightVector::harmonic(n)},
            {"random", random_weights(n, seed + n)}};
        for (auto const& [family, w] : families) {
            for (auto kind : kinds) {
                const auto front = pareto_front(kind, w);
                const auto brute = brute_force_front(kind, w, n + 2);
                bool pairwise = true;
                for (auto const& a : front) {
                    for (auto const& b : front) {
                        pairwise = pairwise && (a == b || incomparable(a, b));
                    }
                }
                const std::string label =
                    std::string(to_string(kind)) + " " + family + " n=" + std::to_string(n);
                checks.push_back({"front == brute force: " + label, front == brute});
                checks.push_back({"front size n+1, pairwise incomparable: " + label,
                                  front.size() == n + 1 && pairwise});
            }
        }

        // structural invariants under long random mutation walks
        RandomSource rng(seed ^ (0x5eedULL + n));
        SyntaxTree tree;
        bool structure_ok = true;
        for (int step = 0; step < 5000; ++step) {
            apply_mutation(tree, step % 2 == 0 ? MutationMode::single : MutationMode::multi, n, rng);
            structure_ok = structure_ok && tree.is_valid() &&
                           (tree.empty() ? tree.complexity() == 0 : tree.complexity() == 2 * tree.leaf_count() - 1) &&
                           SyntaxTree::parse(tree.to_string()) == tree;
        }
        checks.push_back({"tree invariants under mutation n=" + std::to_string(n), structure_ok});

        for (auto algo : {Algorithm::smogp_single, Algorithm::smogp_multi}) {
            for (auto kind : {ProblemKind::order, ProblemKind::majority}) {
                RunOptions opt;
                opt.budget = 1'000'000;
                opt.audit = true;
                opt.population_limit = n + 1;
                RandomSource run_rng(derive_seed(seed, static_cast<std::uint32_t>(n), 0));
                auto init = make_init({InitKind::random_tree, 2 * n}, n, run_rng);
                auto result = run_algorithm(algo, SelectionRule::mo_parsimony, kind, WeightVector::unit(n),
                                            std::move(init), opt, run_rng);
                checks.push_back({"audited " + std::string(to_string(algo)) + " on " + std::string(to_string(kind)) +
                                      " n=" + std::to_string(n),
                                  result.success && result.audit.clean()});
            }
        }
    }
    return checks;
}

} // namespace mogp

#endif
