#ifndef MOGP_VARIATION_HPP
#define MOGP_VARIATION_HPP

#include <cstddef>
#include <string>
#include <string_view>

#include "mogp/fitness.hpp"
#include "mogp/random.hpp"
#include "mogp/tree.hpp"

namespace mogp {

// single: one HVL-Prime application per mutation; multi: 1 + Pois(1).
enum class MutationMode { single, multi };

inline std::string_view to_string(MutationMode mode) { return mode == MutationMode::single ? "single" : "multi"; }

inline MutationMode parse_mode(std::string_view name)
{
    if (name == "single") return MutationMode::single;
    if (name == "multi") return MutationMode::multi;
    throw ConfigError("unknown mutation mode '" + std::string(name) + "'");
}

enum class EditKind { substitute, insert, remove };

inline std::size_t sample_k(MutationMode mode, RandomSource& rng)
{
    return mode == MutationMode::single ? 1 : 1 + rng.poisson(1.0);
}

// Uniform over the 2n terminals x1, ~x1, ..., xn, ~xn.
inline Terminal random_terminal(std::size_t n, RandomSource& rng)
{
    const auto r = rng.below(2 * n);
    const auto index = static_cast<std::uint32_t>(r / 2 + 1);
    return r % 2 == 0 ? Terminal::positive(index) : Terminal::negated(index);
}

/// One HVL-Prime application in place. The operation is uniform over
/// substitute / insert / delete; all positions and terminals are uniform.
/// On the empty tree substitute and delete leave it unchanged and insert
/// creates a single leaf. Returns the operation drawn.
inline EditKind apply_hvl_prime(SyntaxTree& tree, std::size_t n, RandomSource& rng)
{
    const auto op = static_cast<EditKind>(rng.below(3));
    if (tree.empty()) {
        if (op == EditKind::insert) {
            tree.insert_at(0, random_terminal(n, rng), ChildOrder::new_left);
        }
        return op;
    }
    switch (op) {
    case EditKind::substitute: {
        const auto leaf = rng.below(tree.leaf_count());
        tree.substitute_leaf(leaf, random_terminal(n, rng));
        break;
    }
    case EditKind::insert: {
        const auto node = rng.below(tree.complexity());
        const auto t = random_terminal(n, rng);
        tree.insert_at(node, t, rng.coin() ? ChildOrder::new_right : ChildOrder::new_left);
        break;
    }
    case EditKind::remove:
        tree.delete_leaf(rng.below(tree.leaf_count()));
        break;
    }
    return op;
}

inline SyntaxTree hvl_prime(SyntaxTree tree, std::size_t n, RandomSource& rng)
{
    apply_hvl_prime(tree, n, rng);
    return tree;
}

// Applies HVL-Prime k = sample_k(mode) times in place; returns k.
inline std::size_t apply_mutation(SyntaxTree& tree, MutationMode mode, std::size_t n, RandomSource& rng)
{
    const auto k = sample_k(mode, rng);
    for (std::size_t i = 0; i < k; ++i) {
        apply_hvl_prime(tree, n, rng);
    }
    return k;
}

struct Mutant {
    SyntaxTree tree;
    std::size_t k_used;
};

inline Mutant mutate(SyntaxTree tree, MutationMode mode, std::size_t n, RandomSource& rng)
{
    const auto k = apply_mutation(tree, mode, n, rng);
    return {std::move(tree), k};
}

} // namespace mogp

#endif
