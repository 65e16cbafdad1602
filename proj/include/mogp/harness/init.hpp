#ifndef MOGP_HARNESS_INIT_HPP
#define MOGP_HARNESS_INIT_HPP

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "mogp/fitness.hpp"
#include "mogp/random.hpp"
#include "mogp/tree.hpp"
#include "mogp/variation.hpp"

namespace mogp {

// Initial-solution generators. Sizes are in leaves (random, redundant) or
// variables (non-redundant); a tree with L leaves has 2L-1 nodes.
enum class InitKind { empty, random_tree, non_redundant, redundant_blowup };

inline std::string_view to_string(InitKind kind)
{
    switch (kind) {
    case InitKind::empty: return "empty";
    case InitKind::random_tree: return "random";
    case InitKind::non_redundant: return "non-redundant";
    case InitKind::redundant_blowup: return "redundant";
    }
    return "?";
}

inline InitKind parse_init(std::string_view name)
{
    if (name == "empty") return InitKind::empty;
    if (name == "random" || name == "random-tree") return InitKind::random_tree;
    if (name == "non-redundant") return InitKind::non_redundant;
    if (name == "redundant" || name == "redundant-blowup") return InitKind::redundant_blowup;
    throw ConfigError("unknown init kind '" + std::string(name) + "'");
}

struct InitSpec {
    InitKind kind = InitKind::empty;
    std::size_t size = 0;
};

namespace detail {

inline void insert_random(SyntaxTree& tree, Terminal t, RandomSource& rng)
{
    const auto node = tree.empty() ? 0 : rng.below(tree.complexity());
    tree.insert_at(node, t, rng.coin() ? ChildOrder::new_right : ChildOrder::new_left);
}

// Random tree over m distinct positive variables, each appearing once.
inline SyntaxTree non_redundant_tree(std::size_t m, std::size_t n, RandomSource& rng, std::vector<std::uint32_t>* chosen)
{
    if (m > n) {
        throw ConfigError("non-redundant init needs m <= n (m = " + std::to_string(m) + ", n = " + std::to_string(n) + ")");
    }
    std::vector<std::uint32_t> vars(n);
    std::iota(vars.begin(), vars.end(), std::uint32_t{1});
    for (std::size_t i = 0; i < m; ++i) {
        std::swap(vars[i], vars[i + rng.below(n - i)]);
    }
    vars.resize(m);
    SyntaxTree tree;
    for (auto v : vars) {
        insert_random(tree, Terminal::positive(v), rng);
    }
    if (chosen != nullptr) {
        *chosen = std::move(vars);
    }
    return tree;
}

} // namespace detail

/// empty: the empty tree.
/// random(L): L uniform HVL-Prime inserts starting from the empty tree.
/// non-redundant(m): m distinct positive variables, each once.
/// redundant(L): a non-redundant core of min(L, max(1, n/2)) variables padded
///   to L leaves with uniform copies of the core's positive and negated
///   terminals at uniform positions.
inline SyntaxTree make_init(InitSpec spec, std::size_t n, RandomSource& rng)
{
    switch (spec.kind) {
    case InitKind::empty:
        return {};
    case InitKind::random_tree: {
        SyntaxTree tree;
        for (std::size_t i = 0; i < spec.size; ++i) {
            detail::insert_random(tree, random_terminal(n, rng), rng);
        }
        return tree;
    }
    case InitKind::non_redundant:
        return detail::non_redundant_tree(spec.size, n, rng, nullptr);
    case InitKind::redundant_blowup: {
        if (spec.size == 0) {
            throw ConfigError("redundant init needs at least one leaf");
        }
        const auto core = std::min(spec.size, std::max<std::size_t>(1, n / 2));
        std::vector<std::uint32_t> vars;
        auto tree = detail::non_redundant_tree(core, n, rng, &vars);
        for (auto leaves = core; leaves < spec.size; ++leaves) {
            const auto r = rng.below(2 * vars.size());
            const auto v = vars[r / 2];
            detail::insert_random(tree, r % 2 == 0 ? Terminal::positive(v) : Terminal::negated(v), rng);
        }
        return tree;
    }
    }
    return {};
}

} // namespace mogp

#endif
