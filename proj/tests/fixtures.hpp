#ifndef MOGP_TESTS_FIXTURES_HPP
#define MOGP_TESTS_FIXTURES_HPP

#include <vector>

#include "mogp/fitness.hpp"
#include "mogp/tree.hpp"

namespace mogp::test {

// A tree whose inorder leaves are x1 ~x4 x2 ~x1 ~x3 ~x6 x4 x3 ~x5 x3 (C = 19).
inline SyntaxTree example_tree()
{
    return SyntaxTree::parse("(J (J (J x1 ~x4) (J x2 ~x1)) (J (J ~x3 (J ~x6 x4)) (J x3 (J ~x5 x3))))");
}

inline std::vector<Terminal> example_leaves()
{
    auto p = [](std::uint32_t i) { return Terminal::positive(i); };
    auto m = [](std::uint32_t i) { return Terminal::negated(i); };
    return {p(1), m(4), p(2), m(1), m(3), m(6), p(4), p(3), m(5), p(3)};
}

inline WeightVector example_weights() { return WeightVector({13, 11, 8, 7, 5, 3}); }

} // namespace mogp::test

#endif
