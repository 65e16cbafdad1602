#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>

#include "fixtures.hpp"
#include "mogp/random.hpp"
#include "mogp/tree.hpp"
#include "mogp/variation.hpp"

using namespace mogp;

namespace {

const Terminal x1 = Terminal::positive(1);
const Terminal x2 = Terminal::positive(2);
const Terminal nx2 = Terminal::negated(2);

SyntaxTree random_tree(std::size_t leaves, std::size_t n, RandomSource& rng)
{
    SyntaxTree t;
    for (std::size_t i = 0; i < leaves; ++i) {
        t.insert_at(t.empty() ? 0 : rng.below(t.complexity()), random_terminal(n, rng),
                    rng.coin() ? ChildOrder::new_left : ChildOrder::new_right);
    }
    return t;
}

} // namespace

TEST(Tree, InorderLeavesOfExample)
{
    auto tree = test::example_tree();
    EXPECT_EQ(inorder_leaves(tree), test::example_leaves());
    EXPECT_EQ(tree.leaf_count(), 10u);
    EXPECT_TRUE(tree.is_valid());
}

TEST(Tree, InorderLeavesTrivialCases)
{
    EXPECT_TRUE(inorder_leaves(SyntaxTree{}).empty());
    auto single = SyntaxTree::leaf(Terminal::positive(3));
    ASSERT_EQ(inorder_leaves(single).size(), 1u);
    EXPECT_EQ(inorder_leaves(single)[0], Terminal::positive(3));
}

TEST(Tree, Complexity)
{
    EXPECT_EQ(complexity(test::example_tree()), 19u);
    EXPECT_EQ(complexity(SyntaxTree{}), 0u);
    EXPECT_EQ(complexity(SyntaxTree::leaf(x1)), 1u);
}

TEST(Tree, SubstituteLeaf)
{
    EXPECT_EQ(substitute_leaf(SyntaxTree::leaf(x1), 0, nx2), SyntaxTree::leaf(nx2));

    auto tree = test::example_tree();
    for (std::size_t j = 0; j < tree.leaf_count(); ++j) {
        auto out = substitute_leaf(tree, j, nx2);
        EXPECT_EQ(out.complexity(), 19u);
        auto expected = test::example_leaves();
        expected[j] = nx2;
        EXPECT_EQ(out.inorder_leaves(), expected);
        // same terminal: unchanged
        EXPECT_EQ(substitute_leaf(tree, j, tree.leaf(j)), tree);
    }
}

TEST(Tree, SubstituteErrors)
{
    EXPECT_THROW(substitute_leaf(SyntaxTree{}, 0, x1), TreeError);
    EXPECT_THROW(substitute_leaf(test::example_tree(), 10, x1), TreeError);
}

TEST(Tree, InsertOnEmptyCreatesLeaf)
{
    EXPECT_EQ(insert_at(SyntaxTree{}, 7, x1, ChildOrder::new_right), SyntaxTree::leaf(x1));
}

TEST(Tree, InsertLeftOfSingleLeaf)
{
    auto out = insert_at(SyntaxTree::leaf(x1), 0, x2, ChildOrder::new_left);
    EXPECT_EQ(out.inorder_leaves(), (std::vector<Terminal>{x2, x1}));
    EXPECT_EQ(out.complexity(), 3u);
    EXPECT_EQ(out.to_string(), "(J x2 x1)");
}

TEST(Tree, InsertAtEveryNodeOfExample)
{
    const auto tree = test::example_tree();
    for (std::size_t p = 0; p < tree.complexity(); ++p) {
        for (auto order : {ChildOrder::new_left, ChildOrder::new_right}) {
            auto out = insert_at(tree, p, nx2, order);
            EXPECT_EQ(out.complexity(), 21u);
            EXPECT_EQ(out.leaf_count(), 11u);
            EXPECT_TRUE(out.is_valid());
            // removing the new leaf yields the original sequence
            auto leaves = out.inorder_leaves();
            bool restored = false;
            for (std::size_t j = 0; j < leaves.size() && !restored; ++j) {
                auto copy = leaves;
                copy.erase(copy.begin() + static_cast<std::ptrdiff_t>(j));
                restored = leaves[j] == nx2 && copy == test::example_leaves();
            }
            EXPECT_TRUE(restored);
        }
    }
}

TEST(Tree, InsertRejectsBadPosition)
{
    EXPECT_THROW(insert_at(test::example_tree(), 19, x1, ChildOrder::new_left), TreeError);
}

TEST(Tree, InsertPlacesSubtreeUnderNewJoin)
{
    // node 1 is the root join of (J x1 x2); inserting to its right wraps the whole tree
    auto tree = SyntaxTree::parse("(J x1 x2)");
    EXPECT_EQ(insert_at(tree, 1, nx2, ChildOrder::new_right).to_string(), "(J (J x1 x2) ~x2)");
    EXPECT_EQ(insert_at(tree, 2, nx2, ChildOrder::new_left).to_string(), "(J x1 (J ~x2 x2))");
}

TEST(Tree, DeleteBaseCases)
{
    EXPECT_EQ(delete_leaf(SyntaxTree::leaf(x1), 0), SyntaxTree{});
    EXPECT_EQ(delete_leaf(SyntaxTree::parse("(J x1 x2)"), 1), SyntaxTree::leaf(x1));
    EXPECT_EQ(delete_leaf(SyntaxTree::parse("(J x1 x2)"), 0), SyntaxTree::leaf(x2));
    EXPECT_THROW(delete_leaf(SyntaxTree{}, 0), TreeError);
    EXPECT_THROW(delete_leaf(SyntaxTree::leaf(x1), 1), TreeError);
}

TEST(Tree, DeleteEveryLeafOfExample)
{
    const auto tree = test::example_tree();
    for (std::size_t j = 0; j < tree.leaf_count(); ++j) {
        auto out = delete_leaf(tree, j);
        EXPECT_EQ(out.complexity(), 17u);
        EXPECT_TRUE(out.is_valid());
        auto expected = test::example_leaves();
        expected.erase(expected.begin() + static_cast<std::ptrdiff_t>(j));
        EXPECT_EQ(out.inorder_leaves(), expected);
    }
}

TEST(Tree, DeleteSiblingTakesParentPlace)
{
    auto tree = SyntaxTree::parse("(J (J x1 x2) (J x3 x4))");
    EXPECT_EQ(delete_leaf(tree, 1).to_string(), "(J x1 (J x3 x4))");
    EXPECT_EQ(delete_leaf(tree, 2).to_string(), "(J (J x1 x2) x4)");
}

TEST(Tree, InsertThenDeleteRestoresTree)
{
    RandomSource rng(11);
    for (int round = 0; round < 300; ++round) {
        const auto tree = random_tree(1 + rng.below(30), 6, rng);
        const auto p = rng.below(tree.complexity());
        const auto [first, last] = tree.subtree_range(p);
        const bool left = rng.coin();
        auto grown = insert_at(tree, p, Terminal::negated(9), left ? ChildOrder::new_left : ChildOrder::new_right);
        const auto new_leaf = left ? first / 2 : (last + 2) / 2;
        ASSERT_EQ(grown.leaf(new_leaf), Terminal::negated(9));
        EXPECT_EQ(delete_leaf(grown, new_leaf), tree);
    }
}

TEST(Tree, NodeCountInvariantUnderRandomEdits)
{
    RandomSource rng(5);
    SyntaxTree tree;
    for (int step = 0; step < 20000; ++step) {
        const auto before = tree.inorder_leaves();
        const auto c = tree.complexity();
        apply_hvl_prime(tree, 4, rng);
        ASSERT_TRUE(tree.is_valid());
        ASSERT_EQ(tree.complexity(), tree.empty() ? 0 : 2 * tree.leaf_count() - 1);
        const auto after = tree.inorder_leaves();
        // sequences differ by one substitution, insertion or removal
        const auto diff = static_cast<long>(after.size()) - static_cast<long>(before.size());
        ASSERT_LE(std::abs(diff), 1);
        if (diff == 0) {
            std::size_t mismatches = 0;
            for (std::size_t i = 0; i < after.size(); ++i) mismatches += after[i] != before[i];
            ASSERT_LE(mismatches, 1u);
            ASSERT_EQ(tree.complexity(), c);
        } else {
            auto const& longer = diff > 0 ? after : before;
            auto const& shorter = diff > 0 ? before : after;
            std::size_t i = 0;
            while (i < shorter.size() && shorter[i] == longer[i]) ++i;
            ASSERT_TRUE(std::equal(shorter.begin() + static_cast<std::ptrdiff_t>(i), shorter.end(),
                                   longer.begin() + static_cast<std::ptrdiff_t>(i) + 1));
            if (diff > 0) {
                ASSERT_EQ(tree.complexity(), c == 0 ? 1 : c + 2);
            } else {
                ASSERT_EQ(tree.complexity(), c == 1 ? 0 : c - 2);
            }
        }
    }
}

TEST(Tree, SerializationRoundTrip)
{
    EXPECT_EQ(SyntaxTree{}.to_string(), "()");
    EXPECT_EQ(SyntaxTree::parse("()"), SyntaxTree{});
    EXPECT_EQ(SyntaxTree::parse("(J (J x1 ~x4) x2)").to_string(), "(J (J x1 ~x4) x2)");
    RandomSource rng(3);
    for (int i = 0; i < 200; ++i) {
        auto tree = random_tree(rng.below(40), 12, rng);
        EXPECT_EQ(SyntaxTree::parse(tree.to_string()), tree);
    }
}

TEST(Tree, ParseErrors)
{
    for (auto bad : {"", "(J x1)", "(K x1 x2)", "x0", "~", "(J x1 x2) x3", "(J x1 x2", "y1", "(J () x1)"}) {
        EXPECT_THROW(SyntaxTree::parse(bad), TreeError) << bad;
    }
}
