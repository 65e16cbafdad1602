#ifndef MOGP_TREE_HPP
#define MOGP_TREE_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mogp {

class TreeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A terminal x_i or its complement ~x_i, 1-based variable index.
class Terminal {
public:
    constexpr Terminal() = default;

    static constexpr Terminal positive(std::uint32_t index) { return Terminal(static_cast<std::int32_t>(index)); }
    static constexpr Terminal negated(std::uint32_t index) { return Terminal(-static_cast<std::int32_t>(index)); }
    static constexpr Terminal from_code(std::int32_t code) { return Terminal(code); }

    constexpr std::uint32_t index() const { return static_cast<std::uint32_t>(code_ < 0 ? -code_ : code_); }
    constexpr bool is_negated() const { return code_ < 0; }
    constexpr Terminal complement() const { return Terminal(-code_); }
    constexpr std::int32_t code() const { return code_; }

    friend constexpr bool operator==(Terminal, Terminal) = default;

    std::string to_string() const { return (is_negated() ? "~x" : "x") + std::to_string(index()); }

private:
    constexpr explicit Terminal(std::int32_t code) : code_(code) {}
    std::int32_t code_ = 1;
};

enum class ChildOrder { new_left, new_right };

/// Binary join tree over signed terminals.
///
/// Nodes are stored in inorder together with their depth. In a tree where
/// every internal node has two children, the inorder sequence alternates
/// leaf, join, leaf, ..., leaf, so leaf j sits at slot 2j and the join between
/// leaves j and j+1 (their lowest common ancestor) at slot 2j+1. The depths
/// recover the shape: a node's subtree is the maximal run of strictly deeper
/// slots around it.
///
/// Node positions used by the editing primitives index this inorder
/// enumeration; leaf positions index the leaves only.
class SyntaxTree {
public:
    struct Node {
        std::int32_t code;  // 0 = join, otherwise Terminal::code()
        std::int32_t depth;
        friend bool operator==(Node, Node) = default;
    };

    SyntaxTree() = default;

    static SyntaxTree leaf(Terminal t)
    {
        SyntaxTree tree;
        tree.nodes_.push_back({t.code(), 0});
        return tree;
    }

    // J(left, right)
    static SyntaxTree join(SyntaxTree const& left, SyntaxTree const& right)
    {
        if (left.empty() || right.empty()) {
            throw TreeError("join requires two non-empty subtrees");
        }
        SyntaxTree tree;
        tree.nodes_.reserve(left.nodes_.size() + right.nodes_.size() + 1);
        for (auto n : left.nodes_) {
            tree.nodes_.push_back({n.code, n.depth + 1});
        }
        tree.nodes_.push_back({0, 0});
        for (auto n : right.nodes_) {
            tree.nodes_.push_back({n.code, n.depth + 1});
        }
        return tree;
    }

    bool empty() const { return nodes_.empty(); }
    std::size_t complexity() const { return nodes_.size(); }
    std::size_t leaf_count() const { return (nodes_.size() + 1) / 2; }

    Terminal leaf(std::size_t leaf_position) const { return Terminal::from_code(nodes_[2 * leaf_position].code); }
    std::vector<Node> const& nodes() const { return nodes_; }

    std::vector<Terminal> inorder_leaves() const
    {
        std::vector<Terminal> out;
        out.reserve(leaf_count());
        for (std::size_t i = 0; i < nodes_.size(); i += 2) {
            out.push_back(Terminal::from_code(nodes_[i].code));
        }
        return out;
    }

    std::size_t depth() const
    {
        std::int32_t d = 0;
        for (auto n : nodes_) {
            d = std::max(d, n.depth);
        }
        return empty() ? 0 : static_cast<std::size_t>(d) + 1;
    }

    void substitute_leaf(std::size_t leaf_position, Terminal t)
    {
        check_leaf(leaf_position);
        nodes_[2 * leaf_position].code = t.code();
    }

    // Replaces node v with J(t, v) or J(v, t). On the empty tree the result
    // is the single leaf t and node_position is ignored.
    void insert_at(std::size_t node_position, Terminal t, ChildOrder order)
    {
        if (empty()) {
            nodes_.push_back({t.code(), 0});
            return;
        }
        if (node_position >= nodes_.size()) {
            throw TreeError("node position " + std::to_string(node_position) + " out of range");
        }
        const auto d = nodes_[node_position].depth;
        auto [first, last] = subtree_range(node_position);
        for (auto i = first; i <= last; ++i) {
            ++nodes_[i].depth;
        }
        const Node leaf{t.code(), d + 1};
        const Node join{0, d};
        if (order == ChildOrder::new_left) {
            nodes_.insert(nodes_.begin() + static_cast<std::ptrdiff_t>(first), {leaf, join});
        } else {
            nodes_.insert(nodes_.begin() + static_cast<std::ptrdiff_t>(last + 1), {join, leaf});
        }
    }

    // Removes a leaf and its parent; the sibling subtree takes the parent's
    // place. Deleting the only leaf leaves the empty tree.
    void delete_leaf(std::size_t leaf_position)
    {
        check_leaf(leaf_position);
        if (nodes_.size() == 1) {
            nodes_.clear();
            return;
        }
        const std::size_t p = 2 * leaf_position;
        const auto parent_depth = nodes_[p].depth - 1;
        if (p > 0 && nodes_[p - 1].depth == parent_depth) {
            // right child: sibling subtree ends at p - 2
            std::size_t first = p - 2;
            while (first > 0 && nodes_[first - 1].depth > parent_depth) {
                --first;
            }
            for (auto i = first; i <= p - 2; ++i) {
                --nodes_[i].depth;
            }
            nodes_.erase(nodes_.begin() + static_cast<std::ptrdiff_t>(p - 1),
                         nodes_.begin() + static_cast<std::ptrdiff_t>(p + 1));
        } else {
            // left child: parent at p + 1, sibling subtree starts at p + 2
            std::size_t last = p + 2;
            while (last + 1 < nodes_.size() && nodes_[last + 1].depth > parent_depth) {
                ++last;
            }
            for (auto i = p + 2; i <= last; ++i) {
                --nodes_[i].depth;
            }
            nodes_.erase(nodes_.begin() + static_cast<std::ptrdiff_t>(p),
                         nodes_.begin() + static_cast<std::ptrdiff_t>(p + 2));
        }
    }

    // Inclusive inorder range covered by the subtree rooted at node_position.
    std::pair<std::size_t, std::size_t> subtree_range(std::size_t node_position) const
    {
        const auto d = nodes_[node_position].depth;
        std::size_t first = node_position;
        std::size_t last = node_position;
        while (first > 0 && nodes_[first - 1].depth > d) {
            --first;
        }
        while (last + 1 < nodes_.size() && nodes_[last + 1].depth > d) {
            ++last;
        }
        return {first, last};
    }

    // Structural check: alternating leaf/join slots and depths that describe
    // a tree in which every join has exactly two children.
    bool is_valid() const
    {
        if (empty()) {
            return true;
        }
        if (nodes_.size() % 2 == 0) {
            return false;
        }
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            const bool is_join = nodes_[i].code == 0;
            if (is_join != (i % 2 == 1)) {
                return false;
            }
        }
        return valid_range(0, nodes_.size() - 1, 0);
    }

    // Nested parenthesized form, e.g. (J (J x1 ~x4) x2); the empty tree is ().
    std::string to_string() const
    {
        if (empty()) {
            return "()";
        }
        std::string out;
        write(out, 0, nodes_.size() - 1, 0);
        return out;
    }

    static SyntaxTree parse(std::string_view text)
    {
        Parser parser{text, 0};
        parser.skip_space();
        SyntaxTree tree;
        if (parser.consume_if("()")) {
            parser.expect_end();
            return tree;
        }
        parser.read(tree.nodes_, 0);
        parser.expect_end();
        return tree;
    }

    friend bool operator==(SyntaxTree const&, SyntaxTree const&) = default;

private:
    void check_leaf(std::size_t leaf_position) const
    {
        if (empty()) {
            throw TreeError("operation requires a non-empty tree");
        }
        if (leaf_position >= leaf_count()) {
            throw TreeError("leaf position " + std::to_string(leaf_position) + " out of range");
        }
    }

    // The root of an inorder range is its unique shallowest slot.
    std::size_t root_of(std::size_t first, std::size_t last, std::int32_t depth) const
    {
        for (auto i = first + 1; i < last; i += 2) {
            if (nodes_[i].depth == depth) {
                return i;
            }
        }
        return last + 1;
    }

    bool valid_range(std::size_t first, std::size_t last, std::int32_t depth) const
    {
        if (first == last) {
            return nodes_[first].depth == depth && nodes_[first].code != 0;
        }
        const auto root = root_of(first, last, depth);
        if (root > last) {
            return false;
        }
        for (auto i = first; i <= last; ++i) {
            if (i != root && nodes_[i].depth <= depth) {
                return false;
            }
        }
        return valid_range(first, root - 1, depth + 1) && valid_range(root + 1, last, depth + 1);
    }

    void write(std::string& out, std::size_t first, std::size_t last, std::int32_t depth) const
    {
        if (first == last) {
            out += Terminal::from_code(nodes_[first].code).to_string();
            return;
        }
        const auto root = root_of(first, last, depth);
        out += "(J ";
        write(out, first, root - 1, depth + 1);
        out += ' ';
        write(out, root + 1, last, depth + 1);
        out += ')';
    }

    struct Parser {
        std::string_view text;
        std::size_t pos;

        void skip_space()
        {
            while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
                ++pos;
            }
        }

        bool consume_if(std::string_view token)
        {
            skip_space();
            if (text.substr(pos, token.size()) == token) {
                pos += token.size();
                return true;
            }
            return false;
        }

        [[noreturn]] void fail(std::string const& what) const
        {
            throw TreeError("malformed tree at offset " + std::to_string(pos) + ": " + what);
        }

        void expect_end()
        {
            skip_space();
            if (pos != text.size()) {
                fail("trailing input");
            }
        }

        void read(std::vector<Node>& out, std::int32_t depth)
        {
            skip_space();
            if (consume_if("(")) {
                if (!consume_if("J")) {
                    fail("expected J");
                }
                read(out, depth + 1);
                out.push_back({0, depth});
                read(out, depth + 1);
                if (!consume_if(")")) {
                    fail("expected )");
                }
                return;
            }
            bool negated = consume_if("~");
            if (!consume_if("x")) {
                fail("expected terminal");
            }
            std::uint64_t index = 0;
            const auto start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])) && index < (1U << 30)) {
                index = index * 10 + static_cast<std::uint64_t>(text[pos] - '0');
                ++pos;
            }
            if (pos == start || index == 0 || index >= (1U << 30)) {
                fail("bad variable index");
            }
            const auto i = static_cast<std::uint32_t>(index);
            out.push_back({(negated ? Terminal::negated(i) : Terminal::positive(i)).code(), depth});
        }
    };

    std::vector<Node> nodes_;
};

// Value-returning forms of the editing primitives.

inline std::vector<Terminal> inorder_leaves(SyntaxTree const& tree) { return tree.inorder_leaves(); }
inline std::size_t complexity(SyntaxTree const& tree) { return tree.complexity(); }

inline SyntaxTree substitute_leaf(SyntaxTree tree, std::size_t leaf_position, Terminal t)
{
    tree.substitute_leaf(leaf_position, t);
    return tree;
}

inline SyntaxTree insert_at(SyntaxTree tree, std::size_t node_position, Terminal t, ChildOrder order)
{
    tree.insert_at(node_position, t, order);
    return tree;
}

inline SyntaxTree delete_leaf(SyntaxTree tree, std::size_t leaf_position)
{
    tree.delete_leaf(leaf_position);
    return tree;
}

} // namespace mogp

#endif
