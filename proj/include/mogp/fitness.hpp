#ifndef MOGP_FITNESS_HPP
#define MOGP_FITNESS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mogp/tree.hpp"

namespace mogp {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ProblemKind { order, majority, worder, wmajority };

inline std::string_view to_string(ProblemKind kind)
{
    switch (kind) {
    case ProblemKind::order: return "mo-order";
    case ProblemKind::majority: return "mo-majority";
    case ProblemKind::worder: return "mo-worder";
    case ProblemKind::wmajority: return "mo-wmajority";
    }
    return "?";
}

// Accepts both the bare problem name and its mo- form.
inline ProblemKind parse_problem(std::string_view name)
{
    if (name.starts_with("mo-")) {
        name.remove_prefix(3);
    }
    if (name == "order") return ProblemKind::order;
    if (name == "majority") return ProblemKind::majority;
    if (name == "worder") return ProblemKind::worder;
    if (name == "wmajority") return ProblemKind::wmajority;
    throw ConfigError("unknown problem '" + std::string(name) + "'");
}

constexpr bool is_weighted(ProblemKind kind) { return kind == ProblemKind::worder || kind == ProblemKind::wmajority; }
constexpr bool uses_order_rule(ProblemKind kind) { return kind == ProblemKind::order || kind == ProblemKind::worder; }

/// Positive weights w_1..w_n, 1-based. Also keeps the variables ranked by
/// descending weight (ties by index); every weight sum in the library is
/// accumulated in that order so equal sets give bit-identical sums.
class WeightVector {
public:
    explicit WeightVector(std::vector<double> weights) : weights_(std::move(weights))
    {
        if (weights_.empty()) {
            throw ConfigError("weight vector must not be empty");
        }
        for (std::size_t i = 0; i < weights_.size(); ++i) {
            if (!std::isfinite(weights_[i]) || !(weights_[i] > 0.0)) {
                throw ConfigError("weight w" + std::to_string(i + 1) + " must be positive and finite");
            }
        }
        rank_.resize(weights_.size());
        std::iota(rank_.begin(), rank_.end(), std::uint32_t{1});
        std::stable_sort(rank_.begin(), rank_.end(),
                         [this](std::uint32_t a, std::uint32_t b) { return weights_[a - 1] > weights_[b - 1]; });
    }

    static WeightVector unit(std::size_t n) { return WeightVector(std::vector<double>(n, 1.0)); }

    static WeightVector harmonic(std::size_t n)
    {
        std::vector<double> w(n);
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = 1.0 / static_cast<double>(i + 1);
        }
        return WeightVector(std::move(w));
    }

    // w_i = 2^(n-i)
    static WeightVector pow2(std::size_t n)
    {
        std::vector<double> w(n);
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = std::ldexp(1.0, static_cast<int>(n - 1 - i));
        }
        return WeightVector(std::move(w));
    }

    std::size_t size() const { return weights_.size(); }
    double operator[](std::size_t variable) const { return weights_[variable - 1]; }
    std::span<const double> values() const { return weights_; }
    std::span<const std::uint32_t> rank_order() const { return rank_; }

    double total() const
    {
        double sum = 0.0;
        for (auto i : rank_) {
            sum += weights_[i - 1];
        }
        return sum;
    }

    bool is_unit() const
    {
        return std::all_of(weights_.begin(), weights_.end(), [](double w) { return w == 1.0; });
    }

private:
    std::vector<double> weights_;
    std::vector<std::uint32_t> rank_;
};

inline WeightVector load_weights(std::string const& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open weight file '" + path + "'");
    }
    std::vector<double> w;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        try {
            std::size_t used = 0;
            w.push_back(std::stod(line.substr(first), &used));
            if (line.find_first_not_of(" \t\r", first + used) != std::string::npos) {
                throw std::invalid_argument("trailing text");
            }
        } catch (std::exception const&) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": not a number");
        }
    }
    return WeightVector(std::move(w));
}

// unit, harmonic, pow2, or a path prefixed with "file:"
inline WeightVector make_weights(std::string_view family, std::size_t n)
{
    if (family == "unit") return WeightVector::unit(n);
    if (family == "harmonic") return WeightVector::harmonic(n);
    if (family == "pow2") {
        if (n > 1000) {
            throw ConfigError("pow2 weights overflow for n > 1000");
        }
        return WeightVector::pow2(n);
    }
    if (family.starts_with("file:")) {
        auto w = load_weights(std::string(family.substr(5)));
        if (w.size() != n) {
            throw ConfigError("weight file has " + std::to_string(w.size()) + " entries, expected n = " + std::to_string(n));
        }
        return w;
    }
    throw ConfigError("unknown weight family '" + std::string(family) + "'");
}

struct MoFitness {
    double f_value = 0.0;
    std::size_t complexity = 0;

    friend bool operator==(MoFitness const&, MoFitness const&) = default;
};

namespace detail {

inline std::size_t max_index(std::span<const Terminal> leaves)
{
    std::size_t n = 0;
    for (auto t : leaves) {
        n = std::max<std::size_t>(n, t.index());
    }
    return n;
}

} // namespace detail

// Variables whose first occurrence among {x_i, ~x_i} is positive, ascending.
inline std::vector<std::size_t> expressed_order(std::span<const Terminal> leaves)
{
    std::vector<std::uint8_t> seen(detail::max_index(leaves) + 1, 0);
    std::vector<std::size_t> out;
    for (auto t : leaves) {
        if (!seen[t.index()]) {
            seen[t.index()] = 1;
            if (!t.is_negated()) {
                out.push_back(t.index());
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Variables with count(x_i) >= count(~x_i) and count(x_i) >= 1, ascending.
inline std::vector<std::size_t> expressed_majority(std::span<const Terminal> leaves)
{
    const auto n = detail::max_index(leaves);
    std::vector<std::int64_t> balance(n + 1, 0);
    std::vector<std::uint8_t> present(n + 1, 0);
    for (auto t : leaves) {
        if (t.is_negated()) {
            --balance[t.index()];
        } else {
            ++balance[t.index()];
            present[t.index()] = 1;
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i <= n; ++i) {
        if (present[i] && balance[i] >= 0) {
            out.push_back(i);
        }
    }
    return out;
}

/// Evaluates one problem instance. Holds scratch buffers, so keep one per
/// thread; evaluation itself never allocates.
class Evaluator {
public:
    Evaluator(ProblemKind kind, WeightVector weights)
        : kind_(kind)
        , weights_(is_weighted(kind) ? std::move(weights) : WeightVector::unit(weights.size()))
        , expressed_(weights_.size() + 1)
        , balance_(weights_.size() + 1)
    {
    }

    ProblemKind kind() const { return kind_; }
    std::size_t n() const { return weights_.size(); }
    // Weights actually in effect: all ones for ORDER and MAJORITY.
    WeightVector const& weights() const { return weights_; }

    double evaluate(SyntaxTree const& tree) { return evaluate_leaves(tree.leaf_count(), [&](std::size_t j) { return tree.leaf(j); }); }

    double evaluate(std::span<const Terminal> leaves)
    {
        return evaluate_leaves(leaves.size(), [&](std::size_t j) { return leaves[j]; });
    }

    MoFitness mo_evaluate(SyntaxTree const& tree) { return {evaluate(tree), tree.complexity()}; }

    // Number of expressed variables of the most recent evaluation.
    std::size_t last_expressed_count() const { return last_expressed_; }

    std::size_t expressed_count(SyntaxTree const& tree)
    {
        evaluate(tree);
        return last_expressed_;
    }

private:
    template <typename LeafAt>
    double evaluate_leaves(std::size_t count, LeafAt leaf_at)
    {
        std::fill(expressed_.begin(), expressed_.end(), 0);
        if (uses_order_rule(kind_)) {
            // 1 = expressed positive, 2 = blocked by an earlier complement
            for (std::size_t j = 0; j < count; ++j) {
                const auto t = leaf_at(j);
                const auto i = checked(t);
                if (expressed_[i] == 0) {
                    expressed_[i] = t.is_negated() ? 2 : 1;
                }
            }
        } else {
            std::fill(balance_.begin(), balance_.end(), 0);
            for (std::size_t j = 0; j < count; ++j) {
                const auto t = leaf_at(j);
                const auto i = checked(t);
                if (t.is_negated()) {
                    --balance_[i];
                } else {
                    ++balance_[i];
                    expressed_[i] = 1;
                }
            }
            for (std::size_t i = 1; i < balance_.size(); ++i) {
                if (balance_[i] < 0) {
                    expressed_[i] = 0;
                }
            }
        }
        double sum = 0.0;
        std::size_t k = 0;
        for (auto i : weights_.rank_order()) {
            if (expressed_[i] == 1) {
                sum += weights_[i];
                ++k;
            }
        }
        last_expressed_ = k;
        return sum;
    }

    std::size_t checked(Terminal t) const
    {
        const auto i = t.index();
        if (i == 0 || i > weights_.size()) {
            throw ConfigError("terminal " + t.to_string() + " outside x1..x" + std::to_string(weights_.size()));
        }
        return i;
    }

    ProblemKind kind_;
    WeightVector weights_;
    std::vector<std::uint8_t> expressed_;
    std::vector<std::int64_t> balance_;
    std::size_t last_expressed_ = 0;
};

inline double evaluate(ProblemKind kind, SyntaxTree const& tree, WeightVector const& w)
{
    return Evaluator(kind, w).evaluate(tree);
}

inline double evaluate_leaves(ProblemKind kind, std::span<const Terminal> leaves, WeightVector const& w)
{
    return Evaluator(kind, w).evaluate(leaves);
}

inline MoFitness mo_evaluate(ProblemKind kind, SyntaxTree const& tree, WeightVector const& w)
{
    return Evaluator(kind, w).mo_evaluate(tree);
}

} // namespace mogp

#endif
