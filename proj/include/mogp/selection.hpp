#ifndef MOGP_SELECTION_HPP
#define MOGP_SELECTION_HPP

#include <string>
#include <string_view>

#include "mogp/fitness.hpp"

namespace mogp {

// F is maximized, C minimized. All comparisons are exact.

inline bool weakly_dominates(MoFitness const& y, MoFitness const& x)
{
    return y.f_value >= x.f_value && y.complexity <= x.complexity;
}

inline bool dominates(MoFitness const& y, MoFitness const& x)
{
    return weakly_dominates(y, x) && (y.f_value > x.f_value || y.complexity < x.complexity);
}

inline bool incomparable(MoFitness const& a, MoFitness const& b)
{
    return !weakly_dominates(a, b) && !weakly_dominates(b, a);
}

// f_only: accept iff F(Y) >= F(X).
// mo_parsimony: accept iff F(Y) > F(X), or F(Y) = F(X) and C(Y) <= C(X).
enum class SelectionRule { f_only, mo_parsimony };

inline std::string_view to_string(SelectionRule rule) { return rule == SelectionRule::f_only ? "f-only" : "mo-parsimony"; }

inline SelectionRule parse_selection(std::string_view name)
{
    if (name == "f-only" || name == "f_only") return SelectionRule::f_only;
    if (name == "mo-parsimony" || name == "mo_parsimony") return SelectionRule::mo_parsimony;
    throw ConfigError("unknown selection rule '" + std::string(name) + "'");
}

inline bool favors(SelectionRule rule, MoFitness const& y, MoFitness const& x)
{
    if (rule == SelectionRule::f_only) {
        return y.f_value >= x.f_value;
    }
    return y.f_value > x.f_value || (y.f_value == x.f_value && y.complexity <= x.complexity);
}

} // namespace mogp

#endif
