#ifndef MOGP_HARNESS_GROWTH_HPP
#define MOGP_HARNESS_GROWTH_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mogp/fitness.hpp"

namespace mogp {

struct GrowthPoint {
    double n;
    double t_init;  // nodes
    double mean;
};

struct GrowthLaw {
    std::string name;
    std::function<double(double n, double t_init)> g;
};

/// Named candidate: n, n_log_n, n2, n2_log_n, n3, t_init, n_t_init, or a
/// sum of those joined with '+', e.g. "t_init+n_log_n". Logs are natural.
inline GrowthLaw growth_law(std::string_view name)
{
    using Fn = std::function<double(double, double)>;
    auto atom = [](std::string_view a) -> Fn {
        if (a == "n") return [](double n, double) { return n; };
        if (a == "n_log_n") return [](double n, double) { return n * std::log(n); };
        if (a == "n2") return [](double n, double) { return n * n; };
        if (a == "n2_log_n") return [](double n, double) { return n * n * std::log(n); };
        if (a == "n3") return [](double n, double) { return n * n * n; };
        if (a == "t_init") return [](double, double t) { return t; };
        if (a == "n_t_init") return [](double n, double t) { return n * t; };
        throw ConfigError("unknown growth law '" + std::string(a) + "'");
    };
    std::vector<Fn> terms;
    std::string_view rest = name;
    while (true) {
        const auto plus = rest.find('+');
        terms.push_back(atom(rest.substr(0, plus)));
        if (plus == std::string_view::npos) {
            break;
        }
        rest.remove_prefix(plus + 1);
    }
    return {std::string(name), [terms](double n, double t) {
                double sum = 0.0;
                for (auto const& f : terms) {
                    sum += f(n, t);
                }
                return sum;
            }};
}

inline std::vector<GrowthLaw> default_growth_laws()
{
    std::vector<GrowthLaw> laws;
    for (auto name : {"n", "n_log_n", "n2", "n2_log_n", "n3", "t_init", "n_t_init"}) {
        laws.push_back(growth_law(name));
    }
    return laws;
}

struct GrowthFit {
    std::string name;
    std::vector<double> ratios;  // mean / g, per point
    double spread = 0.0;         // max ratio / min ratio
    double constant = 0.0;       // least-squares c in mean ~ c * g
    bool best = false;
};

/// Ratio-spread fit of every candidate; the smallest spread is flagged best.
inline std::vector<GrowthFit> fit_growth(std::span<const GrowthPoint> points, std::span<const GrowthLaw> laws)
{
    if (points.size() < 3) {
        throw ConfigError("growth fitting needs at least 3 points, got " + std::to_string(points.size()));
    }
    std::vector<GrowthFit> fits;
    for (auto const& law : laws) {
        GrowthFit fit{law.name, {}, 0.0, 0.0, false};
        double num = 0.0;
        double den = 0.0;
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (auto const& p : points) {
            const double g = law.g(p.n, p.t_init);
            const double r = p.mean / g;
            fit.ratios.push_back(r);
            lo = std::min(lo, r);
            hi = std::max(hi, r);
            num += p.mean * g;
            den += g * g;
        }
        fit.spread = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
        fit.constant = num / den;
        fits.push_back(std::move(fit));
    }
    auto best = std::min_element(fits.begin(), fits.end(),
                                 [](GrowthFit const& a, GrowthFit const& b) { return a.spread < b.spread; });
    if (best != fits.end()) {
        best->best = true;
    }
    return fits;
}

} // namespace mogp

#endif
