#pragma once

#include <functional>
#include <vector>

namespace ncarea {

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;

    int order() const { return static_cast<int>(nodes.size()); }
};

/// Builds the rule by Newton iteration on the Legendre recurrence.
GaussLegendreRule gauss_legendre_rule(int order);

/// Shared immutable rule cache keyed by order.
const GaussLegendreRule& cached_gauss_legendre(int order);

/// Single-panel Gauss-Legendre on [a, b].
double gauss_legendre_panel(const std::function<double(double)>& f, double a,
                            double b, const GaussLegendreRule& rule);

/// Composite Gauss-Legendre with `panels` equal panels on [a, b].
/// Panel sums accumulate left to right so results are reproducible.
double composite_gauss_legendre(const std::function<double(double)>& f,
                                double a, double b, int panels,
                                const GaussLegendreRule& rule);

struct AdaptiveResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = false;
};

/// Adaptive Gauss-Kronrod (G7,K15) with interval bisection.
/// Stops when the local error satisfies the absolute or relative target.
AdaptiveResult adaptive_gauss_kronrod(const std::function<double(double)>& f,
                                      double a, double b, double abs_tol,
                                      double rel_tol, int max_intervals = 4000);

}  // namespace ncarea
