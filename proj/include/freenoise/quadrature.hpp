#pragma once

#include "freenoise/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace freenoise::quad {

/// Nodes and weights of a fixed composite rule.
struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;

    std::size_t size() const { return nodes.size(); }

    /// Appends a Gauss-Legendre panel on [a, b]. Supported orders: 8, 12, 20, 30.
    void add_panel(double a, double b, unsigned order);

    /// Geometric panels [a/2^k, a/2^{k-1}] down to `floor`; resolves integrable
    /// power singularities at the origin.
    void add_graded(double a, double floor, unsigned order);

    /// Uniform panels of width at most `width` on [a, b].
    void add_uniform(double a, double b, double width, unsigned order);

    template <class F>
    double apply(F&& f) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            sum += weights[i] * f(nodes[i]);
        }
        return sum;
    }
};

/// Adaptive 15-point Gauss-Kronrod on [a, b]; throws when the estimated error
/// stays above `tol`.
template <class F>
double adaptive(F&& f, double a, double b, double tol, double* error_out = nullptr) {
    double error = 0.0;
    double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 15, tol, &error);
    if (error_out != nullptr) {
        *error_out = error;
    }
    if (!std::isfinite(value) || error > std::max(tol, 1e2 * std::abs(value) * 2.2e-16)) {
        char msg[128];
        std::snprintf(msg, sizeof msg, "adaptive quadrature did not reach tolerance %.3g (estimate %.3g)", tol, error);
        throw QuadratureNonConvergence(msg);
    }
    return value;
}

}  // namespace freenoise::quad
