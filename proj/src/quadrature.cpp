#include "freenoise/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>

namespace freenoise::quad {

namespace {

template <unsigned N>
void push_gauss(Rule& rule, double a, double b) {
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    // Boost stores the non-negative half; for odd N the first entry is 0.
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) {
            rule.nodes.push_back(mid);
            rule.weights.push_back(half * w[i]);
            continue;
        }
        rule.nodes.push_back(mid - half * x[i]);
        rule.weights.push_back(half * w[i]);
        rule.nodes.push_back(mid + half * x[i]);
        rule.weights.push_back(half * w[i]);
    }
}

}  // namespace

void Rule::add_panel(double a, double b, unsigned order) {
    switch (order) {
        case 8:
            push_gauss<8>(*this, a, b);
            break;
        case 12:
            push_gauss<12>(*this, a, b);
            break;
        case 20:
            push_gauss<20>(*this, a, b);
            break;
        case 30:
            push_gauss<30>(*this, a, b);
            break;
        default:
            throw ValidationError("unsupported Gauss-Legendre order " + std::to_string(order));
    }
}

void Rule::add_graded(double a, double floor, unsigned order) {
    double hi = a;
    while (hi > floor) {
        double lo = 0.5 * hi;
        add_panel(lo, hi, order);
        hi = lo;
    }
}

void Rule::add_uniform(double a, double b, double width, unsigned order) {
    if (!(b > a)) {
        return;
    }
    const auto panels = static_cast<std::size_t>(std::ceil((b - a) / width));
    const double h = (b - a) / static_cast<double>(std::max<std::size_t>(panels, 1));
    for (std::size_t k = 0; k < std::max<std::size_t>(panels, 1); ++k) {
        add_panel(a + h * static_cast<double>(k), a + h * static_cast<double>(k + 1), order);
    }
}

}  // namespace freenoise::quad
