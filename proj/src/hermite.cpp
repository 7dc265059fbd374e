#include "freenoise/hermite.hpp"

#include "freenoise/error.hpp"

#include <cmath>
#include <numbers>

namespace freenoise {

namespace {

const double kPiQuarter = std::pow(std::numbers::pi, -0.25);

}  // namespace

double hermite_poly(unsigned k, double u) {
    double prev = 1.0;
    if (k == 0) {
        return prev;
    }
    double cur = u;
    for (unsigned n = 1; n < k; ++n) {
        double next = u * cur - n * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

std::vector<double> hermite_fns(std::size_t count, double u) {
    std::vector<double> out(count, 0.0);
    if (count == 0) {
        return out;
    }
    // psi_{j+1} = sqrt(2/(j+1)) u psi_j - sqrt(j/(j+1)) psi_{j-1}, psi_j = h~_{j+1}.
    // a_j = psi_j * e^{u^2/2 - shift}; rescale when the mantissa grows.
    constexpr double kBig = 1e150;
    const double log_big = std::log(kBig);
    double shift = -0.5 * u * u;
    double prev = 0.0;
    double cur = kPiQuarter;
    out[0] = cur * std::exp(shift);
    for (std::size_t j = 0; j + 1 < count; ++j) {
        const double jd = static_cast<double>(j);
        double next = std::sqrt(2.0 / (jd + 1.0)) * u * cur - std::sqrt(jd / (jd + 1.0)) * prev;
        prev = cur;
        cur = next;
        if (std::abs(cur) > kBig) {
            cur /= kBig;
            prev /= kBig;
            shift += log_big;
        }
        out[j + 1] = shift < -745.0 ? 0.0 : cur * std::exp(shift);
    }
    return out;
}

double hermite_fn(unsigned k, double u) {
    if (k == 0) {
        throw ValidationError("Hermite functions are indexed from 1");
    }
    return hermite_fns(k, u).back();
}

std::complex<double> fourier_hermite(unsigned k, double u) {
    if (k == 0) {
        throw ValidationError("Hermite functions are indexed from 1");
    }
    static const std::complex<double> kPhases[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    return std::sqrt(2.0 * std::numbers::pi) * kPhases[(k - 1) % 4] * hermite_fn(k, u);
}

double mehler_sum(double u, double v, double s, unsigned n_terms) {
    if (std::abs(s) >= 1.0) {
        throw DivergentSeries("Mehler series diverges for |s| >= 1");
    }
    const auto hu = hermite_fns(n_terms, u);
    const auto hv = hermite_fns(n_terms, v);
    double sum = 0.0;
    double power = 1.0;
    for (unsigned n = 0; n < n_terms; ++n) {
        sum += hu[n] * hv[n] * power;
        power *= s;
    }
    return sum;
}

double mehler_closed(double u, double v, double s) {
    if (std::abs(s) >= 1.0) {
        throw DivergentSeries("Mehler kernel undefined for |s| >= 1");
    }
    const double q = 1.0 - s * s;
    return std::exp(-((1.0 + s * s) * (u * u + v * v) - 4.0 * s * u * v) / (2.0 * q)) /
           std::sqrt(std::numbers::pi * q);
}

unsigned mehler_terms_for(double s, double tol) {
    if (std::abs(s) >= 1.0) {
        throw DivergentSeries("Mehler series diverges for |s| >= 1");
    }
    if (s == 0.0) {
        return 1;
    }
    return static_cast<unsigned>(std::ceil(std::log(tol) / std::log(std::abs(s)))) + 1;
}

HermiteBasis::HermiteBasis(std::size_t max_index, std::span<const double> nodes)
    : max_index_(max_index), node_count_(nodes.size()), table_(max_index * nodes.size()) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto values = hermite_fns(max_index, nodes[i]);
        for (std::size_t k = 0; k < max_index; ++k) {
            table_[k * node_count_ + i] = values[k];
        }
    }
}

}  // namespace freenoise
