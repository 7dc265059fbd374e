#include "freenoise/chebyshev.hpp"

#include "freenoise/error.hpp"
#include "freenoise/quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace freenoise {

MonomialPoly multiply(const MonomialPoly& a, const MonomialPoly& b) {
    if (a.empty() || b.empty()) {
        return {};
    }
    MonomialPoly out(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j] != 0) {
                out[i + j] += a[i] * b[j];
            }
        }
    }
    trim(out);
    return out;
}

void trim(MonomialPoly& p) {
    while (!p.empty() && p.back() == 0) {
        p.pop_back();
    }
}

void ChebPoly::add(unsigned degree, const Rational& coeff) {
    if (coeff == 0) {
        return;
    }
    auto [it, inserted] = coeffs_.try_emplace(degree, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) {
            coeffs_.erase(it);
        }
    }
}

MonomialPoly ChebPoly::to_monomial() const {
    MonomialPoly out;
    for (const auto& [n, c] : coeffs_) {
        MonomialPoly u = u_poly(n);
        if (out.size() < u.size()) {
            out.resize(u.size(), Rational(0));
        }
        for (std::size_t k = 0; k < u.size(); ++k) {
            out[k] += c * u[k];
        }
    }
    trim(out);
    return out;
}

std::vector<std::string> ChebPoly::labels() const {
    std::vector<std::string> out;
    for (const auto& [n, c] : coeffs_) {
        std::string label = "U" + std::to_string(n);
        out.push_back(c == 1 ? label : to_string(c) + "*" + label);
    }
    return out;
}

MonomialPoly u_poly(unsigned n) {
    MonomialPoly prev{Rational(1)};
    if (n == 0) {
        return prev;
    }
    MonomialPoly cur{Rational(0), Rational(2)};
    for (unsigned k = 1; k < n; ++k) {
        MonomialPoly next(cur.size() + 1, Rational(0));
        for (std::size_t i = 0; i < cur.size(); ++i) {
            next[i + 1] += 2 * cur[i];
        }
        for (std::size_t i = 0; i < prev.size(); ++i) {
            next[i] -= prev[i];
        }
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

ChebPoly linearize(unsigned m, unsigned n) {
    if (m < n) {
        std::swap(m, n);
    }
    ChebPoly out;
    for (unsigned k = 0; k <= n; ++k) {
        out.add(m - n + 2 * k, Rational(1));
    }
    return out;
}

double u_value(unsigned n, double x) {
    double prev = 1.0;
    if (n == 0) {
        return prev;
    }
    double cur = 2.0 * x;
    for (unsigned k = 1; k < n; ++k) {
        double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double SemicircleLaw::density(double x) const {
    const double r = radius_value();
    if (std::abs(x) >= r) {
        return 0.0;
    }
    return 2.0 / (std::numbers::pi * r * r) * std::sqrt(r * r - x * x);
}

double orthonormal_check(unsigned m, unsigned n, const SemicircleLaw& law, double tol) {
    if (law.radius <= 0) {
        throw ValidationError("semicircle radius must be positive");
    }
    // x = r cos(theta) turns the density's square-root edges into a smooth
    // periodic integrand: (2/pi) p_m p_n sin^2(theta) on [0, pi].
    const double r = law.radius_value();
    auto integrand = [&](double theta) {
        const double x = r * std::cos(theta);
        const double s = std::sin(theta);
        return 2.0 / std::numbers::pi * law.orthonormal_poly(m, x) * law.orthonormal_poly(n, x) * s * s;
    };
    // Split at the integrand's zeros scale so GK sees a few oscillations per piece.
    const unsigned pieces = 1 + (m + n) / 4;
    double total = 0.0;
    for (unsigned k = 0; k < pieces; ++k) {
        const double a = std::numbers::pi * k / pieces;
        const double b = std::numbers::pi * (k + 1) / pieces;
        total += quad::adaptive(integrand, a, b, tol / pieces);
    }
    return total;
}

Rational catalan(unsigned n) {
    // C_{k+1} = C_k * 2(2k+1)/(k+2)
    BigInt c = 1;
    for (unsigned k = 0; k < n; ++k) {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    return Rational(c);
}

Rational semicircle_moment(unsigned k, const SemicircleLaw& law) {
    if (k % 2 == 1) {
        return Rational(0);
    }
    Rational half = law.radius / 2;
    Rational scale = 1;
    for (unsigned i = 0; i < k; ++i) {
        scale *= half;
    }
    return catalan(k / 2) * scale;
}

double moment_quadrature(unsigned k, const SemicircleLaw& law) {
    const double r = law.radius_value();
    boost::math::quadrature::tanh_sinh<double> integrator;
    return integrator.integrate([&](double x) { return std::pow(x, static_cast<int>(k)) * law.density(x); }, -r, r,
                                1e-14);
}

}  // namespace freenoise
