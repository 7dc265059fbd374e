#pragma once

#include "freenoise/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace freenoise {

/// Coefficients by power: poly[k] multiplies x^k.
using MonomialPoly = std::vector<Rational>;

MonomialPoly multiply(const MonomialPoly& a, const MonomialPoly& b);
void trim(MonomialPoly& p);

/// Finite combination sum_n c_n U_n of Chebyshev polynomials of the second kind.
class ChebPoly {
public:
    ChebPoly() = default;

    void add(unsigned degree, const Rational& coeff);

    const std::map<unsigned, Rational>& terms() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// Highest supported index; 0 for the zero polynomial.
    unsigned degree() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

    MonomialPoly to_monomial() const;

    /// "U1", "U3", ... with non-unit coefficients written as "c*Un".
    std::vector<std::string> labels() const;

    friend bool operator==(const ChebPoly&, const ChebPoly&) = default;

private:
    std::map<unsigned, Rational> coeffs_;
};

/// U_n in the monomial basis, from U_{n+1} = 2x U_n - U_{n-1}.
MonomialPoly u_poly(unsigned n);

/// U_m U_n as a sum of U's (each coefficient 1, min(m, n) + 1 terms).
ChebPoly linearize(unsigned m, unsigned n);

/// U_n(x) by the three-term recurrence.
double u_value(unsigned n, double x);

/// Semicircle law on [-radius, radius]; radius 2 is the law of X_h for a unit vector h.
struct SemicircleLaw {
    Rational radius{2};

    double radius_value() const { return to_double(radius); }
    double density(double x) const;
    /// p_n(x) = U_n(x / radius), orthonormal for this law.
    double orthonormal_poly(unsigned n, double x) const { return u_value(n, x / radius_value()); }
};

/// Quadrature value of the integral of p_m p_n against the law.
double orthonormal_check(unsigned m, unsigned n, const SemicircleLaw& law = {}, double tol = 1e-11);

Rational catalan(unsigned n);

/// k-th moment: 0 for odd k, Catalan(k/2) (radius/2)^k for even k.
Rational semicircle_moment(unsigned k, const SemicircleLaw& law = {});

/// int x^k density(x) dx by tanh-sinh quadrature in x (handles the square-root edges).
double moment_quadrature(unsigned k, const SemicircleLaw& law = {});

}  // namespace freenoise
