#include "freenoise/chebyshev.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace freenoise;

TEST_CASE("U_n in the monomial basis") {
    CHECK(u_poly(0) == MonomialPoly{1});
    CHECK(u_poly(1) == MonomialPoly{0, 2});
    CHECK(u_poly(3) == MonomialPoly{0, -4, 0, 8});
}

TEST_CASE("u_value against the trigonometric form") {
    for (unsigned n = 0; n <= 40; ++n) {
        for (double theta : {0.3, 1.1, 2.5}) {
            const double oracle = std::sin((n + 1) * theta) / std::sin(theta);
            CHECK(u_value(n, std::cos(theta)) == doctest::Approx(oracle).epsilon(1e-10));
        }
    }
}

TEST_CASE("linearization") {
    CHECK(linearize(2, 1).labels() == std::vector<std::string>{"U1", "U3"});
    CHECK(linearize(5, 0).labels() == std::vector<std::string>{"U5"});
    CHECK(linearize(1, 1).labels() == std::vector<std::string>{"U0", "U2"});
    for (unsigned m = 0; m <= 14; ++m) {
        for (unsigned n = 0; n <= 14; ++n) {
            auto lhs = linearize(m, n).to_monomial();
            auto rhs = multiply(u_poly(m), u_poly(n));
            trim(lhs);
            trim(rhs);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("orthonormality under the semicircle law") {
    const SemicircleLaw unit{Rational(1)};
    CHECK(orthonormal_check(3, 3, unit) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(orthonormal_check(2, 5, unit)) < 1e-12);
    CHECK(orthonormal_check(1, 1, SemicircleLaw{}) == doctest::Approx(1.0).epsilon(1e-12));
    for (unsigned m = 0; m <= 12; ++m) {
        for (unsigned n = 0; n <= 12; ++n) {
            CHECK(std::abs(orthonormal_check(m, n) - (m == n ? 1.0 : 0.0)) < 1e-12);
        }
    }
}

TEST_CASE("semicircle moments") {
    CHECK(semicircle_moment(3) == 0);
    CHECK(semicircle_moment(2) == 1);
    CHECK(semicircle_moment(4, SemicircleLaw{Rational(1)}) == Rational(1, 8));
    const unsigned catalan_values[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796};
    for (unsigned n = 0; n <= 10; ++n) {
        CHECK(catalan(n) == catalan_values[n]);
        CHECK(semicircle_moment(2 * n) == catalan_values[n]);
    }
    for (unsigned k = 0; k <= 12; ++k) {
        CHECK(moment_quadrature(k) == doctest::Approx(to_double(semicircle_moment(k))).epsilon(1e-10));
    }
}

TEST_CASE("semicircle density integrates to one") {
    const SemicircleLaw law{};
    // Midpoint sum in theta with x = 2 cos(theta).
    const int n = 20000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const double th = (i + 0.5) * std::numbers::pi / n;
        sum += law.density(2.0 * std::cos(th)) * 2.0 * std::sin(th);
    }
    CHECK(sum * std::numbers::pi / n == doctest::Approx(1.0).epsilon(1e-8));
}
