#include "freenoise/error.hpp"
#include "freenoise/process.hpp"

#include <doctest.h>

#include <cmath>

using namespace freenoise;

namespace {

FreeProcess make(const SpectralDensity& d, std::size_t n_max, double t_max, int p = 0) {
    ProcessConfig cfg;
    cfg.density = d;
    cfg.n_max = n_max;
    cfg.t_max = t_max;
    cfg.p = p != 0 ? p : static_cast<int>(d.growth_order()) + 3;
    return FreeProcess(cfg);
}

}  // namespace

TEST_CASE("process on the vacuum") {
    const FreeProcess x = make(SpectralDensity::fbm(0.75), 40, 2.0);
    CHECK(x.apply(0.0, FockElement::vacuum()).is_zero());
    const auto a = x.evaluator().alpha(1.3);
    const FockElement v = x.apply(1.3, FockElement::vacuum());
    const FockElement w = x.apply_whitenoise(1.3, FockElement::vacuum());
    const auto d = x.evaluator().tm(1.3);
    CHECK(v.degree() == 1);
    for (std::size_t n = 1; n <= 40; ++n) {
        const Word z = Word::power(static_cast<Letter>(n - 1));
        CHECK(v.coefficient(z).real() == a[n - 1]);
        CHECK(w.coefficient(z).real() == d[n - 1]);
    }
}

TEST_CASE("level checks") {
    CHECK_THROWS_AS(make(SpectralDensity::poly(2), 20, 1.0, 3), LevelTooLow);
    CHECK_NOTHROW(make(SpectralDensity::poly(2), 20, 1.0, 5));
    const FreeProcess x = make(SpectralDensity::lebesgue(), 20, 1.0);
    const FockElement omega = FockElement::vacuum();
    CHECK_THROWS_AS(riemann_sum(x, IntegrandPath::constant(omega), omega, 0, 1, 4, 4), LevelTooLow);
    CHECK_THROWS_AS(riemann_sum(x, IntegrandPath::constant(omega), omega, 0, 2, 4, 5), ValidationError);
    CHECK(make(SpectralDensity::exponential(1, 1), 20, 1.0, 2).weights().kind() ==
          WeightSequence::Kind::Exponential);
}

TEST_CASE("covariance error decreases with the truncation") {
    const double grid[] = {0.5, 1.0, 1.5, 2.0};
    for (const auto& d : {SpectralDensity::lebesgue(), SpectralDensity::fbm(0.25), SpectralDensity::fbm(0.75)}) {
        double previous = INFINITY;
        for (std::size_t n : {100, 400}) {
            const FreeProcess x = make(d, n, 2.0);
            double err = 0.0;
            for (double s : grid) {
                for (double t : grid) {
                    err = std::max(err, std::abs(x.covariance(s, t) - kernel(d, t, s)));
                }
            }
            MESSAGE(d.name() << " N=" << n << " max covariance error " << err);
            CHECK(err < previous);
            previous = err;
        }
    }
    const FreeProcess x = make(SpectralDensity::lebesgue(), 400, 2.0);
    CHECK(x.covariance(1.0, 2.0) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("derivative check is first order") {
    FockElement f = FockElement::vacuum();
    f.add(Word::power(0), 0.5);
    const FreeProcess x = make(SpectralDensity::lebesgue(), 100, 1.0);
    const DerivativeCheck chk = derivative_check(x, 0.4, f, {1e-2, 1e-3, 1e-4});
    CHECK(chk.slope == doctest::Approx(1.0).epsilon(0.1));
    CHECK(chk.errors[2] < chk.errors[0]);
    CHECK_THROWS_AS(derivative_check(x, 0.4, f, {1e-2}), ValidationError);
}

TEST_CASE("Riemann sums are additive over subintervals") {
    const FreeProcess x = make(SpectralDensity::fbm(0.75), 30, 1.0);
    const FockElement omega = FockElement::vacuum();
    const FockElement g = FockElement::basis(Word::power(1), 0.3) + omega;
    const auto path = IntegrandPath::process(x, g);
    const RiemannTerms whole = riemann_sum(x, path, omega, 0.0, 1.0, 16, 5);
    const RiemannTerms left = riemann_sum(x, path, omega, 0.0, 0.5, 8, 5);
    const RiemannTerms right = riemann_sum(x, path, omega, 0.5, 1.0, 8, 5);
    CHECK((whole.sum - left.sum - right.sum).max_abs() < 1e-14);
    CHECK(whole.max_vage_ratio <= 1.0);
}

TEST_CASE("stochastic integral refinements") {
    const FreeProcess x = make(SpectralDensity::lebesgue(), 24, 1.0);
    const FockElement omega = FockElement::vacuum();
    IntegralOptions opts;
    opts.first_level = 1;
    opts.last_level = 8;

    const IntegralReport zero = stochastic_integral(x, IntegrandPath::zero(), omega, 0, 1, opts);
    CHECK(zero.converged);
    CHECK(zero.result.is_zero());

    const IntegralReport one = stochastic_integral(x, IntegrandPath::constant(omega), omega, 0, 1, opts);
    CHECK(one.converged);
    CHECK(one.levels.back().ratio == doctest::Approx(0.5).epsilon(0.02));
    CHECK_NOTHROW(require_converged(one));
    // The finest level equals a direct Riemann sum with the same cells.
    const RiemannTerms direct = riemann_sum(x, IntegrandPath::constant(omega), omega, 0, 1, 256, 5);
    CHECK((direct.sum - one.result).max_abs() < 1e-13);

    opts.last_level = 2;
    const IntegralReport short_run = stochastic_integral(x, IntegrandPath::constant(omega), omega, 0, 1, opts);
    CHECK(!short_run.converged);
    CHECK_THROWS_AS(require_converged(short_run), NonCauchy);
}
