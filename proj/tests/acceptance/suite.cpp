#include "suite.hpp"

#include "freenoise/chebyshev.hpp"
#include "freenoise/error.hpp"
#include "freenoise/freefock.hpp"
#include "freenoise/hermite.hpp"
#include "freenoise/matmodel.hpp"
#include "freenoise/process.hpp"
#include "freenoise/quadrature.hpp"
#include "freenoise/spectral.hpp"
#include "freenoise/trace.hpp"
#include "freenoise/words.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/trigamma.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace freenoise::acceptance {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "FAILED " << what << "; ";
        }
    }
    void note(const std::string& what) { detail << what << "; "; }
};

// 1 ----------------------------------------------------------------------------
void linearization(Outcome& out) {
    std::size_t pairs = 0;
    for (unsigned m = 0; m <= 30; ++m) {
        for (unsigned n = 0; n <= m; ++n) {
            const ChebPoly lin = linearize(m, n);
            MonomialPoly expected = multiply(u_poly(m), u_poly(n));
            trim(expected);
            MonomialPoly got = lin.to_monomial();
            trim(got);
            bool unit = lin.terms().size() == n + 1;
            for (const auto& [deg, c] : lin.terms()) {
                unit = unit && c == 1;
            }
            out.require(got == expected && unit, "U_" + std::to_string(m) + " U_" + std::to_string(n));
            ++pairs;
        }
    }
    out.note(std::to_string(pairs) + " pairs exact");
}

// 2 ----------------------------------------------------------------------------
void orthonormality(Outcome& out) {
    const auto words = enumerate_words(5, 3);
    std::size_t reduction_bad = 0;
    double fock_err = 0.0;
    for (const Word& beta : words) {
        const OperatorExpr left = OperatorExpr::u_word(beta).adjoint();
        for (const Word& alpha : words) {
            const Rational exact = trace_reduction(beta, alpha);
            const Rational delta = beta == alpha ? 1 : 0;
            if (exact != delta) {
                ++reduction_bad;
            }
            const double f = trace_fock(left * OperatorExpr::u_word(alpha), 12);
            fock_err = std::max(fock_err, std::abs(f - to_double(delta)));
        }
    }
    out.require(reduction_bad == 0, std::to_string(reduction_bad) + " reduction mismatches");
    out.require(fock_err <= 1e-10, "fock max error " + fmt(fock_err));
    out.note(std::to_string(words.size() * words.size()) + " pairs, fock max error " + fmt(fock_err));
}

// 3 ----------------------------------------------------------------------------
void engine_triangle(Outcome& out) {
    double worst = 0.0;
    std::size_t count = 0;
    for (std::size_t len = 0; len <= 8; ++len) {
        for (std::size_t code = 0; code < (std::size_t{1} << len); ++code) {
            std::vector<Letter> letters(len);
            for (std::size_t i = 0; i < len; ++i) {
                letters[i] = static_cast<Letter>((code >> i) & 1U);
            }
            const double exact = to_double(trace_pairings(letters));
            const double fock = trace_fock(OperatorExpr::monomial(letters), 12);
            worst = std::max(worst, std::abs(exact - fock));
            ++count;
        }
    }
    out.require(worst <= 1e-10, "max |pairing - fock| " + fmt(worst));
    out.note(std::to_string(count) + " monomials, max difference " + fmt(worst));
}

// 4 ----------------------------------------------------------------------------
void semicircle_moments(Outcome& out) {
    SemicircleLaw unit;
    unit.radius = 1;
    double worst = 0.0;
    for (unsigned n = 0; n <= 10; ++n) {
        out.require(semicircle_moment(2 * n) == catalan(n), "moment " + std::to_string(2 * n) + " != Catalan");
    }
    for (const SemicircleLaw& law : {SemicircleLaw{}, unit}) {
        for (unsigned k = 0; k <= 20; ++k) {
            const double exact = to_double(semicircle_moment(k, law));
            worst = std::max(worst, std::abs(moment_quadrature(k, law) - exact));
        }
    }
    out.require(worst <= 1e-10, "quadrature error " + fmt(worst));
    out.note("Catalan n <= 10 exact; density quadrature max error " + fmt(worst) + " (radius 2 and 1, k <= 20)");
}

// 5 ----------------------------------------------------------------------------
void vage(Outcome& out) {
    const WeightSequence seq = WeightSequence::linear();
    const double closed = 1.0 / (1.0 - kPi * kPi / 24.0);
    const VageConstant vc = vage_constant(2, seq);
    out.require(std::abs(vc.b_squared - closed) <= 1e-10, "B^2 vs 1/(1 - pi^2/24)");

    // Partial sums over words with degree <= L and letters < M, by direct
    // enumeration: Word objects and weight() for L, M <= 6, a letter DFS up to 8.
    auto dfs_sum = [](std::size_t L, std::size_t M) {
        long double total = 0.0L;
        std::function<void(std::size_t, long double)> rec = [&](std::size_t depth, long double w) {
            total += w;
            if (depth == L) {
                return;
            }
            for (std::size_t n = 1; n <= M; ++n) {
                rec(depth + 1, w / (4.0L * n * n));
            }
        };
        rec(0, 1.0L);
        return static_cast<double>(total);
    };
    bool monotone = true;
    bool bounded = true;
    double geometric_err = 0.0;
    double prev_row_last = 0.0;
    for (std::size_t M = 1; M <= 8; ++M) {
        double s_m = 0.0;
        for (std::size_t n = 1; n <= M; ++n) {
            s_m += 1.0 / (4.0 * n * n);
        }
        double prev = 0.0;
        for (std::size_t L = 0; L <= 8; ++L) {
            double sum = 0.0;
            if (L <= 6 && M <= 6) {
                long double acc = 0.0L;
                for (const Word& w : enumerate_words(L, static_cast<Letter>(M))) {
                    acc += weight(w, -2, seq);
                }
                sum = static_cast<double>(acc);
            } else {
                sum = dfs_sum(L, M);
            }
            double geometric = 0.0;
            for (std::size_t k = 0; k <= L; ++k) {
                geometric += std::pow(s_m, static_cast<double>(k));
            }
            geometric_err = std::max(geometric_err, std::abs(sum - geometric) / geometric);
            monotone = monotone && sum >= prev;
            bounded = bounded && sum <= closed;
            prev = sum;
        }
        monotone = monotone && prev >= prev_row_last;
        prev_row_last = prev;
    }
    // Letter sums s_M plus the exact remainder sum_{n>M} 1/(4n^2) = trigamma(M+1)/4.
    double limit_err = 0.0;
    for (std::size_t M : {4u, 8u, 64u}) {
        double s_m = 0.0;
        for (std::size_t n = 1; n <= M; ++n) {
            s_m += 1.0 / (4.0 * n * n);
        }
        const double full = s_m + 0.25 * boost::math::trigamma(static_cast<double>(M + 1));
        limit_err = std::max(limit_err, std::abs(1.0 / (1.0 - full) - vc.b_squared));
    }
    out.require(monotone, "partial sums not monotone");
    out.require(bounded, "partial sums exceed B^2");
    out.require(geometric_err <= 1e-12, "enumeration vs geometric series " + fmt(geometric_err));
    out.require(limit_err <= 1e-10, "partial-sum limit vs B^2 " + fmt(limit_err));
    out.note("B^2 = " + fmt(vc.b_squared) + ", enumeration monotone and bounded, limit error " + fmt(limit_err));

    std::size_t violations = 0;
    double max_ratio = 0.0;
    for (auto [p, q] : {std::pair{0, 2}, std::pair{1, 3}, std::pair{2, 5}}) {
        const VageTrials t = vage_trials(p, q, seq, 1000, 20240601u + static_cast<unsigned>(p));
        violations += t.violations;
        max_ratio = std::max(max_ratio, t.max_ratio);
    }
    out.require(violations == 0, std::to_string(violations) + " inequality violations");
    out.note("3000 random pairs, 0 violations allowed, max lhs/rhs " + fmt(max_ratio));
}

// 6 ----------------------------------------------------------------------------
void brownian_kernel(Outcome& out) {
    const auto dens = SpectralDensity::lebesgue();
    double worst = 0.0;
    for (int i = 1; i <= 8; ++i) {
        for (int j = 1; j <= 8; ++j) {
            const double t = 0.25 * i;
            const double s = 0.25 * j;
            worst = std::max(worst, std::abs(kernel(dens, t, s) - std::min(t, s)));
        }
    }
    out.require(worst <= 1e-6, "max |K - min| " + fmt(worst));
    out.note("8x8 grid, max |K(t,s) - min(t,s)| = " + fmt(worst));
}

// 7 ----------------------------------------------------------------------------
void fbm_scaling(Outcome& out) {
    const double grid[] = {0.5, 1.0, 2.0};
    for (double H : {0.25, 0.75}) {
        const auto dens = SpectralDensity::fbm(H);
        double lo = 1e300;
        double hi = 0.0;
        for (double t : grid) {
            const double c = kernel(dens, t, t) / std::pow(t, 2.0 * H);
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        const double spread = (hi - lo) / lo;
        out.require(spread <= 0.01, "H=" + fmt(H) + " spread " + fmt(spread));
        double residual = 0.0;
        for (double t : grid) {
            for (double s : grid) {
                const double via_r =
                    (r_function(dens, t) + r_function(dens, s) - r_function(dens, t - s)) / (2.0 * kPi);
                residual = std::max(residual, std::abs(kernel(dens, t, s) - via_r));
            }
        }
        out.require(residual <= 1e-8, "H=" + fmt(H) + " r-identity residual " + fmt(residual));
        out.note("H=" + fmt(H) + ": K(t,t)/t^2H spread " + fmt(spread) + ", r-identity residual " + fmt(residual));
    }
}

// 8 ----------------------------------------------------------------------------
void derivative(Outcome& out) {
    FockElement f = FockElement::vacuum();
    f.add(Word::power(0), 0.5);
    for (const auto& dens : {SpectralDensity::lebesgue(), SpectralDensity::fbm(0.75)}) {
        ProcessConfig cfg;
        cfg.density = dens;
        cfg.n_max = 200;
        cfg.p = static_cast<int>(dens.growth_order()) + 3;
        cfg.t_max = 1.0;
        const FreeProcess proc(cfg);
        const DerivativeCheck chk = derivative_check(proc, 0.7, f, {1e-2, 1e-3, 1e-4});
        out.require(std::abs(chk.slope - 1.0) <= 0.1, dens.name() + " slope " + fmt(chk.slope));
        out.note(dens.name() + " p=" + std::to_string(cfg.p) + " slope " + fmt(chk.slope));
    }
}

// 9 ----------------------------------------------------------------------------
double alpha_oracle(std::size_t n, double u) {
    if (u == 0.0) {
        return 0.0;
    }
    // h~_n is entire; one 30-point Gauss-Legendre panel on [0, u], u <= 1, is exact to rounding.
    return boost::math::quadrature::gauss<double, 30>::integrate(
        [n](double x) { return hermite_fn(static_cast<unsigned>(n), x); }, 0.0, u);
}

void stochastic_integrals(Outcome& out) {
    ProcessConfig cfg;
    cfg.n_max = 24;
    cfg.p = 3;
    cfg.t_max = 1.0;
    const FreeProcess proc(cfg);
    const FockElement omega = FockElement::vacuum();
    IntegralOptions opts;
    opts.first_level = 2;
    opts.last_level = 13;
    opts.q = 5;

    auto ratios_ok = [](const IntegralReport& rep) {
        // three consecutive ratios at or below 0.6 on the last levels
        const auto& lv = rep.levels;
        if (lv.size() < 4) {
            return false;
        }
        for (std::size_t i = lv.size() - 3; i < lv.size(); ++i) {
            if (!(lv[i].ratio > 0.0 && lv[i].ratio <= 0.6)) {
                return false;
            }
        }
        return rep.converged;
    };

    {
        const IntegralReport rep = stochastic_integral(proc, IntegrandPath::constant(omega), omega, 0.0, 1.0, opts);
        double err = 0.0;
        for (std::size_t n = 1; n <= 8; ++n) {
            const double oracle = alpha_oracle(n, 1.0);
            err = std::max(err, std::abs(rep.result.coefficient(Word::power(static_cast<Letter>(n - 1))).real() -
                                         oracle));
        }
        out.require(ratios_ok(rep), "Y = Omega refinement ratios");
        out.require(err <= 1e-4, "Y = Omega oracle error " + fmt(err));
        out.note("Y=Omega: last ratio " + fmt(rep.levels.back().ratio) + ", oracle error " + fmt(err));
    }
    {
        const IntegralReport rep = stochastic_integral(proc, IntegrandPath::process(proc, omega), omega, 0.0, 1.0, opts);
        double err = 0.0;
        for (std::size_t n = 1; n <= 6; ++n) {
            for (std::size_t m = 1; m <= 6; ++m) {
                const double oracle = quad::adaptive(
                    [&](double u) { return alpha_oracle(n, u) * hermite_fn(static_cast<unsigned>(m), u); }, 0.0, 1.0,
                    1e-11);
                const Letter ln = static_cast<Letter>(n - 1);
                const Letter lm = static_cast<Letter>(m - 1);
                const std::vector<Letter> letters{ln, lm};
                const double got = rep.result.coefficient(Word::from_letters(letters)).real();
                err = std::max(err, std::abs(got - oracle));
            }
        }
        out.require(ratios_ok(rep), "Y = X(t) Omega refinement ratios");
        out.require(err <= 1e-4, "Y = X(t) Omega oracle error " + fmt(err));
        double vage_ratio = 0.0;
        for (const auto& lvl : rep.levels) {
            vage_ratio = std::max(vage_ratio, lvl.max_vage_ratio);
        }
        out.require(vage_ratio <= 1.0, "per-term inequality ratio " + fmt(vage_ratio));
        out.note("Y=X(t)Omega: last ratio " + fmt(rep.levels.back().ratio) + ", degree-2 oracle error " + fmt(err) +
                 ", per-term inequality ratio " + fmt(vage_ratio));
    }
}

// 10 ---------------------------------------------------------------------------
void growth(Outcome& out) {
    const std::size_t n_max = 60;
    const double t_max = std::sqrt(2.0 * n_max + 1.0) + 6.0;
    std::vector<std::size_t> idx;
    for (std::size_t n = 10; n <= n_max; ++n) {
        idx.push_back(n);
    }
    auto fit_for = [&](const SpectralDensity& dens) {
        const auto maxima = max_abs_tm(dens, n_max, t_max, 0.01);
        std::vector<double> y;
        for (std::size_t n : idx) {
            y.push_back(maxima[n - 1]);
        }
        return fit_growth(idx, y);
    };
    bool template_bound = true;
    for (const auto& dens : {SpectralDensity::lebesgue(), SpectralDensity::poly(1), SpectralDensity::poly(2),
                             SpectralDensity::fbm(0.25), SpectralDensity::fbm(0.75)}) {
        const GrowthFit g = fit_for(dens);
        const double target = 0.5 * (dens.growth_order() + 1);
        out.require(std::abs(g.power_exponent - target) <= 0.15, dens.name() + " off template");
        template_bound = template_bound && g.power_exponent <= target;
        out.note(dens.name() + " exponent " + fmt(g.power_exponent) + " (template " + fmt(target) + ")");
    }
    out.note(std::string("fitted exponents within the upper template: ") + (template_bound ? "yes" : "no"));

    const auto expo = SpectralDensity::exponential(1.0, 1.0);
    const GrowthFit g = fit_for(expo);
    const bool exp_ok = g.exp_d2 > 0.0 && g.exp_rms <= g.power_rms;
    out.require(exp_ok, "sqrt(n)-exponential fit rejected");
    out.note(expo.name() + " D2 " + fmt(g.exp_d2) + ", rms exp " + fmt(g.exp_rms) + " vs power " + fmt(g.power_rms));

    const auto low = certify_tail(SpectralDensity::poly(1), 2, 1.0, WeightSequence::linear());
    out.require(low.status == TailReport::Status::Uncertified, "p < N+3 not rejected");
    const auto ok = certify_tail(SpectralDensity::lebesgue(), 3, 1.0, WeightSequence::linear());
    out.require(ok.status == TailReport::Status::Certified, "lebesgue p=3 not certified");
    const auto bad = certify_tail(expo, 5, 1.0, WeightSequence::linear());
    out.require(bad.status == TailReport::Status::Failed, "exponential class with 2n weights not rejected");
    out.note("certify_tail: poly(N=1) p=2 " + to_string(low.status) + ", lebesgue p=3 " + to_string(ok.status) +
             ", exp class " + to_string(bad.status));
}

// 11 ---------------------------------------------------------------------------
void matrix_model(Outcome& out) {
    std::vector<std::vector<Letter>> words;
    for (std::size_t len = 0; len <= 6; ++len) {
        for (std::size_t code = 0; code < (std::size_t{1} << len); ++code) {
            std::vector<Letter> w(len);
            for (std::size_t i = 0; i < len; ++i) {
                w[i] = static_cast<Letter>((code >> i) & 1U);
            }
            words.push_back(w);
        }
    }
    EnsembleConfig cfg;
    cfg.dim = 1000;
    cfg.samples = 50;
    cfg.seed = 7;
    const auto est = estimate_traces(cfg, words);
    std::size_t bad = 0;
    double worst_z = 0.0;
    for (std::size_t i = 0; i < words.size(); ++i) {
        const double exact = to_double(trace_pairings(words[i]));
        const double dev = std::abs(est[i].mean - exact);
        if (dev > std::max(3.0 * est[i].standard_error, 0.02)) {
            ++bad;
        }
        if (est[i].standard_error > 0.0) {
            worst_z = std::max(worst_z, dev / est[i].standard_error);
        }
    }
    out.require(bad == 0, std::to_string(bad) + " monomials outside max(3 SE, 0.02)");

    EnsembleConfig small = cfg;
    small.dim = 64;
    small.samples = 4;
    const auto a = estimate_traces(small, words);
    const auto b = estimate_traces(small, words);
    bool same = true;
    for (std::size_t i = 0; i < words.size(); ++i) {
        same = same && a[i].per_sample == b[i].per_sample;
    }
    out.require(same, "reruns differ");
    out.note(std::to_string(words.size()) + " monomials, max |z| " + fmt(worst_z) + ", reruns bit-identical");
}

// 12 ---------------------------------------------------------------------------
void mehler(Outcome& out) {
    double worst = 0.0;
    for (double s : {-0.9, -0.5, 0.3, 0.8}) {
        const unsigned terms = mehler_terms_for(s, 1e-13) + 40;
        for (double u : {-3.0, -1.5, 0.0, 0.7, 2.5}) {
            for (double v : {-2.0, 0.0, 0.4, 1.9}) {
                worst = std::max(worst, std::abs(mehler_sum(u, v, s, terms) - mehler_closed(u, v, s)));
            }
        }
    }
    out.require(worst <= 1e-8, "Mehler max error " + fmt(worst));

    const std::size_t K = 40;
    quad::Rule rule;
    rule.add_uniform(-25.0, 25.0, 0.25, 30);
    std::vector<std::vector<double>> values;
    for (double x : rule.nodes) {
        values.push_back(hermite_fns(K, x));
    }
    double gram = 0.0;
    for (std::size_t j = 0; j < K; ++j) {
        for (std::size_t k = 0; k <= j; ++k) {
            double sum = 0.0;
            for (std::size_t i = 0; i < rule.size(); ++i) {
                sum += rule.weights[i] * values[i][j] * values[i][k];
            }
            gram = std::max(gram, std::abs(sum - (j == k ? 1.0 : 0.0)));
        }
    }
    out.require(gram <= 1e-9, "Gram max error " + fmt(gram));
    out.note("Mehler max error " + fmt(worst) + " on 80 points; Gram (k <= 40) max error " + fmt(gram));
}

struct Criterion {
    int id;
    const char* name;
    void (*run)(Outcome&);
    double time_limit;  // seconds; 0 = none
};

const Criterion kCriteria[] = {
    {1, "linearization-exactness", linearization, 5.0},
    {2, "basis-orthonormality", orthonormality, 60.0},
    {3, "engine-triangle", engine_triangle, 30.0},
    {4, "semicircle-moments", semicircle_moments, 0.0},
    {5, "vage-constant-and-inequality", vage, 0.0},
    {6, "free-brownian-kernel", brownian_kernel, 60.0},
    {7, "fbm-scaling", fbm_scaling, 0.0},
    {8, "white-noise-derivative", derivative, 0.0},
    {9, "stochastic-integral", stochastic_integrals, 0.0},
    {10, "growth-bounds", growth, 0.0},
    {11, "matrix-model", matrix_model, 300.0},
    {12, "mehler-and-gram", mehler, 0.0},
};

}  // namespace

std::vector<int> criterion_ids() {
    std::vector<int> ids;
    for (const auto& c : kCriteria) {
        ids.push_back(c.id);
    }
    return ids;
}

std::vector<CriterionResult> run_suite(const std::vector<int>& only,
                                       const std::function<void(const CriterionResult&)>& on_result) {
    std::vector<CriterionResult> results;
    for (const auto& c : kCriteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) {
            continue;
        }
        Outcome out;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(out);
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail << "exception: " << e.what();
        }
        CriterionResult r;
        r.id = c.id;
        r.name = c.name;
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit > 0.0 && r.seconds > c.time_limit) {
            out.require(false, "took " + fmt(r.seconds) + " s, limit " + fmt(c.time_limit) + " s");
        }
        r.pass = out.pass;
        r.detail = out.detail.str();
        if (r.detail.size() >= 2 && r.detail.compare(r.detail.size() - 2, 2, "; ") == 0) {
            r.detail.resize(r.detail.size() - 2);
        }
        if (on_result) {
            on_result(r);
        }
        results.push_back(std::move(r));
    }
    return results;
}

std::string format_line(const CriterionResult& r) {
    char head[64];
    std::snprintf(head, sizeof head, "%s [%02d] ", r.pass ? "PASS" : "FAIL", r.id);
    char tail[32];
    std::snprintf(tail, sizeof tail, " (%.2f s)", r.seconds);
    return std::string(head) + r.name + ": " + r.detail + tail;
}

}  // namespace freenoise::acceptance
