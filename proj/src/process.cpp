#include "freenoise/process.hpp"

#include "freenoise/error.hpp"
#include "freenoise/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace freenoise {

namespace {

LetterVector to_letters(const std::vector<double>& v) { return LetterVector(v.begin(), v.end()); }

}  // namespace

FreeProcess::FreeProcess(ProcessConfig cfg)
    : cfg_(std::move(cfg)),
      weights_(cfg_.density.polynomial_class() ? WeightSequence::linear() : WeightSequence::exponential()) {
    if (cfg_.density.polynomial_class()) {
        const int need = static_cast<int>(cfg_.density.growth_order()) + 3;
        if (cfg_.p < need) {
            throw LevelTooLow("level p = " + std::to_string(cfg_.p) + " below N + 3 = " + std::to_string(need) +
                              " for " + cfg_.density.name());
        }
    } else if (cfg_.p < 1) {
        throw LevelTooLow("level p must be >= 1");
    }
    eval_ = cached_evaluator(cfg_.density, cfg_.n_max, cfg_.t_max);
    if (cfg_.require_certified) {
        require_certified(certify(cfg_.t_max));
    }
}

LetterVector FreeProcess::coefficients(double t) const {
    if (t == 0.0) {
        return LetterVector(cfg_.n_max, Complex{});
    }
    return to_letters(eval_->alpha(t));
}

LetterVector FreeProcess::derivative_coefficients(double t) const { return to_letters(eval_->tm(t)); }

FockElement FreeProcess::apply(double t, const FockElement& f) const {
    DegreeCap cap(cfg_.degree_cap, DegreeCap::Policy::Throw);
    return apply_X(coefficients(t), f, cap);
}

FockElement FreeProcess::apply_whitenoise(double t, const FockElement& f) const {
    DegreeCap cap(cfg_.degree_cap, DegreeCap::Policy::Throw);
    return apply_X(derivative_coefficients(t), f, cap);
}

double FreeProcess::covariance(double s, double t) const {
    return apply(s, apply(t, FockElement::vacuum())).vacuum_coefficient().real();
}

TailReport FreeProcess::certify(double t) const {
    return certify_tail(cfg_.density, cfg_.p, t, weights_, std::min<std::size_t>(cfg_.n_max, 200));
}

DerivativeCheck derivative_check(const FreeProcess& process, double t, const FockElement& f,
                                 const std::vector<double>& steps) {
    if (steps.size() < 2) {
        throw ValidationError("derivative check needs at least two step sizes");
    }
    DerivativeCheck out;
    out.t = t;
    out.level = process.config().p;
    out.steps = steps;
    const FockElement base = process.apply(t, f);
    const FockElement white = process.apply_whitenoise(t, f);
    std::vector<double> logh, loge;
    for (double h : steps) {
        if (!(h > 0.0)) {
            throw ValidationError("step sizes must be positive");
        }
        FockElement diff = process.apply(t + h, f);
        diff -= base;
        diff *= 1.0 / h;
        diff -= white;
        const double err = diff.norm(-out.level, process.weights());
        out.errors.push_back(err);
        logh.push_back(std::log(h));
        loge.push_back(std::log(err));
    }
    const double n = static_cast<double>(steps.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        sx += logh[i];
        sy += loge[i];
        sxx += logh[i] * logh[i];
        sxy += logh[i] * loge[i];
    }
    out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return out;
}

// ---------------------------------------------------------------------------
// Integrand paths

IntegrandPath IntegrandPath::zero() {
    return {[](double) { return FockElement{}; }, "zero"};
}

IntegrandPath IntegrandPath::constant(FockElement y) {
    return {[y = std::move(y)](double) { return y; }, "constant"};
}

IntegrandPath IntegrandPath::process(const FreeProcess& proc, FockElement g) {
    return {[&proc, g = std::move(g)](double t) { return proc.apply(t, g); }, "process"};
}

// ---------------------------------------------------------------------------
// Riemann sums

namespace {

struct TermSum {
    FockElement sum;
    double max_vage_ratio = 0.0;
};

// sum over tags a + (offset + stride i) h, i < count, of Y (x) W f, unscaled.
TermSum tagged_terms(const FreeProcess& process, const IntegrandPath& path, const FockElement& f, double a, double h,
                     double offset, double stride, std::size_t count, int q, double vage_b) {
    const int p = process.config().p;
    const WeightSequence& seq = process.weights();
    const std::size_t chunk = std::max<std::size_t>(16, 16 * thread_count());
    TermSum out;
    for (std::size_t begin = 0; begin < count; begin += chunk) {
        const std::size_t len = std::min(chunk, count - begin);
        struct Term {
            FockElement value;
            double ratio = 0.0;
        };
        const auto terms = parallel_map<Term>(len, [&](std::size_t j) {
            const double u = a + (offset + stride * static_cast<double>(begin + j)) * h;
            const FockElement y = path.value(u);
            if (y.is_zero()) {
                return Term{};
            }
            const FockElement wf = process.apply_whitenoise(u, f);
            DegreeCap cap(process.config().degree_cap, DegreeCap::Policy::Throw);
            Term t{tensor(y, wf, cap), 0.0};
            const double bound = vage_b * y.norm(-p, seq) * wf.norm(-q, seq);
            if (bound > 0.0) {
                t.ratio = t.value.norm(-q, seq) / bound;
            }
            return t;
        });
        for (const Term& t : terms) {
            out.sum += t.value;
            out.max_vage_ratio = std::max(out.max_vage_ratio, t.ratio);
        }
    }
    return out;
}

void check_levels(const FreeProcess& process, int q) {
    const int p = process.config().p;
    if (q < p + 2) {
        throw LevelTooLow("integral level q = " + std::to_string(q) + " below p + 2 = " + std::to_string(p + 2));
    }
}

void check_interval(const FreeProcess& process, double a, double b) {
    if (!(b > a)) {
        throw ValidationError("integration interval needs a < b");
    }
    const double t_max = process.config().t_max;
    if (std::abs(a) > t_max || std::abs(b) > t_max) {
        throw ValidationError("integration interval exceeds the process range t_max = " + std::to_string(t_max));
    }
}

}  // namespace

RiemannTerms riemann_sum(const FreeProcess& process, const IntegrandPath& path, const FockElement& f, double a,
                         double b, std::size_t tags, int q) {
    check_levels(process, q);
    check_interval(process, a, b);
    if (tags == 0) {
        throw ValidationError("Riemann sum needs at least one cell");
    }
    const double vage_b = vage_constant(q - process.config().p, process.weights()).b;
    const double h = (b - a) / static_cast<double>(tags);
    TermSum s = tagged_terms(process, path, f, a, h, 0.0, 1.0, tags, q, vage_b);
    s.sum *= h;
    return {std::move(s.sum), s.max_vage_ratio};
}

IntegralReport stochastic_integral(const FreeProcess& process, const IntegrandPath& path, const FockElement& f,
                                   double a, double b, const IntegralOptions& opts) {
    check_levels(process, opts.q);
    check_interval(process, a, b);
    if (opts.last_level < opts.first_level || opts.last_level > 24) {
        throw ValidationError("refinement levels must satisfy first <= last <= 24");
    }
    IntegralReport rep;
    rep.a = a;
    rep.b = b;
    rep.p = process.config().p;
    rep.q = opts.q;
    rep.vage_b = vage_constant(opts.q - rep.p, process.weights()).b;
    const WeightSequence& seq = process.weights();

    std::size_t tags = std::size_t{1} << opts.first_level;
    double h = (b - a) / static_cast<double>(tags);
    TermSum first = tagged_terms(process, path, f, a, h, 0.0, 1.0, tags, opts.q, rep.vage_b);
    FockElement current = std::move(first.sum);
    current *= h;
    rep.levels.push_back({opts.first_level, tags, h, current.norm(-opts.q, seq), 0.0, 0.0, first.max_vage_ratio});

    unsigned contracting = 0;
    for (unsigned k = opts.first_level + 1; k <= opts.last_level; ++k) {
        // Left tags of level k are those of level k-1 plus the old midpoints:
        // S_k = S_{k-1} / 2 + h_k sum_{odd tags}.
        h *= 0.5;
        TermSum odd = tagged_terms(process, path, f, a, h, 1.0, 2.0, tags, opts.q, rep.vage_b);
        tags *= 2;
        FockElement next = current;
        next *= 0.5;
        next.add_scaled(odd.sum, h);
        FockElement delta = next;
        delta -= current;

        RefinementLevel lvl;
        lvl.level = k;
        lvl.tags = tags;
        lvl.mesh = h;
        lvl.norm = next.norm(-opts.q, seq);
        lvl.distance = delta.norm(-opts.q, seq);
        lvl.max_vage_ratio = std::max(odd.max_vage_ratio, rep.levels.back().max_vage_ratio);
        const double prev = rep.levels.back().distance;
        if (prev > 0.0) {
            lvl.ratio = lvl.distance / prev;
            contracting = lvl.ratio <= opts.contraction ? contracting + 1 : 0;
        }
        if (lvl.distance == 0.0 && prev == 0.0 && rep.levels.size() > 1) {
            // Exact at every level (e.g. Y = 0): trivially Cauchy.
            ++contracting;
        }
        rep.levels.push_back(lvl);
        current = std::move(next);
    }
    rep.converged = contracting >= 3;
    rep.result = std::move(current);
    return rep;
}

void require_converged(const IntegralReport& report) {
    if (!report.converged) {
        std::string msg = "Riemann sums are not Cauchy at level -" + std::to_string(report.q) + "; ratios:";
        for (const auto& lvl : report.levels) {
            msg += " " + std::to_string(lvl.ratio);
        }
        throw NonCauchy(msg);
    }
}

}  // namespace freenoise
