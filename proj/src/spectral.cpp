#include "freenoise/spectral.hpp"

#include "freenoise/error.hpp"
#include "freenoise/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

namespace freenoise {

namespace {

constexpr double kPi = std::numbers::pi;

void check_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ValidationError(std::string(what) + " must be positive and finite");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// SpectralDensity

SpectralDensity SpectralDensity::lebesgue() { return SpectralDensity{}; }

SpectralDensity SpectralDensity::fbm(double hurst, double scale) {
    if (!(hurst > 0.0)) {
        throw ValidationError("Hurst parameter must be positive");
    }
    if (hurst >= 1.5) {
        throw SingularityTooStrong("fbm(H) with H >= 1.5 has m(u) ~ |u|^{-b}, b = 2H - 1 >= 2");
    }
    check_positive(scale, "scale");
    SpectralDensity d;
    d.kind_ = Kind::Fbm;
    d.hurst_ = hurst;
    d.scale_ = scale;
    d.gamma_ = 1.0 - 2.0 * hurst;
    return d;
}

SpectralDensity SpectralDensity::poly(unsigned order, double scale) {
    check_positive(scale, "scale");
    SpectralDensity d;
    d.kind_ = Kind::Poly;
    d.order_ = order;
    d.scale_ = scale;
    return d;
}

SpectralDensity SpectralDensity::power_law(double gamma, double scale) {
    if (!std::isfinite(gamma)) {
        throw ValidationError("power-law exponent must be finite");
    }
    if (gamma <= -2.0) {
        throw SingularityTooStrong("powerlaw exponent " + std::to_string(gamma) + " gives b = -gamma >= 2");
    }
    check_positive(scale, "scale");
    SpectralDensity d;
    d.kind_ = Kind::PowerLaw;
    d.gamma_ = gamma;
    d.scale_ = scale;
    return d;
}

SpectralDensity SpectralDensity::exponential(double c1, double c2) {
    check_positive(c1, "C1");
    check_positive(c2, "C2");
    SpectralDensity d;
    d.kind_ = Kind::Exponential;
    d.c1_ = c1;
    d.c2_ = c2;
    return d;
}

double SpectralDensity::operator()(double u) const {
    const double a = std::abs(u);
    switch (kind_) {
        case Kind::Lebesgue:
            return 1.0;
        case Kind::Fbm:
        case Kind::PowerLaw:
            return gamma_ == 0.0 ? scale_ : scale_ * std::pow(a, gamma_);
        case Kind::Poly:
            return scale_ * std::pow(1.0 + a * a, static_cast<double>(order_));
        case Kind::Exponential:
            return c1_ * std::exp(c2_ * a);
    }
    return 0.0;
}

double SpectralDensity::sqrt_m(double u) const {
    const double a = std::abs(u);
    switch (kind_) {
        case Kind::Lebesgue:
            return 1.0;
        case Kind::Fbm:
        case Kind::PowerLaw:
            return gamma_ == 0.0 ? std::sqrt(scale_) : std::sqrt(scale_) * std::pow(a, 0.5 * gamma_);
        case Kind::Poly:
            return std::sqrt(scale_) * std::pow(1.0 + a * a, 0.5 * order_);
        case Kind::Exponential:
            return std::sqrt(c1_) * std::exp(0.5 * c2_ * a);
    }
    return 0.0;
}

double SpectralDensity::singularity() const {
    if (kind_ == Kind::Fbm || kind_ == Kind::PowerLaw) {
        return std::max(0.0, -gamma_);
    }
    return 0.0;
}

unsigned SpectralDensity::growth_order() const {
    switch (kind_) {
        case Kind::Lebesgue:
        case Kind::Exponential:
            return 0;
        case Kind::Poly:
            return order_;
        case Kind::Fbm:
        case Kind::PowerLaw:
            return gamma_ <= 0.0 ? 0u : static_cast<unsigned>(std::ceil(0.5 * gamma_));
    }
    return 0;
}

std::optional<SpectralDensity::PowerLawForm> SpectralDensity::power_law_form() const {
    switch (kind_) {
        case Kind::Lebesgue:
            return PowerLawForm{1.0, 0.0};
        case Kind::Fbm:
        case Kind::PowerLaw:
            return PowerLawForm{scale_, gamma_};
        case Kind::Poly:
            if (order_ == 0) {
                return PowerLawForm{scale_, 0.0};
            }
            return std::nullopt;
        case Kind::Exponential:
            return std::nullopt;
    }
    return std::nullopt;
}

bool SpectralDensity::has_kernel() const {
    const auto form = power_law_form();
    return form && form->gamma < 1.0 && form->gamma > -1.0;
}

bool SpectralDensity::rough_at_origin() const {
    if (kind_ != Kind::Fbm && kind_ != Kind::PowerLaw) {
        return false;
    }
    const double half = 0.5 * gamma_;
    return !(gamma_ >= 0.0 && half == std::floor(half));
}

std::string SpectralDensity::name() const {
    std::ostringstream os;
    os.precision(12);
    switch (kind_) {
        case Kind::Lebesgue:
            os << "lebesgue";
            break;
        case Kind::Fbm:
            os << "fbm(H=" << hurst_ << ",scale=" << scale_ << ")";
            break;
        case Kind::Poly:
            os << "poly(N=" << order_ << ",scale=" << scale_ << ")";
            break;
        case Kind::PowerLaw:
            os << "powerlaw(gamma=" << gamma_ << ",scale=" << scale_ << ")";
            break;
        case Kind::Exponential:
            os << "exp(C1=" << c1_ << ",C2=" << c2_ << ")";
            break;
    }
    return os.str();
}

nlohmann::json SpectralDensity::to_json() const {
    nlohmann::json j;
    switch (kind_) {
        case Kind::Lebesgue:
            j["kind"] = "lebesgue";
            break;
        case Kind::Fbm:
            j["kind"] = "fbm";
            j["H"] = hurst_;
            j["scale"] = scale_;
            break;
        case Kind::Poly:
            j["kind"] = "poly";
            j["N"] = order_;
            j["scale"] = scale_;
            break;
        case Kind::PowerLaw:
            j["kind"] = "powerlaw";
            j["gamma"] = gamma_;
            j["scale"] = scale_;
            break;
        case Kind::Exponential:
            j["kind"] = "exp";
            j["C1"] = c1_;
            j["C2"] = c2_;
            break;
    }
    j["b"] = singularity();
    j["growth"] = polynomial_class() ? "polynomial" : "exponential";
    j["N"] = growth_order();
    j["u_max"] = u_max;
    j["tol"] = tol;
    return j;
}

// ---------------------------------------------------------------------------
// CoefficientEvaluator

namespace {

// Beyond sqrt(2n + 1) + 12 every h~_k, k <= n, is below e^{-200}.
double hermite_cutoff(const SpectralDensity& dens, std::size_t n_max) {
    if (dens.u_max > 0.0) {
        return dens.u_max;
    }
    double u = std::sqrt(2.0 * static_cast<double>(n_max) + 1.0) + 12.0;
    if (dens.kind() == SpectralDensity::Kind::Exponential) {
        u += dens.c2();
    }
    return u;
}

}  // namespace

CoefficientEvaluator::CoefficientEvaluator(const SpectralDensity& dens, std::size_t n_max, double t_max,
                                           double resolution, unsigned order)
    : dens_(dens),
      n_max_(n_max),
      t_max_(std::abs(t_max)),
      u_max_(hermite_cutoff(dens, n_max)),
      basis_(0, std::span<const double>{}) {
    if (n_max == 0) {
        throw ValidationError("Hermite truncation must be at least 1");
    }
    const double width =
        kPi / (1.0 + t_max_ + std::sqrt(2.0 * static_cast<double>(n_max) + 1.0)) / std::max(resolution, 1e-3);
    const double first = std::min(width, u_max_);
    if (dens.rough_at_origin()) {
        rule_.add_graded(first, first * 1e-24, order);
    } else {
        rule_.add_panel(0.0, first, order);
    }
    rule_.add_uniform(first, u_max_, width, order);
    weighted_.resize(rule_.size());
    for (std::size_t i = 0; i < rule_.size(); ++i) {
        weighted_[i] = rule_.weights[i] * dens.sqrt_m(rule_.nodes[i]);
    }
    basis_ = HermiteBasis(n_max, rule_.nodes);
}

std::vector<double> CoefficientEvaluator::evaluate(double t, Target target, std::size_t count) const {
    if (std::abs(t) > t_max_ * (1.0 + 1e-12) + 1e-12) {
        throw ValidationError("time " + std::to_string(t) + " outside the evaluator range [-" +
                              std::to_string(t_max_) + ", " + std::to_string(t_max_) + "]");
    }
    const std::size_t nodes = rule_.size();
    std::vector<double> even_kernel(nodes);  // pairs with odd n (even h~)
    std::vector<double> odd_kernel(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
        const double u = rule_.nodes[i];
        const double x = u * t;
        if (target == Target::Tm) {
            even_kernel[i] = weighted_[i] * std::cos(x);
            odd_kernel[i] = weighted_[i] * std::sin(x);
        } else {
            const double h = std::sin(0.5 * x);
            even_kernel[i] = weighted_[i] * std::sin(x) / u;
            odd_kernel[i] = weighted_[i] * 2.0 * h * h / u;
        }
    }
    const double norm = std::sqrt(2.0 / kPi);
    std::vector<double> out(count);
    for (std::size_t n = 1; n <= count; ++n) {
        const auto row = basis_.row(n);
        const auto& kern = (n % 2 == 1) ? even_kernel : odd_kernel;
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes; ++i) {
            sum += row[i] * kern[i];
        }
        const std::size_t quarter = (n % 2 == 1) ? (n - 1) / 2 : (n - 2) / 2;
        out[n - 1] = (quarter % 2 == 0 ? norm : -norm) * sum;
    }
    return out;
}

std::vector<double> CoefficientEvaluator::tm(double t) const { return evaluate(t, Target::Tm, n_max_); }

std::vector<double> CoefficientEvaluator::alpha(double t) const { return evaluate(t, Target::Alpha, n_max_); }

double CoefficientEvaluator::tm(std::size_t n, double t) const {
    if (n == 0 || n > n_max_) {
        throw ValidationError("Hermite index out of range");
    }
    return evaluate(t, Target::Tm, n)[n - 1];
}

double CoefficientEvaluator::alpha(std::size_t n, double t) const {
    if (n == 0 || n > n_max_) {
        throw ValidationError("Hermite index out of range");
    }
    return evaluate(t, Target::Alpha, n)[n - 1];
}

std::shared_ptr<const CoefficientEvaluator> cached_evaluator(const SpectralDensity& dens, std::size_t n_max,
                                                             double t_max) {
    static std::mutex mutex;
    static std::map<std::string, std::shared_ptr<const CoefficientEvaluator>> cache;
    std::ostringstream key;
    key.precision(17);
    key << dens.to_json().dump() << '|' << n_max << '|' << std::abs(t_max);
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(key.str()); it != cache.end()) {
            return it->second;
        }
    }
    auto eval = std::make_shared<const CoefficientEvaluator>(dens, n_max, t_max);
    std::lock_guard lock(mutex);
    return cache.try_emplace(key.str(), std::move(eval)).first->second;
}

namespace {

enum class Which { Tm, Alpha };

double checked_value(const SpectralDensity& dens, std::size_t n, double t, Which which) {
    if (n == 0) {
        throw ValidationError("Hermite functions are indexed from 1");
    }
    if (t == 0.0 && which == Which::Alpha) {
        return 0.0;
    }
    const CoefficientEvaluator coarse(dens, n, t);
    const CoefficientEvaluator fine(dens, n, t, 2.0, 30);
    const double a = which == Which::Tm ? coarse.tm(n, t) : coarse.alpha(n, t);
    const double b = which == Which::Tm ? fine.tm(n, t) : fine.alpha(n, t);
    if (!std::isfinite(b) || std::abs(a - b) > dens.tol) {
        throw QuadratureNonConvergence("T_m quadrature for n = " + std::to_string(n) + " unstable under refinement (" +
                                       std::to_string(std::abs(a - b)) + ")");
    }
    return b;
}

}  // namespace

double apply_Tm(const SpectralDensity& dens, std::size_t n, double t) { return checked_value(dens, n, t, Which::Tm); }

double alpha(const SpectralDensity& dens, std::size_t n, double t) { return checked_value(dens, n, t, Which::Alpha); }

double alpha_prime(const SpectralDensity& dens, std::size_t n, double t) { return apply_Tm(dens, n, t); }

// ---------------------------------------------------------------------------
// Kernel and r(t)

namespace {

constexpr double kTailOscillations = 40.0;
constexpr double kMinCutoff = 20.0;
constexpr double kMaxCutoff = 2000.0;

// int_0^inf (1 - cos v) v^beta dv for -3 < beta < -1.
double one_minus_cos_moment(double beta) {
    const double x = beta + 1.0;
    return -kPi / (2.0 * std::tgamma(1.0 - x) * std::sin(0.5 * kPi * x));
}

// int_U^inf cos(a u) u^beta du for a U large, by repeated integration by parts.
double cos_tail(double a, double beta, double U) {
    using C = std::complex<double>;
    const C ia(0.0, a);
    C term = -std::exp(C(0.0, a * U)) * std::pow(U, beta) / ia;
    C sum = term;
    double prev = std::abs(term);
    for (int k = 1; k < 60; ++k) {
        term *= -(beta - (k - 1)) / (ia * U);
        const double mag = std::abs(term);
        if (mag > prev) {
            break;  // asymptotic series started to diverge
        }
        sum += term;
        prev = mag;
        if (mag < 1e-18 * std::abs(sum)) {
            break;
        }
    }
    return sum.real();
}

// int_U^inf (1 - cos a u) u^beta du, beta = gamma - 2.
double one_minus_cos_tail(double a, double beta, double U) {
    a = std::abs(a);
    if (a == 0.0) {
        return 0.0;
    }
    if (a * U >= kTailOscillations) {
        return std::pow(U, beta + 1.0) / (-beta - 1.0) - cos_tail(a, beta, U);
    }
    // Rescale v = a u and subtract the head from the full moment.
    const double V = a * U;
    quad::Rule rule;
    const double first = std::min(1.0, V);
    rule.add_graded(first, first * 1e-24, 20);
    rule.add_uniform(first, V, 1.0, 20);
    const double head = rule.apply([beta](double v) {
        const double h = std::sin(0.5 * v);
        return 2.0 * h * h * std::pow(v, beta);
    });
    return std::pow(a, -beta - 1.0) * (one_minus_cos_moment(beta) - head);
}

struct Panels {
    quad::Rule main;
    quad::Rule check;
    double cutoff = 0.0;
};

Panels build_panels(const SpectralDensity& dens, std::initializer_list<double> freqs) {
    double a_max = 0.0;
    double a_min = std::numeric_limits<double>::infinity();
    for (double a : freqs) {
        const double v = std::abs(a);
        a_max = std::max(a_max, v);
        if (v > 0.0) {
            a_min = std::min(a_min, v);
        }
    }
    Panels p;
    p.cutoff = std::max(kMinCutoff, dens.u_max);
    if (std::isfinite(a_min)) {
        p.cutoff = std::max(p.cutoff, std::min(kMaxCutoff, kTailOscillations / a_min));
    }
    const double width = std::min(1.0, kPi / (1.0 + a_max));
    for (auto [rule, order] : {std::pair{&p.main, 20u}, std::pair{&p.check, 30u}}) {
        if (dens.rough_at_origin()) {
            rule->add_graded(width, width * 1e-24, order);
        } else {
            rule->add_panel(0.0, width, order);
        }
        rule->add_uniform(width, p.cutoff, width, order);
    }
    return p;
}

SpectralDensity::PowerLawForm require_kernel(const SpectralDensity& dens) {
    if (!dens.has_kernel()) {
        throw ValidationError("density " + dens.name() +
                              " violates int m(u)/(1+u^2) du < inf; the covariance kernel is undefined");
    }
    return *dens.power_law_form();
}

}  // namespace

IntegralResult kernel_detail(const SpectralDensity& dens, double t, double s) {
    const auto form = require_kernel(dens);
    const Panels panels = build_panels(dens, {t, s, t - s});
    auto integrand = [&](double u) {
        const double ht = std::sin(0.5 * t * u);
        const double hs = std::sin(0.5 * s * u);
        return (4.0 * ht * ht * hs * hs + std::sin(t * u) * std::sin(s * u)) * dens(u) / (u * u);
    };
    const double head = panels.main.apply(integrand);
    const double head_check = panels.check.apply(integrand);
    const double beta = form.gamma - 2.0;
    const double U = panels.cutoff;
    const double tail = form.scale * (one_minus_cos_tail(t, beta, U) + one_minus_cos_tail(s, beta, U) -
                                      one_minus_cos_tail(t - s, beta, U));
    IntegralResult out;
    out.value = (head_check + tail) / kPi;
    out.u_max = U;
    out.tail = tail / kPi;
    out.error_estimate = std::abs(head - head_check) / kPi;
    if (!std::isfinite(out.value) || out.error_estimate > dens.tol * std::max(1.0, std::abs(out.value))) {
        throw QuadratureNonConvergence("kernel quadrature error estimate " + std::to_string(out.error_estimate) +
                                       " above tolerance");
    }
    return out;
}

double kernel(const SpectralDensity& dens, double t, double s) { return kernel_detail(dens, t, s).value; }

IntegralResult r_function_detail(const SpectralDensity& dens, double t) {
    const auto form = require_kernel(dens);
    const Panels panels = build_panels(dens, {t});
    auto integrand = [&](double u) {
        const double h = std::sin(0.5 * t * u);
        return 4.0 * h * h * dens(u) / (u * u);
    };
    const double head = panels.main.apply(integrand);
    const double head_check = panels.check.apply(integrand);
    const double tail = 2.0 * form.scale * one_minus_cos_tail(t, form.gamma - 2.0, panels.cutoff);
    IntegralResult out;
    out.value = head_check + tail;
    out.u_max = panels.cutoff;
    out.tail = tail;
    out.error_estimate = std::abs(head - head_check);
    if (!std::isfinite(out.value) || out.error_estimate > dens.tol * std::max(1.0, std::abs(out.value))) {
        throw QuadratureNonConvergence("r(t) quadrature error estimate " + std::to_string(out.error_estimate) +
                                       " above tolerance");
    }
    return out;
}

double r_function(const SpectralDensity& dens, double t) { return r_function_detail(dens, t).value; }

double kernel_hermite(const CoefficientEvaluator& eval, double t, double s) {
    const auto a = eval.alpha(t);
    const auto b = eval.alpha(s);
    double sum = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) {
        sum += a[n] * b[n];
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Growth and tail certification

namespace {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    if (x.size() < 2) {
        throw ValidationError("growth fit needs at least two points");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LineFit f;
    f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ss += r * r;
    }
    f.rms = std::sqrt(ss / n);
    return f;
}

}  // namespace

GrowthFit fit_growth(const std::vector<std::size_t>& n, const std::vector<double>& y) {
    if (n.size() != y.size()) {
        throw ValidationError("growth fit: size mismatch");
    }
    std::vector<double> logn, sqrtn, logy;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (!(y[i] > 0.0) || n[i] == 0) {
            throw ValidationError("growth fit needs positive data");
        }
        logn.push_back(std::log(static_cast<double>(n[i])));
        sqrtn.push_back(std::sqrt(static_cast<double>(n[i])));
        logy.push_back(std::log(y[i]));
    }
    const LineFit p = least_squares(logn, logy);
    const LineFit e = least_squares(sqrtn, logy);
    GrowthFit g;
    g.power_exponent = p.slope;
    g.power_constant = std::exp(p.intercept);
    g.power_rms = p.rms;
    g.exp_d2 = e.slope;
    g.exp_d1 = std::exp(e.intercept);
    g.exp_rms = e.rms;
    return g;
}

std::vector<double> max_abs_tm(const SpectralDensity& dens, std::size_t n_max, double t_max, double dt) {
    if (!(dt > 0.0)) {
        throw ValidationError("time step must be positive");
    }
    const CoefficientEvaluator eval(dens, n_max, t_max);
    const auto steps = static_cast<std::size_t>(std::floor(t_max / dt + 1e-9)) + 1;
    const auto rows = parallel_map<std::vector<double>>(
        steps, [&](std::size_t k) { return eval.tm(std::min(t_max, static_cast<double>(k) * dt)); });
    std::vector<double> out(n_max, 0.0);
    for (const auto& row : rows) {
        for (std::size_t n = 0; n < n_max; ++n) {
            out[n] = std::max(out[n], std::abs(row[n]));
        }
    }
    return out;
}

std::string to_string(TailReport::Status status) {
    switch (status) {
        case TailReport::Status::Certified:
            return "certified";
        case TailReport::Status::Uncertified:
            return "uncertified";
        case TailReport::Status::Failed:
            return "certification-failed";
    }
    return "unknown";
}

TailReport certify_tail(const SpectralDensity& dens, int p, double t, const WeightSequence& seq, std::size_t n_max,
                        double tol) {
    if (seq.kind() == WeightSequence::Kind::Custom) {
        throw ValidationError("tail certification supports the weights 2n and 2^n");
    }
    if (n_max < 16) {
        throw ValidationError("tail certification needs n_max >= 16");
    }
    const bool linear = seq.kind() == WeightSequence::Kind::Linear;
    TailReport rep;
    rep.p = p;
    rep.t = t;
    rep.n_max = n_max;
    rep.weights = seq.name();

    const CoefficientEvaluator eval(dens, n_max, t);
    const auto values = eval.tm(t);
    double sum = 0.0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        sum += values[n - 1] * values[n - 1] * std::pow(seq(n), -p);
        rep.partial_sums.push_back(sum);
    }

    // Envelope: block maxima over the upper three quarters of the range.
    const std::size_t start = n_max / 4;
    const std::size_t block = std::max<std::size_t>(4, (n_max - start) / 12);
    std::vector<std::size_t> idx;
    std::vector<double> env;
    for (std::size_t lo = start; lo + block <= n_max; lo += block) {
        double m = 0.0;
        std::size_t arg = lo + 1;
        for (std::size_t n = lo + 1; n <= lo + block; ++n) {
            if (std::abs(values[n - 1]) > m) {
                m = std::abs(values[n - 1]);
                arg = n;
            }
        }
        if (m > 0.0) {
            idx.push_back(arg);
            env.push_back(m);
        }
    }
    if (idx.size() < 2) {
        rep.status = TailReport::Status::Certified;
        rep.reason = "coefficients vanish beyond n = " + std::to_string(start);
        return rep;
    }
    rep.fit = fit_growth(idx, env);

    if (!dens.polynomial_class() && linear) {
        rep.status = TailReport::Status::Failed;
        rep.reason = "exponential-class density: |alpha_n'| ~ D1 e^{D2 sqrt n} is not dominated by (2n)^{-p} for any p";
        return rep;
    }
    if (linear) {
        const unsigned N = dens.growth_order();
        if (p < static_cast<int>(N) + 3) {
            rep.status = TailReport::Status::Uncertified;
            rep.reason = "p = " + std::to_string(p) + " < N + 3 = " + std::to_string(N + 3);
            return rep;
        }
        const double e = rep.fit.power_exponent;
        if (e > 0.5 * (N + 1) + 0.25) {
            rep.status = TailReport::Status::Failed;
            rep.reason = "fitted growth exponent " + std::to_string(e) + " exceeds the template (N+1)/2";
            return rep;
        }
        double c = 0.0;
        for (std::size_t n = start + 1; n <= n_max; ++n) {
            c = std::max(c, std::abs(values[n - 1]) * std::pow(static_cast<double>(n), -e));
        }
        // sum_{n > n_max} c^2 n^{2e} (2n)^{-p} <= c^2 2^{-p} n_max^{2e+1-p} / (p - 2e - 1)
        const double k = p - 2.0 * e - 1.0;
        rep.tail_bound = c * c * std::pow(2.0, -p) * std::pow(static_cast<double>(n_max), -k) / k;
    } else {
        const double d2 = std::max(0.0, rep.fit.exp_d2);
        double c = 0.0;
        for (std::size_t n = start + 1; n <= n_max; ++n) {
            c = std::max(c, std::abs(values[n - 1]) * std::exp(-d2 * std::sqrt(static_cast<double>(n))));
        }
        double tail = 0.0;
        for (std::size_t n = n_max + 1;; ++n) {
            const double nd = static_cast<double>(n);
            const double term = c * c * std::exp(2.0 * d2 * std::sqrt(nd) - nd * p * std::numbers::ln2);
            tail += term;
            if (term < 1e-30 || term < 1e-17 * tail) {
                break;
            }
        }
        rep.tail_bound = tail;
    }
    if (rep.tail_bound < tol) {
        rep.status = TailReport::Status::Certified;
        rep.reason = "fitted majorant tail below " + std::to_string(tol);
    } else {
        rep.status = TailReport::Status::Uncertified;
        rep.reason = "fitted majorant tail " + std::to_string(rep.tail_bound) + " above " + std::to_string(tol) +
                     "; increase n_max";
    }
    return rep;
}

void require_certified(const TailReport& report) {
    switch (report.status) {
        case TailReport::Status::Certified:
            return;
        case TailReport::Status::Uncertified:
            throw UncertifiedTruncation("uncertified Hermite truncation: " + report.reason);
        case TailReport::Status::Failed:
            throw CertificationFailed("tail certification failed: " + report.reason);
    }
}

}  // namespace freenoise
