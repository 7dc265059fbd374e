#pragma once

#include "freenoise/freefock.hpp"
#include "freenoise/spectral.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace freenoise {

struct ProcessConfig {
    SpectralDensity density = SpectralDensity::lebesgue();
    std::size_t n_max = 400;               ///< Hermite truncation
    std::size_t degree_cap = kDefaultDegreeCap;
    int p = 3;                             ///< weight level of the test space
    double t_max = 2.0;                    ///< largest |t| the process is evaluated at
    bool require_certified = false;        ///< certify the truncation at t_max on construction
};

/// X_m(t) = X_{alpha(t)} and W_m(t) = X_{alpha'(t)} on the Fock space whose
/// letter i is the Hermite function h~_{i+1}.
///
/// Weights: 2n for polynomial-class densities (p >= N + 3 is enforced),
/// 2^n for the exponential class.
class FreeProcess {
public:
    explicit FreeProcess(ProcessConfig cfg);

    const ProcessConfig& config() const { return cfg_; }
    const WeightSequence& weights() const { return weights_; }
    const CoefficientEvaluator& evaluator() const { return *eval_; }

    /// alpha_n(t), letter n - 1.
    LetterVector coefficients(double t) const;
    /// alpha_n'(t) = (T_m h~_n)(t).
    LetterVector derivative_coefficients(double t) const;

    /// X_m(t) f; throws CapExceeded above the degree cap.
    FockElement apply(double t, const FockElement& f) const;
    /// W_m(t) f.
    FockElement apply_whitenoise(double t, const FockElement& f) const;

    /// tau(X_m(s) X_m(t)) = <X_m(s) Omega, X_m(t) Omega>.
    double covariance(double s, double t) const;

    TailReport certify(double t) const;

private:
    ProcessConfig cfg_;
    WeightSequence weights_;
    std::shared_ptr<const CoefficientEvaluator> eval_;
};

struct DerivativeCheck {
    double t = 0.0;
    int level = 0;                 ///< norms are taken at -level
    std::vector<double> steps;
    std::vector<double> errors;    ///< ||(X(t+h) - X(t)) f / h - W(t) f||_{-level}
    double slope = 0.0;            ///< log-log slope of errors against steps
};

DerivativeCheck derivative_check(const FreeProcess& process, double t, const FockElement& f,
                                 const std::vector<double>& steps);

/// t -> Y(t) on [a, b].
struct IntegrandPath {
    std::function<FockElement(double)> value;
    std::string name;

    static IntegrandPath zero();
    static IntegrandPath constant(FockElement y);
    /// Y(t) = X_m(t) g.
    static IntegrandPath process(const FreeProcess& proc, FockElement g);
};

struct RiemannTerms {
    FockElement sum;
    double max_vage_ratio = 0.0;  ///< max over terms of ||Y (x) Wf||_{-q} / (B ||Y||_{-p} ||Wf||_{-q})
};

/// sum_i Y(u_i) (x) (W_m(u_i) f) Delta over `tags` equal cells of [a, b] with
/// left tags. Terms are evaluated concurrently and summed in index order.
RiemannTerms riemann_sum(const FreeProcess& process, const IntegrandPath& path, const FockElement& f, double a,
                         double b, std::size_t tags, int q);

struct RefinementLevel {
    unsigned level = 0;
    std::size_t tags = 0;
    double mesh = 0.0;
    double norm = 0.0;       ///< ||S_k||_{-q}
    double distance = 0.0;   ///< ||S_k - S_{k-1}||_{-q}; 0 on the first level
    double ratio = 0.0;      ///< distance / previous distance; 0 when undefined
    double max_vage_ratio = 0.0;
};

struct IntegralReport {
    double a = 0.0;
    double b = 0.0;
    int p = 0;
    int q = 0;
    double vage_b = 0.0;
    std::vector<RefinementLevel> levels;
    bool converged = false;
    FockElement result;      ///< finest Riemann sum
};

struct IntegralOptions {
    unsigned first_level = 0;   ///< 2^first_level tags on the coarsest sum
    unsigned last_level = 12;
    int q = 5;
    double contraction = 0.6;   ///< convergence needs three consecutive ratios <= this
};

/// Dyadic Riemann sums S_k of int_a^b Y(u) (x) W_m(u) f du at level -q.
/// Throws LevelTooLow if q < p + 2.
IntegralReport stochastic_integral(const FreeProcess& process, const IntegrandPath& path, const FockElement& f,
                                   double a, double b, const IntegralOptions& opts);

/// Throws NonCauchy unless the report converged.
void require_converged(const IntegralReport& report);

}  // namespace freenoise
