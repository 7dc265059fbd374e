#pragma once

#include "freenoise/hermite.hpp"
#include "freenoise/quadrature.hpp"
#include "freenoise/weights.hpp"

#include <json.hpp>

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace freenoise {

/// Even spectral density m(u) >= 0 with its growth metadata.
///
///   lebesgue      m = 1
///   fbm(H)        m = scale |u|^{1-2H}
///   poly(N)       m = scale (1 + u^2)^N
///   powerlaw(g)   m = scale |u|^g
///   exponential   m = C1 e^{C2 |u|}
class SpectralDensity {
public:
    enum class Kind { Lebesgue, Fbm, Poly, PowerLaw, Exponential };

    /// m = scale * |u|^gamma exactly.
    struct PowerLawForm {
        double scale = 1.0;
        double gamma = 0.0;
    };

    static SpectralDensity lebesgue();
    static SpectralDensity fbm(double hurst, double scale = 1.0);
    static SpectralDensity poly(unsigned order, double scale = 1.0);
    static SpectralDensity power_law(double gamma, double scale = 1.0);
    static SpectralDensity exponential(double c1, double c2);

    Kind kind() const { return kind_; }
    double operator()(double u) const;
    double sqrt_m(double u) const;

    /// Exponent b with m(u) <= K |u|^{-b} near the origin (0 if bounded).
    double singularity() const;
    /// True for the class m(u) <= K |u|^{2N} at infinity.
    bool polynomial_class() const { return kind_ != Kind::Exponential; }
    /// Smallest N with m(u) = O(|u|^{2N}); 0 for the exponential class.
    unsigned growth_order() const;
    std::optional<PowerLawForm> power_law_form() const;
    /// int m(u) / (1 + u^2) du < infinity: the covariance kernel exists.
    bool has_kernel() const;
    /// True when m is not smooth at u = 0, so quadrature grades towards it.
    bool rough_at_origin() const;

    double hurst() const { return hurst_; }
    double scale() const { return scale_; }
    double gamma() const { return gamma_; }
    unsigned order() const { return order_; }
    double c1() const { return c1_; }
    double c2() const { return c2_; }

    /// Optional frequency cutoff override (0 = automatic) and absolute tolerance.
    double u_max = 0.0;
    double tol = 1e-9;

    std::string name() const;
    nlohmann::json to_json() const;

private:
    Kind kind_ = Kind::Lebesgue;
    double hurst_ = 0.5;
    double scale_ = 1.0;
    double gamma_ = 0.0;
    unsigned order_ = 0;
    double c1_ = 1.0;
    double c2_ = 0.0;
};

/// Parses a density configuration: one `key = value` per line, `#` comments.
/// Keys: kind (lebesgue|fbm|poly|powerlaw|exp), H, N, gamma, scale, C1, C2,
/// u_max, tol. Command-line style `key=value` tokens separated by commas or
/// whitespace are accepted as well.
SpectralDensity parse_density_config(std::string_view text);
SpectralDensity load_density_config(const std::string& path);

/// Evaluates (T_m h~_n)(t) and alpha_n(t) = int_0^t (T_m h~_n)(s) ds for all
/// n <= n_max on a fixed composite Gauss-Legendre grid over [0, u_max].
///
/// For even m,
///   n odd:  (T_m h~_n)(t) =  (-1)^{(n-1)/2} sqrt(2/pi) int_0^inf cos(ut) sqrt(m) h~_n du
///   n even: (T_m h~_n)(t) =  (-1)^{(n-2)/2} sqrt(2/pi) int_0^inf sin(ut) sqrt(m) h~_n du
/// and alpha_n uses sin(ut)/u and (1 - cos ut)/u in place of cos and sin.
///
/// Immutable after construction.
class CoefficientEvaluator {
public:
    /// `resolution` > 1 shrinks the panels (used for self-checks).
    CoefficientEvaluator(const SpectralDensity& dens, std::size_t n_max, double t_max, double resolution = 1.0,
                         unsigned order = 20);

    const SpectralDensity& density() const { return dens_; }
    std::size_t n_max() const { return n_max_; }
    double t_max() const { return t_max_; }
    double u_max() const { return u_max_; }
    std::size_t node_count() const { return rule_.size(); }

    /// (T_m h~_n)(t) for n = 1..n_max (entry n-1).
    std::vector<double> tm(double t) const;
    /// alpha_n(t) for n = 1..n_max.
    std::vector<double> alpha(double t) const;
    double tm(std::size_t n, double t) const;
    double alpha(std::size_t n, double t) const;

private:
    enum class Target { Tm, Alpha };
    std::vector<double> evaluate(double t, Target target, std::size_t count) const;

    SpectralDensity dens_;
    std::size_t n_max_;
    double t_max_;
    double u_max_;
    quad::Rule rule_;
    std::vector<double> weighted_;  // w_i sqrt(m(u_i))
    HermiteBasis basis_;
};

/// Shared evaluator for (density, n_max, t_max) with at least the requested
/// range; results are identical to a freshly constructed one.
std::shared_ptr<const CoefficientEvaluator> cached_evaluator(const SpectralDensity& dens, std::size_t n_max,
                                                             double t_max);

/// (T_m h~_n)(t), checked against a refined grid; throws QuadratureNonConvergence
/// if the two disagree by more than dens.tol.
double apply_Tm(const SpectralDensity& dens, std::size_t n, double t);
double alpha(const SpectralDensity& dens, std::size_t n, double t);
/// alpha_n'(t) = (T_m h~_n)(t).
double alpha_prime(const SpectralDensity& dens, std::size_t n, double t);

struct IntegralResult {
    double value = 0.0;
    double u_max = 0.0;        ///< end of the quadrature range
    double tail = 0.0;         ///< analytic contribution of [u_max, inf)
    double error_estimate = 0.0;
};

/// K(t,s) = (1/2pi) int (e^{-itu}-1)/u (e^{isu}-1)/u m(u) du, computed as
/// (1/pi) int_0^inf [(1-cos tu)(1-cos su) + sin tu sin su] m(u)/u^2 du.
/// The range beyond u_max is integrated analytically for power-law densities.
IntegralResult kernel_detail(const SpectralDensity& dens, double t, double s);
double kernel(const SpectralDensity& dens, double t, double s);

/// r(t) = 2 int_0^inf (1 - cos tu) m(u)/u^2 du, so that
/// K(t,s) = (r(t) + r(s) - r(t-s)) / (2 pi).
IntegralResult r_function_detail(const SpectralDensity& dens, double t);
double r_function(const SpectralDensity& dens, double t);

/// sum_{n <= n_max} alpha_n(t) alpha_n(s).
double kernel_hermite(const CoefficientEvaluator& eval, double t, double s);

struct GrowthFit {
    // log y = log c + e log n
    double power_exponent = 0.0;
    double power_constant = 0.0;
    double power_rms = 0.0;
    // log y = log d1 + d2 sqrt(n)
    double exp_d1 = 0.0;
    double exp_d2 = 0.0;
    double exp_rms = 0.0;
};

/// Least-squares fits of y_n over the given indices.
GrowthFit fit_growth(const std::vector<std::size_t>& n, const std::vector<double>& y);

/// max over t in [0, t_max] (grid step dt) of |(T_m h~_n)(t)|, for n = 1..n_max.
std::vector<double> max_abs_tm(const SpectralDensity& dens, std::size_t n_max, double t_max, double dt);

struct TailReport {
    enum class Status { Certified, Uncertified, Failed };

    Status status = Status::Uncertified;
    int p = 0;
    double t = 0.0;
    std::size_t n_max = 0;
    std::string weights;
    std::vector<double> partial_sums;  ///< sum_{n<=k} |alpha_n'(t)|^2 w_n^{-p}, k = 1..n_max
    GrowthFit fit;
    double tail_bound = 0.0;           ///< majorant of the sum beyond n_max
    std::string reason;
};

std::string to_string(TailReport::Status status);

/// Certifies sum_n |alpha_n'(t)|^2 a_n^{-p} < infinity for linear (2n) or
/// exponential (2^n) weights. Polynomial densities need p >= N + 3 with
/// linear weights; exponential densities need exponential weights.
TailReport certify_tail(const SpectralDensity& dens, int p, double t, const WeightSequence& seq,
                        std::size_t n_max = 200, double tol = 1e-6);

/// Throws UncertifiedTruncation or CertificationFailed unless certified.
void require_certified(const TailReport& report);

}  // namespace freenoise
