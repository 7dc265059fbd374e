#pragma once

#include "freenoise/words.hpp"

#include <json.hpp>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace freenoise {

using Complex = std::complex<double>;

/// Coefficients f_i over generator letters i = 0, 1, ... (letter i stands for
/// the basis vector h_{i+1} of the one-particle space).
using LetterVector = std::vector<Complex>;

inline constexpr std::size_t kDefaultDegreeCap = 12;

/// Finitely supported element of the full Fock space: Word -> coefficient.
/// Exact zeros are never stored.
class FockElement {
public:
    using Terms = std::map<Word, Complex>;

    FockElement() = default;

    static FockElement vacuum();
    static FockElement basis(const Word& w, Complex c = 1.0);
    /// sum_i f_i e_{z_i}
    static FockElement from_letters(const LetterVector& f);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    /// Largest word degree present; 0 for the zero element.
    std::size_t degree() const;

    Complex coefficient(const Word& w) const;
    Complex vacuum_coefficient() const { return coefficient(Word{}); }
    void add(const Word& w, Complex c);

    /// Homogeneous component of the given degree.
    FockElement homogeneous(std::size_t degree) const;
    /// Drops coefficients with |c| <= eps.
    FockElement pruned(double eps) const;

    /// ||f||_level^2 = sum |f_w|^2 weight(w, level). Use negative levels for
    /// the distribution-side norms.
    double norm_sq(int level, const WeightSequence& seq) const;
    double norm(int level, const WeightSequence& seq) const;
    double max_abs() const;

    FockElement& operator+=(const FockElement& other);
    FockElement& operator-=(const FockElement& other);
    FockElement& operator*=(Complex c);
    /// this += c * other, without a temporary.
    void add_scaled(const FockElement& other, Complex c);

    friend FockElement operator+(FockElement a, const FockElement& b) { return a += b; }
    friend FockElement operator-(FockElement a, const FockElement& b) { return a -= b; }
    friend FockElement operator*(Complex c, FockElement a) { return a *= c; }
    friend bool operator==(const FockElement&, const FockElement&) = default;

private:
    Terms terms_;
};

/// <f, g>, conjugate-linear in f.
Complex inner(const FockElement& f, const FockElement& g);

/// Degree cap for operator applications. Terms above the limit are either
/// dropped (and their level-0 mass accumulated) or rejected with CapExceeded.
class DegreeCap {
public:
    enum class Policy { Truncate, Throw };

    explicit DegreeCap(std::size_t limit = kDefaultDegreeCap, Policy policy = Policy::Truncate)
        : limit_(limit), policy_(policy) {}

    std::size_t limit() const { return limit_; }
    Policy policy() const { return policy_; }
    double dropped_mass() const { return dropped_; }
    bool truncated() const { return dropped_ > 0.0; }

    /// Splits `raw` at the limit, recording or throwing on the overflow part.
    FockElement enforce(FockElement raw);

private:
    std::size_t limit_;
    Policy policy_;
    double dropped_ = 0.0;
};

FockElement tensor(const FockElement& f, const FockElement& g);
FockElement tensor(const FockElement& f, const FockElement& g, DegreeCap& cap);

/// l_f: e_w -> sum_i f_i e_{z_i w}.
FockElement creation(const LetterVector& f, const FockElement& u, DegreeCap& cap);
/// l_f^*: e_{z_j w} -> conj(f_j) e_w, vacuum -> 0.
FockElement annihilation(const LetterVector& f, const FockElement& u);
/// X_f = l_f + l_f^*.
FockElement apply_X(const LetterVector& f, const FockElement& u, DegreeCap& cap);

/// (sum_i |f_i|^2 a_{i+1}^level)^{1/2}.
double letter_norm(const LetterVector& f, int level, const WeightSequence& seq);
Complex letter_inner(const LetterVector& f, const LetterVector& g);

/// Riemann zeta at an integer s >= 2 (Euler-Maclaurin, ~1e-15 relative).
double zeta(unsigned s);

/// sum_n a_n^{-d}; +infinity when the series diverges.
double weight_power_sum(int d, const WeightSequence& seq);

struct VageConstant {
    int gap = 0;
    double weight_sum = 0.0;  ///< sum_n a_n^{-gap}
    double b_squared = 0.0;   ///< 1 / (1 - weight_sum)
    double b = 0.0;
};

/// Constant B_d in ||f (x) g||_q <= B_{q-p} ||f||_p ||g||_q (distribution-side norms).
/// Throws GapTooSmall when sum_n a_n^{-d} >= 1.
VageConstant vage_constant(int d, const WeightSequence& seq);

/// Smallest d >= 1 with sum_n a_n^{-d} < 1; throws NotNuclear past `cap`.
int nuclearity_index(const WeightSequence& seq, int cap = 64);

/// Up to `max_terms` random words of degree <= max_degree over `alphabet`
/// letters with standard complex Gaussian coefficients.
FockElement random_element(std::mt19937_64& rng, std::size_t max_terms, std::size_t max_degree, Letter alphabet);

struct VageTrials {
    int p = 0;
    int q = 0;
    double b = 0.0;
    std::size_t trials = 0;
    std::size_t violations = 0;  ///< across both inequalities
    double max_ratio = 0.0;      ///< max of lhs / (B rhs)
};

/// Checks ||f (x) g||_{-q} <= B ||f||_{-p} ||g||_{-q} and
/// ||g (x) f||_{-q} <= B ||f||_{-p} ||g||_{-q} on seeded random sparse pairs.
VageTrials vage_trials(int p, int q, const WeightSequence& seq, std::size_t trials, std::uint64_t seed);

nlohmann::json to_json(const FockElement& f);
FockElement fock_from_json(const nlohmann::json& j);

}  // namespace freenoise
