#pragma once

#include "freenoise/chebyshev.hpp"
#include "freenoise/freefock.hpp"
#include "freenoise/rational.hpp"
#include "freenoise/words.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace freenoise {

/// One factor of an operator monomial: X_{e_letter}^degree, or the
/// orthonormal Chebyshev polynomial p_degree(X_{e_letter}) = U_degree(X/2).
struct OpFactor {
    enum class Kind { Power, Chebyshev };

    Letter letter = 0;
    unsigned degree = 1;
    Kind kind = Kind::Power;
};

/// Real linear combination of products of OpFactors, written left to right as
/// in the algebra (the rightmost factor acts first on a vector).
class OperatorExpr {
public:
    struct Term {
        double coeff = 1.0;
        std::vector<OpFactor> factors;
    };

    static OperatorExpr identity();
    /// X_{i_1} X_{i_2} ... X_{i_k}
    static OperatorExpr monomial(std::span<const Letter> letters);
    /// U_alpha = p_{a_1}(X_{i_1}) ... p_{a_k}(X_{i_k})
    static OperatorExpr u_word(const Word& alpha);

    /// Adjoint; the X's are self-adjoint and coefficients are real.
    OperatorExpr adjoint() const;
    /// Upper bound on the polynomial degree.
    std::size_t degree() const;

    const std::vector<Term>& terms() const { return terms_; }

    OperatorExpr& operator+=(const OperatorExpr& other);
    OperatorExpr& operator*=(double c);
    friend OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b);

private:
    std::vector<Term> terms_;
};

/// Applies the expression to a Fock vector (unit generators e_i).
FockElement apply(const OperatorExpr& expr, const FockElement& u, DegreeCap& cap);

enum class TraceEngine { Reduction, Pairing, Fock };

std::string to_string(TraceEngine engine);

struct TraceResult {
    TraceEngine engine = TraceEngine::Fock;
    std::optional<Rational> exact;
    double value = 0.0;
};

/// tau(U_beta^* U_alpha) by induction on |beta| with the Chebyshev
/// linearization rule; equals the Kronecker delta on normal-form words.
Rational trace_reduction(const Word& beta, const Word& alpha);

/// tau(T_{i_1} ... T_{i_k}): letter-matched non-crossing pairings, each pair
/// weighted by (radius/2)^2.
Rational trace_pairings(std::span<const Letter> letters, const SemicircleLaw& law = {});

/// tau(U_beta^* U_alpha) with the U's expanded into monomials and each monomial
/// traced by pairings. U's are orthonormal for `law`.
Rational trace_pairings_u(const Word& beta, const Word& alpha, const SemicircleLaw& law = {});

/// <Omega, expr Omega>; throws CapExceeded if any intermediate degree exceeds `cap`.
double trace_fock(const OperatorExpr& expr, std::size_t cap = kDefaultDegreeCap);

/// U_alpha Omega; equals the basis tensor e_alpha.
FockElement wick_word_vector(const Word& alpha, std::size_t cap = kDefaultDegreeCap);

}  // namespace freenoise
