#include "freenoise/trace.hpp"

#include "freenoise/error.hpp"

#include <algorithm>
#include <cstdint>

namespace freenoise {

// ---------------------------------------------------------------------------
// OperatorExpr

OperatorExpr OperatorExpr::identity() {
    OperatorExpr e;
    e.terms_.push_back({1.0, {}});
    return e;
}

OperatorExpr OperatorExpr::monomial(std::span<const Letter> letters) {
    OperatorExpr e;
    Term t;
    for (Letter l : letters) {
        t.factors.push_back({l, 1, OpFactor::Kind::Power});
    }
    e.terms_.push_back(std::move(t));
    return e;
}

OperatorExpr OperatorExpr::u_word(const Word& alpha) {
    OperatorExpr e;
    Term t;
    for (const Run& r : alpha.runs()) {
        t.factors.push_back({r.letter, r.exponent, OpFactor::Kind::Chebyshev});
    }
    e.terms_.push_back(std::move(t));
    return e;
}

OperatorExpr OperatorExpr::adjoint() const {
    OperatorExpr e = *this;
    for (Term& t : e.terms_) {
        std::reverse(t.factors.begin(), t.factors.end());
    }
    return e;
}

std::size_t OperatorExpr::degree() const {
    std::size_t d = 0;
    for (const Term& t : terms_) {
        std::size_t s = 0;
        for (const OpFactor& f : t.factors) {
            s += f.degree;
        }
        d = std::max(d, s);
    }
    return d;
}

OperatorExpr& OperatorExpr::operator+=(const OperatorExpr& other) {
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    return *this;
}

OperatorExpr& OperatorExpr::operator*=(double c) {
    for (Term& t : terms_) {
        t.coeff *= c;
    }
    return *this;
}

OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b) {
    OperatorExpr out;
    for (const auto& ta : a.terms_) {
        for (const auto& tb : b.terms_) {
            OperatorExpr::Term t{ta.coeff * tb.coeff, ta.factors};
            t.factors.insert(t.factors.end(), tb.factors.begin(), tb.factors.end());
            out.terms_.push_back(std::move(t));
        }
    }
    return out;
}

namespace {

LetterVector unit_vector(Letter letter) {
    LetterVector e(std::size_t{letter} + 1, Complex{});
    e[letter] = 1.0;
    return e;
}

FockElement apply_factor(const OpFactor& factor, const FockElement& v, DegreeCap& cap) {
    const LetterVector e = unit_vector(factor.letter);
    if (factor.kind == OpFactor::Kind::Power) {
        FockElement cur = v;
        for (unsigned k = 0; k < factor.degree; ++k) {
            cur = apply_X(e, cur, cap);
        }
        return cur;
    }
    // p_{k+1}(X) v = X p_k(X) v - p_{k-1}(X) v, p_0 = 1, p_1 = x.
    FockElement prev = v;
    if (factor.degree == 0) {
        return prev;
    }
    FockElement cur = apply_X(e, v, cap);
    for (unsigned k = 1; k < factor.degree; ++k) {
        FockElement next = apply_X(e, cur, cap);
        next -= prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

}  // namespace

FockElement apply(const OperatorExpr& expr, const FockElement& u, DegreeCap& cap) {
    FockElement out;
    for (const auto& term : expr.terms()) {
        FockElement v = u;
        for (auto it = term.factors.rbegin(); it != term.factors.rend(); ++it) {
            v = apply_factor(*it, v, cap);
        }
        out.add_scaled(v, term.coeff);
    }
    return out;
}

std::string to_string(TraceEngine engine) {
    switch (engine) {
        case TraceEngine::Reduction:
            return "reduction";
        case TraceEngine::Pairing:
            return "pairing";
        case TraceEngine::Fock:
            return "fock";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Reduction engine

Rational trace_reduction(const Word& beta, const Word& alpha) {
    if (beta.empty()) {
        // tau(U_alpha) vanishes by freeness unless alpha = 1.
        return alpha.empty() ? Rational(1) : Rational(0);
    }
    if (alpha.empty()) {
        return Rational(0);
    }
    const Run& b1 = beta.runs().front();
    const Run& a1 = alpha.runs().front();
    if (b1.letter != a1.letter) {
        // Alternating product of centred blocks.
        return Rational(0);
    }
    // U_{b1} U_{a1} = sum_k U_{|b1 - a1| + 2k}: merge the two blocks and recurse on |beta| - b1.
    const std::vector<Run> beta_tail(beta.runs().begin() + 1, beta.runs().end());
    const Word beta_rest = Word::from_runs(beta_tail);
    const std::uint32_t lo = b1.exponent > a1.exponent ? b1.exponent - a1.exponent : a1.exponent - b1.exponent;
    const std::uint32_t count = std::min(b1.exponent, a1.exponent);
    Rational sum = 0;
    for (std::uint32_t k = 0; k <= count; ++k) {
        std::vector<Run> runs = alpha.runs();
        runs.front().exponent = lo + 2 * k;
        sum += trace_reduction(beta_rest, Word::from_runs(runs));
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Pairing engine

namespace {

class PairingCounter {
public:
    explicit PairingCounter(std::span<const Letter> letters)
        : letters_(letters), n_(letters.size()), memo_(n_ * n_ + 1, -1) {}

    // Non-crossing letter-matched pairings of positions [i, j).
    std::int64_t count(std::size_t i, std::size_t j) {
        if (i >= j) {
            return 1;
        }
        if ((j - i) % 2 == 1) {
            return 0;
        }
        std::int64_t& slot = memo_[i * n_ + (j - 1)];
        if (slot >= 0) {
            return slot;
        }
        std::int64_t total = 0;
        for (std::size_t m = i + 1; m < j; m += 2) {
            if (letters_[m] == letters_[i]) {
                const std::int64_t inner = count(i + 1, m);
                if (inner != 0) {
                    total += inner * count(m + 1, j);
                }
            }
        }
        slot = total;
        return total;
    }

private:
    std::span<const Letter> letters_;
    std::size_t n_;
    std::vector<std::int64_t> memo_;
};

}  // namespace

Rational trace_pairings(std::span<const Letter> letters, const SemicircleLaw& law) {
    if (letters.size() % 2 == 1) {
        return Rational(0);
    }
    PairingCounter counter(letters);
    const std::int64_t n = counter.count(0, letters.size());
    Rational pair_weight = (law.radius / 2) * (law.radius / 2);
    Rational scale = 1;
    for (std::size_t k = 0; k < letters.size() / 2; ++k) {
        scale *= pair_weight;
    }
    return Rational(n) * scale;
}

namespace {

// p_n(x) = U_n(x / radius) in the monomial basis.
MonomialPoly orthonormal_monomials(unsigned n, const Rational& radius) {
    MonomialPoly p = u_poly(n);
    Rational scale = 1;
    for (auto& c : p) {
        c *= scale;
        scale /= radius;
    }
    return p;
}

void expand_pairings(const std::vector<std::pair<Letter, MonomialPoly>>& blocks, std::size_t index,
                     std::vector<Letter>& letters, const Rational& coeff, const SemicircleLaw& law, Rational& sum) {
    if (index == blocks.size()) {
        sum += coeff * trace_pairings(letters, law);
        return;
    }
    const auto& [letter, poly] = blocks[index];
    for (std::size_t k = 0; k < poly.size(); ++k) {
        if (poly[k] == 0) {
            continue;
        }
        letters.insert(letters.end(), k, letter);
        expand_pairings(blocks, index + 1, letters, coeff * poly[k], law, sum);
        letters.resize(letters.size() - k);
    }
}

}  // namespace

Rational trace_pairings_u(const Word& beta, const Word& alpha, const SemicircleLaw& law) {
    std::vector<std::pair<Letter, MonomialPoly>> blocks;
    for (auto it = beta.runs().rbegin(); it != beta.runs().rend(); ++it) {
        blocks.emplace_back(it->letter, orthonormal_monomials(it->exponent, law.radius));
    }
    for (const Run& r : alpha.runs()) {
        blocks.emplace_back(r.letter, orthonormal_monomials(r.exponent, law.radius));
    }
    Rational sum = 0;
    std::vector<Letter> letters;
    expand_pairings(blocks, 0, letters, Rational(1), law, sum);
    return sum;
}

// ---------------------------------------------------------------------------
// Fock engine

double trace_fock(const OperatorExpr& expr, std::size_t cap) {
    DegreeCap guard(cap, DegreeCap::Policy::Throw);
    return apply(expr, FockElement::vacuum(), guard).vacuum_coefficient().real();
}

FockElement wick_word_vector(const Word& alpha, std::size_t cap) {
    if (alpha.degree() > cap) {
        throw CapExceeded("word degree " + std::to_string(alpha.degree()) + " exceeds cap " + std::to_string(cap));
    }
    DegreeCap guard(cap, DegreeCap::Policy::Throw);
    return apply(OperatorExpr::u_word(alpha), FockElement::vacuum(), guard);
}

}  // namespace freenoise
