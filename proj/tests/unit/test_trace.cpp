#include "freenoise/error.hpp"
#include "freenoise/trace.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace freenoise;

namespace {

std::vector<Letter> random_letters(std::mt19937_64& rng, std::size_t len, Letter alphabet) {
    std::uniform_int_distribution<Letter> d(0, alphabet - 1);
    std::vector<Letter> l(len);
    for (auto& x : l) {
        x = d(rng);
    }
    return l;
}

}  // namespace

TEST_CASE("reduction engine on U words") {
    CHECK(trace_reduction(Word{}, Word{}) == 1);
    const Word w = Word::parse("z0^2 z1");
    CHECK(trace_reduction(w, w) == 1);
    CHECK(trace_reduction(Word::parse("z0 z1"), Word::parse("z1 z0")) == 0);
    const auto words = enumerate_words(4, 2);
    for (const Word& a : words) {
        for (const Word& b : words) {
            CHECK(trace_reduction(b, a) == (a == b ? 1 : 0));
        }
    }
}

TEST_CASE("pairing engine") {
    const std::vector<Letter> aabb{1, 1, 2, 2}, abab{1, 2, 1, 2}, aaaa{1, 1, 1, 1};
    CHECK(trace_pairings(aabb) == 1);
    CHECK(trace_pairings(abab) == 0);
    CHECK(trace_pairings(aaaa) == 2);
    const std::vector<Letter> odd{0, 0, 0};
    CHECK(trace_pairings(odd) == 0);
    const SemicircleLaw unit{Rational(1)};
    for (unsigned n = 0; n <= 6; ++n) {
        const std::vector<Letter> l(2 * n, 0);
        CHECK(trace_pairings(l, unit) == semicircle_moment(2 * n, unit));
    }
}

TEST_CASE("Fock engine") {
    const Letter e1[] = {0}, e2[] = {1};
    CHECK(trace_fock(OperatorExpr::monomial(e1).adjoint() * OperatorExpr::monomial(e2)) == 0.0);
    CHECK(trace_fock(OperatorExpr::monomial(e1).adjoint() * OperatorExpr::monomial(e1)) == doctest::Approx(1.0));
    CHECK(std::abs(trace_fock(OperatorExpr::u_word(Word::power(0, 2)))) < 1e-15);
    CHECK(trace_fock(OperatorExpr::identity()) == 1.0);
}

TEST_CASE("engines agree on random monomials and U words") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 150; ++trial) {
        const auto l = random_letters(rng, static_cast<std::size_t>(trial % 9), 3);
        const double pairs = to_double(trace_pairings(l));
        CHECK(trace_fock(OperatorExpr::monomial(l)) == doctest::Approx(pairs));
    }
    const auto words = enumerate_words(3, 2);
    for (const Word& a : words) {
        for (const Word& b : words) {
            const Rational red = trace_reduction(b, a);
            CHECK(trace_pairings_u(b, a) == red);
            const double fock = trace_fock(OperatorExpr::u_word(b).adjoint() * OperatorExpr::u_word(a));
            CHECK(std::abs(fock - to_double(red)) < 1e-12);
        }
    }
}

TEST_CASE("traciality") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        auto a = random_letters(rng, 1 + trial % 5, 3);
        const auto b = random_letters(rng, 1 + trial % 4, 3);
        std::vector<Letter> ab = a, ba = b;
        ab.insert(ab.end(), b.begin(), b.end());
        ba.insert(ba.end(), a.begin(), a.end());
        CHECK(trace_pairings(ab) == trace_pairings(ba));
    }
}

TEST_CASE("U words applied to the vacuum") {
    CHECK(wick_word_vector(Word{}) == FockElement::vacuum());
    CHECK(wick_word_vector(Word::power(3)) == FockElement::basis(Word::power(3)));
    CHECK(wick_word_vector(Word::power(0, 2)) == FockElement::basis(Word::power(0, 2)));
    for (const Word& w : enumerate_words(5, 3)) {
        const FockElement v = wick_word_vector(w);
        CHECK((v - FockElement::basis(w)).max_abs() < 1e-12);
    }
}

TEST_CASE("degree cap in the Fock engine") {
    const std::vector<Letter> l(6, 0);
    CHECK_THROWS_AS(trace_fock(OperatorExpr::monomial(l), 4), CapExceeded);
    CHECK(trace_fock(OperatorExpr::monomial(l), 6) == doctest::Approx(5.0));
}

TEST_CASE("operator algebra") {
    const OperatorExpr u = OperatorExpr::u_word(Word::parse("z0^2 z1"));
    CHECK(u.degree() == 3);
    OperatorExpr sum = OperatorExpr::identity();
    sum += OperatorExpr::identity();
    sum *= 0.5;
    CHECK(trace_fock(sum) == doctest::Approx(1.0));
}
