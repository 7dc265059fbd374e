#include "freenoise/error.hpp"
#include "freenoise/words.hpp"

#include <doctest.h>

#include <random>

using namespace freenoise;

namespace {

std::vector<Run> runs(std::initializer_list<Run> r) { return r; }

Word from(std::initializer_list<Letter> l) {
    const std::vector<Letter> v(l);
    return Word::from_letters(v);
}

}  // namespace

TEST_CASE("normal form merges equal neighbours") {
    CHECK(from({}).empty());
    CHECK(from({0, 0, 1}).runs() == runs({{0, 2}, {1, 1}}));
    CHECK(from({2, 1, 1, 2}).runs() == runs({{2, 1}, {1, 2}, {2, 1}}));
    CHECK(from({2, 1, 1, 2}).degree() == 4);
    const std::vector<Run> zeros{{1, 0}, {2, 3}, {2, 1}};
    CHECK(Word::from_runs(zeros).runs() == runs({{2, 4}}));
}

TEST_CASE("concat merges the seam") {
    const Word w = from({1, 2});
    CHECK(concat(Word{}, w) == w);
    CHECK(concat(Word::power(1), Word::power(1, 2)).runs() == runs({{1, 3}}));
    CHECK(concat(Word::power(1), Word::power(2)).runs() == runs({{1, 1}, {2, 1}}));
}

TEST_CASE("weights") {
    CHECK(weight(Word{}, 5, WeightSequence::linear()) == 1.0);
    CHECK(weight(Word::power(0, 2), 1, WeightSequence::linear()) == doctest::Approx(4.0));
    CHECK(weight(from({0, 1}), -2, WeightSequence::exponential()) == doctest::Approx(1.0 / 64.0));
    const auto custom = WeightSequence::custom({2.0, 3.0});
    CHECK(weight(from({1, 0, 1}), 1, custom) == doctest::Approx(18.0));
    CHECK_THROWS_AS(weight(Word::power(2), 1, custom), ValidationError);
    CHECK_THROWS_AS(WeightSequence::custom({3.0, 2.0}), ValidationError);
}

TEST_CASE("text form round trip") {
    CHECK(Word::parse("z0^2 z1").runs() == runs({{0, 2}, {1, 1}}));
    CHECK(Word::parse("1").empty());
    CHECK(Word::parse("").empty());
    CHECK(Word{}.str() == "1");
    CHECK(Word::parse("z3 z3").str() == "z3^2");
    CHECK_THROWS_AS(Word::parse("x1"), ValidationError);
    CHECK_THROWS_AS(Word::parse("z1^"), ValidationError);

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<Letter> letter(0, 3);
    std::uniform_int_distribution<int> len(0, 9);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Letter> l(static_cast<std::size_t>(len(rng)));
        for (auto& x : l) {
            x = letter(rng);
        }
        const Word w = Word::from_letters(l);
        CHECK(Word::parse(w.str()) == w);
        CHECK(w.letters() == l);
        CHECK(w.reversed().reversed() == w);
    }
}

TEST_CASE("graded order and enumeration") {
    CHECK(Word::power(1) < Word::power(0, 2));
    CHECK(from({0, 1}) < from({1, 0}));
    const auto words = enumerate_words(4, 3);
    CHECK(words.size() == 1 + 3 + 9 + 27 + 81);
    for (std::size_t i = 1; i < words.size(); ++i) {
        CHECK(words[i - 1] < words[i]);
    }
}

TEST_CASE("first letter removal") {
    const Word w = from({0, 0, 1});
    CHECK(w.first_letter() == Letter{0});
    CHECK(w.without_first_letter() == from({0, 1}));
    CHECK(!Word{}.first_letter().has_value());
}
