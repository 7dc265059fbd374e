#pragma once

#include "freenoise/weights.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace freenoise {

/// One maximal block z_letter^exponent of a word.
struct Run {
    Letter letter = 0;
    std::uint32_t exponent = 1;

    bool operator==(const Run&) const = default;
};

/// Element of the free monoid over generator indices, stored in run form
/// z_{i_1}^{a_1} ... z_{i_k}^{a_k} with adjacent letters distinct.
///
/// The same value indexes tensor basis vectors of the full Fock space and the
/// Chebyshev product basis U_alpha. Ordering is graded: by degree first, then
/// lexicographic on the flattened letter sequence.
class Word {
public:
    Word() = default;

    static Word from_letters(std::span<const Letter> letters);
    /// Merges equal neighbours and drops zero exponents.
    static Word from_runs(std::span<const Run> runs);
    static Word power(Letter letter, std::uint32_t exponent = 1);

    /// Parses "z0^2 z1"; "1" (or an empty string) is the identity.
    static Word parse(std::string_view text);

    const std::vector<Run>& runs() const { return runs_; }
    bool empty() const { return runs_.empty(); }
    std::size_t degree() const { return degree_; }

    std::vector<Letter> letters() const;
    std::optional<Letter> first_letter() const;
    /// Word with one occurrence of its first letter removed. Precondition: non-empty.
    Word without_first_letter() const;
    Word reversed() const;

    std::string str() const;

    friend bool operator==(const Word& a, const Word& b) { return a.runs_ == b.runs_; }
    friend std::strong_ordering operator<=>(const Word& a, const Word& b);

private:
    std::vector<Run> runs_;
    std::size_t degree_ = 0;
};

Word normalize(std::span<const Letter> letters);
Word concat(const Word& a, const Word& b);

/// Product over letter occurrences of a_{letter+1}^p; p may be negative.
double weight(const Word& w, int p, const WeightSequence& seq);

/// All words of degree <= max_degree over letters 0..alphabet-1, in graded order.
std::vector<Word> enumerate_words(std::size_t max_degree, Letter alphabet);

}  // namespace freenoise
