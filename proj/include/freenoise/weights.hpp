#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace freenoise {

using Letter = std::uint32_t;

/// The scale a_1, a_2, ... behind the weighted Fock norms.
///
/// Letter i carries the factor a_{i+1}, so letter 0 has weight a_1 (= 2 for
/// both built-in kinds).
class WeightSequence {
public:
    enum class Kind { Linear, Exponential, Custom };

    /// a_n = 2n.
    static WeightSequence linear();
    /// a_n = 2^n.
    static WeightSequence exponential();
    /// a_1..a_k from a finite table; entries must be >= 1 and non-decreasing.
    static WeightSequence custom(std::vector<double> table);
    /// "2n", "2^n" or a comma-separated custom table.
    static WeightSequence parse(std::string_view text);

    Kind kind() const { return kind_; }

    /// a_n for n >= 1.
    double operator()(std::size_t n) const;
    double letter_weight(Letter letter) const { return (*this)(std::size_t{letter} + 1); }

    /// Number of defined entries for custom tables; zero means unbounded.
    std::size_t size() const { return table_.size(); }
    bool defined_for(Letter letter) const;

    std::string name() const;

private:
    WeightSequence(Kind kind, std::vector<double> table) : kind_(kind), table_(std::move(table)) {}

    Kind kind_;
    std::vector<double> table_;
};

}  // namespace freenoise
