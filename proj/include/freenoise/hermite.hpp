#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace freenoise {

/// Probabilists' Hermite polynomial h_k(u) = (-1)^k e^{u^2/2} d^k/du^k e^{-u^2/2}.
double hermite_poly(unsigned k, double u);

/// Normalized Hermite function
///   h~_k(u) = h_{k-1}(sqrt(2) u) e^{-u^2/2} / (pi^{1/4} sqrt((k-1)!)),  k >= 1.
double hermite_fn(unsigned k, double u);

/// h~_1(u) .. h~_count(u) in one pass of the scaled three-term recurrence.
/// Safe for large indices and |u|: the Gaussian factor is carried as a
/// separate exponent and only applied on output.
std::vector<double> hermite_fns(std::size_t count, double u);

/// Fourier transform  int e^{-iux} h~_k(x) dx = sqrt(2 pi) (-i)^{k-1} h~_k(u).
std::complex<double> fourier_hermite(unsigned k, double u);

/// Partial Mehler sum  sum_{n < n_terms} h~_{n+1}(u) h~_{n+1}(v) s^n.
double mehler_sum(double u, double v, double s, unsigned n_terms);

/// pi^{-1/2} (1 - s^2)^{-1/2} exp(-((1 + s^2)(u^2 + v^2) - 4 s u v) / (2 (1 - s^2))).
double mehler_closed(double u, double v, double s);

/// Number of terms after which |s|^n drops below `tol` (at least 1).
unsigned mehler_terms_for(double s, double tol);

/// Hermite functions h~_1..h~_{max_index} tabulated on a fixed node set.
///
/// Read-only after construction. value(k, i) is h~_k at nodes[i].
class HermiteBasis {
public:
    HermiteBasis(std::size_t max_index, std::span<const double> nodes);

    std::size_t max_index() const { return max_index_; }
    std::size_t node_count() const { return node_count_; }
    double value(std::size_t k, std::size_t node) const { return table_[(k - 1) * node_count_ + node]; }
    /// Row for index k, contiguous over nodes.
    std::span<const double> row(std::size_t k) const {
        return {table_.data() + (k - 1) * node_count_, node_count_};
    }

private:
    std::size_t max_index_;
    std::size_t node_count_;
    std::vector<double> table_;
};

}  // namespace freenoise
