#pragma once

#include "freenoise/words.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace freenoise {

/// Independent GUE matrices H_0..H_{generators-1} of size dim, one family per
/// sample. Entries are centred Gaussians with E|H_ij|^2 = (radius/2)^2 / dim,
/// so each H_g converges to a semicircle on [-radius, radius].
///
/// Randomness: uniform(seed, sample, generator, k) hashes the four integers with
/// the splitmix64 finalizer and maps the top 53 bits to (0, 1). Pair k of
/// Gaussians comes from the Box-Muller transform of uniforms 2k and 2k+1.
/// Streams are fixed by (seed, sample, generator), independent of threading.
struct EnsembleConfig {
    std::size_t dim = 1000;
    std::size_t generators = 2;
    std::size_t samples = 50;
    std::uint64_t seed = 1;
    double radius = 2.0;
    std::size_t max_length = 16;
};

struct TraceEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
    std::vector<double> per_sample;
};

/// Uniform in (0, 1) for the given counter.
double counter_uniform(std::uint64_t seed, std::uint64_t sample, std::uint64_t generator, std::uint64_t k);

/// Monte Carlo estimates of tr_N(H_{i_1} ... H_{i_k}) for several monomials;
/// all monomials share the sampled matrices.
std::vector<TraceEstimate> estimate_traces(const EnsembleConfig& cfg, const std::vector<std::vector<Letter>>& words);
TraceEstimate estimate_trace(const EnsembleConfig& cfg, std::span<const Letter> letters);

/// tr_N(U_alpha) with p_n(H) = U_n(H / radius).
TraceEstimate estimate_u_trace(const EnsembleConfig& cfg, const Word& beta, const Word& alpha);

}  // namespace freenoise
