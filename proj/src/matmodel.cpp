#include "freenoise/matmodel.hpp"

#include "freenoise/error.hpp"
#include "freenoise/parallel.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <map>
#include <numbers>

namespace freenoise {

namespace {

using Matrix = Eigen::MatrixXcd;

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void validate(const EnsembleConfig& cfg) {
    if (cfg.dim < 2) {
        throw ValidationError("matrix dimension must be at least 2");
    }
    if (cfg.samples < 2) {
        throw ValidationError("need at least two samples for a standard error");
    }
    if (cfg.generators == 0 || !(cfg.radius > 0.0)) {
        throw ValidationError("need at least one generator and a positive radius");
    }
}

Matrix sample_gue(const EnsembleConfig& cfg, std::uint64_t sample, std::uint64_t generator) {
    const auto n = static_cast<Eigen::Index>(cfg.dim);
    const double sigma = 0.5 * cfg.radius / std::sqrt(static_cast<double>(cfg.dim));
    Matrix h(n, n);
    std::uint64_t k = 0;
    auto gaussian_pair = [&](double& z0, double& z1) {
        const double u1 = counter_uniform(cfg.seed, sample, generator, 2 * k);
        const double u2 = counter_uniform(cfg.seed, sample, generator, 2 * k + 1);
        ++k;
        const double r = std::sqrt(-2.0 * std::log(u1));
        z0 = r * std::cos(2.0 * std::numbers::pi * u2);
        z1 = r * std::sin(2.0 * std::numbers::pi * u2);
    };
    const double off = sigma / std::sqrt(2.0);
    for (Eigen::Index j = 0; j < n; ++j) {
        double z0, z1;
        gaussian_pair(z0, z1);
        h(j, j) = sigma * z0;
        for (Eigen::Index i = j + 1; i < n; ++i) {
            gaussian_pair(z0, z1);
            h(i, j) = std::complex<double>(off * z0, off * z1);
            h(j, i) = std::conj(h(i, j));
        }
    }
    return h;
}

// Products of short letter sequences, reusing prefixes and the identity
// H_c ... H_a = (H_a ... H_c)^* for Hermitian factors.
class ProductCache {
public:
    explicit ProductCache(std::vector<Matrix> gens) : gens_(std::move(gens)) {}

    const Matrix& get(const std::vector<Letter>& w) {
        if (w.size() == 1) {
            return gens_.at(w[0]);
        }
        if (auto it = cache_.find(w); it != cache_.end()) {
            return it->second;
        }
        std::vector<Letter> rev(w.rbegin(), w.rend());
        if (auto it = cache_.find(rev); it != cache_.end()) {
            return cache_.emplace(w, it->second.adjoint()).first->second;
        }
        std::vector<Letter> prefix(w.begin(), w.end() - 1);
        Matrix prod = get(prefix) * gens_.at(w.back());
        return cache_.emplace(w, std::move(prod)).first->second;
    }

private:
    std::vector<Matrix> gens_;
    std::map<std::vector<Letter>, Matrix> cache_;
};

// tr_N(P Q) = (1/N) sum_ij P_ij Q_ji
double normalized_trace_product(const Matrix& p, const Matrix& q) {
    return (p.cwiseProduct(q.transpose())).sum().real() / static_cast<double>(p.rows());
}

TraceEstimate summarize(std::vector<double> values) {
    TraceEstimate e;
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    e.mean = sum / n;
    double ss = 0.0;
    for (double v : values) {
        ss += (v - e.mean) * (v - e.mean);
    }
    e.standard_error = std::sqrt(ss / (n - 1.0) / n);
    e.per_sample = std::move(values);
    return e;
}

std::vector<Matrix> sample_family(const EnsembleConfig& cfg, std::size_t sample) {
    std::vector<Matrix> gens;
    gens.reserve(cfg.generators);
    for (std::size_t g = 0; g < cfg.generators; ++g) {
        gens.push_back(sample_gue(cfg, sample, g));
    }
    return gens;
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t sample, std::uint64_t generator, std::uint64_t k) {
    std::uint64_t x = mix(seed);
    x = mix(x ^ sample);
    x = mix(x ^ generator);
    x = mix(x ^ k);
    return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
}

std::vector<TraceEstimate> estimate_traces(const EnsembleConfig& cfg, const std::vector<std::vector<Letter>>& words) {
    validate(cfg);
    for (const auto& w : words) {
        if (w.size() > cfg.max_length) {
            throw ValidationError("word length " + std::to_string(w.size()) + " exceeds the configured cap " +
                                  std::to_string(cfg.max_length));
        }
        for (Letter l : w) {
            if (l >= cfg.generators) {
                throw ValidationError("letter z" + std::to_string(l) + " exceeds the number of generators");
            }
        }
    }
    // samples x words, each sample independent.
    const auto table = parallel_map<std::vector<double>>(cfg.samples, [&](std::size_t s) {
        ProductCache cache(sample_family(cfg, s));
        std::vector<double> row;
        row.reserve(words.size());
        for (const auto& w : words) {
            if (w.empty()) {
                row.push_back(1.0);
                continue;
            }
            if (w.size() == 1) {
                row.push_back(cache.get(w).trace().real() / static_cast<double>(cfg.dim));
                continue;
            }
            const std::size_t mid = w.size() / 2;
            const std::vector<Letter> left(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(mid));
            const std::vector<Letter> right(w.begin() + static_cast<std::ptrdiff_t>(mid), w.end());
            row.push_back(normalized_trace_product(cache.get(left), cache.get(right)));
        }
        return row;
    });
    std::vector<TraceEstimate> out;
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (words[i].empty()) {
            out.push_back({1.0, 0.0, std::vector<double>(cfg.samples, 1.0)});
            continue;
        }
        std::vector<double> col;
        col.reserve(cfg.samples);
        for (const auto& row : table) {
            col.push_back(row[i]);
        }
        out.push_back(summarize(std::move(col)));
    }
    return out;
}

TraceEstimate estimate_trace(const EnsembleConfig& cfg, std::span<const Letter> letters) {
    return estimate_traces(cfg, {std::vector<Letter>(letters.begin(), letters.end())}).front();
}

TraceEstimate estimate_u_trace(const EnsembleConfig& cfg, const Word& beta, const Word& alpha) {
    validate(cfg);
    if (beta.degree() + alpha.degree() > cfg.max_length) {
        throw ValidationError("word degree exceeds the configured cap");
    }
    std::vector<Run> runs(beta.runs().rbegin(), beta.runs().rend());
    runs.insert(runs.end(), alpha.runs().begin(), alpha.runs().end());
    for (const Run& r : runs) {
        if (r.letter >= cfg.generators) {
            throw ValidationError("letter z" + std::to_string(r.letter) + " exceeds the number of generators");
        }
    }
    if (runs.empty()) {
        return {1.0, 0.0, std::vector<double>(cfg.samples, 1.0)};
    }
    const auto values = parallel_map<double>(cfg.samples, [&](std::size_t s) {
        const auto gens = sample_family(cfg, s);
        const auto n = static_cast<Eigen::Index>(cfg.dim);
        Matrix acc = Matrix::Identity(n, n);
        for (const Run& r : runs) {
            // p_{k+1} = (2/radius) H p_k - p_{k-1}
            const Matrix& h = gens[r.letter];
            Matrix prev = Matrix::Identity(n, n);
            Matrix cur = (2.0 / cfg.radius) * h;
            for (std::uint32_t k = 1; k < r.exponent; ++k) {
                Matrix next = (2.0 / cfg.radius) * (h * cur) - prev;
                prev = std::move(cur);
                cur = std::move(next);
            }
            acc = (acc * cur).eval();
        }
        return acc.trace().real() / static_cast<double>(cfg.dim);
    });
    return summarize(values);
}

}  // namespace freenoise
