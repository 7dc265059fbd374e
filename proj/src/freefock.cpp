#include "freenoise/freefock.hpp"

#include "freenoise/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace freenoise {

// ---------------------------------------------------------------------------
// FockElement

FockElement FockElement::vacuum() { return basis(Word{}); }

FockElement FockElement::basis(const Word& w, Complex c) {
    FockElement out;
    out.add(w, c);
    return out;
}

FockElement FockElement::from_letters(const LetterVector& f) {
    FockElement out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        out.add(Word::power(static_cast<Letter>(i)), f[i]);
    }
    return out;
}

std::size_t FockElement::degree() const {
    std::size_t d = 0;
    for (const auto& [w, c] : terms_) {
        d = std::max(d, w.degree());
    }
    return d;
}

Complex FockElement::coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Complex{} : it->second;
}

void FockElement::add(const Word& w, Complex c) {
    if (c == Complex{}) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second == Complex{}) {
            terms_.erase(it);
        }
    }
}

FockElement FockElement::homogeneous(std::size_t degree) const {
    FockElement out;
    for (const auto& [w, c] : terms_) {
        if (w.degree() == degree) {
            out.terms_.emplace_hint(out.terms_.end(), w, c);
        }
    }
    return out;
}

FockElement FockElement::pruned(double eps) const {
    FockElement out;
    for (const auto& [w, c] : terms_) {
        if (std::abs(c) > eps) {
            out.terms_.emplace_hint(out.terms_.end(), w, c);
        }
    }
    return out;
}

double FockElement::norm_sq(int level, const WeightSequence& seq) const {
    double sum = 0.0;
    for (const auto& [w, c] : terms_) {
        sum += std::norm(c) * weight(w, level, seq);
    }
    return sum;
}

double FockElement::norm(int level, const WeightSequence& seq) const { return std::sqrt(norm_sq(level, seq)); }

double FockElement::max_abs() const {
    double m = 0.0;
    for (const auto& [w, c] : terms_) {
        m = std::max(m, std::abs(c));
    }
    return m;
}

FockElement& FockElement::operator+=(const FockElement& other) {
    add_scaled(other, 1.0);
    return *this;
}

FockElement& FockElement::operator-=(const FockElement& other) {
    add_scaled(other, -1.0);
    return *this;
}

FockElement& FockElement::operator*=(Complex c) {
    if (c == Complex{}) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, v] : terms_) {
        v *= c;
    }
    return *this;
}

void FockElement::add_scaled(const FockElement& other, Complex c) {
    if (c == Complex{}) {
        return;
    }
    auto hint = terms_.begin();
    for (const auto& [w, v] : other.terms_) {
        const Complex value = c * v;
        if (value == Complex{}) {
            continue;
        }
        hint = terms_.lower_bound(w);
        if (hint != terms_.end() && hint->first == w) {
            hint->second += value;
            if (hint->second == Complex{}) {
                hint = terms_.erase(hint);
            }
        } else {
            hint = terms_.emplace_hint(hint, w, value);
        }
    }
}

Complex inner(const FockElement& f, const FockElement& g) {
    Complex sum{};
    const auto& a = f.terms();
    const auto& b = g.terms();
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->first < ib->first) {
            ++ia;
        } else if (ib->first < ia->first) {
            ++ib;
        } else {
            sum += std::conj(ia->second) * ib->second;
            ++ia;
            ++ib;
        }
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Operators

FockElement DegreeCap::enforce(FockElement raw) {
    if (raw.degree() <= limit_) {
        return raw;
    }
    FockElement kept;
    double overflow = 0.0;
    std::size_t worst = 0;
    for (const auto& [w, c] : raw.terms()) {
        if (w.degree() <= limit_) {
            kept.add(w, c);
        } else {
            overflow += std::norm(c);
            worst = std::max(worst, w.degree());
        }
    }
    if (policy_ == Policy::Throw) {
        throw CapExceeded("intermediate degree " + std::to_string(worst) + " exceeds cap " + std::to_string(limit_));
    }
    dropped_ += overflow;
    return kept;
}

FockElement tensor(const FockElement& f, const FockElement& g) {
    FockElement out;
    for (const auto& [u, a] : f.terms()) {
        for (const auto& [v, b] : g.terms()) {
            out.add(concat(u, v), a * b);
        }
    }
    return out;
}

FockElement tensor(const FockElement& f, const FockElement& g, DegreeCap& cap) {
    if (cap.policy() == DegreeCap::Policy::Throw || f.degree() + g.degree() <= cap.limit()) {
        return cap.enforce(tensor(f, g));
    }
    // Skip pairs that can only land above the cap, but still account for them.
    FockElement out;
    FockElement over;
    for (const auto& [u, a] : f.terms()) {
        for (const auto& [v, b] : g.terms()) {
            (u.degree() + v.degree() <= cap.limit() ? out : over).add(concat(u, v), a * b);
        }
    }
    cap.enforce(std::move(over));
    return out;
}

FockElement creation(const LetterVector& f, const FockElement& u, DegreeCap& cap) {
    FockElement out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == Complex{}) {
            continue;
        }
        const Word head = Word::power(static_cast<Letter>(i));
        for (const auto& [w, c] : u.terms()) {
            out.add(concat(head, w), f[i] * c);
        }
    }
    return cap.enforce(std::move(out));
}

FockElement annihilation(const LetterVector& f, const FockElement& u) {
    FockElement out;
    for (const auto& [w, c] : u.terms()) {
        auto first = w.first_letter();
        if (!first || *first >= f.size()) {
            continue;
        }
        out.add(w.without_first_letter(), std::conj(f[*first]) * c);
    }
    return out;
}

FockElement apply_X(const LetterVector& f, const FockElement& u, DegreeCap& cap) {
    FockElement out = creation(f, u, cap);
    out += annihilation(f, u);
    return out;
}

double letter_norm(const LetterVector& f, int level, const WeightSequence& seq) {
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] != Complex{}) {
            sum += std::norm(f[i]) * std::pow(seq.letter_weight(static_cast<Letter>(i)), level);
        }
    }
    return std::sqrt(sum);
}

Complex letter_inner(const LetterVector& f, const LetterVector& g) {
    Complex sum{};
    for (std::size_t i = 0; i < std::min(f.size(), g.size()); ++i) {
        sum += std::conj(f[i]) * g[i];
    }
    return sum;
}

// ---------------------------------------------------------------------------
// Vage constants

double zeta(unsigned s) {
    if (s < 2) {
        throw GapTooSmall("zeta(s) diverges for s <= 1");
    }
    // Euler-Maclaurin with N = 16 and Bernoulli numbers B_2..B_12.
    constexpr unsigned N = 16;
    static constexpr double kBernoulli[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730};
    const double sd = s;
    double sum = 0.0;
    for (unsigned n = N - 1; n >= 1; --n) {
        sum += std::pow(static_cast<double>(n), -sd);
    }
    const double Nd = N;
    sum += std::pow(Nd, 1.0 - sd) / (sd - 1.0) + 0.5 * std::pow(Nd, -sd);
    double rising = sd;  // s (s+1) ... (s+2k-2)
    double factorial = 2.0;  // (2k)!
    for (unsigned k = 1; k <= 6; ++k) {
        sum += kBernoulli[k - 1] / factorial * rising * std::pow(Nd, -sd - 2.0 * k + 1.0);
        rising *= (sd + 2.0 * k - 1.0) * (sd + 2.0 * k);
        factorial *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    }
    return sum;
}

double weight_power_sum(int d, const WeightSequence& seq) {
    switch (seq.kind()) {
        case WeightSequence::Kind::Linear:
            if (d <= 1) {
                return std::numeric_limits<double>::infinity();
            }
            return std::ldexp(zeta(static_cast<unsigned>(d)), -d);
        case WeightSequence::Kind::Exponential:
            if (d <= 0) {
                return std::numeric_limits<double>::infinity();
            }
            return 1.0 / (std::ldexp(1.0, d) - 1.0);
        case WeightSequence::Kind::Custom: {
            double sum = 0.0;
            for (std::size_t n = 1; n <= seq.size(); ++n) {
                sum += std::pow(seq(n), -d);
            }
            return sum;
        }
    }
    return std::numeric_limits<double>::infinity();
}

VageConstant vage_constant(int d, const WeightSequence& seq) {
    VageConstant out;
    out.gap = d;
    out.weight_sum = weight_power_sum(d, seq);
    if (!(out.weight_sum < 1.0)) {
        throw GapTooSmall("sum of a_n^-" + std::to_string(d) + " is " + std::to_string(out.weight_sum) +
                          " >= 1 for weights " + seq.name());
    }
    out.b_squared = 1.0 / (1.0 - out.weight_sum);
    out.b = std::sqrt(out.b_squared);
    return out;
}

int nuclearity_index(const WeightSequence& seq, int cap) {
    for (int d = 1; d <= cap; ++d) {
        if (weight_power_sum(d, seq) < 1.0) {
            return d;
        }
    }
    throw NotNuclear("no d <= " + std::to_string(cap) + " with sum a_n^-d < 1 for weights " + seq.name());
}

FockElement random_element(std::mt19937_64& rng, std::size_t max_terms, std::size_t max_degree, Letter alphabet) {
    std::uniform_int_distribution<std::size_t> count_dist(1, std::max<std::size_t>(max_terms, 1));
    std::uniform_int_distribution<std::size_t> degree_dist(0, max_degree);
    std::uniform_int_distribution<Letter> letter_dist(0, alphabet - 1);
    std::normal_distribution<double> normal;
    FockElement out;
    const std::size_t count = count_dist(rng);
    for (std::size_t k = 0; k < count; ++k) {
        std::vector<Letter> letters(degree_dist(rng));
        for (auto& l : letters) {
            l = letter_dist(rng);
        }
        const double re = normal(rng);
        const double im = normal(rng);
        out.add(Word::from_letters(letters), Complex(re, im));
    }
    return out;
}

VageTrials vage_trials(int p, int q, const WeightSequence& seq, std::size_t trials, std::uint64_t seed) {
    VageTrials out;
    out.p = p;
    out.q = q;
    out.b = vage_constant(q - p, seq).b;
    out.trials = trials;
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < trials; ++i) {
        const FockElement f = random_element(rng, 6, 4, 4);
        const FockElement g = random_element(rng, 6, 4, 4);
        const double rhs = out.b * f.norm(-p, seq) * g.norm(-q, seq);
        for (const FockElement& prod : {tensor(f, g), tensor(g, f)}) {
            const double ratio = prod.norm(-q, seq) / rhs;
            out.max_ratio = std::max(out.max_ratio, ratio);
            if (ratio > 1.0 + 1e-12) {
                ++out.violations;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const FockElement& f) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [w, c] : f.terms()) {
        out.push_back({{"word", w.str()}, {"re", c.real()}, {"im", c.imag()}});
    }
    return out;
}

FockElement fock_from_json(const nlohmann::json& j) {
    if (!j.is_array()) {
        throw ValidationError("Fock element JSON must be an array of {word, re, im}");
    }
    FockElement out;
    for (const auto& item : j) {
        if (!item.contains("word")) {
            throw ValidationError("Fock element entry without 'word'");
        }
        out.add(Word::parse(item.at("word").get<std::string>()),
                Complex(item.value("re", 0.0), item.value("im", 0.0)));
    }
    return out;
}

}  // namespace freenoise
