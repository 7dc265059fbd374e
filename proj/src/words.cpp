#include "freenoise/words.hpp"

#include "freenoise/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace freenoise {

// ---------------------------------------------------------------------------
// WeightSequence

WeightSequence WeightSequence::linear() { return WeightSequence(Kind::Linear, {}); }

WeightSequence WeightSequence::exponential() { return WeightSequence(Kind::Exponential, {}); }

WeightSequence WeightSequence::custom(std::vector<double> table) {
    if (table.empty()) {
        throw ValidationError("custom weight table is empty");
    }
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (!(table[i] >= 1.0) || !std::isfinite(table[i])) {
            throw ValidationError("weight sequence entries must be finite and >= 1");
        }
        if (i > 0 && table[i] < table[i - 1]) {
            throw ValidationError("weight sequence must be non-decreasing");
        }
    }
    return WeightSequence(Kind::Custom, std::move(table));
}

WeightSequence WeightSequence::parse(std::string_view text) {
    if (text == "2n") {
        return linear();
    }
    if (text == "2^n") {
        return exponential();
    }
    std::vector<double> table;
    std::string buf(text);
    std::stringstream ss(buf);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            table.push_back(std::stod(item, &used));
            if (used != item.size()) {
                throw ValidationError("bad weight entry");
            }
        } catch (const std::logic_error&) {
            throw ValidationError("unknown weight sequence '" + buf + "' (expected 2n, 2^n or a table)");
        }
    }
    return custom(std::move(table));
}

double WeightSequence::operator()(std::size_t n) const {
    if (n == 0) {
        throw ValidationError("weight sequence is indexed from 1");
    }
    switch (kind_) {
        case Kind::Linear:
            return 2.0 * static_cast<double>(n);
        case Kind::Exponential:
            return std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(n, 4096)));
        case Kind::Custom:
            if (n > table_.size()) {
                throw ValidationError("custom weight sequence undefined at index " + std::to_string(n));
            }
            return table_[n - 1];
    }
    return 1.0;
}

bool WeightSequence::defined_for(Letter letter) const {
    return kind_ != Kind::Custom || std::size_t{letter} < table_.size();
}

std::string WeightSequence::name() const {
    switch (kind_) {
        case Kind::Linear:
            return "2n";
        case Kind::Exponential:
            return "2^n";
        case Kind::Custom: {
            std::ostringstream os;
            for (std::size_t i = 0; i < table_.size(); ++i) {
                os << (i ? "," : "") << table_[i];
            }
            return os.str();
        }
    }
    return {};
}

// ---------------------------------------------------------------------------
// Word

Word Word::from_letters(std::span<const Letter> letters) {
    Word w;
    for (Letter l : letters) {
        if (!w.runs_.empty() && w.runs_.back().letter == l) {
            ++w.runs_.back().exponent;
        } else {
            w.runs_.push_back({l, 1});
        }
    }
    w.degree_ = letters.size();
    return w;
}

Word Word::from_runs(std::span<const Run> runs) {
    Word w;
    for (const Run& r : runs) {
        if (r.exponent == 0) {
            continue;
        }
        if (!w.runs_.empty() && w.runs_.back().letter == r.letter) {
            w.runs_.back().exponent += r.exponent;
        } else {
            w.runs_.push_back(r);
        }
        w.degree_ += r.exponent;
    }
    return w;
}

Word Word::power(Letter letter, std::uint32_t exponent) {
    const Run r{letter, exponent};
    return from_runs(std::span<const Run>(&r, 1));
}

Word Word::parse(std::string_view text) {
    std::vector<Run> runs;
    std::size_t i = 0;
    auto skip_space = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '*')) {
            ++i;
        }
    };
    auto read_uint = [&](const char* what) {
        std::uint32_t value = 0;
        auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), value);
        if (ec != std::errc() || ptr == text.data() + i) {
            throw ValidationError(std::string("malformed word '") + std::string(text) + "': expected " + what);
        }
        i = static_cast<std::size_t>(ptr - text.data());
        return value;
    };
    skip_space();
    if (i < text.size() && text[i] == '1') {
        ++i;
        skip_space();
        if (i != text.size()) {
            throw ValidationError("malformed word '" + std::string(text) + "'");
        }
        return Word{};
    }
    while (i < text.size()) {
        if (text[i] != 'z') {
            throw ValidationError("malformed word '" + std::string(text) + "': expected 'z'");
        }
        ++i;
        Run r{read_uint("letter index"), 1};
        if (i < text.size() && text[i] == '^') {
            ++i;
            r.exponent = read_uint("exponent");
            if (r.exponent == 0) {
                throw ValidationError("word exponents must be positive");
            }
        }
        runs.push_back(r);
        skip_space();
    }
    return from_runs(runs);
}

std::vector<Letter> Word::letters() const {
    std::vector<Letter> out;
    out.reserve(degree_);
    for (const Run& r : runs_) {
        out.insert(out.end(), r.exponent, r.letter);
    }
    return out;
}

std::optional<Letter> Word::first_letter() const {
    if (runs_.empty()) {
        return std::nullopt;
    }
    return runs_.front().letter;
}

Word Word::without_first_letter() const {
    Word w = *this;
    if (w.runs_.empty()) {
        throw ValidationError("cannot strip a letter from the empty word");
    }
    if (--w.runs_.front().exponent == 0) {
        w.runs_.erase(w.runs_.begin());
    }
    --w.degree_;
    return w;
}

Word Word::reversed() const {
    Word w = *this;
    std::reverse(w.runs_.begin(), w.runs_.end());
    return w;
}

std::string Word::str() const {
    if (runs_.empty()) {
        return "1";
    }
    std::string out;
    for (const Run& r : runs_) {
        if (!out.empty()) {
            out += ' ';
        }
        out += 'z';
        out += std::to_string(r.letter);
        if (r.exponent != 1) {
            out += '^';
            out += std::to_string(r.exponent);
        }
    }
    return out;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.degree_ <=> b.degree_; c != 0) {
        return c;
    }
    // Same degree: walk both run lists in lockstep over the flattened letters.
    std::size_t ia = 0, ib = 0;
    std::uint32_t left_a = a.runs_.empty() ? 0 : a.runs_[0].exponent;
    std::uint32_t left_b = b.runs_.empty() ? 0 : b.runs_[0].exponent;
    while (ia < a.runs_.size() && ib < b.runs_.size()) {
        if (auto c = a.runs_[ia].letter <=> b.runs_[ib].letter; c != 0) {
            return c;
        }
        std::uint32_t step = std::min(left_a, left_b);
        left_a -= step;
        left_b -= step;
        if (left_a == 0 && ++ia < a.runs_.size()) {
            left_a = a.runs_[ia].exponent;
        }
        if (left_b == 0 && ++ib < b.runs_.size()) {
            left_b = b.runs_[ib].exponent;
        }
    }
    return std::strong_ordering::equal;
}

Word normalize(std::span<const Letter> letters) { return Word::from_letters(letters); }

Word concat(const Word& a, const Word& b) {
    std::vector<Run> runs = a.runs();
    runs.insert(runs.end(), b.runs().begin(), b.runs().end());
    return Word::from_runs(runs);
}

double weight(const Word& w, int p, const WeightSequence& seq) {
    if (p == 0) {
        return 1.0;
    }
    double product = 1.0;
    for (const Run& r : w.runs()) {
        product *= std::pow(seq.letter_weight(r.letter), static_cast<double>(p) * r.exponent);
    }
    return product;
}

std::vector<Word> enumerate_words(std::size_t max_degree, Letter alphabet) {
    std::vector<Word> out{Word{}};
    std::vector<std::vector<Letter>> frontier{{}};
    for (std::size_t d = 1; d <= max_degree; ++d) {
        std::vector<std::vector<Letter>> next;
        next.reserve(frontier.size() * alphabet);
        for (const auto& prefix : frontier) {
            for (Letter l = 0; l < alphabet; ++l) {
                auto seq = prefix;
                seq.push_back(l);
                out.push_back(Word::from_letters(seq));
                next.push_back(std::move(seq));
            }
        }
        frontier = std::move(next);
    }
    return out;
}

}  // namespace freenoise
