#include "freenoise/rational.hpp"

#include "freenoise/error.hpp"

#include <cctype>

namespace freenoise {

std::string to_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) {
        return num.str();
    }
    return num.str() + "/" + den.str();
}

namespace {

BigInt parse_integer(std::string_view text) {
    if (text.empty()) {
        throw ValidationError("empty integer in rational literal");
    }
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size()) {
        throw ValidationError("malformed rational literal");
    }
    for (std::size_t i = start; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
            throw ValidationError("malformed rational literal: " + std::string(text));
        }
    }
    return BigInt(std::string(text));
}

}  // namespace

Rational parse_rational(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt den = parse_integer(text.substr(slash + 1));
        if (den == 0) {
            throw ValidationError("zero denominator");
        }
        return Rational(parse_integer(text.substr(0, slash)), den);
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        std::string digits(text.substr(0, dot));
        std::string frac(text.substr(dot + 1));
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) {
            scale *= 10;
        }
        bool negative = !digits.empty() && digits[0] == '-';
        if (digits.empty() || digits == "-" || digits == "+") {
            digits += "0";
        }
        Rational whole(parse_integer(digits));
        Rational part = frac.empty() ? Rational(0) : Rational(parse_integer(frac), scale);
        return negative ? Rational(whole - part) : Rational(whole + part);
    }
    return Rational(parse_integer(text));
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace freenoise
