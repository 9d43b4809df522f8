#include "fpcalc/rational.hpp"

#include <cctype>

namespace fpcalc {

std::optional<Rational> Rational::parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    std::size_t i = 0;
    bool neg = false;
    if (text[i] == '-') { neg = true; ++i; }
    auto read_digits = [&](BigInt& out) -> bool {
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) return false;
        out = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            out = out * 10 + (text[i] - '0');
            ++i;
        }
        return true;
    };
    BigInt num;
    if (!read_digits(num)) return std::nullopt;
    BigInt den = 1;
    if (i < text.size() && text[i] == '/') {
        ++i;
        if (!read_digits(den)) return std::nullopt;
        if (den == 0) return std::nullopt;
    }
    if (i != text.size()) return std::nullopt;
    if (neg) num = -num;
    return Rational(num, den);
}

std::string Rational::str() const {
    std::string s = numerator().str();
    if (!is_integer()) {
        s += '/';
        s += denominator().str();
    }
    return s;
}

double Rational::approx() const {
    return static_cast<double>(v_);
}

BigInt big_gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }
BigInt big_lcm(const BigInt& a, const BigInt& b) { return boost::multiprecision::lcm(a, b); }

}  // namespace fpcalc
