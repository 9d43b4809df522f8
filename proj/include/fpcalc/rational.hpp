#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fpcalc {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, always in canonical form:
/// denominator > 0 and gcd(|numerator|, denominator) = 1.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long long n) : v_(n) {}
    Rational(const BigInt& n) : v_(n) {}
    Rational(const BigInt& num, const BigInt& den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        v_ = den < 0 ? Q(-num, -den) : Q(num, den);
    }
    Rational(long long num, long long den) : Rational(BigInt(num), BigInt(den)) {}

    // Accepts "p", "-p", "p/q"; returns nullopt on malformed input.
    static std::optional<Rational> parse(std::string_view text);

    BigInt numerator() const { return boost::multiprecision::numerator(v_); }
    BigInt denominator() const { return boost::multiprecision::denominator(v_); }

    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return denominator() == 1; }
    int sign() const { return v_.sign(); }

    Rational operator-() const { return Rational(Q(-v_)); }
    Rational abs() const { return sign() < 0 ? -*this : *this; }
    Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(Q(1 / v_));
    }

    friend Rational operator+(const Rational& x, const Rational& y) { return Rational(Q(x.v_ + y.v_)); }
    friend Rational operator-(const Rational& x, const Rational& y) { return Rational(Q(x.v_ - y.v_)); }
    friend Rational operator*(const Rational& x, const Rational& y) { return Rational(Q(x.v_ * y.v_)); }
    friend Rational operator/(const Rational& x, const Rational& y) {
        if (y.is_zero()) throw std::domain_error("Rational: division by zero");
        return Rational(Q(x.v_ / y.v_));
    }
    Rational& operator+=(const Rational& y) { v_ += y.v_; return *this; }
    Rational& operator-=(const Rational& y) { v_ -= y.v_; return *this; }
    Rational& operator*=(const Rational& y) { v_ *= y.v_; return *this; }
    Rational& operator/=(const Rational& y) { *this = *this / y; return *this; }

    friend bool operator==(const Rational& x, const Rational& y) { return x.v_ == y.v_; }
    friend std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
        if (x.v_ < y.v_) return std::strong_ordering::less;
        if (x.v_ > y.v_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    std::string str() const;
    double approx() const;

private:
    using Q = boost::multiprecision::cpp_rational;
    explicit Rational(Q v) : v_(std::move(v)) {}
    Q v_;
};

BigInt big_gcd(const BigInt& a, const BigInt& b);
BigInt big_lcm(const BigInt& a, const BigInt& b);

}  // namespace fpcalc
