#pragma once

#include "fpcalc/rational.hpp"

#include <utility>

namespace fpcalc {

/// Element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)).
/// d is squarefree and >= 2; one d is shared by all values of a problem.
class QuadExt {
public:
    QuadExt(long long d, Rational a, Rational b);

    // Splits a radicand n >= 2 as n = s^2 * d with d squarefree.
    // Returns (d, s); used to fold sqrt(8) into 2*sqrt(2).
    static std::pair<long long, BigInt> reduce_radicand(long long radicand);

    long long d() const { return d_; }
    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_rational() const { return b_.is_zero(); }

    // Exact sign by case analysis on (a, b) and comparison of a^2 with b^2*d.
    int sign() const;

    QuadExt conjugate() const { return QuadExt(d_, a_, -b_); }
    Rational norm() const { return a_ * a_ - b_ * b_ * Rational(d_); }
    QuadExt inverse() const;

    friend QuadExt operator-(const QuadExt& x) { return QuadExt(x.d_, -x.a_, -x.b_); }
    friend QuadExt operator+(const QuadExt& x, const QuadExt& y);
    friend QuadExt operator-(const QuadExt& x, const QuadExt& y);
    friend QuadExt operator*(const QuadExt& x, const QuadExt& y);
    friend QuadExt operator/(const QuadExt& x, const QuadExt& y);

    friend bool operator==(const QuadExt& x, const QuadExt& y) {
        return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
    }
    // Total order consistent with real values (same d required).
    friend std::strong_ordering operator<=>(const QuadExt& x, const QuadExt& y);

    std::string str() const;
    double approx() const;

private:
    static void require_same_field(const QuadExt& x, const QuadExt& y);
    long long d_;
    Rational a_, b_;
};

}  // namespace fpcalc
