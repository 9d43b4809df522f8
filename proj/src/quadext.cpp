#include "fpcalc/quadext.hpp"

#include <cmath>

namespace fpcalc {

QuadExt::QuadExt(long long d, Rational a, Rational b)
    : d_(d), a_(std::move(a)), b_(std::move(b)) {
    if (d_ < 2) throw std::invalid_argument("QuadExt: d must be >= 2");
    auto [sf, s] = reduce_radicand(d_);
    if (s != 1) throw std::invalid_argument("QuadExt: d must be squarefree");
}

std::pair<long long, BigInt> QuadExt::reduce_radicand(long long radicand) {
    if (radicand < 2) throw std::invalid_argument("QuadExt: radicand must be >= 2");
    if (radicand > 1'000'000'000'000LL)
        throw std::invalid_argument("QuadExt: radicand too large");
    long long d = 1;
    BigInt s = 1;
    long long n = radicand;
    for (long long p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        for (int k = 0; k < e / 2; ++k) s *= p;
        if (e % 2) d *= p;
    }
    d *= n;
    return {d, s};
}

int QuadExt::sign() const {
    const int sa = a_.sign();
    const int sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: |a| vs |b|*sqrt(d), squared.
    const Rational lhs = a_ * a_;
    const Rational rhs = b_ * b_ * Rational(d_);
    if (lhs == rhs) return 0;  // cannot happen for squarefree d > 1, kept exact anyway
    return lhs > rhs ? sa : sb;
}

QuadExt QuadExt::inverse() const {
    if (is_zero()) throw std::domain_error("QuadExt: division by zero");
    const Rational n = norm();  // nonzero: d squarefree forbids a^2 = b^2 d except at 0
    return QuadExt(d_, a_ / n, -b_ / n);
}

void QuadExt::require_same_field(const QuadExt& x, const QuadExt& y) {
    if (x.d_ != y.d_) throw std::invalid_argument("QuadExt: mixing distinct quadratic fields");
}

QuadExt operator+(const QuadExt& x, const QuadExt& y) {
    QuadExt::require_same_field(x, y);
    return QuadExt(x.d_, x.a_ + y.a_, x.b_ + y.b_);
}

QuadExt operator-(const QuadExt& x, const QuadExt& y) {
    QuadExt::require_same_field(x, y);
    return QuadExt(x.d_, x.a_ - y.a_, x.b_ - y.b_);
}

QuadExt operator*(const QuadExt& x, const QuadExt& y) {
    QuadExt::require_same_field(x, y);
    return QuadExt(x.d_,
                   x.a_ * y.a_ + x.b_ * y.b_ * Rational(x.d_),
                   x.a_ * y.b_ + x.b_ * y.a_);
}

QuadExt operator/(const QuadExt& x, const QuadExt& y) {
    QuadExt::require_same_field(x, y);
    return x * y.inverse();
}

std::strong_ordering operator<=>(const QuadExt& x, const QuadExt& y) {
    QuadExt::require_same_field(x, y);
    const int s = (x - y).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string QuadExt::str() const {
    if (b_.is_zero()) return a_.str();
    std::string s = a_.str();
    s += b_.sign() < 0 ? "-" : "+";
    s += b_.abs().str();
    s += "*sqrt(";
    s += std::to_string(d_);
    s += ")";
    return s;
}

double QuadExt::approx() const {
    return a_.approx() + b_.approx() * std::sqrt(static_cast<double>(d_));
}

}  // namespace fpcalc
