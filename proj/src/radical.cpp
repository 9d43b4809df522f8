#include "fpcalc/radical.hpp"

#include <cmath>

namespace fpcalc {

namespace {

const BigInt kFactorGuard = (BigInt(1) << 64);

// Exponents are desk scale; a huge one indicates corrupted input.
unsigned exponent_to_unsigned(const BigInt& n) {
    if (n < 0 || n > 1'000'000) throw std::domain_error("RadicalReal: exponent out of range");
    return n.convert_to<unsigned>();
}

BigInt prime_power(const BigInt& p, const BigInt& magnitude) {
    return boost::multiprecision::pow(p, exponent_to_unsigned(magnitude));
}

}  // namespace

std::map<BigInt, long long> factor_integer(BigInt n, const FactorOptions& opts) {
    if (n < 1) throw std::domain_error("factor_integer: argument must be >= 1");
    if (n > kFactorGuard && !opts.allow_large)
        throw std::domain_error(
            "factor_integer: integer exceeds 2^64; pass allow_large to factor anyway");
    std::map<BigInt, long long> out;
    auto strip = [&](const BigInt& p) {
        long long e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e) out[p] = e;
    };
    strip(2);
    strip(3);
    // Remaining prime candidates form the 6k±1 wheel.
    for (BigInt p = 5; p * p <= n; p += 6) {
        strip(p);
        strip(p + 2);
    }
    if (n > 1) out[n] = 1;
    return out;
}

RadicalReal RadicalReal::from_rational(const Rational& q, const FactorOptions& opts) {
    if (q.sign() <= 0) throw std::domain_error("RadicalReal: value must be positive");
    std::map<BigInt, Rational> e;
    for (auto& [p, k] : factor_integer(q.numerator(), opts)) e[p] += Rational(k);
    for (auto& [p, k] : factor_integer(q.denominator(), opts)) e[p] -= Rational(k);
    return from_exponents(std::move(e));
}

RadicalReal RadicalReal::from_power(const Rational& base, const Rational& exponent,
                                    const FactorOptions& opts) {
    return from_rational(base, opts).pow(exponent);
}

RadicalReal RadicalReal::from_exponents(std::map<BigInt, Rational> exponents) {
    RadicalReal r;
    for (auto& [p, e] : exponents)
        if (!e.is_zero()) r.exp_.emplace(p, e);
    return r;
}

RadicalReal RadicalReal::operator*(const RadicalReal& y) const {
    std::map<BigInt, Rational> e = exp_;
    for (auto& [p, k] : y.exp_) e[p] += k;
    return from_exponents(std::move(e));
}

RadicalReal RadicalReal::inverse() const {
    RadicalReal r;
    for (auto& [p, e] : exp_) r.exp_.emplace(p, -e);
    return r;
}

RadicalReal RadicalReal::pow(const Rational& e) const {
    if (e.is_zero()) return RadicalReal();
    RadicalReal r;
    for (auto& [p, k] : exp_) r.exp_.emplace(p, k * e);
    return r;
}

int RadicalReal::compare_to_one() const {
    if (exp_.empty()) return 0;
    BigInt scale = 1;
    for (auto& [p, e] : exp_) scale = big_lcm(scale, e.denominator());
    // value^scale = big / small with integer exponents on each side
    BigInt pos = 1, neg = 1;
    for (auto& [p, e] : exp_) {
        const Rational k = e * Rational(scale);
        BigInt n = k.numerator();
        if (n > 0) pos *= prime_power(p, n); else neg *= prime_power(p, -n);
    }
    if (pos == neg) return 0;
    return pos > neg ? 1 : -1;
}

RadicalReal RadicalReal::canonical_over_one() const {
    return compare_to_one() < 0 ? inverse() : *this;
}

std::optional<Rational> RadicalReal::as_rational() const {
    Rational v(1);
    for (auto& [p, e] : exp_) {
        if (!e.is_integer()) return std::nullopt;
        BigInt n = e.numerator();
        const BigInt pk = prime_power(p, boost::multiprecision::abs(n));
        if (n > 0) v *= Rational(pk); else v /= Rational(pk);
    }
    return v;
}

std::string RadicalReal::str() const {
    if (auto r = as_rational()) return r->str();
    // product of p^(a/b) factors, primes ascending
    std::string s;
    for (auto& [p, e] : exp_) {
        if (!s.empty()) s += "*";
        s += p.str() + "^(" + e.str() + ")";
    }
    return s;
}

double RadicalReal::approx() const {
    double v = 1.0;
    for (auto& [p, e] : exp_)
        v *= std::pow(static_cast<double>(p), e.approx());
    return v;
}

std::optional<RadicalReal> quadext_ratio_to_radical(const QuadExt& x, const FactorOptions& opts) {
    if (x.sign() <= 0) throw std::domain_error("quadext_ratio_to_radical: value must be positive");
    if (x.is_rational()) return RadicalReal::from_rational(x.a(), opts);
    if (!x.a().is_zero()) return std::nullopt;  // a + b*sqrt(d), both parts nonzero
    // b*sqrt(d) = b * d^(1/2)
    return RadicalReal::from_rational(x.b(), opts) *
           RadicalReal::from_power(Rational(x.d()), Rational(1, 2), opts);
}

std::optional<RadicalReal> scalar_to_radical(const ExactScalar& x, const FactorOptions& opts) {
    if (auto* r = x.rational()) {
        if (r->sign() <= 0) throw std::domain_error("scalar_to_radical: value must be positive");
        return RadicalReal::from_rational(*r, opts);
    }
    return quadext_ratio_to_radical(*x.quadratic(), opts);
}

}  // namespace fpcalc
