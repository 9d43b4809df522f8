#pragma once

#include "fpcalc/quadext.hpp"
#include "fpcalc/rational.hpp"
#include "fpcalc/scalar.hpp"

#include <map>
#include <optional>
#include <vector>

namespace fpcalc {

/// Guards the trial-division factorizer. Integers above 2^64 are rejected
/// unless allow_large is set (factoring them may be very slow).
struct FactorOptions {
    bool allow_large = false;
};

// Prime factorization of n >= 1 by trial division; keys are primes, values
// positive exponents. Throws std::domain_error on the size guard.
std::map<BigInt, long long> factor_integer(BigInt n, const FactorOptions& opts = {});

/// Positive real stored as a finite product of prime powers with rational
/// exponents. Canonical: no zero exponents; the empty product is 1.
class RadicalReal {
public:
    RadicalReal() = default;  // 1

    // factor_positive_rational: requires q > 0.
    static RadicalReal from_rational(const Rational& q, const FactorOptions& opts = {});
    // radical_from_power: base^exponent, requires base > 0.
    static RadicalReal from_power(const Rational& base, const Rational& exponent,
                                  const FactorOptions& opts = {});
    static RadicalReal from_exponents(std::map<BigInt, Rational> exponents);

    const std::map<BigInt, Rational>& exponents() const { return exp_; }
    bool is_one() const { return exp_.empty(); }

    RadicalReal operator*(const RadicalReal& y) const;
    RadicalReal inverse() const;
    RadicalReal pow(const Rational& e) const;

    bool operator==(const RadicalReal& y) const = default;

    // Exact comparison with 1: clear exponent denominators, then compare the
    // integer products on each side.
    int compare_to_one() const;
    bool greater_than_one() const { return compare_to_one() > 0; }
    // This value or its inverse, whichever is > 1 (identity at 1).
    RadicalReal canonical_over_one() const;

    // The exact rational value when all exponents are integers.
    std::optional<Rational> as_rational() const;

    std::string str() const;
    double approx() const;

private:
    std::map<BigInt, Rational> exp_;
};

// The spectrum bridge: rational values factor; pure b*sqrt(d) values become
// b * d^(1/2); mixed a + b*sqrt(d) with a,b != 0 are not radical -> nullopt.
// Requires x > 0.
std::optional<RadicalReal> quadext_ratio_to_radical(const QuadExt& x, const FactorOptions& opts = {});
std::optional<RadicalReal> scalar_to_radical(const ExactScalar& x, const FactorOptions& opts = {});

}  // namespace fpcalc
