#pragma once

#include "fpcalc/quadext.hpp"
#include "fpcalc/rational.hpp"

#include <optional>
#include <variant>

namespace fpcalc {

/// Weight value: a rational or an element of the problem's quadratic field.
/// A QuadExt with zero sqrt coefficient is demoted to Rational, so the
/// rational case stays canonical.
class ExactScalar {
public:
    ExactScalar() : v_(Rational(0)) {}
    ExactScalar(long long n) : v_(Rational(n)) {}
    ExactScalar(Rational r) : v_(std::move(r)) {}
    ExactScalar(QuadExt q) {
        if (q.is_rational()) v_ = q.a(); else v_ = std::move(q);
    }

    bool is_rational() const { return std::holds_alternative<Rational>(v_); }
    const Rational* rational() const { return std::get_if<Rational>(&v_); }
    const QuadExt* quadratic() const { return std::get_if<QuadExt>(&v_); }
    std::optional<long long> quad_field() const {
        if (auto* q = quadratic()) return q->d();
        return std::nullopt;
    }

    int sign() const;
    bool is_zero() const { return sign() == 0; }
    bool is_one() const;

    ExactScalar operator-() const;
    ExactScalar inverse() const;
    friend ExactScalar operator+(const ExactScalar& x, const ExactScalar& y);
    friend ExactScalar operator-(const ExactScalar& x, const ExactScalar& y);
    friend ExactScalar operator*(const ExactScalar& x, const ExactScalar& y);
    friend ExactScalar operator/(const ExactScalar& x, const ExactScalar& y);

    friend bool operator==(const ExactScalar& x, const ExactScalar& y);
    friend std::strong_ordering operator<=>(const ExactScalar& x, const ExactScalar& y);

    std::string str() const;
    double approx() const;

private:
    std::variant<Rational, QuadExt> v_;
};

}  // namespace fpcalc
