#include "fpcalc/scalar.hpp"

namespace fpcalc {

namespace {

// Brings both operands into one field when either side is quadratic.
std::pair<QuadExt, QuadExt> promote(const ExactScalar& x, const ExactScalar& y) {
    const QuadExt* qx = x.quadratic();
    const QuadExt* qy = y.quadratic();
    const long long d = qx ? qx->d() : qy->d();
    QuadExt px = qx ? *qx : QuadExt(d, *x.rational(), Rational(0));
    QuadExt py = qy ? *qy : QuadExt(d, *y.rational(), Rational(0));
    return {std::move(px), std::move(py)};
}

template <typename RatOp, typename QuadOp>
ExactScalar combine(const ExactScalar& x, const ExactScalar& y, RatOp rop, QuadOp qop) {
    if (x.is_rational() && y.is_rational()) return ExactScalar(rop(*x.rational(), *y.rational()));
    auto [px, py] = promote(x, y);
    return ExactScalar(qop(px, py));
}

}  // namespace

int ExactScalar::sign() const {
    if (auto* r = rational()) return r->sign();
    return quadratic()->sign();
}

bool ExactScalar::is_one() const {
    if (auto* r = rational()) return r->is_one();
    return false;
}

ExactScalar ExactScalar::operator-() const {
    if (auto* r = rational()) return ExactScalar(-*r);
    return ExactScalar(-*quadratic());
}

ExactScalar ExactScalar::inverse() const {
    if (auto* r = rational()) return ExactScalar(r->inverse());
    return ExactScalar(quadratic()->inverse());
}

ExactScalar operator+(const ExactScalar& x, const ExactScalar& y) {
    return combine(x, y, [](auto& a, auto& b) { return a + b; }, [](auto& a, auto& b) { return a + b; });
}
ExactScalar operator-(const ExactScalar& x, const ExactScalar& y) {
    return combine(x, y, [](auto& a, auto& b) { return a - b; }, [](auto& a, auto& b) { return a - b; });
}
ExactScalar operator*(const ExactScalar& x, const ExactScalar& y) {
    return combine(x, y, [](auto& a, auto& b) { return a * b; }, [](auto& a, auto& b) { return a * b; });
}
ExactScalar operator/(const ExactScalar& x, const ExactScalar& y) {
    return combine(x, y, [](auto& a, auto& b) { return a / b; }, [](auto& a, auto& b) { return a / b; });
}

bool operator==(const ExactScalar& x, const ExactScalar& y) {
    if (x.is_rational() != y.is_rational()) return false;  // demotion keeps this exact
    if (x.is_rational()) return *x.rational() == *y.rational();
    return *x.quadratic() == *y.quadratic();
}

std::strong_ordering operator<=>(const ExactScalar& x, const ExactScalar& y) {
    const int s = (x - y).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string ExactScalar::str() const {
    if (auto* r = rational()) return r->str();
    return quadratic()->str();
}

double ExactScalar::approx() const {
    if (auto* r = rational()) return r->approx();
    return quadratic()->approx();
}

}  // namespace fpcalc
