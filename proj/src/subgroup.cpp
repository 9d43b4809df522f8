#include "fpcalc/subgroup.hpp"

#include <algorithm>
#include <set>

namespace fpcalc {

namespace {

// floor division, divisor > 0
BigInt fdiv(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if (a % b != 0 && a < 0) --q;
    return q;
}

std::size_t pivot_col(const std::vector<BigInt>& row) {
    for (std::size_t c = 0; c < row.size(); ++c)
        if (row[c] != 0) return c;
    return row.size();
}

void row_axpy(std::vector<BigInt>& dst, const BigInt& q, const std::vector<BigInt>& src) {
    for (std::size_t c = 0; c < dst.size(); ++c) dst[c] -= q * src[c];
}

}  // namespace

std::vector<std::vector<BigInt>> hermite_normal_form(std::vector<std::vector<BigInt>> rows) {
    if (rows.empty()) return rows;
    const std::size_t cols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        // Euclid among entries of column c in rows r.. until one survives.
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t i = r; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                if (best == rows.size() ||
                    boost::multiprecision::abs(rows[i][c]) < boost::multiprecision::abs(rows[best][c]))
                    best = i;
            }
            if (best == rows.size()) break;  // column is zero below r
            std::swap(rows[r], rows[best]);
            bool clean = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                row_axpy(rows[i], rows[i][c] / rows[r][c], rows[r]);
                if (rows[i][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (rows[r][c] == 0) continue;
        if (rows[r][c] < 0)
            for (auto& x : rows[r]) x = -x;
        for (std::size_t i = 0; i < r; ++i)
            row_axpy(rows[i], fdiv(rows[i][c], rows[r][c]), rows[r]);
        ++r;
    }
    rows.resize(r);
    return rows;
}

MultSubgroup MultSubgroup::generate(const std::vector<RadicalReal>& generators) {
    MultSubgroup g;
    std::set<BigInt> prime_set;
    for (const auto& gen : generators)
        for (const auto& [p, e] : gen.exponents()) prime_set.insert(p);
    g.primes_.assign(prime_set.begin(), prime_set.end());

    g.scale_ = 1;
    for (const auto& gen : generators)
        for (const auto& [p, e] : gen.exponents()) g.scale_ = big_lcm(g.scale_, e.denominator());

    std::vector<std::vector<BigInt>> rows;
    for (const auto& gen : generators) {
        if (gen.is_one()) continue;
        std::vector<BigInt> row(g.primes_.size(), BigInt(0));
        for (std::size_t c = 0; c < g.primes_.size(); ++c) {
            auto it = gen.exponents().find(g.primes_[c]);
            if (it != gen.exponents().end()) row[c] = (it->second * Rational(g.scale_)).numerator();
        }
        rows.push_back(std::move(row));
    }
    g.basis_ = hermite_normal_form(std::move(rows));
    return g;
}

MultSubgroup MultSubgroup::from_parts(std::vector<BigInt> primes,
                                      std::vector<std::vector<BigInt>> basis,
                                      BigInt denominator_scale) {
    MultSubgroup g;
    if (denominator_scale < 1) throw std::invalid_argument("MultSubgroup: scale must be >= 1");
    for (const auto& row : basis)
        if (row.size() != primes.size())
            throw std::invalid_argument("MultSubgroup: basis width must match primes");
    g.primes_ = std::move(primes);
    g.basis_ = std::move(basis);
    g.scale_ = std::move(denominator_scale);
    return g;
}

bool MultSubgroup::contains(const RadicalReal& x) const {
    for (const auto& [p, e] : x.exponents())
        if (!std::binary_search(primes_.begin(), primes_.end(), p)) return false;
    std::vector<BigInt> v(primes_.size(), BigInt(0));
    for (std::size_t c = 0; c < primes_.size(); ++c) {
        auto it = x.exponents().find(primes_[c]);
        if (it == x.exponents().end()) continue;
        const Rational scaled = it->second * Rational(scale_);
        if (!scaled.is_integer()) return false;
        v[c] = scaled.numerator();
    }
    std::size_t bi = 0;
    for (std::size_t c = 0; c < primes_.size(); ++c) {
        if (bi < basis_.size() && pivot_col(basis_[bi]) == c) {
            if (v[c] % basis_[bi][c] != 0) return false;
            row_axpy(v, v[c] / basis_[bi][c], basis_[bi]);
            ++bi;
        } else if (v[c] != 0) {
            return false;
        }
    }
    return true;
}

RadicalReal MultSubgroup::basis_radical(std::size_t row) const {
    std::map<BigInt, Rational> e;
    for (std::size_t c = 0; c < primes_.size(); ++c)
        if (basis_[row][c] != 0) e[primes_[c]] = Rational(basis_[row][c], scale_);
    return RadicalReal::from_exponents(std::move(e));
}

SubgroupClass MultSubgroup::classify() const {
    SubgroupClass cls;
    cls.rank = rank();
    if (rank() == 0) {
        cls.kind = SubgroupClass::Kind::Trivial;
    } else if (rank() == 1) {
        cls.kind = SubgroupClass::Kind::Cyclic;
        RadicalReal lambda = basis_radical(0);
        if (lambda.greater_than_one()) lambda = lambda.inverse();
        cls.lambda = std::move(lambda);
    } else {
        cls.kind = SubgroupClass::Kind::Dense;
    }
    return cls;
}

bool MultSubgroup::same_subgroup(const MultSubgroup& other) const {
    for (std::size_t i = 0; i < rank(); ++i)
        if (!other.contains(basis_radical(i))) return false;
    for (std::size_t i = 0; i < other.rank(); ++i)
        if (!contains(other.basis_radical(i))) return false;
    return true;
}

CyclicIntersection cyclic_intersection(const RadicalReal& lambda, const MultSubgroup& G) {
    if (lambda.is_one()) throw std::invalid_argument("cyclic_intersection: lambda must not be 1");
    for (const auto& [p, e] : lambda.exponents())
        if (!std::binary_search(G.primes().begin(), G.primes().end(), p)) return {};

    // n*scale*exp(lambda) must be integral: n is a multiple of T.
    const BigInt& D = G.denominator_scale();
    std::vector<Rational> w(G.primes().size(), Rational(0));
    BigInt T = 1;
    for (std::size_t c = 0; c < G.primes().size(); ++c) {
        auto it = lambda.exponents().find(G.primes()[c]);
        if (it == lambda.exponents().end()) continue;
        w[c] = it->second * Rational(D);
        T = big_lcm(T, w[c].denominator());
    }
    for (auto& x : w) x *= Rational(T);

    // Solve w = sum x_i * basis_i over Q; the least m with m*w in the lattice
    // is the lcm of the coefficient denominators.
    std::size_t bi = 0;
    BigInt N1 = 1;
    for (std::size_t c = 0; c < G.primes().size(); ++c) {
        if (bi < G.basis().size() && pivot_col(G.basis()[bi]) == c) {
            const Rational x = w[c] / Rational(G.basis()[bi][c]);
            for (std::size_t k = 0; k < w.size(); ++k)
                w[k] -= x * Rational(G.basis()[bi][k]);
            N1 = big_lcm(N1, x.denominator());
            ++bi;
        } else if (!w[c].is_zero()) {
            return {};  // outside the rational span
        }
    }
    return {T * N1};
}

}  // namespace fpcalc
