#pragma once

#include "fpcalc/algebra.hpp"
#include "fpcalc/dsl.hpp"
#include "fpcalc/radical.hpp"
#include "fpcalc/rational.hpp"

#include <numeric>
#include <random>
#include <vector>

namespace fpcalc::testing {

using Rng = std::mt19937_64;

inline long long pick(Rng& rng, long long lo, long long hi) {
    return std::uniform_int_distribution<long long>(lo, hi)(rng);
}

inline Rational random_positive_rational(Rng& rng, long long max_num = 40,
                                         long long max_den = 40) {
    return Rational(pick(rng, 1, max_num), pick(rng, 1, max_den));
}

inline Rational random_signed_rational(Rng& rng, long long max_num = 40, long long max_den = 40) {
    Rational r = random_positive_rational(rng, max_num, max_den);
    return pick(rng, 0, 1) ? r : -r;
}

// n strictly positive rationals summing to exactly 1.
inline std::vector<Rational> random_unit_weights(Rng& rng, std::size_t n) {
    std::vector<long long> parts(n);
    long long total = 0;
    for (auto& p : parts) { p = pick(rng, 1, 20); total += p; }
    std::vector<Rational> out;
    for (auto p : parts) out.emplace_back(p, total);
    return out;
}

// Random multi-matrix algebra with exact unit mass, never the scalars alone.
inline Algebra random_matrix_algebra(Rng& rng, const std::string& name,
                                     std::size_t max_summands = 4, std::size_t max_size = 3) {
    std::size_t count = static_cast<std::size_t>(pick(rng, 1, static_cast<long long>(max_summands)));
    std::vector<std::size_t> sizes(count);
    std::size_t total = 0;
    for (auto& s : sizes) { s = static_cast<std::size_t>(pick(rng, 1, static_cast<long long>(max_size))); total += s; }
    if (count == 1 && sizes[0] == 1) { sizes.push_back(1); ++count; total += 1; }

    const auto flat = random_unit_weights(rng, total);
    Algebra a;
    a.name = name;
    std::size_t at = 0;
    for (std::size_t j = 0; j < count; ++j) {
        MatrixSummand m;
        m.size = sizes[j];
        m.label = "m" + std::to_string(j + 1);
        for (std::size_t i = 0; i < sizes[j]; ++i) m.weights.emplace_back(flat[at++]);
        a.terms.emplace_back(std::move(m));
    }
    return a;
}

// Radical real over small primes with bounded exponents, as in the oracle
// equivalence criterion: primes <= 13, exponent denominators <= 4.
inline RadicalReal random_radical(Rng& rng, int max_gens_primes = 3, long long max_num = 8,
                                  long long max_den = 4) {
    static const long long primes[] = {2, 3, 5, 7, 11, 13};
    std::map<BigInt, Rational> e;
    const int terms = static_cast<int>(pick(rng, 1, max_gens_primes));
    for (int i = 0; i < terms; ++i) {
        const BigInt p = primes[pick(rng, 0, 5)];
        const long long num = pick(rng, -max_num, max_num);
        if (num == 0) continue;
        e[p] = Rational(num, pick(rng, 1, max_den));
    }
    return RadicalReal::from_exponents(std::move(e));
}

inline std::vector<RadicalReal> random_generator_set(Rng& rng, std::size_t max_count = 5) {
    std::vector<RadicalReal> gens;
    const std::size_t count = static_cast<std::size_t>(pick(rng, 0, static_cast<long long>(max_count)));
    for (std::size_t i = 0; i < count; ++i) gens.push_back(random_radical(rng));
    return gens;
}

// Independent rank oracle: plain Gaussian elimination over Q on the raw
// exponent vectors, no lattice machinery.
inline std::size_t rational_rank(std::vector<std::vector<Rational>> rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows[0].size();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t pivot = rows.size();
        for (std::size_t i = rank; i < rows.size(); ++i)
            if (!rows[i][c].is_zero()) { pivot = i; break; }
        if (pivot == rows.size()) continue;
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][c].is_zero()) continue;
            const Rational f = rows[i][c] / rows[rank][c];
            for (std::size_t k = 0; k < cols; ++k) rows[i][k] -= f * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

inline std::size_t rank_oracle(const std::vector<RadicalReal>& gens) {
    std::vector<BigInt> primes;
    for (const auto& g : gens)
        for (const auto& [p, e] : g.exponents())
            if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    std::vector<std::vector<Rational>> rows;
    for (const auto& g : gens) {
        std::vector<Rational> row(primes.size(), Rational(0));
        for (std::size_t c = 0; c < primes.size(); ++c) {
            auto it = g.exponents().find(primes[c]);
            if (it != g.exponents().end()) row[c] = it->second;
        }
        rows.push_back(std::move(row));
    }
    return rational_rank(std::move(rows));
}

// Random parseable problem document covering every term kind.
inline ProblemDoc random_problem_doc(Rng& rng) {
    ProblemDoc doc;
    const bool quad = pick(rng, 0, 3) == 0;
    if (quad) doc.field_d = std::vector<long long>{2, 3, 5}[pick(rng, 0, 2)];

    const std::size_t algebra_count = static_cast<std::size_t>(pick(rng, 2, 3));
    for (std::size_t ai = 0; ai < algebra_count; ++ai) {
        Algebra a;
        a.name = "A" + std::to_string(ai + 1);
        const std::size_t terms = static_cast<std::size_t>(pick(rng, 1, 3));
        std::vector<Rational> masses;
        {
            std::vector<long long> parts(terms);
            long long total = 0;
            for (auto& p : parts) { p = pick(rng, 1, 9); total += p; }
            for (auto p : parts) masses.emplace_back(p, total);
        }
        for (std::size_t t = 0; t < terms; ++t) {
            const std::string label = "m" + std::to_string(t + 1);
            long long kind = pick(rng, 0, 5);
            if (terms == 1 && kind == 0) kind = 1;  // avoid the scalars alone
            switch (kind) {
                case 0: {  // C
                    a.terms.emplace_back(MatrixSummand{1, {ExactScalar(masses[t])}, label});
                    break;
                }
                case 1: {  // M_n, optionally with quadratic weights
                    const std::size_t n = static_cast<std::size_t>(pick(rng, 2, 3));
                    MatrixSummand m{n, {}, label};
                    if (doc.field_d && pick(rng, 0, 1)) {
                        // two conjugate-ish positive weights u +- v*sqrt(d) plus filler
                        const Rational u = masses[t] / Rational(2 * static_cast<long long>(n - 1));
                        Rational v(1, 1000);
                        m.weights.emplace_back(QuadExt(*doc.field_d, u, v));
                        m.weights.emplace_back(QuadExt(*doc.field_d, u, -v));
                        for (std::size_t i = 2; i < n; ++i)
                            m.weights.emplace_back(masses[t] / Rational(static_cast<long long>(n - 1)));
                    } else {
                        std::vector<long long> parts(n);
                        long long total = 0;
                        for (auto& p : parts) { p = pick(rng, 1, 9); total += p; }
                        for (auto p : parts)
                            m.weights.emplace_back(masses[t] * Rational(p, total));
                    }
                    a.terms.emplace_back(std::move(m));
                    break;
                }
                case 2:
                    a.terms.emplace_back(
                        make_bh_atom(ExactScalar(masses[t]), Rational(1, pick(rng, 2, 6))));
                    break;
                case 3: {
                    TypeIiiAtom t3;
                    t3.centralizer = pick(rng, 0, 1) ? TypeIiiAtom::Centralizer::LFreeInfinity
                                                     : TypeIiiAtom::Centralizer::HyperfiniteR;
                    const std::size_t gens = static_cast<std::size_t>(pick(rng, 1, 2));
                    for (std::size_t g = 0; g < gens; ++g)
                        t3.sd_generators.push_back(RadicalReal::from_power(
                            Rational(pick(rng, 2, 9)), Rational(pick(rng, 1, 3), pick(rng, 1, 3))));
                    a.terms.emplace_back(SpecialAtom{std::move(t3), ExactScalar(masses[t])});
                    break;
                }
                case 4:
                    a.terms.emplace_back(SpecialAtom{DiffuseTracialAtom{}, ExactScalar(masses[t])});
                    break;
                default: {
                    FreeGroupFactorAtom lf;
                    if (pick(rng, 0, 1)) lf.param = Rational(pick(rng, 2, 9), 1);
                    a.terms.emplace_back(SpecialAtom{lf, ExactScalar(masses[t])});
                    break;
                }
            }
        }
        doc.algebras.push_back(std::move(a));
    }
    return doc;
}

}  // namespace fpcalc::testing
