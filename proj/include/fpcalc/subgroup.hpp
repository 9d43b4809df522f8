#pragma once

#include "fpcalc/radical.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace fpcalc {

/// Classification of a finitely generated multiplicative subgroup of R+*:
/// trivial, cyclic lambda^Z with canonical 0 < lambda < 1, or dense.
/// A non-cyclic finitely generated subgroup of R+* is dense.
struct SubgroupClass {
    enum class Kind { Trivial, Cyclic, Dense };
    Kind kind = Kind::Trivial;
    std::optional<RadicalReal> lambda;  // present iff Cyclic, value in (0,1)
    std::size_t rank = 0;

    bool operator==(const SubgroupClass&) const = default;

    bool is_trivial() const { return kind == Kind::Trivial; }
    bool is_cyclic() const { return kind == Kind::Cyclic; }
    bool is_dense() const { return kind == Kind::Dense; }
};

/// Multiplicative subgroup of R+* spanned by radical-real generators, stored
/// as an integer lattice: exponent vectors over `primes`, scaled by
/// denominator_scale so they are integral, with basis rows in Hermite normal
/// form (pivots positive, strictly increasing pivot columns, entries above a
/// pivot reduced into [0, pivot)).
class MultSubgroup {
public:
    static MultSubgroup generate(const std::vector<RadicalReal>& generators);
    // Rebuilds a subgroup from serialized parts; basis must already be the
    // Hermite normal form rows over the given primes.
    static MultSubgroup from_parts(std::vector<BigInt> primes,
                                   std::vector<std::vector<BigInt>> basis, BigInt denominator_scale);

    const std::vector<BigInt>& primes() const { return primes_; }
    const std::vector<std::vector<BigInt>>& basis() const { return basis_; }
    const BigInt& denominator_scale() const { return scale_; }
    std::size_t rank() const { return basis_.size(); }

    bool contains(const RadicalReal& x) const;
    SubgroupClass classify() const;

    // Basis row mapped back to the radical real it represents.
    RadicalReal basis_radical(std::size_t row) const;

    // Mathematical equality as subgroups of R+* (mutual containment).
    bool same_subgroup(const MultSubgroup& other) const;

    // Representation equality (same primes, basis, scale).
    bool operator==(const MultSubgroup&) const = default;

private:
    std::vector<BigInt> primes_;
    std::vector<std::vector<BigInt>> basis_;
    BigInt scale_ = 1;
};

/// Result of intersecting lambda^Z with a subgroup G: the least N >= 1 with
/// lambda^N in G, or trivial when no power but lambda^0 lies in G.
struct CyclicIntersection {
    std::optional<BigInt> power_index;
    bool is_trivial() const { return !power_index.has_value(); }
};

// Requires lambda != 1.
CyclicIntersection cyclic_intersection(const RadicalReal& lambda, const MultSubgroup& G);

// Row-style Hermite normal form of an integer matrix; returns the nonzero
// rows. Exposed for tests.
std::vector<std::vector<BigInt>> hermite_normal_form(std::vector<std::vector<BigInt>> rows);

}  // namespace fpcalc
