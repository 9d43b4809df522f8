#pragma once

#include "fpcalc/radical.hpp"
#include "fpcalc/scalar.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace fpcalc {

/// M_n(C) summand with the state's diagonal density weights.
struct MatrixSummand {
    std::size_t size = 1;
    std::vector<ExactScalar> weights;  // n strictly positive entries
    std::string label;

    bool operator==(const MatrixSummand&) const = default;
};

/// B(H) with geometric density scale*r^k, k >= 0; scale = mass*(1-ratio).
struct BhGeometricAtom {
    ExactScalar scale;
    Rational ratio;

    bool operator==(const BhGeometricAtom&) const = default;
};

/// Type III factor carrying an extremal almost periodic state; its point
/// spectrum is declared directly by generators.
struct TypeIiiAtom {
    enum class Centralizer { HyperfiniteR, LFreeInfinity };
    std::vector<RadicalReal> sd_generators;  // non-empty, none equal to 1
    Centralizer centralizer = Centralizer::LFreeInfinity;

    bool operator==(const TypeIiiAtom&) const = default;
};

/// Diffuse hyperfinite algebra with a tracial state.
struct DiffuseTracialAtom {
    bool operator==(const DiffuseTracialAtom&) const = default;
};

/// Interpolated free group factor L(F_t) with its trace.
struct FreeGroupFactorAtom {
    std::optional<Rational> param;  // > 1 when given

    bool operator==(const FreeGroupFactorAtom&) const = default;
};

struct SpecialAtom {
    std::variant<BhGeometricAtom, TypeIiiAtom, DiffuseTracialAtom, FreeGroupFactorAtom> kind;
    ExactScalar mass;

    bool operator==(const SpecialAtom&) const = default;
};

// Builds a B(H) atom from (mass, ratio), deriving the scale.
SpecialAtom make_bh_atom(const ExactScalar& mass, const Rational& ratio);

using Term = std::variant<MatrixSummand, SpecialAtom>;

/// One free factor (A, phi): an ordered direct sum of matrix summands and
/// special atoms. Total mass must be exactly 1.
struct Algebra {
    std::vector<Term> terms;
    std::string name;

    const MatrixSummand* matrix_at(std::size_t i) const {
        return std::get_if<MatrixSummand>(&terms[i]);
    }
    const SpecialAtom* atom_at(std::size_t i) const {
        return std::get_if<SpecialAtom>(&terms[i]);
    }
    std::size_t term_count() const { return terms.size(); }

    bool operator==(const Algebra&) const = default;
};

struct Diagnostic {
    std::string path;
    std::string message;
};

// Checks faithfulness (all weights > 0), exact unit mass, geometric-atom
// consistency, the shared quadratic field, and non-triviality (not C alone).
std::vector<Diagnostic> validate(const Algebra& a,
                                 std::optional<long long> global_d = std::nullopt);

// Sum of the sizes of matrix summands whose weights are not all equal; the
// non-traciality count. Atoms are excluded.
std::size_t ntr(const Algebra& a);

// True iff ntr is 0 and every atom carries a trace.
bool is_tracial(const Algebra& a);

/// Point spectrum of the modular operator, reported by generators: within-
/// summand weight ratios plus atom contributions, each canonicalized > 1 and
/// deduplicated. complete=false when some ratio is not a radical real.
struct SpectrumReport {
    std::vector<RadicalReal> generators;
    bool complete = true;
    std::vector<std::string> non_radical;  // offending ratios, for diagnostics
};

SpectrumReport point_spectrum(const Algebra& a, const FactorOptions& opts = {});

// The minimal-and-central projections: size-1 matrix summands with their
// weights, as (term index, weight). Atoms never qualify.
std::vector<std::pair<std::size_t, ExactScalar>> minimal_central_summands(const Algebra& a);

ExactScalar total_mass(const Algebra& a);

// Vector-space dimension when the algebra is finite dimensional (no atoms).
std::optional<BigInt> linear_dimension(const Algebra& a);

}  // namespace fpcalc
