#pragma once

#include "fpcalc/algebra.hpp"
#include "fpcalc/errors.hpp"
#include "fpcalc/subgroup.hpp"

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace fpcalc {

/// Matrix unit v_{row,col} of a named matrix summand.
struct MatrixUnitRef {
    std::size_t algebra = 0;
    std::size_t summand = 0;
    std::size_t row = 0;  // 0-based; rendered 1-based
    std::size_t col = 0;

    bool operator==(const MatrixUnitRef&) const = default;
    MatrixUnitRef transposed() const { return {algebra, summand, col, row}; }
    std::string str() const;
};

/// Symbolic projection: a diagonal projection, a meet, or a conjugation
/// v p v* by a matrix unit.
class ProjectionExpr {
public:
    enum class Kind { Atom, Meet, Conj };

    static ProjectionExpr atom(std::size_t algebra, std::size_t summand, std::size_t index);
    static ProjectionExpr meet(std::vector<ProjectionExpr> children);  // >= 2 children
    static ProjectionExpr conj(MatrixUnitRef unit, ProjectionExpr child);

    Kind kind() const { return kind_; }
    // Atom accessors
    std::size_t algebra() const { return algebra_; }
    std::size_t summand() const { return summand_; }
    std::size_t index() const { return index_; }
    // Meet / Conj accessors
    const std::vector<ProjectionExpr>& children() const { return children_; }
    const MatrixUnitRef& unit() const { return unit_; }

    bool operator==(const ProjectionExpr&) const = default;
    std::string str() const;

    // Parses the canonical rendering produced by str().
    static std::optional<ProjectionExpr> parse(std::string_view text);

private:
    ProjectionExpr() = default;
    Kind kind_ = Kind::Atom;
    std::size_t algebra_ = 0, summand_ = 0, index_ = 0;
    MatrixUnitRef unit_;
    std::vector<ProjectionExpr> children_;
};

/// A finite-dimensional summand of the free product produced by one mating:
/// M_size with weights gamma, supported under each parent's projection.
struct Offspring {
    std::size_t size = 1;
    std::vector<ExactScalar> weights;     // ordered like the distinguished parent
    std::vector<std::size_t> parent_refs; // chosen term index, one per algebra
    std::vector<ProjectionExpr> labels;   // one per diagonal entry

    bool operator==(const Offspring&) const = default;
};

/// One step of the derivation record. Fields are ordered key/value pairs with
/// stable keys, so tests and the JSON output can rely on them.
struct TraceEntry {
    std::string kind;
    std::vector<std::pair<std::string, std::string>> fields;

    bool operator==(const TraceEntry&) const = default;
};

struct ContinuousPart {
    enum class Kind { TypeIII, TracialII1 };
    enum class TracialForm { LZTensorM2, InterpolatedFreeGroup };

    ExactScalar mass;
    Kind kind = Kind::TypeIII;
    // TypeIII payload; the centralizer is L(F_infinity).
    SubgroupClass sd;
    MultSubgroup sd_group;
    // TracialII1 payload; the interpolated free group parameter is not
    // computed (it belongs to the tracial theory, out of scope here).
    TracialForm form = TracialForm::InterpolatedFreeGroup;
    // Reason string when fullness is known; nullopt = unknown.
    std::optional<std::string> fullness;

    bool operator==(const ContinuousPart&) const = default;
};

struct Decomposition {
    std::vector<Offspring> type_I;
    ContinuousPart continuous;
    std::vector<std::pair<std::size_t, std::size_t>> dominant;  // (algebra, term)
    std::vector<TraceEntry> trace;

    bool operator==(const Decomposition&) const = default;
};

struct ClassifyOptions {
    std::uint64_t tuple_cap = 1'000'000;  // mating-enumeration guard
    bool allow_large_factor = false;
    bool assume_barnett_full = false;     // set by the prescribed-Sd round trip
};

// Pairwise mating rule. Present iff at least one side is a 1x1 summand and
// the strict reciprocal-weight inequality holds. idx1/idx2 are the term
// indices used for parent refs and labels.
std::optional<Offspring> mate_pair(const MatrixSummand& s1, const MatrixSummand& s2,
                                   std::size_t idx1 = 0, std::size_t idx2 = 0);

// Multi-party mating of one matrix summand per algebra (|choices| >= 2).
// Present iff all but one choice is 1x1 and the strict inequality holds.
std::optional<Offspring> mate_family(const std::vector<const MatrixSummand*>& choices,
                                     const std::vector<std::size_t>& term_indices);
std::optional<Offspring> mate_family(const std::vector<MatrixSummand>& choices);

// All offspring from all admissible matings across the family.
std::vector<Offspring> type_I_part(std::span<const Algebra> algebras,
                                   const ClassifyOptions& opts = {},
                                   std::vector<TraceEntry>* trace = nullptr);

// Two-party dominant projections: the minimal-and-central summands through
// which every offspring arises. Empty when there is no offspring; empty with
// a note for more than two parties. Throws ConsistencyError if offspring
// exist but no candidate covers them all.
std::vector<std::pair<std::size_t, std::size_t>> dominant_projection(
    std::span<const Algebra> algebras, const std::vector<Offspring>& offspring);

ContinuousPart continuous_part(std::span<const Algebra> algebras,
                               const std::vector<Offspring>& offspring,
                               const ClassifyOptions& opts = {},
                               std::vector<TraceEntry>* trace = nullptr);

// Full decomposition M = M0 (+) D of the free product of the given algebras.
Decomposition classify(std::span<const Algebra> algebras, const ClassifyOptions& opts = {});
Decomposition classify(const std::vector<Algebra>& algebras, const ClassifyOptions& opts = {});

// One M_2 factor per generator lambda in (0,1), weights 1/(1+lambda) and
// lambda/(1+lambda); a single generator is duplicated so the family has two
// members. Classifying the result realizes the prescribed Sd group.
std::vector<Algebra> construct_with_sd(const std::vector<Rational>& generators);

// construct_with_sd followed by classify, with the fullness annotation the
// construction guarantees.
Decomposition classify_constructed(const std::vector<Rational>& generators,
                                   ClassifyOptions opts = {});

}  // namespace fpcalc
