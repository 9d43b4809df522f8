#pragma once

#include "fpcalc/algebra.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fpcalc {

struct SourceSpan {
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t offset = 0;
};

struct ParseDiagnostic {
    SourceSpan span;
    std::string message;
};

/// A parsed problem: the optional global quadratic field and the ordered free
/// factors.
struct ProblemDoc {
    std::optional<long long> field_d;  // squarefree
    std::vector<Algebra> algebras;
    std::vector<std::pair<std::string, std::string>> metadata;

    bool operator==(const ProblemDoc&) const = default;
};

struct ParseResult {
    std::optional<ProblemDoc> doc;
    std::vector<ParseDiagnostic> diagnostics;
    bool ok() const { return doc.has_value(); }
};

// Grammar:
//   problem  := header? algebra ( "*" algebra )+
//   header   := "field" "sqrt" "(" INT ")" ";"
//   algebra  := "(" seq ")" | seq
//   seq      := term ( "(+)" term )*
//   term     := "C" ":" scalar
//             | "M" INT ":" "[" scalar ("," scalar)* "]"
//             | "BH" ":" "geom" "(" scalar "," rational ")"
//             | "III" "(" radical ("," radical)* ";" ("R"|"LFinf") ")" ":" scalar
//             | "HYP" ":" scalar
//             | "LF" "(" rational? ")" ":" scalar
//   scalar   := rational [ ("+"|"-") rational "*" "sqrt" "(" INT ")" ]
//   rational := ["-"] INT ["/" INT]
//   radical  := rational [ "^" "(" rational ")" ]
// Whitespace insensitive. sqrt radicands fold square factors onto the
// coefficient, so sqrt(8) under "field sqrt(2);" reads as 2*sqrt(2).
ParseResult parse_problem(std::string_view text);

// Canonical text for a problem; parse_problem(render_problem(doc)) == doc.
std::string render_problem(const ProblemDoc& doc);

// Literal fragments, for CLI arguments and JSON payloads.
std::optional<Rational> parse_rational_literal(std::string_view text);
std::optional<RadicalReal> parse_radical_literal(std::string_view text,
                                                 const FactorOptions& opts = {});
std::optional<ExactScalar> parse_scalar_literal(std::string_view text);

}  // namespace fpcalc
