#pragma once

#include "fpcalc/algebra.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace fpcalc {

/// Invalid input (failed validation or precondition); CLI exit 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<Diagnostic> diags)
        : std::runtime_error(diags.empty() ? "invalid input" : diags.front().message),
          diagnostics(std::move(diags)) {}
    std::vector<Diagnostic> diagnostics;
};

/// A result contradicting an invariant the theory guarantees; CLI exit 1.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Classification refused: some weight ratio is not a radical real, so the
/// spectrum subgroup cannot be represented. Carries what was collected.
class IndeterminateError : public std::runtime_error {
public:
    IndeterminateError(std::vector<RadicalReal> collected, std::vector<std::string> offending)
        : std::runtime_error("indeterminate classification: non-radical spectrum ratio"),
          radical_generators(std::move(collected)),
          non_radical(std::move(offending)) {}
    std::vector<RadicalReal> radical_generators;
    std::vector<std::string> non_radical;
};

/// The mating enumeration would exceed the configured cap; CLI exit 2.
class CapExceededError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fpcalc
