#pragma once

#include "fpcalc/dsl.hpp"
#include "fpcalc/engine.hpp"

#include <string>

namespace fpcalc {

enum class RenderMode { Ascii, Json };

// Deterministic text for a decomposition. Ascii mode prints offspring as
// "M2:[1/15,1/30]" lines with projection labels, the dominant projections and
// an Sd summary; Json mode emits the stable schema (exact strings, no
// floats). include_trace controls the derivation record in ascii mode; the
// JSON always carries it.
std::string render_decomposition(const Decomposition& dec, RenderMode mode,
                                 bool include_trace = false);

std::string decomposition_to_json_text(const Decomposition& dec);
// Single-line variant for batch records.
std::string decomposition_to_json_line(const Decomposition& dec);
// Parses text produced by either JSON form; throws std::invalid_argument on
// malformed payloads.
Decomposition decomposition_from_json_text(const std::string& text);

std::string render_spectrum_report(const std::string& algebra_name, const SpectrumReport& report);

}  // namespace fpcalc
