// state_io.hpp
// JSON state files and report serialization for the CLI.
#pragma once

#include <string>

#include "qcorr/correlations.hpp"
#include "qcorr/state.hpp"

namespace qcorr {

// Reads {"d_a": int, "d_b": int, "re": [[...]], "im": [[...]]} with
// row-major real and imaginary parts, then runs full validation. Throws
// StateFileError for unreadable or malformed files and propagates
// validation errors (both carry messages naming the violated requirement).
DensityMatrix load_state_json(const std::string& path);

// Writes the same format. Mostly a testing and interchange convenience.
void save_state_json(const DensityMatrix& rho, const std::string& path);

// Measurement report as a JSON object (for `measure --json`).
std::string report_json(const MeasureReport& rep);

}  // namespace qcorr
