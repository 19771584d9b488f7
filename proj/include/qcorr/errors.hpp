// errors.hpp
// Exception types thrown by validation and the optimizers. Every message
// names the violated requirement so callers can print it verbatim.
#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

// Common base so callers can catch everything from this library at once.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionError : Error {
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

// Input matrix fails a density-matrix requirement (hermiticity, unit trace,
// positivity) beyond the documented tolerance.
struct InvalidStateError : Error {
    explicit InvalidStateError(const std::string& msg) : Error(msg) {}
};

struct InvalidParameterError : Error {
    explicit InvalidParameterError(const std::string& msg) : Error(msg) {}
};

// Measurement operators do not satisfy the completeness relation.
struct IncompleteMeasurementError : Error {
    explicit IncompleteMeasurementError(const std::string& msg) : Error(msg) {}
};

// Requested operation is only implemented for smaller subsystem dimensions.
struct UnsupportedDimensionError : Error {
    explicit UnsupportedDimensionError(const std::string& msg) : Error(msg) {}
};

// Malformed or unreadable state file.
struct StateFileError : Error {
    explicit StateFileError(const std::string& msg) : Error(msg) {}
};

}  // namespace qcorr
