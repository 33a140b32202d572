#pragma once

#include <stdexcept>
#include <string>

namespace ucpt {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad configuration: unknown kernel name, invalid bandwidth, malformed
// scenario document, kernel/series dimensionality mismatch.
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Bad input data: unparsable CSV, non-finite values, empty input.
struct DataError : Error {
    explicit DataError(const std::string& msg) : Error(msg) {}
};

// Too few observations for the requested operation.
struct SampleTooSmallError : DataError {
    explicit SampleTooSmallError(const std::string& msg) : DataError(msg) {}
};

// Long-run variance estimate came out non-positive; carries the raw value.
struct DegenerateVarianceError : Error {
    double raw_value;
    explicit DegenerateVarianceError(double value)
        : Error("degenerate long-run variance estimate: " + std::to_string(value)),
          raw_value(value) {}
};

}  // namespace ucpt
