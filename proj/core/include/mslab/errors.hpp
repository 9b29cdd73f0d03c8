#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mslab {

// Error taxonomy mirrored by the CLI exit codes:
//   ValidationError -> 2, PrecisionError -> 3, ResourceError -> 4.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Checkpoint/cache inconsistency. A subclass of ValidationError so it maps
// to the validation exit code, but distinguishable by type.
struct IntegrityError : ValidationError {
    using ValidationError::ValidationError;
};

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PrecisionError : std::runtime_error {
    PrecisionError(const std::string& msg) : std::runtime_error(msg) {}
    PrecisionError(const std::string& msg, double value, double abs_err, std::uint64_t panels)
        : std::runtime_error(msg), has_partial(true), partial_value(value),
          partial_abs_err(abs_err), partial_panels(panels) {}

    bool has_partial = false;
    double partial_value = 0.0;
    double partial_abs_err = 0.0;
    std::uint64_t partial_panels = 0;
};

}  // namespace mslab
