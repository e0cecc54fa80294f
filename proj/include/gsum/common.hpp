#pragma once

#include <stdexcept>
#include <string>

namespace gsum {

inline constexpr const char* kVersion = "0.1.0";

/// Invalid argument / violated precondition (CLI exit code 2).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Numerical failure: non-convergence, NaN propagation, overflow (CLI exit code 3).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace gsum
