#pragma once

#include <stdexcept>
#include <string>

namespace rig {

// Parameters that do not describe a valid set-size law.
struct invalid_law_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Asymptotic-regime parameters outside the admissible range.
struct invalid_regime_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// An enumeration or construction would exceed a configured size guard.
struct size_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Work counter of a bounded search ran out before the search finished.
struct budget_exceeded_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A computation would blow past a configured resource cap (memory or work).
struct resource_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed experiment configuration.
struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed or unsupported serialized data.
struct format_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rig
