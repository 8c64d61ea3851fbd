#pragma once

#include <stdexcept>
#include <string>

namespace ffms {

/// Transient integration failed (divergence, bad step size).
struct IntegrationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A least-squares fit could not be performed (degenerate data, empty window).
struct FitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A work-cycle computation was asked for a trajectory that is not a closed cycle.
struct CycleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Latency estimation failed (aperiodic drive, too few periods).
struct LatencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Configuration parse/validation failure; `pointer` is a JSON pointer to the
/// offending key.
struct ConfigError : std::runtime_error {
    std::string pointer;

    ConfigError(const std::string& json_pointer, const std::string& message)
        : std::runtime_error("config error at " + json_pointer + ": " + message),
          pointer(json_pointer) {}
};

}  // namespace ffms
