#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tuav {

/// Classes of failure raised by the library. The CLI maps each class onto a
/// distinct process exit code.
enum class ErrorKind {
    domain,              ///< argument outside a function's mathematical domain
    infeasible_slack,    ///< tether length does not exceed the anchor-UAV distance
    over_length,         ///< requested tether length exceeds the spool capacity
    degenerate_geometry, ///< coincident endpoints or zero horizontal span
    convergence,         ///< iterative solver did not converge
    singularity,         ///< control law hit a singular configuration
    numerical_blowup,    ///< non-finite state during integration
    config,              ///< malformed or invalid configuration
    io,                  ///< file could not be read or written
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// True for the geometry failures (slack, over-length, degenerate).
constexpr bool is_geometry_error(ErrorKind kind) noexcept {
    return kind == ErrorKind::infeasible_slack || kind == ErrorKind::over_length ||
           kind == ErrorKind::degenerate_geometry;
}

} // namespace tuav
