#include "tuav/error.hpp"

namespace tuav {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::infeasible_slack: return "infeasible_slack";
    case ErrorKind::over_length: return "over_length";
    case ErrorKind::degenerate_geometry: return "degenerate_geometry";
    case ErrorKind::convergence: return "convergence";
    case ErrorKind::singularity: return "singularity";
    case ErrorKind::numerical_blowup: return "numerical_blowup";
    case ErrorKind::config: return "config";
    case ErrorKind::io: return "io";
    }
    return "unknown";
}

} // namespace tuav
