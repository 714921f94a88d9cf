#include "hil/settings.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "hil/errors.hpp"

namespace hil {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::invalid_input: return "InvalidInput";
        case ErrorKind::range_violation: return "RangeViolation";
        case ErrorKind::order_exceeded: return "OrderExceeded";
        case ErrorKind::out_of_domain: return "OutOfDomain";
        case ErrorKind::out_of_disk: return "OutOfDisk";
        case ErrorKind::unsupported: return "Unsupported";
        case ErrorKind::inconclusive: return "Inconclusive";
        case ErrorKind::hypothesis_violated: return "HypothesisViolated";
        case ErrorKind::boundary_root: return "BoundaryRoot";
        case ErrorKind::collapse_detected: return "CollapseDetected";
        case ErrorKind::underflow: return "Underflow";
    }
    return "Error";
}

DiskGrid::DiskGrid(std::vector<double> radii, std::size_t angular_count)
    : radii_(std::move(radii)), angular_count_(angular_count) {
    if (radii_.empty()) throw InvalidInput("grid needs at least one radius");
    if (angular_count_ < 16) throw InvalidInput("grid angular_count must be >= 16");
    for (std::size_t i = 0; i < radii_.size(); ++i) {
        const double r = radii_[i];
        if (!(r > 0.0 && r < 1.0)) throw InvalidInput("grid radii must lie in (0, 1)");
        if (i > 0 && !(r > radii_[i - 1])) throw InvalidInput("grid radii must be strictly increasing");
    }
}

DiskGrid DiskGrid::default_grid() { return DiskGrid({0.9, 0.99, 0.999, 0.9999}, 4096); }

double DiskGrid::angle(std::size_t j) const noexcept {
    return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(angular_count_);
}

DiskGrid DiskGrid::with_angles(std::size_t angular_count) const { return DiskGrid(radii_, angular_count); }

Settings Settings::from_environment() {
    Settings s;
    if (const char* env = std::getenv("HIL_SEED"); env != nullptr && *env != '\0') {
        try {
            s.seed = std::stoull(env);
        } catch (const std::exception&) {
            throw InvalidInput(std::string("HIL_SEED is not an unsigned integer: ") + env);
        }
    }
    return s;
}

}  // namespace hil
