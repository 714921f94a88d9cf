#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hil {

/// Concentric circles on which integral means and sup-norms are sampled.
class DiskGrid {
public:
    /// Radii must be strictly increasing inside (0, 1); angular_count >= 16.
    DiskGrid(std::vector<double> radii, std::size_t angular_count);

    static DiskGrid default_grid();

    const std::vector<double>& radii() const noexcept { return radii_; }
    std::size_t angular_count() const noexcept { return angular_count_; }
    double outer_radius() const noexcept { return radii_.back(); }
    double angle(std::size_t j) const noexcept;

    /// Same radii, different angular resolution.
    DiskGrid with_angles(std::size_t angular_count) const;

    bool operator==(const DiskGrid&) const = default;

private:
    std::vector<double> radii_;
    std::size_t angular_count_;
};

struct Tolerances {
    double eq = 1e-9;        // membership identities, zero matching
    double map_eq = 1e-10;   // coefficientwise map equality
    double sup = 1e-6;       // Schur / sup-norm slack
    double root = 1e-10;     // root resolution
    double cluster = 1e-7;   // multiplicity clustering radius
    double snap = 1e-8;      // boundary fixed point snapping
};

/// Truncation and tolerance metadata shared by every checker; echoed in each Verdict.
struct Settings {
    std::size_t order = 256;
    DiskGrid grid = DiskGrid::default_grid();
    Tolerances tol{};
    std::size_t battery_degree = 12;
    std::uint64_t seed = 20240917;

    /// Settings with the seed taken from HIL_SEED when set.
    static Settings from_environment();
};

}  // namespace hil
