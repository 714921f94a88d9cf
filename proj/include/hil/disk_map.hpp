#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hil/polynomial.hpp"
#include "hil/series.hpp"
#include "hil/settings.hpp"
#include "hil/norms.hpp"
#include "hil/verdict.hpp"

namespace hil {

/// z -> (a z + b) / (c z + d), stored as its 2x2 coefficient matrix.
struct Mobius {
    cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

    cplx operator()(cplx z) const noexcept { return (a * z + b) / (c * z + d); }
    cplx derivative(cplx z) const noexcept;
    cplx det() const noexcept { return a * d - b * c; }

    /// this ∘ other (matrix product).
    Mobius after(const Mobius& other) const noexcept;
    Mobius power(std::size_t n) const noexcept;
    Mobius inverse() const noexcept;
    /// Scaled to unit determinant.
    Mobius normalized() const noexcept;

    /// Image of the unit circle is the circle |w - centre| = radius (requires |d| > |c|).
    cplx image_centre() const noexcept;
    double image_radius() const noexcept;
};

enum class MapKind { identity, rotation, monomial, mobius, polynomial, constant, composite };

const char* to_string(MapKind k) noexcept;

/// A holomorphic self-map of the disk with a closed-form representation.
///
/// Values are immutable and cheap to copy. Every constructor checks the
/// self-map certificate: the supremum of |φ| over the closed disk, estimated on
/// the unit circle, may not exceed 1 + 1e-9.
class DiskSelfMap {
public:
    static DiskSelfMap identity();
    static DiskSelfMap rotation(cplx c);
    static DiskSelfMap monomial(std::size_t k);
    static DiskSelfMap mobius(cplx a, cplx b, cplx c, cplx d);
    static DiskSelfMap mobius(const Mobius& m) { return mobius(m.a, m.b, m.c, m.d); }
    static DiskSelfMap polynomial(std::vector<cplx> coeffs);
    static DiskSelfMap constant(cplx a);
    /// parts[0] ∘ parts[1] ∘ ... ; the last part is applied first.
    static DiskSelfMap composite(std::vector<DiskSelfMap> parts);

    MapKind kind() const noexcept;

    cplx operator()(cplx z) const;
    cplx derivative(cplx z) const;
    cplx at_zero() const { return (*this)(cplx{}); }

    /// Taylor series at the origin; exact for polynomial kinds, geometric tail for Möbius.
    TaylorSeries series(std::size_t order) const;

    /// sup |φ| over the closed disk (closed form for Möbius, 4096 boundary samples otherwise).
    double sup_estimate() const noexcept;
    /// sup_estimate() <= 1 - 1e-6.
    bool is_strict() const noexcept;

    std::optional<Mobius> as_mobius() const;
    /// Numerator / denominator form; composites are multiplied out (degree <= 256).
    std::optional<poly::Rational> as_rational() const;

    /// Coefficientwise equality with the identity map at the given order.
    bool is_identity(double tol = 1e-10, std::size_t order = 256) const;

    // Kind-specific payloads.
    cplx rotation_factor() const;
    std::size_t monomial_power() const;
    const std::vector<cplx>& polynomial_coeffs() const;
    cplx constant_value() const;
    const std::vector<DiskSelfMap>& parts() const;

    std::string describe() const;

private:
    struct Data;
    explicit DiskSelfMap(std::shared_ptr<const Data> d);
    static DiskSelfMap certified(std::shared_ptr<Data> d);
    std::shared_ptr<const Data> data_;
};

/// φ_a(z) = (a - z) / (1 - conj(a) z); throws OutOfDisk when |a| >= 1.
DiskSelfMap make_mobius_involution(cplx a);

/// φ_n = φ ∘ ... ∘ φ (n times); closed forms for rotations, monomials and Möbius maps.
DiskSelfMap iterate(const DiskSelfMap& phi, std::size_t n);

enum class MapClass { identity, elliptic, parabolic, hyperbolic, not_automorphism };

const char* to_string(MapClass c) noexcept;

struct FixedPoint {
    cplx point;
    cplx multiplier;
};

struct FixedPointReport {
    std::optional<FixedPoint> interior;
    std::vector<FixedPoint> boundary;
    MapClass classification = MapClass::not_automorphism;
};

/// Fixed points in the closed disk. Unsupported for composites that are not
/// Möbius; Inconclusive for polynomial roots within 1e-6 but not 1e-8 of the circle.
FixedPointReport fixed_points(const DiskSelfMap& phi, const Tolerances& tol = {});

MapClass classify_automorphism(const DiskSelfMap& phi, const Tolerances& tol = {});

/// |φ(z)| <= |z| on the grid and the rotation rigidity case.
Verdict schwarz_check(const DiskSelfMap& phi, const Settings& settings = {});

enum class Summability { summable, divergent, inconclusive };

const char* to_string(Summability s) noexcept;

struct OrbitRecord {
    cplx start;
    std::vector<cplx> points;               // φ_m(z), m = 0..M
    std::vector<double> gaps;               // 1 - |φ_m(z)|
    std::vector<double> gap_partial_sums;   // Σ_{j<=m} gaps
    Summability summability = Summability::inconclusive;
    double last_block_increment = 0.0;      // partial-sum growth over the last M/10 terms
    double block_ratio = 0.0;               // dyadic block sums (M/2, M] over (M/4, M/2]
    double tail_min_gap = 0.0;              // min gap over the last M/10 terms
};

OrbitRecord orbit(const DiskSelfMap& phi, cplx z, std::size_t M);

}  // namespace hil
