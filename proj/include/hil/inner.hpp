#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hil/analytic.hpp"
#include "hil/disk_map.hpp"
#include "hil/polynomial.hpp"

namespace hil {

struct BlaschkeZero {
    cplx a;
    std::size_t mult = 1;
};

/// Point mass c at e^{it} in the singular measure.
struct SingularAtom {
    double t = 0.0;
    double c = 0.0;
};

struct ZeroEntry {
    cplx point;
    std::size_t mult = 1;
};

/// Zeros in the open disk with multiplicity.
struct ZeroReport {
    std::vector<ZeroEntry> zeros;
    bool identically_zero = false;

    /// Multiplicity at alpha, matching points within tol; 0 when alpha is not a zero.
    std::size_t multiplicity_at(cplx alpha, double tol = 1e-12) const noexcept;
};

/// θ(z) = λ z^m Π_k b_{a_k}(z)^{m_k} exp(-Σ_j c_j (e^{it_j} + z) / (e^{it_j} - z)),
/// with b_a(z) = (conj(a)/|a|) (a - z) / (1 - conj(a) z).
class InnerFunction {
public:
    InnerFunction() = default;
    InnerFunction(cplx lambda, std::size_t m0, std::vector<BlaschkeZero> zeros, std::vector<SingularAtom> atoms);

    static InnerFunction one() { return {}; }
    static InnerFunction monomial(std::size_t m) { return InnerFunction(1.0, m, {}, {}); }
    static InnerFunction blaschke(cplx a, std::size_t mult = 1) { return InnerFunction(1.0, 0, {{a, mult}}, {}); }
    static InnerFunction atom(double t, double c) { return InnerFunction(1.0, 0, {}, {{t, c}}); }

    cplx lambda() const noexcept { return lambda_; }
    std::size_t origin_multiplicity() const noexcept { return m0_; }
    const std::vector<BlaschkeZero>& blaschke_zeros() const noexcept { return zeros_; }
    const std::vector<SingularAtom>& atoms() const noexcept { return atoms_; }

    bool has_singular_part() const noexcept { return !atoms_.empty(); }
    bool is_constant() const noexcept { return m0_ == 0 && zeros_.empty() && atoms_.empty(); }
    /// Total number of zeros counted with multiplicity.
    std::size_t zero_count() const noexcept;

    /// Throws OutOfDomain unless |z| < 1.
    cplx operator()(cplx z) const;
    /// Same formula without the domain check (boundary values of the Blaschke part).
    cplx eval_unchecked(cplx z) const noexcept;
    double log_abs(cplx z) const noexcept;

    /// Multiplicity read from the structure: m0 at the origin, summed Blaschke
    /// multiplicities within tol of alpha elsewhere.
    std::size_t mult_at(cplx alpha, double tol = 1e-12) const noexcept;
    ZeroReport zeros() const;

    TaylorSeries series(std::size_t order) const;
    /// Numerator / denominator when there is no singular part.
    std::optional<poly::Rational> as_rational() const;
    AnalyticFunction as_analytic(std::size_t order = 256) const;

    InnerFunction blaschke_part() const;
    InnerFunction singular_part() const;
    InnerFunction operator*(const InnerFunction& other) const;

    std::string describe() const;

private:
    cplx lambda_{1.0};
    std::size_t m0_ = 0;
    std::vector<BlaschkeZero> zeros_;
    std::vector<SingularAtom> atoms_;
};

/// Points z in the open disk with φ(z) = w and the local order of φ - w there.
/// Sets identically_zero when φ is the constant w.
ZeroReport preimages(const DiskSelfMap& phi, cplx w, double tol = 1e-12);

/// Order of vanishing of φ - φ(alpha) at alpha (0 would mean φ is not defined);
/// returns nullopt for a constant map.
std::optional<std::size_t> local_order(const DiskSelfMap& phi, cplx alpha, double tol = 1e-10);

/// θ ∘ φ with its zero set.
struct ComposedInner {
    AnalyticFunction function;
    std::optional<poly::Rational> rational;
    ZeroReport zeros;
};

ComposedInner compose_with_map(const InnerFunction& theta, const DiskSelfMap& phi);

/// Taylor series of θ ∘ φ at the origin.
TaylorSeries composed_series(const InnerFunction& theta, const DiskSelfMap& phi, std::size_t order);

struct MultiplicityCheck {
    cplx alpha;
    std::size_t mult_theta = 0;
    std::size_t mult_composed = 0;   // SIZE_MAX when θ ∘ φ vanishes identically
};

/// Whether θ ∘ φ / θ is analytic on the disk, decided from zero multiplicities.
struct QuotientReport {
    bool analytic = false;
    std::optional<cplx> witness;
    std::vector<MultiplicityCheck> checks;
    bool identically_zero = false;
    /// Quotient with the Blaschke zeros cancelled (present when analytic).
    std::optional<AnalyticFunction> quotient;
    /// Cancelled rational factor coming from the Blaschke parts.
    std::optional<poly::Rational> rational_part;
    bool singular_free = true;
    std::optional<InnerFunction> theta;
    std::optional<DiskSelfMap> phi;

    /// Taylor series of the quotient at the origin (rational self-maps only).
    TaylorSeries series(std::size_t order) const;

    /// sup |quotient| over the closed disk: unit-circle samples of the
    /// rational part times the grid sup of the singular factor.
    double sup_estimate(const DiskGrid& grid) const;
};

/// Throws Inconclusive when φ(alpha) lands within (1e-10, 1e-6] of a zero of θ.
QuotientReport quotient_analytic(const InnerFunction& theta, const DiskSelfMap& phi, const Tolerances& tol = {});

struct RieszFactorization {
    InnerFunction blaschke;
    TaylorSeries cofactor;     // exact polynomial g with f = B g
    double sup_f = 0.0;        // on the unit circle
    double sup_g = 0.0;
    double min_abs_g = 0.0;    // on the default grid
};

/// Splits a polynomial into its Blaschke part and a zero-free polynomial cofactor.
/// Throws BoundaryRoot when a root lies within 1e-8 of the unit circle.
RieszFactorization riesz_factor(const TaylorSeries& f, const Settings& settings = {});

}  // namespace hil
