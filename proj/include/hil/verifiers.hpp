#pragma once

#include <cstddef>

#include "hil/composition.hpp"
#include "hil/disk_map.hpp"
#include "hil/inner.hpp"
#include "hil/subspaces.hpp"
#include "hil/verdict.hpp"

namespace hil {

/// Invariance of H^p_{α,β} under C_φ.
///
/// Criterion: for β ≠ 0 the subspace is invariant iff φ is the identity; for
/// (α, β) = (1, 0) up to phase iff φ(0) = 0 or φ'(0) = 0. Direct leg: C_φ applied
/// to α + βz, z², ..., z^D with each image tested by member_Hab.
Verdict check_Hab(const DiskSelfMap& phi, const AdmissiblePair& pair, const Settings& settings = {});

/// Invariance of z^n H^p_{α,β} under φ = z^k.
///
/// Criterion: holds iff (n = 1 and k ≠ 2) or n ≥ 2. Direct leg: images of
/// z^n (α + βz), z^{n+2}, ..., z^{n+D} tested by member_J_Hab with J = z^n.
/// Throws HypothesisViolated when β = 0, n = 0 or k = 0.
Verdict check_zn_Hab_monomial(std::size_t n, std::size_t k, const AdmissiblePair& pair,
                              const Settings& settings = {});

/// Invariance of S H^p_{α,β} with S(z) = exp(λ (z + 1) / (z - 1)).
///
/// Criterion: when λ equals β / (2α) (which must be real and positive) the
/// subspace is invariant iff φ(0) = 0 or φ'(0) = 0, otherwise iff φ is the
/// identity. Direct leg: the origin identity g(0)β = g'(0)α for
/// g = (S∘φ / S)(f∘φ) over the battery f ∈ {α + βz, z², ..., z^D}.
/// The evidence also carries a grid probe of sup |S∘φ / S| per circle.
/// Throws HypothesisViolated when λ <= 0.
Verdict check_atomic_singular_Hab(double lambda, const AdmissiblePair& pair, const DiskSelfMap& phi,
                                  const Settings& settings = {});

/// Invariance of J H^p_{α,β}.
///
/// When J(0) ≠ 0 the criterion holds iff φ maps every zero of J into the zero
/// set (within 1e-9) and J∘φ ∈ z² H^∞. When J has a zero of order n at the
/// origin the criterion tests the sufficient condition J∘φ ∈ z^{n+2} H^∞ and
/// reports inconclusive when it fails. Direct leg: J·{α + βz, z², ..., z^D}
/// images tested by member_J_Hab. The identity map is always invariant.
/// Throws CollapseDetected when J(0) ≠ 0 and J H_{α,β} = H_{1,0}.
Verdict check_J_Hab(const InnerFunction& J, const AdmissiblePair& pair, const DiskSelfMap& phi,
                    const Settings& settings = {});

/// Invariance of θH^p: θ∘φ / θ must be analytic and bounded by 1.
///
/// For pure Blaschke θ the zero multiplicity comparison decides and the sup
/// bound is recorded as a consistency check. Direct leg: θ·{1, z, ..., z^D}
/// images tested by member_theta_Hp. Inconclusive propagates from the quotient.
Verdict check_beurling(const InnerFunction& theta, const DiskSelfMap& phi, const Settings& settings = {});

/// For an elliptic automorphism with interior fixed point w, θH^p is invariant
/// iff θ∘φ / θ is a unimodular constant. The evidence "constant" holds the
/// sampled value and "expected" holds φ'(w)^m with m the multiplicity of θ at w
/// (1 when θ(w) ≠ 0). Throws HypothesisViolated when φ is not elliptic.
Verdict elliptic_constant(const InnerFunction& theta, const DiskSelfMap& phi, const Settings& settings = {});

/// Truncated orbit Blaschke product B with zeros φ_m(z), m = 0..M, for a
/// parabolic automorphism. The criterion checks that φ maps each of the first M
/// orbit points into the zero set; the image of the last point leaves the
/// truncation and is reported as the truncation defect. The direct leg tests
/// C_φ(B z^j) for divisibility by the product over the first M points.
/// Throws HypothesisViolated unless φ is parabolic and the orbit is summable.
Verdict parabolic_orbit_subspace(const DiskSelfMap& phi, cplx z, std::size_t M, const Settings& settings = {});

/// Inner function with simple zeros at the orbit points φ_m(z), m = 0..M.
InnerFunction orbit_blaschke(const DiskSelfMap& phi, cplx z, std::size_t M);

}  // namespace hil
