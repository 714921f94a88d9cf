#pragma once

#include <Eigen/Dense>

#include "hil/analytic.hpp"
#include "hil/disk_map.hpp"
#include "hil/verdict.hpp"

namespace hil {

/// C_φ f = f ∘ φ.
class CompositionOperator {
public:
    explicit CompositionOperator(DiskSelfMap phi);

    const DiskSelfMap& phi() const noexcept { return phi_; }
    /// sup |φ| <= 1 - 1e-6 over the closed disk.
    bool strict() const noexcept { return strict_; }

    /// Series of f ∘ φ. order = 0 picks max(f.order(), 256) when φ has no exact series.
    TaylorSeries apply(const TaylorSeries& f, std::size_t order = 0) const;
    AnalyticFunction apply(const AnalyticFunction& f) const;

private:
    DiskSelfMap phi_;
    bool strict_;
};

/// Finite section of C_φ in the monomial basis: column j holds the coefficients
/// 0..N-1 of φ^j.
struct OperatorMatrix {
    std::size_t dimension = 0;
    Eigen::MatrixXcd entries;

    /// Coefficients 0..N-1 of f ∘ φ for a polynomial f of degree < N.
    std::vector<cplx> apply(const std::vector<cplx>& f) const;
};

/// Throws InvalidInput unless 1 <= N <= 1024.
OperatorMatrix matrix_truncation(const CompositionOperator& C, std::size_t N);

/// Battery estimate of ‖C_φ‖ against (1 + |φ(0)|) / (1 - |φ(0)|) for the p-th power.
/// Norms are boundary means on the unit circle; for p < 1 the ratios are reported
/// and the outcome is inconclusive.
Verdict norm_bound_check(const CompositionOperator& C, const HardyExponent& p, const Settings& settings = {});

/// Geometric decay of the singular values of the N x N section at a rate no worse
/// than sup |φ|. Throws HypothesisViolated unless the strict flag is set.
Verdict compactness_probe(const CompositionOperator& C, std::size_t N = 32, const Settings& settings = {});

/// C_φ : H²_a -> H²_b is invertible iff φ is an automorphism with φ(b) = a.
Verdict invertibility_Ha_Hb(const DiskSelfMap& phi, cplx a, cplx b, const Settings& settings = {});

}  // namespace hil
