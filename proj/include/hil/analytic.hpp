#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hil/norms.hpp"
#include "hil/series.hpp"

namespace hil {

/// Taylor coefficients of a function around a centre, with the size of the
/// function on the Cauchy contour used to produce them (for relative tests).
struct Jet {
    cplx centre;
    std::vector<cplx> coeffs;
    double scale = 0.0;
    double contour_radius = 0.0;

    /// Index of the first coefficient above tol * scale; coeffs.size() if none.
    std::size_t vanishing_order(double tol) const noexcept;
};

/// A holomorphic function on the disk known pointwise, optionally with a Taylor
/// series at the origin and a dedicated log-modulus evaluator.
class AnalyticFunction {
public:
    AnalyticFunction() = default;
    explicit AnalyticFunction(PointFunction f, std::optional<TaylorSeries> series = std::nullopt,
                              LogAbsFunction log_abs = {});

    static AnalyticFunction from_series(const TaylorSeries& s);
    static AnalyticFunction constant(cplx c);

    cplx operator()(cplx z) const { return f_(z); }
    double log_abs(cplx z) const;

    const std::optional<TaylorSeries>& series() const noexcept { return series_; }
    const PointFunction& pointwise() const noexcept { return f_; }
    LogAbsFunction log_abs_function() const;

    /// Coefficients 0..k around a. At the origin the series is used when present;
    /// elsewhere a 64-node Cauchy integral on the circle of radius
    /// min(0.25, (1 - |a|) / 2) about a.
    Jet jet(cplx a, std::size_t k) const;

    AnalyticFunction operator*(const AnalyticFunction& g) const;

private:
    PointFunction f_;
    std::optional<TaylorSeries> series_;
    LogAbsFunction log_abs_;
};

/// Integral of f along the straight segment from a to b with composite
/// Gauss-Legendre panels, geometrically refined towards b.
cplx segment_integral(const PointFunction& f, cplx a, cplx b, std::size_t refinements = 40);

}  // namespace hil
