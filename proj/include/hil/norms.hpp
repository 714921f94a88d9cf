#pragma once

#include <functional>
#include <vector>

#include "hil/series.hpp"
#include "hil/settings.hpp"

namespace hil {

/// Exponent p of H^p. For p < 1 the "norm" is a quasi-norm.
class HardyExponent {
public:
    explicit HardyExponent(double p);
    double value() const noexcept { return p_; }

private:
    double p_;
};

struct NormEstimate {
    double value = 0.0;             // (sup_r mean |f|^p)^(1/p)
    double attained_radius = 0.0;
    std::vector<double> circle_means;  // mean |f|^p per grid radius
};

struct LogNormEstimate {
    double log_value = 0.0;         // log of the norm
    double attained_radius = 0.0;
    std::vector<double> log_circle_means;  // log mean |f|^p per radius
};

struct SupEstimate {
    double value = 0.0;
    double radius = 0.0;
    double angle = 0.0;
};

using PointFunction = std::function<cplx(cplx)>;
using LogAbsFunction = std::function<double(cplx)>;

/// Trapezoidal integral means on every grid circle, sup over radii.
NormEstimate hardy_norm(const TaylorSeries& f, const HardyExponent& p, const DiskGrid& grid);
NormEstimate hardy_norm(const PointFunction& f, const HardyExponent& p, const DiskGrid& grid);

/// Same quantity computed from log|f| with log-sum-exp reductions.
LogNormEstimate log_hardy_norm(const LogAbsFunction& log_abs, const HardyExponent& p,
                               const DiskGrid& grid);

/// Max of |f| on the outermost grid circle (maximum modulus principle).
SupEstimate sup_norm_estimate(const TaylorSeries& f, const DiskGrid& grid);
SupEstimate sup_norm_estimate(const PointFunction& f, const DiskGrid& grid);

/// Max of |f| on the circle of radius r sampled at n equally spaced angles.
SupEstimate circle_max(const PointFunction& f, double r, std::size_t n);

/// log(mean(exp(x))) computed stably; -inf for an all -inf input.
double log_mean_exp(const std::vector<double>& x);

}  // namespace hil
