#include "hil/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hil {

HardyExponent::HardyExponent(double p) : p_(p) {
    if (!(p > 0.0) || !std::isfinite(p)) throw InvalidInput("Hardy exponent must be a finite p > 0");
}

double log_mean_exp(const std::vector<double>& x) {
    double top = -std::numeric_limits<double>::infinity();
    for (double v : x) top = std::max(top, v);
    if (x.empty() || top == -std::numeric_limits<double>::infinity()) return top;
    if (top == std::numeric_limits<double>::infinity()) return top;
    double s = 0.0;
    for (double v : x) s += std::exp(v - top);
    return top + std::log(s / static_cast<double>(x.size()));
}

NormEstimate hardy_norm(const PointFunction& f, const HardyExponent& p, const DiskGrid& grid) {
    NormEstimate est;
    const double pv = p.value();
    const std::size_t n = grid.angular_count();
    double best = -1.0;
    for (double r : grid.radii()) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += std::pow(std::abs(f(std::polar(r, grid.angle(j)))), pv);
        const double mean = acc / static_cast<double>(n);
        est.circle_means.push_back(mean);
        if (mean > best) {
            best = mean;
            est.attained_radius = r;
        }
    }
    est.value = std::pow(best, 1.0 / pv);
    return est;
}

NormEstimate hardy_norm(const TaylorSeries& f, const HardyExponent& p, const DiskGrid& grid) {
    if (grid.outer_radius() > f.domain_radius()) throw OutOfDomain("grid radius exceeds the certified disk");
    return hardy_norm([&f](cplx z) { return f.eval_unchecked(z); }, p, grid);
}

LogNormEstimate log_hardy_norm(const LogAbsFunction& log_abs, const HardyExponent& p, const DiskGrid& grid) {
    LogNormEstimate est;
    const double pv = p.value();
    const std::size_t n = grid.angular_count();
    double best = -std::numeric_limits<double>::infinity();
    est.attained_radius = grid.radii().front();
    std::vector<double> vals(n);
    for (double r : grid.radii()) {
        for (std::size_t j = 0; j < n; ++j) vals[j] = pv * log_abs(std::polar(r, grid.angle(j)));
        const double lm = log_mean_exp(vals);
        est.log_circle_means.push_back(lm);
        if (lm > best) {
            best = lm;
            est.attained_radius = r;
        }
    }
    est.log_value = best / pv;
    return est;
}

SupEstimate circle_max(const PointFunction& f, double r, std::size_t n) {
    SupEstimate est{0.0, r, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
        const double v = std::abs(f(std::polar(r, t)));
        if (v > est.value) {
            est.value = v;
            est.angle = t;
        }
    }
    return est;
}

SupEstimate sup_norm_estimate(const PointFunction& f, const DiskGrid& grid) {
    return circle_max(f, grid.outer_radius(), grid.angular_count());
}

SupEstimate sup_norm_estimate(const TaylorSeries& f, const DiskGrid& grid) {
    if (grid.outer_radius() > f.domain_radius()) throw OutOfDomain("grid radius exceeds the certified disk");
    return sup_norm_estimate([&f](cplx z) { return f.eval_unchecked(z); }, grid);
}

}  // namespace hil
