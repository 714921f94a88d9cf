#include "hil/analytic.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>

namespace hil {

namespace {
constexpr std::size_t kCauchyNodes = 64;
}

std::size_t Jet::vanishing_order(double tol) const noexcept {
    for (std::size_t j = 0; j < coeffs.size(); ++j)
        if (std::abs(coeffs[j]) * std::pow(contour_radius, static_cast<double>(j)) > tol * scale) return j;
    return coeffs.size();
}

AnalyticFunction::AnalyticFunction(PointFunction f, std::optional<TaylorSeries> series, LogAbsFunction log_abs)
    : f_(std::move(f)), series_(std::move(series)), log_abs_(std::move(log_abs)) {
    if (!f_) throw InvalidInput("analytic function needs a pointwise evaluator");
}

AnalyticFunction AnalyticFunction::from_series(const TaylorSeries& s) {
    return AnalyticFunction([s](cplx z) { return s.eval_unchecked(z); }, s);
}

AnalyticFunction AnalyticFunction::constant(cplx c) { return from_series(TaylorSeries::constant(c)); }

double AnalyticFunction::log_abs(cplx z) const {
    if (log_abs_) return log_abs_(z);
    return std::log(std::abs(f_(z)));
}

LogAbsFunction AnalyticFunction::log_abs_function() const {
    if (log_abs_) return log_abs_;
    auto f = f_;
    return [f](cplx z) { return std::log(std::abs(f(z))); };
}

Jet AnalyticFunction::jet(cplx a, std::size_t k) const {
    if (!(std::abs(a) < 1.0)) throw OutOfDomain("jet centre must lie in the open disk");
    Jet jet;
    jet.centre = a;
    jet.contour_radius = std::min(0.25, 0.5 * (1.0 - std::abs(a)));
    const double rho = jet.contour_radius;
    std::vector<cplx> samples(kCauchyNodes);
    for (std::size_t m = 0; m < kCauchyNodes; ++m) {
        const cplx w = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m) / kCauchyNodes);
        samples[m] = f_(a + rho * w);
        jet.scale = std::max(jet.scale, std::abs(samples[m]));
    }
    const bool use_series = series_ && (a == cplx{} || series_->is_exact()) && k <= series_->order();
    if (use_series) {
        if (a == cplx{}) {
            jet.coeffs.assign(series_->coeffs().begin(), series_->coeffs().begin() + static_cast<std::ptrdiff_t>(k + 1));
        } else {
            jet.coeffs = taylor_shift(*series_, a, k);
        }
        return jet;
    }
    jet.coeffs.resize(k + 1);
    for (std::size_t j = 0; j <= k; ++j) {
        cplx acc{};
        for (std::size_t m = 0; m < kCauchyNodes; ++m) {
            const double t = -2.0 * std::numbers::pi * static_cast<double>((m * j) % kCauchyNodes) / kCauchyNodes;
            acc += samples[m] * std::polar(1.0, t);
        }
        jet.coeffs[j] = acc / static_cast<double>(kCauchyNodes) / std::pow(rho, static_cast<double>(j));
    }
    return jet;
}

AnalyticFunction AnalyticFunction::operator*(const AnalyticFunction& g) const {
    std::optional<TaylorSeries> s;
    if (series_ && g.series_) s = *series_ * *g.series_;
    auto f1 = f_;
    auto f2 = g.f_;
    auto l1 = log_abs_function();
    auto l2 = g.log_abs_function();
    return AnalyticFunction([f1, f2](cplx z) { return f1(z) * f2(z); }, s,
                            [l1, l2](cplx z) { return l1(z) + l2(z); });
}

cplx segment_integral(const PointFunction& f, cplx a, cplx b, std::size_t refinements) {
    using boost::math::quadrature::gauss;
    const cplx d = b - a;
    auto along = [&](double s) { return f(a + s * d) * d; };
    cplx total{};
    double lo = 0.0;
    double width = 0.5;
    for (std::size_t level = 0; level < refinements; ++level) {
        total += gauss<double, 20>::integrate(along, lo, lo + width);
        lo += width;
        width *= 0.5;
    }
    total += gauss<double, 20>::integrate(along, lo, 1.0);
    return total;
}

}  // namespace hil
