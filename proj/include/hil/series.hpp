#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hil/errors.hpp"

namespace hil {

/// Truncated power series sum_k coeffs[k] z^k certified on |z| <= domain_radius.
///
/// tail_bound bounds |f(z) - partial_sum(z)| on the closed sub-disk. An empty
/// tail_bound means "unknown" and is contagious through every operation.
class TaylorSeries {
public:
    TaylorSeries() : coeffs_{cplx{0.0}} {}

    /// Exact polynomial (tail bound 0, domain radius 1).
    explicit TaylorSeries(std::vector<cplx> coeffs);
    TaylorSeries(std::vector<cplx> coeffs, std::optional<double> tail_bound, double domain_radius);

    static TaylorSeries constant(cplx c);
    static TaylorSeries monomial(std::size_t k, cplx c = 1.0);
    static TaylorSeries identity() { return monomial(1); }

    std::size_t order() const noexcept { return coeffs_.size() - 1; }
    std::span<const cplx> coeffs() const noexcept { return coeffs_; }
    cplx operator[](std::size_t k) const noexcept { return k < coeffs_.size() ? coeffs_[k] : cplx{}; }
    std::optional<double> tail_bound() const noexcept { return tail_; }
    double domain_radius() const noexcept { return radius_; }

    /// True when the representation is a polynomial with zero tail.
    bool is_exact() const noexcept { return tail_ && *tail_ == 0.0; }

    /// Index of the last nonzero coefficient (0 for the zero series).
    std::size_t degree() const noexcept;

    /// Smallest k with coeffs[k] != 0; order()+1 for the zero series.
    std::size_t vanishing_order(double tol = 0.0) const noexcept;

    /// Horner evaluation; throws OutOfDomain when |z| exceeds domain_radius.
    cplx operator()(cplx z) const;
    /// Horner evaluation without the domain check.
    cplx eval_unchecked(cplx z) const noexcept;

    /// sum_k |c_k| r^k, an upper bound for |partial sum| on |z| <= r.
    double majorant(double r) const noexcept;

    TaylorSeries truncated(std::size_t order) const;
    TaylorSeries with_tail(std::optional<double> tail) const;
    TaylorSeries scaled(cplx c) const;

private:
    std::vector<cplx> coeffs_;
    std::optional<double> tail_ = 0.0;
    double radius_ = 1.0;
};

TaylorSeries operator+(const TaylorSeries& f, const TaylorSeries& g);
TaylorSeries operator-(const TaylorSeries& f, const TaylorSeries& g);
TaylorSeries operator*(const TaylorSeries& f, const TaylorSeries& g);

inline TaylorSeries series_add(const TaylorSeries& f, const TaylorSeries& g) { return f + g; }
inline TaylorSeries series_mul(const TaylorSeries& f, const TaylorSeries& g) { return f * g; }

/// Coefficients of f∘g to the shared order.
///
/// range_bound, when given, is a caller-certified bound for sup |g| on its
/// domain; otherwise the range is estimated on the outermost default-grid circle.
/// Throws RangeViolation when g leaves the certified domain of f.
TaylorSeries series_compose(const TaylorSeries& f, const TaylorSeries& g,
                            std::optional<double> range_bound = std::nullopt);

/// k! * coeffs[k]; throws OrderExceeded when k > order.
cplx derivative_at_zero(const TaylorSeries& f, std::size_t k);

/// Term-by-term derivative (order drops by one, minimum 0).
TaylorSeries derivative(const TaylorSeries& f);

/// V f(z) = integral from 0 to z; order grows by one.
TaylorSeries antiderivative(const TaylorSeries& f);

/// Series division f / g; requires g(0) != 0. The tail is unknown unless the
/// division is exact within the truncation. exact_order is the truncation used
/// when both operands are exact polynomials.
TaylorSeries series_divide(const TaylorSeries& f, const TaylorSeries& g, std::size_t exact_order = 256);

/// exp(h) as a truncated series; the tail is unknown unless h is constant.
TaylorSeries series_exp(const TaylorSeries& h);

/// |LHS - RHS| of the n-fold integration-by-parts identity at z, both sides
/// integrated from 0 to z by exact series integration.
double ibp_residual(const TaylorSeries& u, const TaylorSeries& v, std::size_t n, cplx z);

/// Taylor coefficients of f around a (re-expansion), up to order k.
std::vector<cplx> taylor_shift(const TaylorSeries& f, cplx a, std::size_t k);

}  // namespace hil
