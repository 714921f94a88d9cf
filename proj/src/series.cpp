#include "hil/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hil/norms.hpp"

namespace hil {
namespace {

constexpr std::size_t kExactComposeCap = 1024;

std::optional<double> add_tails(std::optional<double> a, std::optional<double> b) {
    if (!a || !b) return std::nullopt;
    return *a + *b;
}

std::optional<double> finite_or_unknown(double v) {
    if (!std::isfinite(v)) return std::nullopt;
    return v;
}

/// sum_{k >= from} |c_k| r^k
double suffix_majorant(std::span<const cplx> c, std::size_t from, double r) {
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > from;) acc = acc * r + std::abs(c[k]);
    return from < c.size() ? acc * std::pow(r, static_cast<double>(from)) : 0.0;
}

/// Order of a binary result: exact operands are padded with zeros and never truncate
/// their partner.
std::size_t shared_order(const TaylorSeries& f, const TaylorSeries& g, std::size_t exact_both) {
    if (f.is_exact() && g.is_exact()) return exact_both;
    if (f.is_exact()) return g.order();
    if (g.is_exact()) return f.order();
    return std::min(f.order(), g.order());
}

std::vector<cplx> truncated_product(std::span<const cplx> a, std::span<const cplx> b, std::size_t order) {
    std::vector<cplx> out(order + 1);
    for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
        if (a[i] == cplx{}) continue;
        const std::size_t jmax = std::min(b.size() - 1, order - i);
        for (std::size_t j = 0; j <= jmax; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

std::vector<double> truncated_product(std::span<const double> a, std::span<const double> b, std::size_t order) {
    std::vector<double> out(order + 1);
    for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
        if (a[i] == 0.0) continue;
        const std::size_t jmax = std::min(b.size() - 1, order - i);
        for (std::size_t j = 0; j <= jmax; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

}  // namespace

TaylorSeries::TaylorSeries(std::vector<cplx> coeffs) : TaylorSeries(std::move(coeffs), 0.0, 1.0) {}

TaylorSeries::TaylorSeries(std::vector<cplx> coeffs, std::optional<double> tail_bound, double domain_radius)
    : coeffs_(std::move(coeffs)), tail_(tail_bound), radius_(domain_radius) {
    if (coeffs_.empty()) coeffs_.push_back(cplx{});
    if (!(radius_ > 0.0 && radius_ <= 1.0)) throw InvalidInput("domain_radius must lie in (0, 1]");
    if (tail_ && !(*tail_ >= 0.0)) throw InvalidInput("tail_bound must be nonnegative");
    for (const auto& c : coeffs_)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw InvalidInput("non-finite coefficient");
}

TaylorSeries TaylorSeries::constant(cplx c) { return TaylorSeries(std::vector<cplx>{c}); }

TaylorSeries TaylorSeries::monomial(std::size_t k, cplx c) {
    std::vector<cplx> v(k + 1);
    v[k] = c;
    return TaylorSeries(std::move(v));
}

std::size_t TaylorSeries::degree() const noexcept {
    for (std::size_t k = coeffs_.size(); k-- > 0;)
        if (coeffs_[k] != cplx{}) return k;
    return 0;
}

std::size_t TaylorSeries::vanishing_order(double tol) const noexcept {
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        if (std::abs(coeffs_[k]) > tol) return k;
    return coeffs_.size();
}

cplx TaylorSeries::operator()(cplx z) const {
    if (std::abs(z) > radius_ * (1.0 + 1e-15))
        throw OutOfDomain("evaluation point outside the certified disk");
    return eval_unchecked(z);
}

cplx TaylorSeries::eval_unchecked(cplx z) const noexcept {
    cplx acc{};
    for (std::size_t k = coeffs_.size(); k-- > 0;) acc = acc * z + coeffs_[k];
    return acc;
}

double TaylorSeries::majorant(double r) const noexcept { return suffix_majorant(coeffs_, 0, r); }

TaylorSeries TaylorSeries::truncated(std::size_t order) const {
    if (order >= this->order()) return *this;
    std::vector<cplx> c(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(order + 1));
    std::optional<double> tail;
    if (tail_) tail = finite_or_unknown(*tail_ + suffix_majorant(coeffs_, order + 1, radius_));
    return TaylorSeries(std::move(c), tail, radius_);
}

TaylorSeries TaylorSeries::with_tail(std::optional<double> tail) const { return TaylorSeries(coeffs_, tail, radius_); }

TaylorSeries TaylorSeries::scaled(cplx c) const {
    std::vector<cplx> v(coeffs_);
    for (auto& x : v) x *= c;
    std::optional<double> tail;
    if (tail_) tail = *tail_ * std::abs(c);
    return TaylorSeries(std::move(v), tail, radius_);
}

TaylorSeries operator+(const TaylorSeries& f, const TaylorSeries& g) {
    const double R = std::min(f.domain_radius(), g.domain_radius());
    const std::size_t N = shared_order(f, g, std::max(f.order(), g.order()));
    std::vector<cplx> c(N + 1);
    for (std::size_t k = 0; k <= N; ++k) c[k] = f[k] + g[k];
    auto tail = add_tails(f.tail_bound(), g.tail_bound());
    if (tail) *tail += suffix_majorant(f.coeffs(), N + 1, R) + suffix_majorant(g.coeffs(), N + 1, R);
    return TaylorSeries(std::move(c), tail ? finite_or_unknown(*tail) : std::nullopt, R);
}

TaylorSeries operator-(const TaylorSeries& f, const TaylorSeries& g) { return f + g.scaled(-1.0); }

TaylorSeries operator*(const TaylorSeries& f, const TaylorSeries& g) {
    const double R = std::min(f.domain_radius(), g.domain_radius());
    const std::size_t N = shared_order(f, g, f.order() + g.order());
    auto c = truncated_product(f.coeffs(), g.coeffs(), N);
    auto tf = f.tail_bound();
    auto tg = g.tail_bound();
    if (!tf || !tg) return TaylorSeries(std::move(c), std::nullopt, R);

    // Dropped pairs i + j > N, bounded through suffix sums of |g_j| R^j.
    const auto fc = f.coeffs();
    const auto gc = g.coeffs();
    std::vector<double> gs(gc.size() + 1, 0.0);
    for (std::size_t j = gc.size(); j-- > 0;)
        gs[j] = gs[j + 1] + std::abs(gc[j]) * std::pow(R, static_cast<double>(j));
    double dropped = 0.0;
    for (std::size_t i = 0; i < fc.size(); ++i) {
        const std::size_t from = i > N ? 0 : N + 1 - i;
        if (from >= gs.size()) continue;
        dropped += std::abs(fc[i]) * std::pow(R, static_cast<double>(i)) * gs[from];
    }
    const double af = f.majorant(R);
    const double ag = g.majorant(R);
    const double tail = dropped + af * *tg + ag * *tf + *tf * *tg;
    return TaylorSeries(std::move(c), finite_or_unknown(tail), R);
}

TaylorSeries series_compose(const TaylorSeries& f, const TaylorSeries& g, std::optional<double> range_bound) {
    if (!(std::abs(g[0]) < 1.0)) throw RangeViolation("inner series has |g(0)| >= 1");
    const double Rg = g.domain_radius();
    const double Rf = f.domain_radius();

    double range;
    if (range_bound) {
        range = *range_bound;
    } else {
        range = circle_max([&g](cplx z) { return g.eval_unchecked(z); }, Rg, 4096).value;
        if (g.tail_bound()) range += *g.tail_bound();
    }
    if (range > Rf * (1.0 + 1e-9)) throw RangeViolation("range of the inner series leaves the certified disk");

    const std::size_t df = f.degree();
    const std::size_t dg = g.degree();
    std::size_t N;
    if (f.is_exact() && g.is_exact())
        N = std::min(df * dg, std::max({f.order(), g.order(), kExactComposeCap}));
    else if (f.is_exact())
        N = g.order();
    else if (g.is_exact())
        N = f.order();
    else
        N = std::min(f.order(), g.order());

    const auto fc = f.coeffs();
    const auto gc = g.coeffs();
    const std::size_t top = f.is_exact() ? df : f.order();
    std::vector<cplx> acc{fc[top]};
    for (std::size_t k = top; k-- > 0;) {
        acc = truncated_product(acc, gc, N);
        acc[0] += fc[k];
    }
    acc.resize(N + 1);

    const auto tf = f.tail_bound();
    const auto tg = g.tail_bound();
    if (!tf || !tg) return TaylorSeries(std::move(acc), std::nullopt, Rg);

    double tail = 0.0;
    const double rho = range;
    if (*tf > 0.0) {
        if (rho > Rf * (1.0 + 1e-9)) return TaylorSeries(std::move(acc), std::nullopt, Rg);
        tail += *tf;
    }
    if (*tg > 0.0) {
        double lip = 0.0;
        for (std::size_t k = top; k >= 1; --k) lip = lip * rho + static_cast<double>(k) * std::abs(fc[k]);
        tail += lip * *tg;
    }
    if (!(f.is_exact() && g.is_exact() && df * dg <= N)) {
        std::vector<double> fm(top + 1), gm(gc.size());
        for (std::size_t k = 0; k <= top; ++k) fm[k] = std::abs(fc[k]);
        for (std::size_t k = 0; k < gc.size(); ++k) gm[k] = std::abs(gc[k]);
        const double G = g.majorant(Rg);
        double full = 0.0;
        for (std::size_t k = top + 1; k-- > 0;) full = full * G + fm[k];
        std::vector<double> macc{fm[top]};
        for (std::size_t k = top; k-- > 0;) {
            macc = truncated_product(macc, gm, N);
            macc[0] += fm[k];
        }
        double kept = 0.0;
        for (std::size_t j = macc.size(); j-- > 0;) kept = kept * Rg + macc[j];
        tail += std::max(0.0, full - kept) + 1e-12 * full;
    }
    return TaylorSeries(std::move(acc), finite_or_unknown(tail), Rg);
}

cplx derivative_at_zero(const TaylorSeries& f, std::size_t k) {
    if (k > f.order()) throw OrderExceeded("derivative order exceeds truncation order");
    return std::tgamma(static_cast<double>(k) + 1.0) * f[k];
}

TaylorSeries derivative(const TaylorSeries& f) {
    const std::size_t N = f.order();
    if (N == 0) return TaylorSeries(std::vector<cplx>{cplx{}}, f.is_exact() ? std::optional<double>(0.0) : std::nullopt,
                                    f.domain_radius());
    std::vector<cplx> c(N);
    for (std::size_t k = 1; k <= N; ++k) c[k - 1] = static_cast<double>(k) * f[k];
    return TaylorSeries(std::move(c), f.is_exact() ? std::optional<double>(0.0) : std::nullopt, f.domain_radius());
}

TaylorSeries antiderivative(const TaylorSeries& f) {
    const std::size_t N = f.order();
    std::vector<cplx> c(N + 2);
    for (std::size_t k = 0; k <= N; ++k) c[k + 1] = f[k] / static_cast<double>(k + 1);
    std::optional<double> tail;
    if (f.tail_bound()) tail = *f.tail_bound() * f.domain_radius();
    return TaylorSeries(std::move(c), tail, f.domain_radius());
}

TaylorSeries series_divide(const TaylorSeries& f, const TaylorSeries& g, std::size_t exact_order) {
    const cplx g0 = g[0];
    if (std::abs(g0) == 0.0) throw InvalidInput("series division needs g(0) != 0");
    const double R = std::min(f.domain_radius(), g.domain_radius());
    const std::size_t N = shared_order(f, g, std::max({f.order(), g.order(), exact_order}));
    std::vector<cplx> q(N + 1);
    for (std::size_t k = 0; k <= N; ++k) {
        cplx s = f[k];
        const std::size_t jmax = std::min(k, g.order());
        for (std::size_t j = 1; j <= jmax; ++j) s -= g[j] * q[k - j];
        q[k] = s / g0;
    }
    if (f.is_exact() && g.is_exact()) {
        // Exact when q (a polynomial of degree deg f - deg g) times g reproduces f.
        const std::size_t df = f.degree();
        const std::size_t dg = g.degree();
        if (df >= dg) {
            std::vector<cplx> qp(q.begin(), q.begin() + static_cast<std::ptrdiff_t>(std::min(N, df - dg) + 1));
            const auto back = truncated_product(qp, g.coeffs(), df + dg);
            double scale = 0.0, err = 0.0;
            for (std::size_t k = 0; k < back.size(); ++k) {
                scale = std::max(scale, std::abs(f[k]));
                err = std::max(err, std::abs(back[k] - f[k]));
            }
            if (err <= 1e-12 * std::max(scale, 1.0) && qp.size() <= N + 1) return TaylorSeries(std::move(qp));
        }
    }
    return TaylorSeries(std::move(q), std::nullopt, R);
}

TaylorSeries series_exp(const TaylorSeries& h) {
    const std::size_t N = h.order();
    std::vector<cplx> e(N + 1);
    e[0] = std::exp(h[0]);
    for (std::size_t k = 1; k <= N; ++k) {
        cplx s{};
        for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * h[j] * e[k - j];
        e[k] = s / static_cast<double>(k);
    }
    const bool constant = h.is_exact() && h.degree() == 0;
    return TaylorSeries(std::move(e), constant ? std::optional<double>(0.0) : std::nullopt, h.domain_radius());
}

double ibp_residual(const TaylorSeries& u, const TaylorSeries& v, std::size_t n, cplx z) {
    if (v.order() < n || u.order() + 1 < n) throw OrderExceeded("orders insufficient for the requested derivatives");
    if (n == 0) return 0.0;
    std::vector<TaylorSeries> du{u}, dv{v};
    for (std::size_t j = 1; j <= n; ++j) {
        du.push_back(derivative(du.back()));
        dv.push_back(derivative(dv.back()));
    }
    const cplx left = antiderivative(u * dv[n])(z);
    cplx boundary{};
    for (std::size_t j = 1; j <= n; ++j) {
        const TaylorSeries term = du[j - 1] * dv[n - j];
        const double sign = (j % 2 == 1) ? 1.0 : -1.0;
        boundary += sign * (term(z) - term[0]);
    }
    const double sign_n = (n % 2 == 0) ? 1.0 : -1.0;
    const cplx right = boundary + sign_n * antiderivative(du[n] * v)(z);
    return std::abs(left - right);
}

std::vector<cplx> taylor_shift(const TaylorSeries& f, cplx a, std::size_t k) {
    if (std::abs(a) > f.domain_radius()) throw OutOfDomain("re-expansion centre outside the certified disk");
    std::vector<cplx> c(f.coeffs().begin(), f.coeffs().end());
    const std::size_t n = c.size();
    std::vector<cplx> out;
    out.reserve(k + 1);
    // Repeated synthetic division by (z - a): the j-th remainder is f^{(j)}(a)/j!.
    for (std::size_t j = 0; j <= k; ++j) {
        if (j >= n) {
            out.push_back(cplx{});
            continue;
        }
        for (std::size_t i = n - 1; i-- > j;) c[i] += a * c[i + 1];
        out.push_back(c[j]);
    }
    return out;
}

}  // namespace hil
