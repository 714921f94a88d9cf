#include "hil/inner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace hil {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kBoundarySamples = 4096;

cplx unit(double t) { return std::polar(1.0, t); }

/// h(z) = -Σ c (e^{it} + z) / (e^{it} - z), so the singular factor is exp(h).
cplx singular_exponent(const std::vector<SingularAtom>& atoms, cplx z) {
    cplx h{};
    for (const auto& at : atoms) {
        const cplx e = unit(at.t);
        h -= at.c * (e + z) / (e - z);
    }
    return h;
}

TaylorSeries singular_exponent_series(const std::vector<SingularAtom>& atoms, std::size_t order) {
    std::vector<cplx> h(order + 1);
    for (const auto& at : atoms) {
        h[0] -= at.c;
        for (std::size_t k = 1; k <= order; ++k) h[k] -= 2.0 * at.c * unit(-static_cast<double>(k) * at.t);
    }
    return TaylorSeries(std::move(h), std::nullopt, 1.0);
}

/// (conj(a)/|a|) (a - z) / (1 - conj(a) z) as a series with its geometric tail at radius 1.
TaylorSeries blaschke_factor_series(cplx a, std::size_t order) {
    const double r = std::abs(a);
    const cplx u = std::conj(a) / r;
    std::vector<cplx> c(order + 1);
    c[0] = r;
    cplx pw = 1.0;
    for (std::size_t k = 1; k <= order; ++k) {
        c[k] = u * pw * (r * r - 1.0);
        pw *= std::conj(a);
    }
    return TaylorSeries(std::move(c), std::pow(r, static_cast<double>(order)) * (1.0 + r), 1.0);
}

/// The list of zeros of θ including the origin factor.
std::vector<ZeroEntry> all_zeros(const InnerFunction& theta) {
    std::vector<ZeroEntry> out;
    if (theta.origin_multiplicity() > 0) out.push_back({cplx{}, theta.origin_multiplicity()});
    for (const auto& z : theta.blaschke_zeros()) out.push_back({z.a, z.mult});
    return out;
}

void merge_zero(std::vector<ZeroEntry>& zs, cplx p, std::size_t m, double tol) {
    for (auto& z : zs)
        if (std::abs(z.point - p) <= tol) {
            z.mult += m;
            return;
        }
    zs.push_back({p, m});
}

void sort_zeros(std::vector<ZeroEntry>& zs) {
    std::sort(zs.begin(), zs.end(), [](const ZeroEntry& x, const ZeroEntry& y) {
        const double ax = std::abs(x.point), ay = std::abs(y.point);
        if (ax != ay) return ax < ay;
        return std::arg(x.point) < std::arg(y.point);
    });
}

}  // namespace

std::size_t ZeroReport::multiplicity_at(cplx alpha, double tol) const noexcept {
    std::size_t m = 0;
    for (const auto& z : zeros)
        if (std::abs(z.point - alpha) <= tol) m += z.mult;
    return m;
}

InnerFunction::InnerFunction(cplx lambda, std::size_t m0, std::vector<BlaschkeZero> zeros,
                             std::vector<SingularAtom> atoms)
    : lambda_(lambda), m0_(m0) {
    if (!(std::abs(std::abs(lambda) - 1.0) <= 1e-12)) throw InvalidInput("inner constant must be unimodular");
    for (const auto& z : zeros) {
        if (!(std::abs(z.a) < 1.0)) throw OutOfDisk("Blaschke zero outside the open disk");
        if (z.mult == 0) throw InvalidInput("Blaschke zero multiplicity must be positive");
        if (z.a == cplx{}) {
            m0_ += z.mult;
            continue;
        }
        auto it = std::find_if(zeros_.begin(), zeros_.end(), [&](const BlaschkeZero& e) { return e.a == z.a; });
        if (it != zeros_.end())
            it->mult += z.mult;
        else
            zeros_.push_back(z);
    }
    for (auto at : atoms) {
        if (!std::isfinite(at.t)) throw InvalidInput("singular atom angle must be finite");
        if (!(at.c > 0.0) || !std::isfinite(at.c)) throw InvalidInput("singular atom weight must be positive");
        at.t = std::fmod(at.t, kTwoPi);
        if (at.t < 0.0) at.t += kTwoPi;
        auto it = std::find_if(atoms_.begin(), atoms_.end(), [&](const SingularAtom& e) { return e.t == at.t; });
        if (it != atoms_.end())
            it->c += at.c;
        else
            atoms_.push_back(at);
    }
}

std::size_t InnerFunction::zero_count() const noexcept {
    std::size_t n = m0_;
    for (const auto& z : zeros_) n += z.mult;
    return n;
}

cplx InnerFunction::operator()(cplx z) const {
    if (!(std::abs(z) < 1.0)) throw OutOfDomain("inner function evaluated outside the open disk");
    return eval_unchecked(z);
}

cplx InnerFunction::eval_unchecked(cplx z) const noexcept {
    cplx v = lambda_ * std::pow(z, static_cast<int>(m0_));
    for (const auto& zr : zeros_) {
        const cplx b = std::conj(zr.a) / std::abs(zr.a) * (zr.a - z) / (1.0 - std::conj(zr.a) * z);
        v *= std::pow(b, static_cast<int>(zr.mult));
    }
    if (!atoms_.empty()) v *= std::exp(singular_exponent(atoms_, z));
    return v;
}

double InnerFunction::log_abs(cplx z) const noexcept {
    double s = 0.0;
    if (m0_ > 0) s += static_cast<double>(m0_) * std::log(std::abs(z));
    for (const auto& zr : zeros_)
        s += static_cast<double>(zr.mult) * std::log(std::abs((zr.a - z) / (1.0 - std::conj(zr.a) * z)));
    const double poisson_num = 1.0 - std::norm(z);
    for (const auto& at : atoms_) s -= at.c * poisson_num / std::norm(unit(at.t) - z);
    return s;
}

std::size_t InnerFunction::mult_at(cplx alpha, double tol) const noexcept {
    if (std::abs(alpha) <= tol) return m0_;
    std::size_t m = 0;
    for (const auto& z : zeros_)
        if (std::abs(z.a - alpha) <= tol) m += z.mult;
    return m;
}

ZeroReport InnerFunction::zeros() const {
    ZeroReport r;
    r.zeros = all_zeros(*this);
    sort_zeros(r.zeros);
    return r;
}

TaylorSeries InnerFunction::series(std::size_t order) const {
    TaylorSeries s = TaylorSeries::monomial(m0_, lambda_);
    for (const auto& z : zeros_) {
        const TaylorSeries b = blaschke_factor_series(z.a, order);
        for (std::size_t k = 0; k < z.mult; ++k) s = s * b;
    }
    if (!atoms_.empty()) s = s * series_exp(singular_exponent_series(atoms_, order));
    if (s.order() > order) s = s.truncated(order);
    if (s.order() < order) {
        std::vector<cplx> c(s.coeffs().begin(), s.coeffs().end());
        c.resize(order + 1);
        s = TaylorSeries(std::move(c), s.tail_bound(), s.domain_radius());
    }
    return s;
}

std::optional<poly::Rational> InnerFunction::as_rational() const {
    if (!atoms_.empty()) return std::nullopt;
    poly::Coeffs num(m0_ + 1);
    num[m0_] = lambda_;
    poly::Coeffs den{1.0};
    for (const auto& z : zeros_) {
        const cplx u = std::conj(z.a) / std::abs(z.a);
        const poly::Coeffs f{u * z.a, -u};
        const poly::Coeffs g{1.0, -std::conj(z.a)};
        num = poly::mul(num, poly::power(f, z.mult));
        den = poly::mul(den, poly::power(g, z.mult));
    }
    return poly::Rational{std::move(num), std::move(den)};
}

AnalyticFunction InnerFunction::as_analytic(std::size_t order) const {
    InnerFunction self = *this;
    return AnalyticFunction([self](cplx z) { return self.eval_unchecked(z); }, series(order),
                            [self](cplx z) { return self.log_abs(z); });
}

InnerFunction InnerFunction::blaschke_part() const { return InnerFunction(lambda_, m0_, zeros_, {}); }

InnerFunction InnerFunction::singular_part() const { return InnerFunction(1.0, 0, {}, atoms_); }

InnerFunction InnerFunction::operator*(const InnerFunction& other) const {
    auto zs = zeros_;
    zs.insert(zs.end(), other.zeros_.begin(), other.zeros_.end());
    auto at = atoms_;
    at.insert(at.end(), other.atoms_.begin(), other.atoms_.end());
    const cplx lam = lambda_ * other.lambda_;
    return InnerFunction(lam / std::abs(lam), m0_ + other.m0_, std::move(zs), std::move(at));
}

std::string InnerFunction::describe() const {
    std::ostringstream os;
    os << "inner(lambda=" << lambda_;
    if (m0_ > 0) os << ", z^" << m0_;
    for (const auto& z : zeros_) os << ", b[" << z.a << "]^" << z.mult;
    for (const auto& a : atoms_) os << ", atom(t=" << a.t << ", c=" << a.c << ")";
    os << ")";
    return os.str();
}

ZeroReport preimages(const DiskSelfMap& phi, cplx w, double tol) {
    ZeroReport r;
    if (phi.kind() == MapKind::constant) {
        r.identically_zero = std::abs(phi.constant_value() - w) <= tol;
        return r;
    }
    const auto rat = phi.as_rational();
    if (!rat) throw Unsupported("preimages need a rational self-map of moderate degree");
    const poly::Coeffs p = poly::trimmed(poly::sub(rat->num, poly::scale(rat->den, w)), 1e-15);
    double pmax = 0.0;
    for (cplx c : p) pmax = std::max(pmax, std::abs(c));
    if (poly::degree(p) == 0) {
        r.identically_zero = pmax <= tol;
        return r;
    }
    for (const auto& root : poly::roots(p)) {
        if (!(std::abs(root.value) < 1.0 - 1e-12)) continue;
        merge_zero(r.zeros, root.value, root.multiplicity, 1e-10);
    }
    sort_zeros(r.zeros);
    return r;
}

std::optional<std::size_t> local_order(const DiskSelfMap& phi, cplx alpha, double tol) {
    if (phi.kind() == MapKind::constant) return std::nullopt;
    constexpr std::size_t K = 16;
    const double rho = std::min(0.25, (1.0 - std::abs(alpha)) / 2.0);
    std::vector<cplx> c;
    if (const auto rat = phi.as_rational()) {
        const auto ns = taylor_shift(TaylorSeries(rat->num), alpha, K);
        const auto ds = taylor_shift(TaylorSeries(rat->den), alpha, K);
        const TaylorSeries q = series_divide(TaylorSeries(ns, std::nullopt, 1.0), TaylorSeries(ds, std::nullopt, 1.0));
        for (std::size_t j = 0; j <= K; ++j) c.push_back(q[j]);
    } else {
        AnalyticFunction f([phi](cplx z) { return phi(z); });
        c = f.jet(alpha, K).coeffs;
    }
    double scale = 0.0;
    double pw = 1.0;
    for (std::size_t j = 1; j < c.size(); ++j) {
        pw *= rho;
        scale = std::max(scale, std::abs(c[j]) * pw);
    }
    if (scale == 0.0) return std::nullopt;
    pw = 1.0;
    for (std::size_t j = 1; j < c.size(); ++j) {
        pw *= rho;
        if (std::abs(c[j]) * pw > tol * scale) return j;
    }
    return std::nullopt;
}

ComposedInner compose_with_map(const InnerFunction& theta, const DiskSelfMap& phi) {
    ComposedInner out;
    for (const auto& z : all_zeros(theta)) {
        const ZeroReport pre = preimages(phi, z.point);
        if (pre.identically_zero) {
            out.zeros.identically_zero = true;
            out.zeros.zeros.clear();
            break;
        }
        for (const auto& p : pre.zeros) merge_zero(out.zeros.zeros, p.point, p.mult * z.mult, 1e-10);
    }
    sort_zeros(out.zeros.zeros);
    if (const auto tr = theta.as_rational())
        if (const auto pr = phi.as_rational()) out.rational = poly::compose(*tr, *pr);
    out.function = AnalyticFunction([theta, phi](cplx z) { return theta.eval_unchecked(phi(z)); }, std::nullopt,
                                    [theta, phi](cplx z) { return theta.log_abs(phi(z)); });
    return out;
}

TaylorSeries composed_series(const InnerFunction& theta, const DiskSelfMap& phi, std::size_t order) {
    return series_compose(theta.series(order), phi.series(order), std::min(phi.sup_estimate(), 1.0));
}

double QuotientReport::sup_estimate(const DiskGrid& grid) const {
    if (!quotient) return std::numeric_limits<double>::infinity();
    if (identically_zero) return 0.0;
    double best = 0.0;
    const auto& f = quotient->pointwise();
    if (rational_part && singular_free)
        return circle_max([this](cplx z) { return (*rational_part)(z); }, 1.0, kBoundarySamples).value;
    for (double r : grid.radii()) best = std::max(best, circle_max(f, r, grid.angular_count()).value);
    return best;
}

TaylorSeries QuotientReport::series(std::size_t order) const {
    if (!quotient) throw InvalidInput("quotient is not analytic");
    if (identically_zero) return TaylorSeries(std::vector<cplx>(order + 1));
    if (!theta || !phi) throw InvalidInput("quotient report carries no operands");
    TaylorSeries s;
    if (rational_part) {
        s = series_divide(TaylorSeries(rational_part->num), TaylorSeries(rational_part->den), order);
        if (s.order() > order) s = s.truncated(order);
    } else {
        throw Unsupported("quotient series needs a rational self-map");
    }
    if (!singular_free) {
        const auto h = singular_exponent_series(theta->atoms(), order);
        const auto hphi = series_compose(h, phi->series(order), std::min(phi->sup_estimate(), 1.0));
        s = s * series_exp(hphi - h);
        if (s.order() > order) s = s.truncated(order);
    }
    return s;
}

QuotientReport quotient_analytic(const InnerFunction& theta, const DiskSelfMap& phi, const Tolerances& tol) {
    QuotientReport rep;
    rep.theta = theta;
    rep.phi = phi;
    rep.singular_free = !theta.has_singular_part();
    const auto zs = all_zeros(theta);

    for (const auto& z : zs) {
        MultiplicityCheck chk{z.point, z.mult, 0};
        const cplx w = phi(z.point);
        double best = std::numeric_limits<double>::infinity();
        std::size_t mw = 0;
        for (const auto& t : zs) {
            const double d = std::abs(w - t.point);
            if (d < best) {
                best = d;
                mw = t.mult;
            }
        }
        if (best > tol.root && best <= 1e-6)
            throw Inconclusive("image of a zero lies within 1e-6 of a zero but outside root tolerance");
        if (best <= tol.root) {
            const auto ord = local_order(phi, z.point);
            if (!ord) {
                chk.mult_composed = std::numeric_limits<std::size_t>::max();
                rep.identically_zero = true;
            } else {
                chk.mult_composed = mw * *ord;
            }
        }
        rep.checks.push_back(chk);
    }
    rep.analytic = true;
    for (const auto& c : rep.checks)
        if (c.mult_theta > c.mult_composed) {
            rep.analytic = false;
            rep.witness = c.alpha;
            break;
        }
    if (!rep.analytic) return rep;

    if (rep.identically_zero) {
        rep.quotient = AnalyticFunction::constant(0.0);
        return rep;
    }

    const auto tr = theta.blaschke_part().as_rational();
    const auto pr = phi.as_rational();
    if (pr) {
        const poly::Rational comp = poly::compose(*tr, *pr);
        poly::Coeffs num = comp.num;
        double scale = 0.0;
        for (cplx c : num) scale = std::max(scale, std::abs(c));
        double worst = 0.0;
        for (const auto& z : zs) {
            auto d = poly::deflate(num, z.point, z.mult);
            worst = std::max(worst, d.remainder);
            num = std::move(d.quotient);
        }
        if (worst > 1e-8 * std::max(scale, 1.0))
            throw Inconclusive("zeros of the composed numerator do not cancel within tolerance");
        cplx lead = theta.lambda();
        for (const auto& z : theta.blaschke_zeros())
            lead *= std::pow(-std::conj(z.a) / std::abs(z.a), static_cast<int>(z.mult));
        rep.rational_part = poly::Rational{poly::mul(num, tr->den), poly::scale(comp.den, lead)};
    }

    const auto atoms = theta.atoms();
    const std::optional<poly::Rational> rp = rep.rational_part;
    PointFunction f;
    LogAbsFunction lf;
    if (rp) {
        f = [rp, atoms, phi](cplx z) {
            cplx v = (*rp)(z);
            if (!atoms.empty()) v *= std::exp(singular_exponent(atoms, phi(z)) - singular_exponent(atoms, z));
            return v;
        };
        lf = [rp, atoms, phi](cplx z) {
            double v = std::log(std::abs((*rp)(z)));
            if (!atoms.empty()) v += (singular_exponent(atoms, phi(z)) - singular_exponent(atoms, z)).real();
            return v;
        };
    } else {
        f = [theta, phi](cplx z) { return theta.eval_unchecked(phi(z)) / theta.eval_unchecked(z); };
        lf = [theta, phi](cplx z) { return theta.log_abs(phi(z)) - theta.log_abs(z); };
    }
    std::optional<TaylorSeries> s;
    if (rp && atoms.empty()) s = series_divide(TaylorSeries(rp->num), TaylorSeries(rp->den));
    rep.quotient = AnalyticFunction(std::move(f), std::move(s), std::move(lf));
    return rep;
}

RieszFactorization riesz_factor(const TaylorSeries& f, const Settings& settings) {
    if (!f.is_exact()) throw InvalidInput("Riesz factorization needs an exact polynomial");
    poly::Coeffs p = poly::trimmed(std::vector<cplx>(f.coeffs().begin(), f.coeffs().end()), 1e-15);
    double pmax = 0.0;
    for (cplx c : p) pmax = std::max(pmax, std::abs(c));
    if (pmax == 0.0) throw InvalidInput("Riesz factorization of the zero polynomial");

    std::size_t m0 = 0;
    std::vector<BlaschkeZero> inside;
    for (const auto& r : poly::roots(p, settings.tol.cluster)) {
        const double m = std::abs(r.value);
        if (std::abs(m - 1.0) <= 1e-8) throw BoundaryRoot("polynomial root on the unit circle");
        if (m > 1.0) continue;
        if (m <= 1e-12)
            m0 += r.multiplicity;
        else
            inside.push_back({r.value, r.multiplicity});
    }

    poly::Coeffs g = p;
    double worst = 0.0;
    if (m0 > 0) {
        auto d = poly::deflate(g, 0.0, m0);
        worst = std::max(worst, d.remainder);
        g = std::move(d.quotient);
    }
    cplx lead = 1.0;
    for (const auto& z : inside) {
        auto d = poly::deflate(g, z.a, z.mult);
        worst = std::max(worst, d.remainder);
        g = poly::mul(d.quotient, poly::power(poly::Coeffs{1.0, -std::conj(z.a)}, z.mult));
        lead *= std::pow(-std::conj(z.a) / std::abs(z.a), static_cast<int>(z.mult));
    }
    if (worst > 1e-8 * pmax) throw Inconclusive("in-disk roots do not divide the polynomial within tolerance");
    g = poly::scale(g, 1.0 / lead);

    RieszFactorization out{InnerFunction(1.0, m0, inside, {}), TaylorSeries(g), 0.0, 0.0, 0.0};
    const auto fp = [&p](cplx z) { return poly::eval(p, z); };
    const auto gp = [&g](cplx z) { return poly::eval(g, z); };
    out.sup_f = circle_max(fp, 1.0, kBoundarySamples).value;
    out.sup_g = circle_max(gp, 1.0, kBoundarySamples).value;
    double mn = std::numeric_limits<double>::infinity();
    const auto& grid = settings.grid;
    for (double r : grid.radii())
        for (std::size_t j = 0; j < grid.angular_count(); ++j)
            mn = std::min(mn, std::abs(gp(std::polar(r, grid.angle(j)))));
    out.min_abs_g = mn;
    return out;
}

}  // namespace hil
