#include "hil/subspaces.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace hil {

namespace {

constexpr double kAmbiguityFactor = 1e3;

Verdict make_verdict(std::string claim, const Settings& settings) {
    Verdict v;
    v.claim = std::move(claim);
    v.truncation = settings;
    return v;
}

void require_order(const TaylorSeries& f, std::size_t k) {
    if (f.order() < k) throw OrderExceeded("membership test needs Taylor coefficients up to order " + std::to_string(k));
}

enum class Vanish { yes, no, unclear };

/// Whether f vanishes to order m at a, judged on its jet relative to the contour scale.
Vanish vanishes_to(const AnalyticFunction& f, cplx a, std::size_t m, double tol, double* worst) {
    if (m == 0) return Vanish::yes;
    const Jet jet = f.jet(a, m - 1);
    const double scale = jet.scale > 0.0 ? jet.scale : 1.0;
    double w = 0.0;
    for (std::size_t j = 0; j < m; ++j)
        w = std::max(w, std::abs(jet.coeffs[j]) * std::pow(jet.contour_radius, static_cast<double>(j)) / scale);
    if (worst) *worst = std::max(*worst, w);
    if (w <= tol) return Vanish::yes;
    if (w <= kAmbiguityFactor * tol) return Vanish::unclear;
    return Vanish::no;
}

/// Origin identity shared by J H_{α,β} membership and the collapse battery.
struct OriginTest {
    bool low_vanish = true;
    bool identity = true;
    bool degenerate = false;
    double residual = 0.0;
    double low_max = 0.0;
};

/// f holds the Taylor coefficients 0..n+1 at the origin.
OriginTest origin_test(const std::vector<cplx>& f, std::size_t n, cplx jn, cplx jn1, const AdmissiblePair& pair,
                       double tol) {
    OriginTest t;
    const cplx fn = f[n];
    const cplx fn1 = f[n + 1];
    const double mag = 1.0 + std::abs(fn) + std::abs(fn1);
    for (std::size_t k = 0; k < n; ++k) t.low_max = std::max(t.low_max, std::abs(f[k]));
    t.low_vanish = t.low_max <= tol * mag;
    const cplx a = pair.alpha();
    const cplx b = pair.beta();
    t.residual = std::abs(a * jn * fn1 - (b * jn + a * jn1) * fn);
    const double scale = 1.0 + std::abs(jn * fn1) + std::abs(jn * fn) + std::abs(jn1 * fn);
    t.identity = t.residual <= tol * scale;
    t.degenerate = std::abs(fn) + std::abs(fn1) <= tol;
    return t;
}

std::vector<cplx> random_coeffs(std::mt19937_64& rng, std::size_t degree) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cplx> c(degree + 1);
    for (auto& x : c) x = cplx(g(rng), g(rng)) / std::sqrt(2.0 * static_cast<double>(degree + 1));
    return c;
}

}  // namespace

AdmissiblePair::AdmissiblePair(cplx alpha, cplx beta) : alpha_(alpha), beta_(beta) {
    if (!(std::abs(std::norm(alpha) + std::norm(beta) - 1.0) <= 1e-12))
        throw InvalidInput("admissible pair needs |alpha|^2 + |beta|^2 = 1");
    if (alpha == cplx{}) throw InvalidInput("admissible pair needs alpha != 0");
}

AdmissiblePair AdmissiblePair::normalized(cplx alpha, cplx beta) {
    const double s = std::sqrt(std::norm(alpha) + std::norm(beta));
    if (!(s > 0.0) || !std::isfinite(s)) throw InvalidInput("cannot normalize a zero pair");
    return AdmissiblePair(alpha / s, beta / s);
}

const char* to_string(SubspaceKind k) noexcept {
    switch (k) {
        case SubspaceKind::Hab: return "Hab";
        case SubspaceKind::J_Hab: return "J_Hab";
        case SubspaceKind::zn_Hp: return "zn_Hp";
        case SubspaceKind::theta_Hp: return "theta_Hp";
        case SubspaceKind::H2_a: return "H2_a";
    }
    return "Hab";
}

SubspaceSpec SubspaceSpec::hab(AdmissiblePair pair) {
    SubspaceSpec s;
    s.kind = SubspaceKind::Hab;
    s.pair = pair;
    return s;
}

SubspaceSpec SubspaceSpec::j_hab(InnerFunction J, AdmissiblePair pair) {
    SubspaceSpec s;
    s.kind = SubspaceKind::J_Hab;
    s.inner = std::move(J);
    s.pair = pair;
    return s;
}

SubspaceSpec SubspaceSpec::zn(std::size_t n) {
    SubspaceSpec s;
    s.kind = SubspaceKind::zn_Hp;
    s.n = n;
    return s;
}

SubspaceSpec SubspaceSpec::theta(InnerFunction theta) {
    SubspaceSpec s;
    s.kind = SubspaceKind::theta_Hp;
    s.inner = std::move(theta);
    return s;
}

SubspaceSpec SubspaceSpec::vanishing_at(cplx a) {
    if (!(std::abs(a) < 1.0)) throw OutOfDisk("vanishing point must lie in the open disk");
    SubspaceSpec s;
    s.kind = SubspaceKind::H2_a;
    s.point = a;
    return s;
}

std::string SubspaceSpec::describe() const {
    std::ostringstream os;
    switch (kind) {
        case SubspaceKind::Hab: os << "H_{" << pair->alpha() << "," << pair->beta() << "}"; break;
        case SubspaceKind::J_Hab:
            os << inner->describe() << " H_{" << pair->alpha() << "," << pair->beta() << "}";
            break;
        case SubspaceKind::zn_Hp: os << "z^" << n << " H"; break;
        case SubspaceKind::theta_Hp: os << inner->describe() << " H"; break;
        case SubspaceKind::H2_a: os << "H_" << point; break;
    }
    return os.str();
}

Verdict member_Hab(const TaylorSeries& f, const AdmissiblePair& pair, const Settings& settings) {
    require_order(f, 1);
    Verdict v = make_verdict("member_Hab", settings);
    const cplx f0 = f[0];
    const cplx f1 = f[1];
    const double residual = std::abs(f0 * pair.beta() - f1 * pair.alpha());
    const double bound = settings.tol.eq * (1.0 + std::abs(f0) + std::abs(f1));
    v.criterion.add("f0", f0).add("f1", f1).add("residual", residual).add("bound", bound);
    v.criterion.outcome = outcome_of(residual <= bound);
    return v;
}

Verdict member_J_Hab(const TaylorSeries& f, const InnerFunction& J, const AdmissiblePair& pair,
                     const Settings& settings) {
    require_order(f, J.origin_multiplicity() + 1);
    return member_J_Hab(AnalyticFunction::from_series(f), J, pair, settings);
}

Verdict member_J_Hab(const AnalyticFunction& f, const InnerFunction& J, const AdmissiblePair& pair,
                     const Settings& settings) {
    const std::size_t n = J.origin_multiplicity();
    Verdict v = make_verdict("member_J_Hab", settings);
    const double tol = settings.tol.eq;
    const TaylorSeries js = J.series(n + 2);
    const cplx jn = js[n];
    const cplx jn1 = js[n + 1];
    const OriginTest t = origin_test(f.jet(0.0, n + 1).coeffs, n, jn, jn1, pair, tol);
    v.criterion.add("origin_multiplicity", static_cast<long long>(n))
        .add("J_n", jn)
        .add("J_n1", jn1)
        .add("low_coefficients_max", t.low_max)
        .add("residual", t.residual)
        .add("degenerate", t.degenerate);
    if (t.degenerate) v.notes.push_back("degenerate branch: f_n = f_{n+1} = 0, the origin identity holds for every J");

    bool ok = t.low_vanish && t.identity;
    bool unclear = false;
    std::optional<cplx> witness;
    double worst = 0.0;
    if (ok) {
        for (const auto& z : J.blaschke_zeros()) {
            const Vanish r = vanishes_to(f, z.a, z.mult, tol, &worst);
            if (r == Vanish::no) {
                ok = false;
                witness = z.a;
                break;
            }
            if (r == Vanish::unclear) unclear = true;
        }
        v.criterion.add("zero_divisibility_worst", worst);
    }
    if (witness) v.criterion.add("witness", *witness);
    if (J.has_singular_part()) {
        v.criterion.add("singular_divisibility", std::string("unchecked"));
        v.notes.push_back("division by the singular factor of J is not tested");
    }
    v.criterion.outcome = ok ? (unclear ? Outcome::inconclusive : Outcome::holds) : Outcome::fails;
    return v;
}

Verdict member_zn(const TaylorSeries& f, std::size_t n, const Settings& settings) {
    if (n > 0) require_order(f, n - 1);
    Verdict v = make_verdict("member_zn", settings);
    double low = 0.0;
    for (std::size_t k = 0; k < n; ++k) low = std::max(low, std::abs(f[k]));
    double mag = 1.0;
    for (std::size_t k = n; k <= std::min(f.order(), n + 4); ++k) mag += std::abs(f[k]);
    v.criterion.add("low_coefficients_max", low);
    v.criterion.outcome = outcome_of(low <= settings.tol.eq * mag);
    return v;
}

Verdict member_vanishing_at(const TaylorSeries& f, cplx a, const Settings& settings) {
    if (!(std::abs(a) < 1.0)) throw OutOfDisk("vanishing point must lie in the open disk");
    Verdict v = make_verdict("member_vanishing_at", settings);
    const cplx value = f.eval_unchecked(a);
    v.criterion.add("value", value);
    v.criterion.outcome = outcome_of(std::abs(value) <= settings.tol.eq * (1.0 + f.majorant(std::abs(a))));
    return v;
}

Verdict member_theta_Hp(const AnalyticFunction& f, const InnerFunction& theta, double p, const Settings& settings) {
    const HardyExponent hp(p);
    Verdict v = make_verdict("member_theta_Hp", settings);
    const double tol = settings.tol.eq;

    std::vector<ZeroEntry> zs = theta.zeros().zeros;
    bool divisible = true;
    bool unclear = false;
    double worst = 0.0;
    for (const auto& z : zs) {
        const Vanish r = vanishes_to(f, z.point, z.mult, tol, &worst);
        if (r == Vanish::no) {
            divisible = false;
            v.criterion.add("witness", z.point);
            break;
        }
        if (r == Vanish::unclear) unclear = true;
    }
    v.criterion.add("zero_divisibility_worst", worst);
    if (!divisible) {
        v.criterion.note = "f does not vanish at a zero of theta to the required order";
        v.criterion.outcome = Outcome::fails;
        return v;
    }

    const auto& grid = settings.grid;
    const LogAbsFunction lf = f.log_abs_function();
    const auto log_ratio = [&lf, &theta](cplx z) { return lf(z) - theta.log_abs(z); };

    if (!theta.has_singular_part()) {
        const double outer = grid.outer_radius();
        const DiskGrid one({outer}, grid.angular_count());
        const PointFunction& fp = f.pointwise();
        const auto q = [&fp, &theta](cplx z) { return fp(z) / theta.eval_unchecked(z); };
        const double nq = hardy_norm(PointFunction(q), hp, one).value;
        const double nf = hardy_norm(fp, hp, one).value;
        double sup = 0.0;
        for (double r : grid.radii()) sup = std::max(sup, circle_max(q, r, grid.angular_count()).value);
        v.criterion.add("quotient_norm", nq).add("f_norm", nf).add("quotient_sup", sup);
        v.criterion.add("norm_ratio", nf > 0.0 ? nq / nf : 0.0);
        v.notes.push_back("quotient norm probe is reported as evidence; divisibility decides the outcome");
        v.criterion.outcome = unclear ? Outcome::inconclusive : Outcome::holds;
        return v;
    }

    // Singular factor: sup of |f/θ| per grid circle, sampled on the grid angles and at every atom.
    std::vector<double> sups;
    for (double r : grid.radii()) {
        double m = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < grid.angular_count(); ++j) m = std::max(m, log_ratio(std::polar(r, grid.angle(j))));
        for (const auto& at : theta.atoms()) m = std::max(m, log_ratio(std::polar(r, at.t)));
        sups.push_back(std::exp(m));
    }
    const double first = sups.front();
    const double last = sups.back();
    const double prev = sups.size() > 1 ? sups[sups.size() - 2] : first;
    const double cap = 1e3 * std::max(1.0, first);
    Outcome o;
    if (!std::isfinite(last) || last > cap || last > 10.0 * prev)
        o = Outcome::fails;
    else if (last <= 1.1 * prev && last <= cap)
        o = unclear ? Outcome::inconclusive : Outcome::holds;
    else
        o = Outcome::inconclusive;
    v.criterion.add("quotient_circle_sups", sups);
    v.criterion.note = o == Outcome::fails ? "f / theta grows without bound towards the circle" : "";
    v.criterion.outcome = o;
    return v;
}

Verdict member_theta_Hp(const TaylorSeries& f, const InnerFunction& theta, double p, const Settings& settings) {
    return member_theta_Hp(AnalyticFunction::from_series(f), theta, p, settings);
}

Verdict member(const TaylorSeries& f, const SubspaceSpec& spec, double p, const Settings& settings) {
    switch (spec.kind) {
        case SubspaceKind::Hab: return member_Hab(f, *spec.pair, settings);
        case SubspaceKind::J_Hab: return member_J_Hab(f, *spec.inner, *spec.pair, settings);
        case SubspaceKind::zn_Hp: return member_zn(f, spec.n, settings);
        case SubspaceKind::theta_Hp: return member_theta_Hp(f, *spec.inner, p, settings);
        case SubspaceKind::H2_a: return member_vanishing_at(f, spec.point, settings);
    }
    throw InvalidInput("unknown subspace kind");
}

Verdict hab_collapse(const InnerFunction& J, const AdmissiblePair& pair, const Settings& settings) {
    Verdict v = make_verdict("hab_collapse", settings);
    const double tol = settings.tol.eq;
    const std::size_t n = J.origin_multiplicity();
    const TaylorSeries js = J.series(n + 3);
    const cplx jn = js[n];
    const cplx jn1 = js[n + 1];
    const double residual = std::abs(pair.beta() * jn + pair.alpha() * jn1);
    const bool collapse = residual <= tol * (std::abs(jn) + std::abs(jn1));
    v.criterion.add("origin_multiplicity", static_cast<long long>(n)).add("J_n", jn).add("J_n1", jn1);
    v.criterion.add("residual", residual).add("shifted", n > 0);
    v.criterion.outcome = outcome_of(collapse);

    // Battery: J-multiples of H_{α,β} elements and z^n-multiples with and without f_{n+1} = 0.
    std::mt19937_64 rng(settings.seed);
    const std::size_t deg = settings.battery_degree;
    DirectLeg d;
    std::size_t disagreements = 0;
    for (std::size_t i = 0; i < 8; ++i) {
        TaylorSeries f;
        if (i < 4) {
            auto g = random_coeffs(rng, deg);
            g[1] = pair.beta() / pair.alpha() * g[0];
            f = (js * TaylorSeries(g)).truncated(n + 2);
        } else {
            auto h = random_coeffs(rng, deg);
            if (i % 2 == 0) h[1] = 0.0;
            std::vector<cplx> c(n, cplx{});
            c.insert(c.end(), h.begin(), h.end());
            f = TaylorSeries(c);
        }
        std::vector<cplx> fc(n + 2);
        for (std::size_t k = 0; k < n + 2; ++k) fc[k] = f[k];
        const OriginTest t = origin_test(fc, n, jn, jn1, pair, tol);
        const bool in_j = t.low_vanish && t.identity;
        const double mag = 1.0 + std::abs(f[n]) + std::abs(f[n + 1]);
        const bool in_zn = t.low_vanish && std::abs(f[n + 1]) <= tol * mag;
        if (in_j != in_zn) {
            ++disagreements;
            if (!d.witness) d.witness = "battery function " + std::to_string(i);
        }
    }
    d.battery_size = 8;
    d.worst_violation = static_cast<double>(disagreements);
    d.add("disagreements", static_cast<long long>(disagreements));
    d.outcome = outcome_of(disagreements == 0);
    d.note = "origin-jet membership in J H_{a,b} against z^n H_{1,0}";
    v.direct = d;
    v.settle();
    return v;
}

}  // namespace hil
