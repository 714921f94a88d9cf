#include "hil/deddens.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "hil/subspaces.hpp"

namespace hil {

namespace {

constexpr std::size_t kProbeAngles = 1024;
constexpr std::size_t kIntertwiningOrder = 96;
constexpr double kNormFloor = 1e-300;
constexpr double kMapOriginTol = 1e-12;

void require_origin_fixed(const DiskSelfMap& phi) {
    if (!(std::abs(phi.at_zero()) <= kMapOriginTol)) throw HypothesisViolated("Deddens probes need phi(0) = 0");
}

/// Coefficients padded with zeros (or cut) to exactly order + 1 entries.
TaylorSeries to_order(const TaylorSeries& f, std::size_t order) {
    std::vector<cplx> c(order + 1, cplx{});
    for (std::size_t k = 0; k <= std::min(order, f.order()); ++k) c[k] = f[k];
    return TaylorSeries(std::move(c), f.order() > order ? std::nullopt : f.tail_bound(), f.domain_radius());
}

/// log|f(w)| with the zero of f at the origin factored out.
double log_abs_poly(const std::vector<cplx>& c, cplx w) {
    std::size_t v = 0;
    while (v < c.size() && c[v] == cplx{}) ++v;
    if (v == c.size()) return -std::numeric_limits<double>::infinity();
    cplx g{};
    for (std::size_t k = c.size(); k-- > v;) g = g * w + c[k];
    const double lg = std::log(std::abs(g));
    if (v == 0) return lg;
    return static_cast<double>(v) * std::log(std::abs(w)) + lg;
}

std::vector<cplx> coeffs_of(const TaylorSeries& f) { return {f.coeffs().begin(), f.coeffs().end()}; }

std::vector<cplx> antiderivative_coeffs(const std::vector<cplx>& c) {
    std::vector<cplx> out(c.size() + 1, cplx{});
    for (std::size_t k = 0; k < c.size(); ++k) out[k + 1] = c[k] / static_cast<double>(k + 1);
    return out;
}

std::vector<cplx> unit_circle(std::size_t count) {
    std::vector<cplx> z(count);
    for (std::size_t j = 0; j < count; ++j)
        z[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(count));
    return z;
}

/// log of (mean |F|^p)^(1/p) from samples of log|F|.
double log_norm(const std::vector<double>& log_abs, double p) {
    std::vector<double> x(log_abs.size());
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = p * log_abs[j];
    return log_mean_exp(x) / p;
}

/// Running-max stabilization rule shared by the ratio probes.
Outcome stabilization(const std::vector<std::vector<double>>& ratios, std::size_t n_used) {
    if (n_used < 4) return Outcome::inconclusive;
    std::vector<double> running(n_used, 0.0);
    for (std::size_t n = 0; n < n_used; ++n) {
        double m = n > 0 ? running[n - 1] : 0.0;
        for (const auto& row : ratios)
            if (n < row.size()) m = std::max(m, row[n]);
        running[n] = m;
    }
    const std::size_t q = std::max<std::size_t>(1, n_used / 4);
    const double end = running.back();
    const double before = running[n_used - 1 - q];
    if (!std::isfinite(end)) return Outcome::fails;
    return end - before <= 1e-6 * std::max(end, 1e-300) ? Outcome::holds : Outcome::inconclusive;
}

std::vector<cplx> random_poly(std::mt19937_64& rng, std::size_t degree) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cplx> c(degree + 1);
    for (auto& x : c) x = cplx(g(rng), g(rng));
    return c;
}

double linear_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(y.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace

DeddensGenerator DeddensGenerator::multiplication(std::vector<cplx> h) {
    if (h.empty()) throw InvalidInput("multiplier needs at least one coefficient");
    return {Kind::multiplication, std::move(h)};
}

std::string DeddensGenerator::id() const {
    switch (kind) {
        case Kind::composition: return "C_phi";
        case Kind::multiplication: return "M_h";
        case Kind::antiderivative: return "V";
    }
    return "C_phi";
}

TaylorSeries DeddensGenerator::apply(const TaylorSeries& f, const DiskSelfMap& phi, std::size_t order) const {
    const TaylorSeries g = to_order(f, order);
    switch (kind) {
        case Kind::composition:
            return to_order(series_compose(g, to_order(phi.series(order), order), std::min(phi.sup_estimate(), 1.0)),
                            order);
        case Kind::multiplication: return to_order(g * TaylorSeries(h), order);
        case Kind::antiderivative: return to_order(hil::antiderivative(g), order);
    }
    return g;
}

DeddensProbeResult deddens_ratio_probe(const DeddensGenerator& T, const DiskSelfMap& phi,
                                       const std::vector<TaylorSeries>& battery, std::size_t n_max,
                                       const HardyExponent& p, const Settings& settings) {
    require_origin_fixed(phi);
    if (n_max == 0) throw InvalidInput("ratio probe needs n_max >= 1");
    for (const auto& f : battery)
        if (f.vanishing_order() > f.order()) throw InvalidInput("battery functions must be nonzero");

    DeddensProbeResult out;
    out.operator_id = T.id();
    out.n_max_requested = n_max;
    const double pv = p.value();
    const auto pts = unit_circle(std::min(settings.grid.angular_count(), kProbeAngles));
    // Orbit samples φ_n(z_j) for n = 0..n_max + 1.
    std::vector<std::vector<cplx>> orbit(n_max + 2, std::vector<cplx>(pts.size()));
    orbit[0] = pts;
    for (std::size_t n = 1; n <= n_max + 1; ++n)
        for (std::size_t j = 0; j < pts.size(); ++j) orbit[n][j] = phi(orbit[n - 1][j]);

    std::size_t n_used = n_max;
    for (const auto& f : battery) {
        const auto c = coeffs_of(f);
        const auto vc = antiderivative_coeffs(c);
        std::vector<double> row;
        for (std::size_t n = 1; n <= n_max; ++n) {
            std::vector<double> lf(pts.size()), lt(pts.size());
            for (std::size_t j = 0; j < pts.size(); ++j) {
                const cplx w = orbit[n][j];
                lf[j] = log_abs_poly(c, w);
                switch (T.kind) {
                    case DeddensGenerator::Kind::composition: lt[j] = log_abs_poly(c, orbit[n + 1][j]); break;
                    case DeddensGenerator::Kind::multiplication: lt[j] = log_abs_poly(T.h, w) + lf[j]; break;
                    case DeddensGenerator::Kind::antiderivative: lt[j] = log_abs_poly(vc, w); break;
                }
            }
            const double nf = log_norm(lf, pv);
            if (!std::isfinite(nf) || nf < std::log(kNormFloor)) {
                if (n == 1) throw Underflow("norm of C_phi f underflows at n = 1");
                n_used = std::min(n_used, n - 1);
                break;
            }
            row.push_back(std::exp(log_norm(lt, pv) - nf));
        }
        out.ratios.push_back(std::move(row));
    }
    for (auto& row : out.ratios) row.resize(std::min(row.size(), n_used));
    out.n_max_used = n_used;
    if (n_used < n_max)
        out.notes.push_back("n_max reduced to " + std::to_string(n_used) + " after a norm fell below 1e-300");
    for (const auto& row : out.ratios)
        for (double r : row) out.sup_ratio = std::max(out.sup_ratio, r);
    out.bounded_verdict = stabilization(out.ratios, n_used);
    return out;
}

DeddensProbeResult certify_antiderivative(const DiskSelfMap& phi, std::size_t n_max, const HardyExponent& p,
                                          const Settings& settings) {
    require_origin_fixed(phi);
    if (n_max == 0) throw InvalidInput("antiderivative certificate needs n_max >= 1");
    const std::size_t N = kIntertwiningOrder;
    const double bound = std::min(phi.sup_estimate(), 1.0);
    DeddensProbeResult out;
    out.operator_id = "V";
    out.n_max_requested = n_max;
    out.n_max_used = n_max;

    std::mt19937_64 rng(settings.seed);
    std::uniform_int_distribution<std::size_t> deg(0, std::max<std::size_t>(settings.battery_degree, 1));
    std::vector<TaylorSeries> battery;
    for (int i = 0; i < 8; ++i) battery.push_back(to_order(TaylorSeries(random_poly(rng, deg(rng))), N));

    const TaylorSeries s1 = to_order(phi.series(N), N);
    std::vector<TaylorSeries> iterates{s1};
    for (std::size_t n = 2; n <= n_max; ++n) iterates.push_back(to_order(series_compose(s1, iterates.back(), bound), N));

    double residual = 0.0;
    const auto pts = unit_circle(std::min(settings.grid.angular_count(), kProbeAngles));
    const double pv = p.value();
    for (const auto& g : battery) {
        const TaylorSeries vg = to_order(antiderivative(g), N);
        std::vector<double> lg(pts.size());
        for (std::size_t j = 0; j < pts.size(); ++j) lg[j] = std::log(std::abs(g.eval_unchecked(pts[j])));
        const double ng = log_norm(lg, pv);
        std::vector<double> row;
        for (std::size_t n = 1; n <= n_max; ++n) {
            const TaylorSeries& sn = iterates[n - 1];
            const TaylorSeries lhs = series_compose(vg, sn, bound);
            const TaylorSeries dphi = derivative(sn);
            const TaylorSeries rhs = antiderivative(dphi * to_order(series_compose(g, sn, bound), N));
            double scale = 1.0;
            for (std::size_t k = 0; k < N; ++k) scale = std::max(scale, std::abs(lhs[k]));
            for (std::size_t k = 0; k < N; ++k) residual = std::max(residual, std::abs(lhs[k] - rhs[k]) / scale);

            const TaylorSeries vm = to_order(antiderivative(to_order(dphi * g, N)), N);
            std::vector<double> lv(pts.size());
            for (std::size_t j = 0; j < pts.size(); ++j) lv[j] = std::log(std::abs(vm.eval_unchecked(pts[j])));
            row.push_back(std::exp(log_norm(lv, pv) - ng));
        }
        out.ratios.push_back(std::move(row));
    }
    out.intertwining_residual = residual;
    for (const auto& row : out.ratios)
        for (double r : row) out.sup_ratio = std::max(out.sup_ratio, r);
    if (residual > 1e-8) {
        out.bounded_verdict = Outcome::fails;
        out.notes.push_back("intertwining identity violated beyond 1e-8");
    } else {
        out.bounded_verdict = n_max < 4 ? Outcome::holds : stabilization(out.ratios, n_max);
        out.notes.push_back("empirical bound M = sup of ||V M_{phi_n'} g|| / ||g||");
    }
    return out;
}

Verdict zero_moment_probe(const InnerFunction& theta, const DiskSelfMap& phi, const Settings& settings) {
    require_origin_fixed(phi);
    if (theta.blaschke_zeros().empty()) throw HypothesisViolated("theta needs a zero alpha != 0");
    Verdict v;
    v.claim = "zero_moment_probe";
    v.truncation = settings;
    const cplx alpha = theta.blaschke_zeros().front().a;

    std::vector<double> moments;
    std::optional<std::size_t> witness;
    cplx value{};
    for (std::size_t n = 0; n <= 8; ++n) {
        const cplx I = segment_integral(
            [&theta, n](cplx w) {
                cplx acc = theta.eval_unchecked(w);
                for (std::size_t i = 0; i < n; ++i) acc *= w;
                return acc;
            },
            0.0, alpha);
        moments.push_back(std::abs(I));
        if (!witness && std::abs(I) > 1e-10) {
            witness = n;
            value = I;
        }
    }
    v.criterion.add("zero", alpha).add("moments_abs", moments);
    if (!witness) throw Inconclusive("every moment of theta along [0, alpha] vanishes for n <= 8");
    v.criterion.add("witness_n", static_cast<long long>(*witness)).add("moment", value);
    v.criterion.outcome = Outcome::holds;
    v.criterion.note = "nonzero moment: V(theta z^n) does not vanish at alpha";

    const std::size_t n = *witness;
    const AnalyticFunction F([theta, n](cplx z) {
        return segment_integral(
            [&theta, n](cplx w) {
                cplx acc = theta.eval_unchecked(w);
                for (std::size_t i = 0; i < n; ++i) acc *= w;
                return acc;
            },
            0.0, z);
    });
    Settings bs = settings;
    bs.grid = settings.grid.with_angles(std::min(settings.grid.angular_count(), kProbeAngles));
    const Verdict m = member_theta_Hp(F, theta, 2.0, bs);
    DirectLeg d;
    d.battery_size = 1;
    d.outcome = m.fails() ? Outcome::holds : (m.holds() ? Outcome::fails : Outcome::inconclusive);
    d.witness = "V(theta z^" + std::to_string(n) + ")";
    d.add("membership", std::string(to_string(m.outcome())));
    d.note = "member_theta_Hp rejects the antiderivative image";
    v.direct = d;
    v.settle();
    return v;
}

Verdict singular_atom_probe(const InnerFunction& S, std::size_t n, const DiskSelfMap& phi, const Settings& settings) {
    if (!S.has_singular_part()) throw HypothesisViolated("singular_atom_probe needs a singular atom");
    require_origin_fixed(phi);
    if (!phi.is_strict()) throw HypothesisViolated("singular_atom_probe needs a strict self-map");
    Verdict v;
    v.claim = "singular_atom_probe";
    v.truncation = settings;
    const InnerFunction target = S * InnerFunction::monomial(n);
    Settings bs = settings;
    bs.grid = settings.grid.with_angles(std::min(settings.grid.angular_count(), kProbeAngles));

    const auto antiderivative_of = [&S](std::size_t power) {
        const auto integrand = [S, power](cplx w) {
            cplx acc = S.eval_unchecked(w);
            for (std::size_t i = 0; i < power; ++i) acc *= w;
            return acc;
        };
        const PointFunction F = [integrand](cplx z) { return segment_integral(integrand, 0.0, z); };
        return AnalyticFunction(F, std::nullopt, [F](cplx z) { return std::log(std::abs(F(z))); });
    };

    std::vector<double> failed;
    std::optional<std::size_t> first;
    for (std::size_t m = 0; m <= 4; ++m) {
        const Verdict r = member_theta_Hp(antiderivative_of(n + m), target, 2.0, bs);
        failed.push_back(r.fails() ? 1.0 : 0.0);
        if (r.fails() && !first) first = m;
    }
    v.criterion.add("membership_failed", failed);
    if (!first) throw Inconclusive("grid could not separate the atom: no antiderivative image failed membership");
    v.criterion.add("first_m", static_cast<long long>(*first));
    v.criterion.outcome = Outcome::holds;
    v.criterion.note = "V(S z^{n+m}) leaves S z^n H^p";

    // Radial samples of |F / (S z^n)| towards each atom for F = V(S z^n).
    const AnalyticFunction F0 = antiderivative_of(n);
    const std::vector<double> radii{0.9, 0.99, 0.999, 0.9999};
    double best_log = -std::numeric_limits<double>::infinity();
    std::optional<double> first_atom;
    double first_radius = 2.0;
    std::vector<double> best_profile;
    for (const auto& at : S.atoms()) {
        std::vector<double> profile;
        for (double r : radii) {
            const cplx z = std::polar(r, at.t);
            profile.push_back(F0.log_abs(z) - target.log_abs(z));
        }
        for (std::size_t i = 0; i < radii.size(); ++i)
            if (profile[i] > std::log(1e3)) {
                if (radii[i] < first_radius || (radii[i] == first_radius && profile.back() > best_log)) {
                    first_radius = radii[i];
                    first_atom = at.t;
                }
                break;
            }
        if (profile.back() > best_log) {
            best_log = profile.back();
            best_profile = profile;
        }
    }
    DirectLeg d;
    d.battery_size = S.atoms().size();
    d.add("radii", radii).add("log_quotient_profile", best_profile).add("log_blowup_outer", best_log);
    if (first_atom) d.add("first_atom_t", *first_atom).add("first_radius", first_radius);
    d.outcome = best_log > std::log(1e3) ? Outcome::holds : Outcome::inconclusive;
    d.note = "log |V(S z^n) / (S z^n)| along the radius towards the atoms";
    v.direct = d;
    v.settle();
    return v;
}

Verdict lattice_decay(const DiskSelfMap& phi, std::size_t m, std::size_t k, const TaylorSeries& f,
                        const HardyExponent& p, std::size_t n_max, const Settings& settings) {
    const double delta = phi.sup_estimate();
    if (!(delta < 1.0)) throw HypothesisViolated("decay probe needs sup |phi| < 1");
    require_origin_fixed(phi);
    if (m <= k) throw HypothesisViolated("decay probe needs m > k");
    if (f[0] == cplx{}) throw HypothesisViolated("decay probe needs f(0) != 0");
    if (n_max < 2) throw InvalidInput("decay probe needs n_max >= 2");
    Verdict v;
    v.claim = "lattice_decay";
    v.truncation = settings;
    const double pv = p.value();
    const auto c = coeffs_of(f);
    const auto pts = unit_circle(settings.grid.angular_count());
    std::vector<cplx> w = pts;

    const double mp = static_cast<double>(m) * pv;
    const double kp = static_cast<double>(k) * pv;
    std::vector<double> log_ratio, log_R, log_K, log_L;
    std::size_t n_used = n_max;
    for (std::size_t n = 1; n <= n_max; ++n) {
        bool underflow = false;
        std::vector<double> r(pts.size()), kk(pts.size()), l(pts.size());
        for (std::size_t j = 0; j < pts.size(); ++j) {
            w[j] = phi(w[j]);
            if (w[j] == cplx{}) underflow = true;
            const double lw = std::log(std::abs(w[j]));
            r[j] = mp * lw;
            kk[j] = k == 0 ? 0.0 : kp * lw;
            l[j] = kk[j] + pv * log_abs_poly(c, w[j]);
        }
        if (underflow) {
            n_used = n - 1;
            break;
        }
        log_R.push_back(log_mean_exp(r));
        log_K.push_back(log_mean_exp(kk));
        log_L.push_back(log_mean_exp(l));
        log_ratio.push_back(log_R.back() - log_L.back());
    }
    if (n_used < 2) throw Underflow("orbit underflows before two iterates");

    bool bound_ok = true;
    std::vector<double> bound_gap;
    for (std::size_t i = 0; i < n_used; ++i) {
        const double n = static_cast<double>(i + 1);
        const double rhs = static_cast<double>(m - k) * n * pv * std::log(delta) + log_K[i] + std::log1p(1e-3);
        bound_gap.push_back(log_R[i] - rhs);
        if (log_R[i] > rhs) bound_ok = false;
    }
    bool lower_ok = true;
    const double lower = pv * std::log(std::abs(f[0])) - std::log(2.0);
    const std::size_t q = std::max<std::size_t>(1, n_used / 4);
    for (std::size_t i = n_used - q; i < n_used; ++i)
        if (log_L[i] < lower + log_K[i]) lower_ok = false;

    std::vector<double> xs, ys;
    for (std::size_t i = n_used / 2; i < n_used; ++i) {
        xs.push_back(static_cast<double>(i + 1));
        ys.push_back(log_ratio[i]);
    }
    if (xs.size() < 2) {
        xs = {1.0, 2.0};
        ys = {log_ratio[0], log_ratio[1]};
    }
    const double slope = linear_slope(xs, ys);
    const double expected = static_cast<double>(m - k) * pv * std::log(delta);
    v.criterion.add("delta", delta)
        .add("n_used", static_cast<long long>(n_used))
        .add("log_ratios", log_ratio)
        .add("bound_log_gaps", bound_gap)
        .add("bound_ok", bound_ok)
        .add("lower_bound_ok", lower_ok)
        .add("fitted_exponent", slope)
        .add("expected_exponent", expected)
        .add("exponent_relative_gap", std::abs(slope - expected) / std::abs(expected));
    v.criterion.outcome = outcome_of(bound_ok && lower_ok);
    v.criterion.note = "R_n <= delta^{(m-k)np} K_n and L_n >= |f(0)|^p K_n / 2 force R_n / L_n -> 0";
    if (n_used < n_max) v.notes.push_back("n_max reduced to " + std::to_string(n_used) + " after the orbit underflowed");
    return v;
}

bool LatticeScanResult::all_survived() const noexcept {
    return std::all_of(survived.begin(), survived.end(), [](bool b) { return b; });
}

std::vector<std::vector<cplx>> lattice_multipliers() {
    return {{0.5, 0.5}, {0.0, 1.0}, {0.5, 0.0, -0.5}, {0.3, 0.0, 0.5}};
}

LatticeScanResult lattice_scan(const DiskSelfMap& phi, std::size_t N_max, const Settings& settings) {
    (void)settings;
    require_origin_fixed(phi);
    if (!phi.is_strict()) throw HypothesisViolated("lattice scan needs sup |phi| < 1");
    std::vector<DeddensGenerator> gens{DeddensGenerator::composition()};
    for (auto& h : lattice_multipliers()) gens.push_back(DeddensGenerator::multiplication(h));
    gens.push_back(DeddensGenerator::antiderivative());
    const auto label = [](const DeddensGenerator& g, std::size_t i) {
        return g.kind == DeddensGenerator::Kind::multiplication ? "M_h" + std::to_string(i) : g.id();
    };

    const std::size_t order = N_max + 9;
    LatticeScanResult out;
    for (std::size_t n = 0; n <= N_max; ++n) {
        double worst = 0.0;
        std::string witness;
        for (std::size_t j = 0; j <= 8; ++j) {
            const TaylorSeries f = TaylorSeries::monomial(n + j);
            // Depth-first walk over words of length 1..3; the word reads right to left.
            struct Frame {
                TaylorSeries g;
                std::string word;
                std::size_t depth;
            };
            std::vector<Frame> stack{{f, "", 0}};
            while (!stack.empty()) {
                Frame fr = std::move(stack.back());
                stack.pop_back();
                if (fr.depth == 3) continue;
                for (std::size_t i = 0; i < gens.size(); ++i) {
                    TaylorSeries img = gens[i].apply(fr.g, phi, order);
                    const std::string word = label(gens[i], i) + (fr.word.empty() ? "" : " " + fr.word);
                    double leak = 0.0;
                    for (std::size_t kk = 0; kk < n; ++kk) leak = std::max(leak, std::abs(img[kk]));
                    if (leak > worst) {
                        worst = leak;
                        if (leak > 1e-9) witness = word + " applied to z^" + std::to_string(n + j);
                    }
                    stack.push_back({std::move(img), word, fr.depth + 1});
                }
            }
        }
        out.n_values.push_back(n);
        out.max_leakage.push_back(worst);
        out.survived.push_back(worst <= 1e-9);
        out.witnesses.push_back(worst <= 1e-9 ? std::string{} : witness);
    }
    return out;
}

}  // namespace hil
