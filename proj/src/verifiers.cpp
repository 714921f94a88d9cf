#include "hil/verifiers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "hil/norms.hpp"

namespace hil {

namespace {

constexpr std::size_t kBatteryAngles = 1024;

Verdict make_verdict(std::string claim, const Settings& settings) {
    Verdict v;
    v.claim = std::move(claim);
    v.truncation = settings;
    return v;
}

/// Settings used for membership tests inside a battery: same radii, fewer angles.
Settings battery_settings(const Settings& settings) {
    Settings s = settings;
    s.grid = settings.grid.with_angles(std::min(settings.grid.angular_count(), kBatteryAngles));
    return s;
}

/// Size of the violation recorded by a failing membership verdict.
double violation_of(const Verdict& v) {
    for (const char* key : {"residual", "zero_divisibility_worst"})
        if (const auto* e = v.criterion.find(key))
            if (const auto* d = std::get_if<double>(e)) return *d;
    return 1.0;
}

/// Pushes every generator through C_φ after confirming it lies in the source subspace.
template <typename F, typename SourceTest, typename ImageTest, typename Image>
DirectLeg run_battery(const std::vector<F>& generators, SourceTest source, Image image_of, ImageTest image_test,
                      const std::vector<std::string>& labels) {
    DirectLeg d;
    d.battery_size = generators.size();
    bool unverified = false;
    bool unclear = false;
    std::size_t failures = 0;
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (!source(generators[i]).holds()) {
            unverified = true;
            continue;
        }
        const Verdict r = image_test(image_of(generators[i]));
        if (r.fails()) {
            ++failures;
            const double w = violation_of(r);
            if (!d.witness || w > d.worst_violation) {
                d.worst_violation = std::max(d.worst_violation, w);
                if (!d.witness) d.witness = "C_phi(" + labels[i] + ")";
            }
        } else if (r.outcome() == Outcome::inconclusive) {
            unclear = true;
        }
    }
    d.add("failures", static_cast<long long>(failures));
    if (failures > 0)
        d.outcome = Outcome::fails;
    else if (unverified || unclear)
        d.outcome = Outcome::inconclusive;
    else
        d.outcome = Outcome::holds;
    if (unverified) d.note = "a generator could not be confirmed in the source subspace";
    else if (d.outcome == Outcome::holds) d.note = "no violation found among the battery images";
    return d;
}

/// Labels α+βz, z^2, ..., z^D prefixed by an optional factor name.
std::vector<std::string> hab_labels(std::size_t D, const std::string& factor) {
    std::vector<std::string> out{factor + "(alpha + beta z)"};
    for (std::size_t j = 2; j <= D; ++j) out.push_back(factor + "z^" + std::to_string(j));
    return out;
}

/// Coefficient lists α + βz, z², ..., z^D spanning H_{α,β} up to degree D.
std::vector<std::vector<cplx>> hab_generators(const AdmissiblePair& pair, std::size_t D) {
    std::vector<std::vector<cplx>> out{{pair.alpha(), pair.beta()}};
    for (std::size_t j = 2; j <= D; ++j) {
        std::vector<cplx> c(j + 1, cplx{});
        c[j] = 1.0;
        out.push_back(std::move(c));
    }
    return out;
}

/// Exact polynomial images may be stored at their degree; pad with zeros up to order k.
TaylorSeries padded(const TaylorSeries& f, std::size_t k) {
    if (f.order() >= k) return f;
    std::vector<cplx> c(f.coeffs().begin(), f.coeffs().end());
    c.resize(k + 1, cplx{});
    return TaylorSeries(std::move(c), f.tail_bound(), f.domain_radius());
}

cplx poly_eval(const std::vector<cplx>& c, cplx z) {
    cplx acc{};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

cplx poly_derivative(const std::vector<cplx>& c, cplx z) {
    cplx acc{};
    for (std::size_t k = c.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * c[k];
    return acc;
}

cplx ipow(cplx z, std::size_t j) {
    cplx acc = 1.0;
    for (std::size_t i = 0; i < j; ++i) acc *= z;
    return acc;
}

/// Distance from w to the nearest zero of θ, including the origin when it is a zero.
double distance_to_zero_set(const InnerFunction& theta, cplx w) {
    double best = std::numeric_limits<double>::infinity();
    if (theta.origin_multiplicity() > 0) best = std::abs(w);
    for (const auto& z : theta.blaschke_zeros()) best = std::min(best, std::abs(w - z.a));
    return best;
}

/// Battery θ·z^j for membership in θH^p, with images tested against target.
DirectLeg theta_battery(const InnerFunction& theta, const InnerFunction& target, const DiskSelfMap& phi,
                        const Settings& settings) {
    const Settings bs = battery_settings(settings);
    std::vector<std::size_t> powers;
    std::vector<std::string> labels;
    for (std::size_t j = 0; j <= settings.battery_degree; ++j) {
        powers.push_back(j);
        labels.push_back("theta z^" + std::to_string(j));
    }
    const auto generator = [&theta](std::size_t j) {
        const double e = static_cast<double>(j);
        return AnalyticFunction([theta, j](cplx z) { return theta.eval_unchecked(z) * ipow(z, j); }, std::nullopt,
                                [theta, e](cplx z) { return theta.log_abs(z) + (e > 0.0 ? e * std::log(std::abs(z)) : 0.0); });
    };
    return run_battery(
        powers, [&](std::size_t j) { return member_theta_Hp(generator(j), theta, 2.0, bs); },
        [&](std::size_t j) {
            const double e = static_cast<double>(j);
            return AnalyticFunction(
                [theta, phi, j](cplx z) {
                    const cplx w = phi(z);
                    return theta.eval_unchecked(w) * ipow(w, j);
                },
                std::nullopt,
                [theta, phi, e](cplx z) {
                    const cplx w = phi(z);
                    return theta.log_abs(w) + (e > 0.0 ? e * std::log(std::abs(w)) : 0.0);
                });
        },
        [&](const AnalyticFunction& g) { return member_theta_Hp(g, target, 2.0, bs); }, labels);
}

}  // namespace

Verdict check_Hab(const DiskSelfMap& phi, const AdmissiblePair& pair, const Settings& settings) {
    Verdict v = make_verdict("check_Hab", settings);
    const double tol = settings.tol.map_eq;
    const bool identity = phi.is_identity(tol, settings.order);
    const cplx p0 = phi.at_zero();
    const cplx p1 = phi.derivative(0.0);
    const bool beta_zero = std::abs(pair.beta()) <= 1e-12;
    v.criterion.add("identity", identity).add("phi0", p0).add("phi1", p1).add("beta_zero", beta_zero);
    if (identity) {
        v.criterion.outcome = Outcome::holds;
        v.criterion.note = "identity map";
    } else if (beta_zero) {
        v.criterion.outcome = outcome_of(std::abs(p0) <= tol || std::abs(p1) <= tol);
        v.criterion.note = "pair (1, 0): invariant iff phi(0) = 0 or phi'(0) = 0";
    } else {
        v.criterion.outcome = Outcome::fails;
        v.criterion.note = "beta != 0: only the identity preserves the subspace";
    }

    const CompositionOperator C(phi);
    const std::size_t D = settings.battery_degree;
    const auto gens = hab_generators(pair, D);
    v.direct = run_battery(
        gens, [&](const std::vector<cplx>& c) { return member_Hab(TaylorSeries(c), pair, settings); },
        [&](const std::vector<cplx>& c) { return padded(C.apply(TaylorSeries(c), std::max<std::size_t>(D + 2, 16)), 1); },
        [&](const TaylorSeries& g) { return member_Hab(g, pair, settings); }, hab_labels(D, ""));
    v.settle();
    return v;
}

Verdict check_zn_Hab_monomial(std::size_t n, std::size_t k, const AdmissiblePair& pair, const Settings& settings) {
    if (n == 0 || k == 0) throw HypothesisViolated("z^n H_{alpha,beta} check needs n >= 1 and k >= 1");
    if (std::abs(pair.beta()) <= 1e-12) throw HypothesisViolated("z^n H_{alpha,beta} check needs beta != 0");
    Verdict v = make_verdict("check_zn_Hab_monomial", settings);
    v.criterion.add("n", static_cast<long long>(n)).add("k", static_cast<long long>(k));
    v.criterion.outcome = outcome_of((n == 1 && k != 2) || n >= 2);

    const InnerFunction J = InnerFunction::monomial(n);
    const DiskSelfMap phi = DiskSelfMap::monomial(k);
    const CompositionOperator C(phi);
    const std::size_t D = settings.battery_degree;
    std::vector<TaylorSeries> gens;
    for (const auto& c : hab_generators(pair, D)) {
        std::vector<cplx> s(n, cplx{});
        s.insert(s.end(), c.begin(), c.end());
        gens.emplace_back(s);
    }
    const std::string factor = "z^" + std::to_string(n) + " ";
    v.direct = run_battery(
        gens, [&](const TaylorSeries& f) { return member_J_Hab(f, J, pair, settings); },
        [&](const TaylorSeries& f) { return padded(C.apply(f), n + 1); },
        [&](const TaylorSeries& g) { return member_J_Hab(g, J, pair, settings); }, hab_labels(D, factor));
    v.settle();
    return v;
}

Verdict check_atomic_singular_Hab(double lambda, const AdmissiblePair& pair, const DiskSelfMap& phi,
                                  const Settings& settings) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw HypothesisViolated("singular weight lambda must be positive");
    Verdict v = make_verdict("check_atomic_singular_Hab", settings);
    const double tol = settings.tol.map_eq;
    const cplx ratio = pair.beta() / (2.0 * pair.alpha());
    const double scale = std::max(1.0, std::abs(ratio));
    const bool real_positive = std::abs(ratio.imag()) <= 1e-12 * scale && ratio.real() > 0.0;
    const bool equal = real_positive && std::abs(lambda - ratio.real()) <= 1e-9 * std::max(1.0, lambda);
    const bool identity = phi.is_identity(tol, settings.order);
    const cplx p0 = phi.at_zero();
    const cplx p1 = phi.derivative(0.0);
    const cplx e0 = 2.0 * lambda * p0 / (p0 - 1.0);
    const cplx e1 = 2.0 * lambda * (1.0 - p1 / ((p0 - 1.0) * (p0 - 1.0)));
    v.criterion.add("beta_over_2alpha", ratio).add("lambda_matches", equal).add("identity", identity);
    v.criterion.add("phi0", p0).add("phi1", p1).add("g0_factor", std::exp(e0));
    if (identity)
        v.criterion.outcome = Outcome::holds;
    else if (equal)
        v.criterion.outcome = outcome_of(std::abs(p0) <= tol || std::abs(p1) <= tol);
    else
        v.criterion.outcome = Outcome::fails;

    // Origin jet of E = λ((φ+1)/(φ-1) - (z+1)/(z-1)); g = exp(E) f∘φ. The common factor
    // exp(E(0)) does not affect the homogeneous identity and is left out of the jets.
    const std::size_t D = settings.battery_degree;
    v.direct = run_battery(
        hab_generators(pair, D), [&](const std::vector<cplx>& c) { return member_Hab(TaylorSeries(c), pair, settings); },
        [&](const std::vector<cplx>& c) {
            const cplx f0 = poly_eval(c, p0);
            const cplx f1 = poly_derivative(c, p0);
            return TaylorSeries(std::vector<cplx>{f0, e1 * f0 + f1 * p1});
        },
        [&](const TaylorSeries& g) { return member_Hab(g, pair, settings); }, hab_labels(D, "S "));
    v.direct->note += "; origin identity of g = (S o phi / S)(f o phi)";

    // Boundedness probe of S∘φ/S: log |S∘φ/S| = Re E.
    const auto log_mult = [&](cplx z) {
        const cplx w = phi(z);
        return lambda * ((w + 1.0) / (w - 1.0) - (z + 1.0) / (z - 1.0)).real();
    };
    std::vector<double> sups;
    for (double r : settings.grid.radii()) {
        double m = log_mult(cplx(r, 0.0));
        for (std::size_t j = 0; j < settings.grid.angular_count(); ++j)
            m = std::max(m, log_mult(std::polar(r, settings.grid.angle(j))));
        sups.push_back(m);
    }
    const bool grows = !identity && sups.back() - sups[sups.size() - 2] > std::log(10.0);
    v.criterion.add("multiplier_log_circle_sups", sups).add("multiplier_unbounded", grows);
    if (grows)
        v.notes.push_back("S o phi / S grows without bound towards the atom, so g leaves H^p although the origin identity holds");
    v.settle();
    return v;
}

Verdict check_J_Hab(const InnerFunction& J, const AdmissiblePair& pair, const DiskSelfMap& phi,
                    const Settings& settings) {
    const std::size_t n = J.origin_multiplicity();
    if (n == 0 && hab_collapse(J, pair, settings).criterion.outcome == Outcome::holds)
        throw CollapseDetected("J H_{alpha,beta} coincides with H_{1,0}");
    Verdict v = make_verdict("check_J_Hab", settings);
    const double tol = settings.tol.eq;
    const bool identity = phi.is_identity(settings.tol.map_eq, settings.order);
    v.criterion.add("origin_multiplicity", static_cast<long long>(n)).add("identity", identity);

    double worst_image = 0.0;
    bool maps_zeros = true;
    std::optional<cplx> stray;
    if (n > 0) {
        worst_image = distance_to_zero_set(J, phi.at_zero());
        if (worst_image > tol) {
            maps_zeros = false;
            stray = 0.0;
        }
    }
    for (const auto& z : J.blaschke_zeros()) {
        const double d = distance_to_zero_set(J, phi(z.a));
        worst_image = std::max(worst_image, d);
        if (d > tol && maps_zeros) {
            maps_zeros = false;
            stray = z.a;
        }
    }
    const AnalyticFunction composed([J, phi](cplx z) { return J.eval_unchecked(phi(z)); });
    const std::size_t need = n + 2;
    const Jet jet = composed.jet(0.0, need - 1);
    double coeff_max = 0.0;
    for (std::size_t k = 0; k < need; ++k) coeff_max = std::max(coeff_max, std::abs(jet.coeffs[k]));
    const bool vanishes = coeff_max <= tol;
    v.criterion.add("zero_image_gap", worst_image)
        .add("maps_zero_set", maps_zeros)
        .add("required_vanishing_order", static_cast<long long>(need))
        .add("composed_low_coefficients_max", coeff_max);
    if (stray) v.criterion.add("stray_zero", *stray);

    if (identity) {
        v.criterion.outcome = Outcome::holds;
        v.criterion.note = "identity map preserves every subspace";
        v.notes.push_back("the zero-set criterion excludes the identity map; it is treated as invariant");
    } else if (n == 0) {
        v.criterion.outcome = outcome_of(maps_zeros && vanishes);
    } else {
        v.criterion.outcome = maps_zeros && vanishes ? Outcome::holds : Outcome::inconclusive;
        v.criterion.note = "sufficient-only: J o phi in z^{n+2} H^inf with phi(Z_J) in Z_J implies invariance";
    }

    const Settings bs = battery_settings(settings);
    const std::size_t D = settings.battery_degree;
    const auto gens = hab_generators(pair, D);
    v.direct = run_battery(
        gens,
        [&](const std::vector<cplx>& c) {
            return member_J_Hab(AnalyticFunction([J, c](cplx z) { return J.eval_unchecked(z) * poly_eval(c, z); }), J,
                                pair, bs);
        },
        [&](const std::vector<cplx>& c) {
            return AnalyticFunction([J, c, phi](cplx z) {
                const cplx w = phi(z);
                return J.eval_unchecked(w) * poly_eval(c, w);
            });
        },
        [&](const AnalyticFunction& g) { return member_J_Hab(g, J, pair, bs); }, hab_labels(D, "J "));
    v.settle();
    return v;
}

Verdict check_beurling(const InnerFunction& theta, const DiskSelfMap& phi, const Settings& settings) {
    Verdict v = make_verdict("check_beurling", settings);
    const QuotientReport q = quotient_analytic(theta, phi, settings.tol);
    v.criterion.add("quotient_analytic", q.analytic).add("singular_free", q.singular_free);
    if (q.witness) v.criterion.add("witness", *q.witness);
    if (!q.analytic) {
        v.criterion.outcome = Outcome::fails;
        v.criterion.note = "theta o phi / theta has a pole";
    } else {
        const double sup = q.sup_estimate(settings.grid);
        const bool schur = sup <= 1.0 + settings.tol.sup;
        v.criterion.add("quotient_sup", sup).add("schur", schur);
        if (q.singular_free) {
            v.criterion.outcome = schur ? Outcome::holds : Outcome::inconclusive;
            v.criterion.note = schur ? "zero multiplicities match"
                                     : "zero multiplicities match but the sup estimate exceeds one";
        } else {
            v.criterion.outcome = outcome_of(schur);
        }
    }
    v.direct = theta_battery(theta, theta, phi, settings);
    v.settle();
    return v;
}

Verdict elliptic_constant(const InnerFunction& theta, const DiskSelfMap& phi, const Settings& settings) {
    const FixedPointReport fp = fixed_points(phi, settings.tol);
    if (fp.classification != MapClass::elliptic || !fp.interior)
        throw HypothesisViolated("elliptic_constant needs an elliptic automorphism");
    Verdict v = make_verdict("elliptic_constant", settings);
    const cplx w = fp.interior->point;
    const std::size_t m = theta.mult_at(w, settings.tol.cluster);
    const cplx expected = m > 0 ? std::pow(phi.derivative(w), static_cast<double>(m)) : cplx(1.0);
    v.criterion.add("fixed_point", w).add("multiplicity", static_cast<long long>(m)).add("expected", expected);

    const QuotientReport q = quotient_analytic(theta, phi, settings.tol);
    v.criterion.add("quotient_analytic", q.analytic);
    if (!q.analytic) {
        v.criterion.outcome = Outcome::fails;
        v.criterion.note = "theta o phi / theta has a pole";
    } else {
        const AnalyticFunction& Q = *q.quotient;
        const cplx c = Q(0.5 * w);
        double spread = 0.0;
        const auto& grid = settings.grid;
        for (double r : grid.radii())
            for (std::size_t j = 0; j < grid.angular_count(); ++j)
                spread = std::max(spread, std::abs(Q(std::polar(r, grid.angle(j))) - c));
        const bool constant = spread <= 1e-8;
        const bool unimodular = std::abs(std::abs(c) - 1.0) <= 1e-8;
        v.criterion.add("constant", c).add("spread", spread).add("formula_gap", std::abs(c - expected));
        v.criterion.outcome = outcome_of(constant && unimodular);
        if (constant && unimodular && std::abs(c - expected) > 1e-8)
            v.notes.push_back("constant differs from phi'(w)^m");
    }
    v.direct = theta_battery(theta, theta, phi, settings);
    v.settle();
    return v;
}

InnerFunction orbit_blaschke(const DiskSelfMap& phi, cplx z, std::size_t M) {
    const OrbitRecord rec = orbit(phi, z, M);
    std::vector<BlaschkeZero> zeros;
    for (cplx a : rec.points) zeros.push_back({a, 1});
    return InnerFunction(1.0, 0, std::move(zeros), {});
}

Verdict parabolic_orbit_subspace(const DiskSelfMap& phi, cplx z, std::size_t M, const Settings& settings) {
    if (classify_automorphism(phi, settings.tol) != MapClass::parabolic)
        throw HypothesisViolated("orbit subspace needs a parabolic automorphism");
    if (M < 2) throw InvalidInput("orbit subspace needs M >= 2");
    const OrbitRecord rec = orbit(phi, z, M);
    if (rec.summability != Summability::summable) throw HypothesisViolated("orbit is not flagged Blaschke summable");
    Verdict v = make_verdict("parabolic_orbit_subspace", settings);

    const InnerFunction B = orbit_blaschke(phi, z, M);
    double worst = 0.0;
    std::size_t matched = 0;
    for (std::size_t m = 0; m < M; ++m) {
        const double d = distance_to_zero_set(B, phi(rec.points[m]));
        worst = std::max(worst, d);
        if (d <= settings.tol.root) ++matched;
    }
    const cplx escaped = phi(rec.points[M]);
    const OrbitRecord tail = orbit(phi, escaped, M);
    double tail_sum = 0.0;
    for (double g : tail.gaps) tail_sum += g;
    v.criterion.add("orbit_points", static_cast<long long>(M + 1))
        .add("matched_points", static_cast<long long>(matched))
        .add("worst_image_gap", worst)
        .add("truncation_defect_point", escaped)
        .add("truncation_defect_gap", 1.0 - std::abs(escaped))
        .add("tail_gap_sum", tail_sum);
    v.criterion.outcome = outcome_of(matched == M);
    v.criterion.note = "the image of the last orbit point leaves the truncated product";

    std::vector<BlaschkeZero> head;
    for (std::size_t m = 0; m < M; ++m) head.push_back({rec.points[m], 1});
    const InnerFunction restricted(1.0, 0, std::move(head), {});
    v.direct = theta_battery(B, restricted, phi, settings);
    v.direct->note += "; images tested against the product over the first M orbit points";
    v.settle();
    return v;
}

}  // namespace hil
