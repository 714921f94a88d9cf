#include <cmath>
#include <random>

#include "doctest.h"
#include "hil/verifiers.hpp"
#include "oracles.hpp"

using hil::AdmissiblePair;
using hil::cplx;
using hil::DiskSelfMap;
using hil::InnerFunction;
using hil::Outcome;
using hil::Verdict;
using namespace std::complex_literals;

namespace {

AdmissiblePair random_pair(std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    return AdmissiblePair::normalized(cplx(g(rng), g(rng)), cplx(g(rng), g(rng)));
}

cplx unimodular(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    return std::polar(1.0, u(rng));
}

/// Conjugate of the rotation z -> c z by the involution swapping 0 and w.
DiskSelfMap elliptic_about(cplx w, cplx c) {
    const hil::Mobius s = *hil::make_mobius_involution(w).as_mobius();
    return DiskSelfMap::mobius(s.after(hil::Mobius{c, 0.0, 0.0, 1.0}).after(s));
}

/// Disk map conjugate to the half-plane translation w -> w + 1.
DiskSelfMap translation() { return DiskSelfMap::mobius(-1.0 + 2.0i, 1.0, -1.0, 1.0 + 2.0i); }

DiskSelfMap random_map(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, 5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    switch (pick(rng)) {
        case 0: return DiskSelfMap::rotation(unimodular(rng));
        case 1: return DiskSelfMap::monomial(1 + static_cast<std::size_t>(u(rng) * 4.0));
        case 2: {
            const hil::Mobius s = *hil::make_mobius_involution(oracle::random_point(rng, 0.8)).as_mobius();
            return DiskSelfMap::mobius(hil::Mobius{unimodular(rng), 0.0, 0.0, 1.0}.after(s));
        }
        case 3: {
            std::normal_distribution<double> g(0.0, 1.0);
            std::vector<cplx> c(4);
            double total = 0.0;
            for (auto& x : c) {
                x = cplx(g(rng), g(rng));
                total += std::abs(x);
            }
            for (auto& x : c) x *= 0.9 / total;
            return DiskSelfMap::polynomial(c);
        }
        case 4: return DiskSelfMap::constant(oracle::random_point(rng, 0.8));
        default: return DiskSelfMap::polynomial({0.0, 0.3 + 0.4 * u(rng)});
    }
}

InnerFunction random_blaschke(std::mt19937_64& rng, std::size_t max_zeros, double rmax) {
    std::uniform_int_distribution<std::size_t> count(1, max_zeros);
    std::vector<hil::BlaschkeZero> zs;
    const std::size_t n = count(rng);
    for (std::size_t k = 0; k < n; ++k) zs.push_back({oracle::random_point(rng, rmax), 1});
    return InnerFunction(unimodular(rng), 0, zs, {});
}

/// Both legs conclusive implies they agree.
void check_agreement(const Verdict& v, std::size_t& conclusive) {
    REQUIRE(v.direct.has_value());
    const Outcome c = v.criterion.outcome;
    const Outcome d = v.direct->outcome;
    if (c != Outcome::inconclusive && d != Outcome::inconclusive) {
        ++conclusive;
        CHECK_MESSAGE(c == d, v.claim);
        CHECK(v.agreement.value_or(false));
    }
}

}  // namespace

TEST_CASE("check_Hab examples") {
    std::mt19937_64 rng(101);
    const auto pair = random_pair(rng);
    CHECK(hil::check_Hab(DiskSelfMap::identity(), pair).holds());

    const AdmissiblePair ab(0.6, 0.8);
    const auto v = hil::check_Hab(DiskSelfMap::monomial(2), ab);
    CHECK(v.fails());
    CHECK(v.direct->outcome == Outcome::fails);
    REQUIRE(v.direct->witness.has_value());
    CHECK(*v.direct->witness == "C_phi((alpha + beta z))");
    // Oracle: α + βz² has value α and derivative 0, so f(0)β - f'(0)α = αβ.
    CHECK(std::abs(0.6 * 0.8 - 0.0 * 0.6) > 0.1);

    CHECK(hil::check_Hab(DiskSelfMap::monomial(2), AdmissiblePair(1.0, 0.0)).holds());
    CHECK(hil::check_Hab(DiskSelfMap::constant(0.4), AdmissiblePair(1.0i, 0.0)).holds());
    CHECK(hil::check_Hab(DiskSelfMap::polynomial({0.2, 0.5}), AdmissiblePair(1.0, 0.0)).fails());
}

TEST_CASE("check_zn_Hab_monomial matrix") {
    const AdmissiblePair pair(0.6, 0.8i);
    for (std::size_t n = 1; n <= 3; ++n)
        for (std::size_t k = 1; k <= 4; ++k) {
            const auto v = hil::check_zn_Hab_monomial(n, k, pair);
            const bool expected = !(n == 1 && k == 2);
            CHECK(v.holds() == expected);
            CHECK(v.agreement.value_or(false));
        }
    const auto w = hil::check_zn_Hab_monomial(1, 2, pair);
    REQUIRE(w.direct->witness.has_value());
    CHECK(*w.direct->witness == "C_phi(z^1 (alpha + beta z))");
    // The witness image is z(αz + βz³) = αz² + βz⁴.
    const auto image = hil::CompositionOperator(DiskSelfMap::monomial(2)).apply(hil::TaylorSeries({0.0, 0.6, 0.8i}));
    CHECK(std::abs(image[2] - 0.6) < 1e-15);
    CHECK(std::abs(image[4] - 0.8i) < 1e-15);
    CHECK_FALSE(hil::member_J_Hab(image, InnerFunction::monomial(1), pair).holds());
    CHECK_THROWS_AS(hil::check_zn_Hab_monomial(1, 2, AdmissiblePair(1.0, 0.0)), hil::HypothesisViolated);
}

TEST_CASE("check_atomic_singular_Hab examples") {
    CHECK(hil::check_atomic_singular_Hab(1.0, AdmissiblePair(1.0, 0.0), DiskSelfMap::identity()).holds());

    const double s = std::sqrt(0.5);
    const auto v = hil::check_atomic_singular_Hab(0.5, AdmissiblePair(s, s), DiskSelfMap::monomial(2));
    CHECK(v.holds());
    CHECK(std::get<bool>(*v.criterion.find("lambda_matches")));
    CHECK(std::get<bool>(*v.criterion.find("multiplier_unbounded")));

    const DiskSelfMap half = DiskSelfMap::polynomial({0.0, 0.5});
    const auto w = hil::check_atomic_singular_Hab(1.0, AdmissiblePair(1.0, 0.0), half);
    CHECK(w.fails());
    CHECK(w.direct->outcome == Outcome::fails);
    // Oracle: g = exp(λ((φ+1)/(φ-1) - (z+1)/(z-1))) f(φ) with f = 1, differentiated numerically.
    const auto g = [](cplx z) {
        const cplx p = 0.5 * z;
        return std::exp((p + 1.0) / (p - 1.0) - (z + 1.0) / (z - 1.0));
    };
    const double h = 1e-5;
    const cplx g1 = (g(h) - g(-h)) / (2.0 * h);
    CHECK(std::abs(g(0.0) * 0.0 - g1 * 1.0) > 0.5);

    // A complex β/(2α) never matches a real λ.
    CHECK(hil::check_atomic_singular_Hab(0.5, AdmissiblePair(s, s * 1.0i), DiskSelfMap::monomial(2)).fails());
    CHECK_THROWS_AS(hil::check_atomic_singular_Hab(0.0, AdmissiblePair(1.0, 0.0), half), hil::HypothesisViolated);
}

TEST_CASE("check_J_Hab examples") {
    const AdmissiblePair pair(0.6, 0.8);
    const auto B = InnerFunction::blaschke(0.5);
    const auto v1 = hil::check_J_Hab(B, pair, DiskSelfMap::constant(0.5));
    CHECK(v1.holds());
    CHECK(v1.agreement.value_or(false));

    const auto v2 = hil::check_J_Hab(B, pair, DiskSelfMap::monomial(2));
    CHECK(v2.fails());
    CHECK(v2.agreement.value_or(false));
    CHECK(std::abs(std::get<cplx>(*v2.criterion.find("stray_zero")) - 0.5) < 1e-15);

    const auto v3 = hil::check_J_Hab(InnerFunction::monomial(2), pair, DiskSelfMap::monomial(2));
    CHECK(v3.holds());
    CHECK(v3.agreement.value_or(false));

    // J = z²: z² ∘ (z/2) = z²/4 lacks the z^4 factor, so the sufficient test is silent.
    const auto v4 = hil::check_J_Hab(InnerFunction::monomial(2), pair, DiskSelfMap::polynomial({0.0, 0.5}));
    CHECK(v4.criterion.outcome == Outcome::inconclusive);

    const auto js = B.series(2);
    const auto collapse = AdmissiblePair::normalized(1.0, -js[1] / js[0]);
    CHECK_THROWS_AS(hil::check_J_Hab(B, collapse, DiskSelfMap::constant(0.5)), hil::CollapseDetected);

    const auto id = hil::check_J_Hab(B, pair, DiskSelfMap::identity());
    CHECK(id.holds());
    CHECK_FALSE(id.notes.empty());
}

TEST_CASE("check_beurling examples") {
    for (std::size_t m = 1; m <= 3; ++m)
        for (std::size_t k = 1; k <= 3; ++k) {
            const auto v = hil::check_beurling(InnerFunction::monomial(m), DiskSelfMap::monomial(k));
            CHECK(v.holds());
            CHECK(v.agreement.value_or(false));
        }
    const auto v = hil::check_beurling(InnerFunction::blaschke(0.5), DiskSelfMap::monomial(2));
    CHECK(v.fails());
    CHECK(v.agreement.value_or(false));

    const DiskSelfMap phi = DiskSelfMap::polynomial({0.0, 0.5, 0.4});
    CHECK(hil::schwarz_check(phi).holds());
    const auto s = hil::check_beurling(InnerFunction::monomial(1), phi);
    CHECK(s.holds());
    CHECK(s.agreement.value_or(false));

    // exp(-(1+z)/(1-z)) composed with the hyperbolic map fixing ±1 in either direction.
    const auto atom = InnerFunction::atom(0.0, 1.0);
    const auto in = hil::check_beurling(atom, DiskSelfMap::mobius(1.0, 0.5, 0.5, 1.0));
    CHECK(in.holds());
    CHECK(in.agreement.value_or(false));
    const auto out = hil::check_beurling(atom, DiskSelfMap::mobius(1.0, -0.5, -0.5, 1.0));
    CHECK(out.fails());
    CHECK(out.agreement.value_or(false));
}

TEST_CASE("elliptic_constant examples") {
    const auto v1 = hil::elliptic_constant(InnerFunction::monomial(2), DiskSelfMap::rotation(1.0i));
    CHECK(v1.holds());
    CHECK(std::abs(std::get<cplx>(*v1.criterion.find("constant")) + 1.0) < 1e-12);

    const auto v2 = hil::elliptic_constant(InnerFunction::monomial(1), DiskSelfMap::rotation(1.0i));
    CHECK(std::abs(std::get<cplx>(*v2.criterion.find("constant")) - 1.0i) < 1e-12);

    const auto v3 = hil::elliptic_constant(InnerFunction::blaschke(0.4), DiskSelfMap::rotation(1.0i));
    CHECK(v3.fails());
    CHECK_FALSE(std::get<bool>(*v3.criterion.find("quotient_analytic")));
    CHECK(v3.agreement.value_or(false));

    // Zero orbit of the quarter turn: θ ∘ φ = θ.
    const cplx a(0.4, 0.1);
    const InnerFunction orbit(1.0, 0, {{a, 1}, {1.0i * a, 1}, {-a, 1}, {-1.0i * a, 1}}, {});
    const auto v4 = hil::elliptic_constant(orbit, DiskSelfMap::rotation(1.0i));
    CHECK(v4.holds());
    CHECK(std::abs(std::get<cplx>(*v4.criterion.find("constant")) - 1.0) < 1e-10);

    const cplx w(0.3, 0.2);
    const cplx c = std::polar(1.0, 0.7);
    const auto v5 = hil::elliptic_constant(InnerFunction::blaschke(w, 2), elliptic_about(w, c));
    CHECK(v5.holds());
    CHECK(std::abs(std::get<cplx>(*v5.criterion.find("constant")) - c * c) < 1e-9);

    CHECK_THROWS_AS(hil::elliptic_constant(InnerFunction::monomial(1), DiskSelfMap::mobius(1.0, 0.5, 0.5, 1.0)),
                    hil::HypothesisViolated);
}

TEST_CASE("parabolic_orbit_subspace examples") {
    const DiskSelfMap phi = translation();
    CHECK(std::abs(phi(0.0) - cplx(1.0, 0.0) / cplx(1.0, 2.0)) < 1e-15);
    const auto v = hil::parabolic_orbit_subspace(phi, 0.0, 200);
    CHECK(v.holds());
    CHECK(v.criterion.number("matched_points") == doctest::Approx(200));
    CHECK(v.agreement.value_or(false));
    CHECK(v.criterion.number("truncation_defect_gap") == doctest::Approx(oracle::translation_gap(201)).epsilon(1e-6));

    const cplx later = hil::iterate(phi, 5)(0.0);
    const auto w = hil::parabolic_orbit_subspace(phi, later, 50);
    CHECK(w.holds());
    CHECK(w.outcome() == hil::parabolic_orbit_subspace(phi, 0.0, 50).outcome());

    CHECK_THROWS_AS(hil::parabolic_orbit_subspace(DiskSelfMap::mobius(1.0, 0.5, 0.5, 1.0), 0.0, 50),
                    hil::HypothesisViolated);
}

TEST_CASE("property: identity map is always invariant") {
    std::mt19937_64 rng(103);
    const DiskSelfMap id = DiskSelfMap::identity();
    for (int t = 0; t < 10; ++t) {
        const auto pair = random_pair(rng);
        CHECK(hil::check_Hab(id, pair).holds());
        CHECK(hil::check_atomic_singular_Hab(0.1 + t, pair, id).holds());
        const auto J = random_blaschke(rng, 3, 0.8);
        CHECK(hil::check_J_Hab(J, pair, id).holds());
        CHECK(hil::check_beurling(J, id).holds());
        CHECK(hil::check_beurling(InnerFunction(1.0, 1, {}, {{1.0, 0.5}}), id).holds());
    }
}

TEST_CASE("property: sufficient z^{n+2} vanishing never meets a violation") {
    std::mt19937_64 rng(107);
    std::size_t hits = 0;
    for (int t = 0; t < 40; ++t) {
        const auto pair = random_pair(rng);
        const std::size_t n = 1 + static_cast<std::size_t>(t % 3);
        const cplx a = oracle::random_point(rng, 0.7);
        InnerFunction J;
        DiskSelfMap phi = DiskSelfMap::identity();
        switch (t % 4) {
            case 0: J = InnerFunction::monomial(n); phi = DiskSelfMap::monomial(2 + t % 3); break;
            case 1: J = InnerFunction(1.0, n, {{a, 1}}, {}); phi = DiskSelfMap::constant(a); break;
            case 2: J = InnerFunction::monomial(n); phi = DiskSelfMap::polynomial({0.0, 0.0, 0.5 * a, 0.3}); break;
            default: J = InnerFunction(1.0, n, {{a, 1}}, {}); phi = DiskSelfMap::constant(0.0); break;
        }
        const auto v = hil::check_J_Hab(J, pair, phi);
        if (v.criterion.outcome == Outcome::holds) {
            ++hits;
            CHECK(v.direct->outcome != Outcome::fails);
        }
    }
    CHECK(hits >= 20);
}

TEST_CASE("property: matching multiplicities give a Schur quotient") {
    std::mt19937_64 rng(109);
    std::size_t hits = 0;
    for (int t = 0; t < 60; ++t) {
        InnerFunction theta;
        DiskSelfMap phi = DiskSelfMap::identity();
        const cplx a = oracle::random_point(rng, 0.8);
        const cplx c = unimodular(rng);
        switch (t % 4) {
            case 0: theta = InnerFunction::blaschke(a, 1 + t % 3); phi = elliptic_about(a, c); break;
            case 1: theta = InnerFunction(c, 1 + t % 2, {{a, 1}}, {}); phi = DiskSelfMap::constant(a); break;
            case 2: theta = InnerFunction(c, 1 + t % 3, {}, {}); phi = DiskSelfMap::polynomial({0.0, 0.0, 0.5 * c, 0.3 * a}); break;
            default: theta = random_blaschke(rng, 3, 0.9); phi = random_map(rng); break;
        }
        const auto q = hil::quotient_analytic(theta, phi);
        if (!q.analytic) continue;
        ++hits;
        CHECK(q.sup_estimate(hil::DiskGrid::default_grid()) <= 1.0 + 1e-6);
    }
    CHECK(hits >= 40);
}

TEST_CASE("property: legs agree across the randomized suite") {
    std::mt19937_64 rng(113);
    std::size_t cases = 0;
    std::size_t conclusive = 0;
    for (int t = 0; t < 150; ++t) {
        check_agreement(hil::check_Hab(random_map(rng), random_pair(rng)), conclusive);
        ++cases;
    }
    for (int t = 0; t < 60; ++t) {
        const auto pair = random_pair(rng);
        if (std::abs(pair.beta()) < 1e-6) continue;
        check_agreement(hil::check_zn_Hab_monomial(1 + t % 4, 1 + (t / 4) % 5, pair), conclusive);
        ++cases;
    }
    const double s = std::sqrt(0.5);
    for (int t = 0; t < 60; ++t) {
        const bool matched = t % 2 == 0;
        const auto pair = matched ? AdmissiblePair(s, s) : random_pair(rng);
        DiskSelfMap phi = t % 3 == 0 ? DiskSelfMap::monomial(2) : random_map(rng);
        INFO(phi.describe(), " lambda ", (matched ? 0.5 : 0.3 + t), " pair ", pair.alpha(), pair.beta());
        check_agreement(hil::check_atomic_singular_Hab(matched ? 0.5 : 0.3 + t, pair, phi), conclusive);
        ++cases;
    }
    for (int t = 0; t < 80; ++t) {
        const auto pair = random_pair(rng);
        const auto J = random_blaschke(rng, 2, 0.8);
        const DiskSelfMap phi = t % 4 == 0 ? DiskSelfMap::constant(J.blaschke_zeros().front().a) : random_map(rng);
        try {
            check_agreement(hil::check_J_Hab(J, pair, phi), conclusive);
        } catch (const hil::CollapseDetected&) {
            continue;
        }
        ++cases;
    }
    for (int t = 0; t < 100; ++t) {
        InnerFunction theta;
        DiskSelfMap phi = random_map(rng);
        switch (t % 4) {
            case 0: theta = InnerFunction::monomial(1 + t % 3); break;
            case 1: theta = random_blaschke(rng, 3, 0.8); break;
            case 2: theta = InnerFunction(1.0, t % 2, {}, {{0.0, 0.5}}); phi = DiskSelfMap::mobius(1.0, 0.3 * (t % 8 < 4 ? 1 : -1), 0.3 * (t % 8 < 4 ? 1 : -1), 1.0); break;
            default: theta = InnerFunction::blaschke(oracle::random_point(rng, 0.7)); break;
        }
        try {
            check_agreement(hil::check_beurling(theta, phi), conclusive);
        } catch (const hil::Inconclusive&) {
        }
        ++cases;
    }
    for (int t = 0; t < 40; ++t) {
        const cplx w = oracle::random_point(rng, 0.6);
        const auto theta = t % 2 == 0 ? InnerFunction::blaschke(w, 1 + t % 3) : random_blaschke(rng, 2, 0.8);
        check_agreement(hil::elliptic_constant(theta, elliptic_about(w, unimodular(rng))), conclusive);
        ++cases;
    }
    for (int t = 0; t < 10; ++t) {
        const cplx z = t == 0 ? cplx{} : hil::iterate(translation(), static_cast<std::size_t>(t))(0.0);
        check_agreement(hil::parabolic_orbit_subspace(translation(), z, 80), conclusive);
        ++cases;
    }
    CHECK(cases >= 500);
    CHECK(conclusive >= cases * 9 / 10);
}
