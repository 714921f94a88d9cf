#include <cmath>
#include <random>

#include "doctest.h"
#include "hil/inner.hpp"
#include "oracles.hpp"

using hil::cplx;
using hil::DiskSelfMap;
using hil::InnerFunction;
using namespace std::complex_literals;

TEST_CASE("inner evaluation") {
    CHECK(std::abs(InnerFunction::monomial(1)(0.3i) - 0.3i) < 1e-16);
    auto b = InnerFunction::blaschke(0.5);
    CHECK(std::abs(b(0.5)) < 1e-16);
    CHECK(std::abs(std::abs(b(0.0)) - 0.5) < 1e-16);
    auto s = InnerFunction::atom(0.0, 1.0);
    CHECK(std::abs(s(0.0) - std::exp(-1.0)) < 1e-15);
    CHECK_THROWS_AS(s(1.0), hil::OutOfDomain);
    CHECK_THROWS_AS(InnerFunction(0.5, 0, {}, {}), hil::InvalidInput);
    CHECK_THROWS_AS(InnerFunction::blaschke(1.0), hil::OutOfDisk);
    CHECK_THROWS_AS(InnerFunction::atom(0.0, -1.0), hil::InvalidInput);
}

TEST_CASE("log modulus matches the modulus") {
    InnerFunction th(std::polar(1.0, 0.4), 2, {{0.5, 1}, {cplx(-0.3, 0.6), 2}}, {{1.0, 0.7}, {4.0, 0.2}});
    std::mt19937_64 rng(7);
    for (cplx z : oracle::sample_points(rng, 64))
        CHECK(std::abs(th.log_abs(z) - std::log(std::abs(th(z)))) < 1e-12);
}

TEST_CASE("multiplicities") {
    InnerFunction th(1.0, 2, {{0.5, 1}}, {});
    CHECK(th.mult_at(0.0) == 2);
    CHECK(th.mult_at(0.5) == 1);
    CHECK(th.mult_at(0.3) == 0);
    CHECK(th.zero_count() == 3);
    CHECK(th.zeros().multiplicity_at(0.5) == 1);
}

TEST_CASE("composition with self-maps") {
    auto c1 = hil::compose_with_map(InnerFunction::monomial(3), DiskSelfMap::monomial(2));
    REQUIRE(c1.zeros.zeros.size() == 1);
    CHECK(std::abs(c1.zeros.zeros[0].point) < 1e-14);
    CHECK(c1.zeros.zeros[0].mult == 6);
    REQUIRE(c1.rational.has_value());
    CHECK(std::abs((*c1.rational)(0.7) - std::pow(0.7, 6)) < 1e-14);

    // Oracle: z^2 = 1/2 has the two simple roots ±1/sqrt(2).
    auto c2 = hil::compose_with_map(InnerFunction::blaschke(0.5), DiskSelfMap::monomial(2));
    REQUIRE(c2.zeros.zeros.size() == 2);
    for (const auto& z : c2.zeros.zeros) {
        CHECK(std::abs(std::abs(z.point) - std::sqrt(0.5)) < 1e-12);
        CHECK(std::abs(z.point.imag()) < 1e-12);
        CHECK(z.mult == 1);
    }

    auto c3 = hil::compose_with_map(InnerFunction::monomial(1), DiskSelfMap::constant(0.4i));
    CHECK(c3.zeros.zeros.empty());
    CHECK_FALSE(c3.zeros.identically_zero);
    CHECK(std::abs(c3.function(0.3) - 0.4i) < 1e-16);

    auto c4 = hil::compose_with_map(InnerFunction::blaschke(0.5), DiskSelfMap::constant(0.5));
    CHECK(c4.zeros.identically_zero);
}

TEST_CASE("quotient analyticity") {
    auto q1 = hil::quotient_analytic(InnerFunction::monomial(1), DiskSelfMap::monomial(2));
    CHECK(q1.analytic);
    REQUIRE(q1.quotient.has_value());
    CHECK(std::abs((*q1.quotient)(0.3 + 0.2i) - (0.3 + 0.2i)) < 1e-15);

    auto q2 = hil::quotient_analytic(InnerFunction::blaschke(0.5), DiskSelfMap::identity());
    CHECK(q2.analytic);
    for (cplx z : {cplx(0.1), cplx(-0.4, 0.3), cplx(0.0, 0.9)}) CHECK(std::abs((*q2.quotient)(z) - 1.0) < 1e-14);

    auto q3 = hil::quotient_analytic(InnerFunction::blaschke(0.5), DiskSelfMap::monomial(2));
    CHECK_FALSE(q3.analytic);
    REQUIRE(q3.witness.has_value());
    CHECK(std::abs(*q3.witness - 0.5) < 1e-16);
    REQUIRE(q3.checks.size() == 1);
    CHECK(q3.checks[0].mult_theta == 1);
    CHECK(q3.checks[0].mult_composed == 0);

    // A swap of 0 and c preserves the zero set of z·b_c.
    const cplx c(0.3, -0.2);
    auto q4 = hil::quotient_analytic(InnerFunction(1.0, 1, {{c, 1}}, {}), hil::make_mobius_involution(c));
    CHECK(q4.analytic);
    CHECK(q4.sup_estimate(hil::DiskGrid::default_grid()) <= 1.0 + 1e-9);

    auto q5 = hil::quotient_analytic(InnerFunction::monomial(2), DiskSelfMap::polynomial({0.0, 0.0, 0.5}));
    CHECK(q5.analytic);
    CHECK(q5.checks[0].mult_composed == 4);

    auto q6 = hil::quotient_analytic(InnerFunction::blaschke(0.5), DiskSelfMap::constant(0.5));
    CHECK(q6.analytic);
    CHECK(q6.identically_zero);
}

TEST_CASE("quotient resolution limits") {
    // φ(1/2) lands 4e-8 away from the zero: outside root tolerance, inside the ambiguity band.
    auto phi = DiskSelfMap::polynomial({1e-8, 1.0 - 1e-7});
    CHECK_THROWS_AS(hil::quotient_analytic(InnerFunction::blaschke(0.5), phi), hil::Inconclusive);
}

TEST_CASE("riesz factorization") {
    auto r1 = hil::riesz_factor(hil::TaylorSeries({0.0, 1.0}));
    CHECK(r1.blaschke.origin_multiplicity() == 1);
    CHECK(r1.blaschke.blaschke_zeros().empty());
    CHECK(std::abs(r1.cofactor[0] - 1.0) < 1e-14);
    CHECK(r1.cofactor.degree() == 0);

    // Oracle: (z - 1/2)(z - 2) = b_{1/2}(z) (z - 2)^2 / 2.
    auto r2 = hil::riesz_factor(hil::TaylorSeries({1.0, -2.5, 1.0}));
    REQUIRE(r2.blaschke.blaschke_zeros().size() == 1);
    CHECK(std::abs(r2.blaschke.blaschke_zeros()[0].a - 0.5) < 1e-12);
    for (cplx z : {cplx(0.0), cplx(0.3, 0.4), cplx(-0.9)})
        CHECK(std::abs(r2.cofactor(z) - (z - 2.0) * (z - 2.0) / 2.0) < 1e-12);
    CHECK(std::abs(r2.sup_f - r2.sup_g) < 1e-6);
    CHECK(r2.min_abs_g > 0.0);

    auto r3 = hil::riesz_factor(hil::TaylorSeries({1.0, 0.5}));
    CHECK(r3.blaschke.is_constant());
    CHECK(std::abs(r3.cofactor[0] - 1.0) < 1e-14);
    CHECK(std::abs(r3.cofactor[1] - 0.5) < 1e-14);

    CHECK_THROWS_AS(hil::riesz_factor(hil::TaylorSeries({-1.0, 1.0})), hil::BoundaryRoot);
}

namespace {

InnerFunction random_inner(std::mt19937_64& rng, double max_weight, std::size_t max_zeros, double rmax) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<hil::BlaschkeZero> zs;
    const std::size_t nz = static_cast<std::size_t>(u(rng) * static_cast<double>(max_zeros + 1));
    for (std::size_t k = 0; k < nz; ++k) zs.push_back({oracle::random_point(rng, rmax), 1});
    std::vector<hil::SingularAtom> at;
    const std::size_t na = static_cast<std::size_t>(u(rng) * 3.0);
    for (std::size_t k = 0; k < na; ++k) at.push_back({2.0 * M_PI * u(rng), max_weight * (0.1 + 0.9 * u(rng))});
    const std::size_t m0 = static_cast<std::size_t>(u(rng) * 3.0);
    return InnerFunction(std::polar(1.0, 2.0 * M_PI * u(rng)), m0, zs, at);
}

double angular_distance(double a, double b) {
    const double d = std::fmod(std::abs(a - b), 2.0 * M_PI);
    return std::min(d, 2.0 * M_PI - d);
}

}  // namespace

TEST_CASE("property: inner modulus") {
    std::mt19937_64 rng(31);
    const auto grid = hil::DiskGrid::default_grid().with_angles(512);
    for (int trial = 0; trial < 40; ++trial) {
        auto th = random_inner(rng, 2.0, 4, 0.95);
        for (double r : grid.radii())
            for (std::size_t j = 0; j < grid.angular_count(); ++j) CHECK(std::abs(th(std::polar(r, grid.angle(j)))) <= 1.0 + 1e-12);
    }
    // Near-boundary modulus for light atoms and zeros well inside the disk.
    for (int trial = 0; trial < 40; ++trial) {
        auto th = random_inner(rng, 0.03, 2, 0.5);
        for (std::size_t j = 0; j < grid.angular_count(); ++j) {
            const double t = grid.angle(j);
            bool far = true;
            for (const auto& a : th.atoms()) far = far && angular_distance(t, a.t) > 0.1;
            if (far) CHECK(std::abs(th(std::polar(0.9999, t))) >= 1.0 - 1e-3);
        }
    }
}

TEST_CASE("property: near-boundary modulus follows the Poisson bound for any weight") {
    // |S(z)| = exp(-Σ c P(z, t)) exactly, so away from atoms it is at least exp(-Σ c (1 - r^2) / δ^2).
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 40; ++trial) {
        auto th = random_inner(rng, 3.0, 0, 0.5);
        for (int j = 0; j < 256; ++j) {
            const double t = 2.0 * M_PI * j / 256.0;
            double bound = 0.0;
            bool far = true;
            for (const auto& a : th.atoms()) {
                const double delta = std::abs(std::polar(1.0, a.t) - std::polar(0.9999, t));
                far = far && angular_distance(t, a.t) > 0.1;
                bound += a.c * (1.0 - 0.9999 * 0.9999) / (delta * delta);
            }
            if (far && th.origin_multiplicity() == 0) CHECK(std::abs(th(std::polar(0.9999, t))) >= std::exp(-bound) * (1.0 - 1e-12));
        }
    }
}

TEST_CASE("property: quotient series times theta reproduces the composition") {
    const cplx c(0.3, -0.2);
    struct Case {
        InnerFunction theta;
        DiskSelfMap phi;
    };
    std::vector<Case> cases{
        {InnerFunction::monomial(1), DiskSelfMap::monomial(2)},
        {InnerFunction::blaschke(0.5), DiskSelfMap::identity()},
        {InnerFunction(1.0, 1, {{c, 1}}, {}), hil::make_mobius_involution(c)},
        {InnerFunction(1.0, 2, {}, {}), DiskSelfMap::polynomial({0.0, 0.3, 0.4})},
        {InnerFunction(1.0, 1, {}, {{0.0, 0.5}}), DiskSelfMap::monomial(2)},
        {InnerFunction(1.0, 0, {{0.4i, 1}}, {{2.0, 0.3}}), DiskSelfMap::rotation(1.0)},
    };
    for (const auto& cs : cases) {
        auto rep = hil::quotient_analytic(cs.theta, cs.phi);
        REQUIRE(rep.analytic);
        const auto q = rep.series(64);
        const auto th = cs.theta.series(64);
        const auto comp = hil::composed_series(cs.theta, cs.phi, 64);
        const auto prod = q * th;
        for (std::size_t k = 0; k <= 64; ++k) CHECK(std::abs(prod[k] - comp[k]) < 1e-8);
    }
}

TEST_CASE("property: structural multiplicity matches the local jet") {
    std::vector<InnerFunction> thetas{InnerFunction(1.0, 2, {{0.5, 1}}, {}),
                                      InnerFunction(1.0, 0, {{cplx(0.2, 0.5), 3}}, {{1.0, 0.4}}),
                                      InnerFunction(1.0i, 1, {{-0.6, 2}, {0.1i, 1}}, {})};
    for (const auto& th : thetas) {
        auto f = th.as_analytic(64);
        std::vector<cplx> probes{0.0, 0.3, cplx(0.1, -0.7)};
        for (const auto& z : th.blaschke_zeros()) probes.push_back(z.a);
        for (cplx a : probes) {
            // Oracle: Cauchy-integral jet from point values alone.
            hil::AnalyticFunction pointwise(f.pointwise());
            const auto jet = pointwise.jet(a, 8);
            CHECK(jet.vanishing_order(1e-6) == th.mult_at(a));
        }
    }
}
