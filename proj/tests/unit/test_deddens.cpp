#include <cmath>
#include <random>

#include "doctest.h"
#include "hil/deddens.hpp"
#include "oracles.hpp"

using hil::cplx;
using hil::DeddensGenerator;
using hil::DiskSelfMap;
using hil::HardyExponent;
using hil::InnerFunction;
using hil::Outcome;
using hil::TaylorSeries;
using namespace std::complex_literals;

namespace {

DiskSelfMap scaled_z(double delta) { return DiskSelfMap::polynomial({0.0, delta}); }

std::vector<cplx> random_coeffs(std::mt19937_64& rng, std::size_t degree) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cplx> c(degree + 1);
    for (auto& x : c) x = cplx(g(rng), g(rng));
    return c;
}

/// Random strict self-map fixing the origin, built from polynomials with coefficient sum below 1.
DiskSelfMap random_origin_map(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> deg(1, 3);
    std::vector<cplx> c(static_cast<std::size_t>(deg(rng)) + 1, cplx{});
    double total = 0.0;
    for (std::size_t k = 1; k < c.size(); ++k) {
        c[k] = std::polar(u(rng), 2.0 * M_PI * u(rng));
        total += std::abs(c[k]);
    }
    const double target = 0.2 + 0.7 * u(rng);
    for (auto& x : c) x *= target / std::max(total, 1e-12);
    return DiskSelfMap::polynomial(c);
}

/// sup |h| on the closed disk, sampled densely on the unit circle.
double circle_sup(const std::vector<cplx>& h) {
    double best = 0.0;
    const std::size_t count = 65536;
    for (std::size_t j = 0; j < count; ++j) {
        const cplx z = std::polar(1.0, 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(count));
        cplx v{};
        for (std::size_t k = h.size(); k-- > 0;) v = v * z + h[k];
        best = std::max(best, std::abs(v));
    }
    return best;
}

}  // namespace

TEST_CASE("deddens_ratio_probe examples") {
    const HardyExponent p2(2.0);
    std::mt19937_64 rng(11);
    std::vector<TaylorSeries> battery;
    for (int i = 0; i < 4; ++i) battery.emplace_back(random_coeffs(rng, 6));

    SUBCASE("unit multiplier gives unit ratios") {
        for (const auto& phi : {scaled_z(0.5), DiskSelfMap::monomial(2), DiskSelfMap::polynomial({0.0, 0.3, 0.4})}) {
            const auto r = hil::deddens_ratio_probe(DeddensGenerator::multiplication({1.0}), phi, battery, 12, p2);
            for (const auto& row : r.ratios)
                for (double x : row) CHECK(x == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(r.bounded_verdict == Outcome::holds);
        }
    }
    SUBCASE("composition with z/2 does not grow norms") {
        const auto r = hil::deddens_ratio_probe(DeddensGenerator::composition(), scaled_z(0.5), battery, 30, p2);
        // Diagonal oracle: ||C f||^2 = sum |c_k|^2 4^{-k} <= ||f||^2.
        for (std::size_t i = 0; i < battery.size(); ++i) {
            const auto& c = battery[i].coeffs();
            for (std::size_t n = 0; n < r.ratios[i].size(); ++n) {
                double num = 0.0, den = 0.0;
                for (std::size_t k = 0; k < c.size(); ++k) {
                    const double w = std::pow(0.5, 2.0 * static_cast<double>(k) * static_cast<double>(n + 1));
                    den += std::norm(c[k]) * w;
                    num += std::norm(c[k]) * w * std::pow(0.25, static_cast<double>(k));
                }
                CHECK(r.ratios[i][n] == doctest::Approx(std::sqrt(num / den)).epsilon(1e-9));
                CHECK(r.ratios[i][n] <= 1.0 + 1e-12);
            }
        }
        CHECK(r.sup_ratio <= 1.0 + 1e-12);
    }
    SUBCASE("multiplier (1+z)/2 stays below its sup norm") {
        const auto r =
            hil::deddens_ratio_probe(DeddensGenerator::multiplication({0.5, 0.5}), scaled_z(0.5), battery, 20, p2);
        CHECK(r.sup_ratio <= 1.0 + 1e-12);
        CHECK(r.bounded_verdict == Outcome::holds);
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(hil::deddens_ratio_probe(DeddensGenerator::composition(), DiskSelfMap::polynomial({0.1, 0.5}),
                                                 battery, 5, p2),
                        hil::HypothesisViolated);
        CHECK_THROWS_AS(hil::deddens_ratio_probe(DeddensGenerator::composition(), scaled_z(0.5),
                                                 {TaylorSeries({0.0, 0.0})}, 5, p2),
                        hil::InvalidInput);
    }
    SUBCASE("underflow shortens the run") {
        const auto r = hil::deddens_ratio_probe(DeddensGenerator::composition(), scaled_z(0.01),
                                                {TaylorSeries::monomial(40)}, 50, p2);
        CHECK(r.n_max_used < r.n_max_requested);
        CHECK_FALSE(r.notes.empty());
        for (const auto& row : r.ratios) CHECK(row.size() == r.n_max_used);
    }
}

TEST_CASE("certify_antiderivative examples") {
    const HardyExponent p2(2.0);
    SUBCASE("hand expansions of the intertwining identity") {
        // phi = z/2, f = 1: (V1)(z/2) = z/2 and V(1/2 * 1) = z/2.
        const auto lhs = DeddensGenerator::composition().apply(TaylorSeries({0.0, 1.0}), scaled_z(0.5), 8);
        CHECK(std::abs(lhs[1] - 0.5) < 1e-15);
        // phi = z^2, f = z: both sides equal z^4 / 2.
        const DiskSelfMap sq = DiskSelfMap::monomial(2);
        const TaylorSeries vf = DeddensGenerator::antiderivative().apply(TaylorSeries({0.0, 1.0}), sq, 8);
        const TaylorSeries left = DeddensGenerator::composition().apply(vf, sq, 8);
        const TaylorSeries right = DeddensGenerator::antiderivative().apply(TaylorSeries({0.0, 0.0, 0.0, 2.0}), sq, 8);
        for (std::size_t k = 0; k <= 8; ++k) {
            const cplx expected = k == 4 ? cplx(0.5) : cplx{};
            CHECK(std::abs(left[k] - expected) < 1e-15);
            CHECK(std::abs(right[k] - expected) < 1e-15);
        }
    }
    SUBCASE("z/2 certificate") {
        const auto r = hil::certify_antiderivative(scaled_z(0.5), 6, p2);
        REQUIRE(r.intertwining_residual.has_value());
        CHECK(*r.intertwining_residual <= 1e-8);
        CHECK(r.sup_ratio <= 1.1);
        CHECK(r.bounded_verdict == Outcome::holds);
    }
    SUBCASE("precondition") {
        CHECK_THROWS_AS(hil::certify_antiderivative(DiskSelfMap::polynomial({0.2, 0.5}), 3, p2),
                        hil::HypothesisViolated);
    }
}

TEST_CASE("zero_moment_probe examples") {
    const auto phi = scaled_z(0.5);
    SUBCASE("Blaschke factor at 1/2") {
        const auto v = hil::zero_moment_probe(InnerFunction::blaschke(0.5), phi);
        CHECK(v.holds());
        CHECK(std::get<long long>(*v.criterion.find("witness_n")) == 0);
        const cplx I = std::get<cplx>(*v.criterion.find("moment"));
        CHECK(std::abs(I) == doctest::Approx(oracle::blaschke_half_integral()).epsilon(1e-10));
        REQUIRE(v.direct.has_value());
        CHECK(v.direct->outcome == Outcome::holds);
    }
    SUBCASE("theta = z has no admissible zero") {
        CHECK_THROWS_AS(hil::zero_moment_probe(InnerFunction::monomial(1), phi), hil::HypothesisViolated);
    }
    SUBCASE("Blaschke factor at 0.3i") {
        const auto v = hil::zero_moment_probe(InnerFunction::blaschke(0.3i), phi);
        CHECK(v.holds());
        CHECK(std::get<long long>(*v.criterion.find("witness_n")) == 0);
        CHECK(std::abs(std::get<cplx>(*v.criterion.find("moment"))) > 1e-3);
    }
}

TEST_CASE("singular_atom_probe examples") {
    const auto phi = scaled_z(0.5);
    SUBCASE("single atom at pi") {
        const auto v = hil::singular_atom_probe(InnerFunction::atom(M_PI, 1.0), 0, phi);
        CHECK(v.holds());
        CHECK(std::get<long long>(*v.criterion.find("first_m")) == 0);
        REQUIRE(v.direct.has_value());
        CHECK(std::get<double>(*v.direct->find("log_blowup_outer")) > std::log(1e3));
    }
    SUBCASE("constant S is rejected") {
        CHECK_THROWS_AS(hil::singular_atom_probe(InnerFunction::one(), 0, phi), hil::HypothesisViolated);
    }
    SUBCASE("two atoms: the heavier one blows up first") {
        const InnerFunction S(1.0, 0, {}, {{0.5, 1.0}, {3.5, 3.0}});
        const auto v = hil::singular_atom_probe(S, 0, phi);
        CHECK(v.holds());
        REQUIRE(v.direct.has_value());
        CHECK(std::get<double>(*v.direct->find("first_atom_t")) == doctest::Approx(3.5));
    }
}

TEST_CASE("lattice_decay examples") {
    const HardyExponent p2(2.0);
    SUBCASE("z/2 with m = 2, k = 1 decays like 4^{-n}") {
        const auto v = hil::lattice_decay(scaled_z(0.5), 2, 1, TaylorSeries({1.0}), p2, 30);
        CHECK(v.holds());
        const auto logs = std::get<std::vector<double>>(*v.criterion.find("log_ratios"));
        // Closed form: mean |z/2^n|^4 / mean |z/2^n|^2 = 4^{-n} on the unit circle.
        for (std::size_t i = 0; i < logs.size(); ++i)
            CHECK(logs[i] == doctest::Approx(-static_cast<double>(i + 1) * std::log(4.0)).epsilon(1e-12));
    }
    SUBCASE("m = k is rejected") {
        CHECK_THROWS_AS(hil::lattice_decay(scaled_z(0.5), 2, 2, TaylorSeries({1.0}), p2, 10),
                        hil::HypothesisViolated);
    }
    SUBCASE("z^2/2 with m = 3, k = 0 beats delta^{6n}") {
        const auto v = hil::lattice_decay(DiskSelfMap::polynomial({0.0, 0.0, 0.5}), 3, 0, TaylorSeries({1.0}), p2, 8);
        CHECK(v.holds());
        CHECK(std::get<bool>(*v.criterion.find("bound_ok")));
    }
    SUBCASE("non-strict map is rejected") {
        CHECK_THROWS_AS(hil::lattice_decay(DiskSelfMap::identity(), 2, 1, TaylorSeries({1.0}), p2, 10),
                        hil::HypothesisViolated);
    }
}

TEST_CASE("lattice_scan examples") {
    SUBCASE("z/2 keeps every z^n H^p") {
        const auto r = hil::lattice_scan(scaled_z(0.5), 6);
        CHECK(r.n_values.size() == 7);
        CHECK(r.all_survived());
        CHECK(r.max_leakage.front() == 0.0);
        for (const auto& w : r.witnesses) CHECK(w.empty());
    }
    SUBCASE("z^2/3") {
        CHECK(hil::lattice_scan(DiskSelfMap::polynomial({0.0, 0.0, 1.0 / 3.0}), 4).all_survived());
    }
    SUBCASE("multiplier symbols are contractive") {
        for (const auto& h : hil::lattice_multipliers()) CHECK(circle_sup(h) <= 1.0 + 1e-12);
    }
}

TEST_CASE("property: generators never lower the vanishing order") {
    std::mt19937_64 rng(hil::Settings::from_environment().seed);
    std::uniform_int_distribution<std::size_t> v_pick(0, 6), g_pick(0, 2), d_pick(0, 8);
    const std::size_t order = 24;
    for (int t = 0; t < 300; ++t) {
        const std::size_t v = v_pick(rng);
        auto c = random_coeffs(rng, v + d_pick(rng));
        for (std::size_t k = 0; k < v; ++k) c[k] = 0.0;
        const TaylorSeries f(c);
        const DiskSelfMap phi = random_origin_map(rng);
        DeddensGenerator T = DeddensGenerator::composition();
        const std::size_t which = g_pick(rng);
        if (which == 1) T = DeddensGenerator::multiplication(random_coeffs(rng, 3));
        if (which == 2) T = DeddensGenerator::antiderivative();
        const TaylorSeries img = T.apply(f, phi, order);
        const std::size_t need = T.kind == DeddensGenerator::Kind::antiderivative ? v + 1 : v;
        for (std::size_t k = 0; k < need; ++k) CHECK(img[k] == cplx{});
    }
}

TEST_CASE("property: intertwining identity within 1e-8 up to n = 6") {
    std::mt19937_64 rng(hil::Settings::from_environment().seed + 1);
    for (int t = 0; t < 12; ++t) {
        hil::Settings s;
        s.seed = rng();
        const auto r = hil::certify_antiderivative(random_origin_map(rng), 6, HardyExponent(2.0), s);
        REQUIRE(r.intertwining_residual.has_value());
        CHECK(*r.intertwining_residual <= 1e-8);
    }
}

TEST_CASE("property: multiplier ratios never exceed the sup norm") {
    std::mt19937_64 rng(hil::Settings::from_environment().seed + 2);
    std::uniform_real_distribution<double> u(0.5, 3.0);
    for (int t = 0; t < 40; ++t) {
        const auto h = random_coeffs(rng, 4);
        std::vector<TaylorSeries> battery{TaylorSeries(random_coeffs(rng, 5)), TaylorSeries(random_coeffs(rng, 9))};
        const auto r = hil::deddens_ratio_probe(DeddensGenerator::multiplication(h), random_origin_map(rng), battery,
                                                15, HardyExponent(u(rng)));
        CHECK(r.sup_ratio <= circle_sup(h) * (1.0 + 1e-6));
    }
}

TEST_CASE("property: decay exponent matches (m - k) p log delta for delta z") {
    std::mt19937_64 rng(hil::Settings::from_environment().seed + 3);
    std::uniform_real_distribution<double> d(0.2, 0.8), pp(1.0, 3.0);
    std::uniform_int_distribution<std::size_t> kk(0, 3), gap(1, 3);
    for (int t = 0; t < 40; ++t) {
        const double delta = d(rng);
        const std::size_t k = kk(rng);
        const std::size_t m = k + gap(rng);
        auto c = random_coeffs(rng, 4);
        if (std::abs(c[0]) < 0.1) c[0] = 1.0;
        const auto v = hil::lattice_decay(scaled_z(delta), m, k, TaylorSeries(c), HardyExponent(pp(rng)), 60);
        CHECK(v.holds());
        CHECK(std::get<double>(*v.criterion.find("exponent_relative_gap")) <= 0.05);
    }
}
