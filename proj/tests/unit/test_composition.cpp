#include <cmath>
#include <random>

#include "doctest.h"
#include "hil/composition.hpp"
#include "oracles.hpp"

using hil::CompositionOperator;
using hil::cplx;
using hil::DiskSelfMap;
using hil::TaylorSeries;
using namespace std::complex_literals;

namespace {

std::vector<cplx> random_poly(std::mt19937_64& rng, std::size_t degree) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cplx> c(degree + 1);
    for (auto& x : c) x = cplx(g(rng), g(rng));
    return c;
}

DiskSelfMap half() { return DiskSelfMap::polynomial({0.0, 0.5}); }

}  // namespace

TEST_CASE("apply") {
    std::mt19937_64 rng(61);
    const TaylorSeries f(random_poly(rng, 9));
    const auto id = CompositionOperator(DiskSelfMap::identity()).apply(f);
    for (std::size_t k = 0; k <= 9; ++k) CHECK(std::abs(id[k] - f[k]) < 1e-15);

    const auto z6 = CompositionOperator(DiskSelfMap::monomial(2)).apply(TaylorSeries::monomial(3));
    CHECK(z6.is_exact());
    CHECK(z6.degree() == 6);
    CHECK(std::abs(z6[6] - 1.0) < 1e-15);

    const auto g = CompositionOperator(half()).apply(TaylorSeries(std::vector<cplx>(17, 1.0)));
    for (std::size_t k = 0; k <= 16; ++k) CHECK(std::abs(g[k] - std::pow(2.0, -static_cast<double>(k))) < 1e-15);
}

TEST_CASE("matrix truncation") {
    auto I = hil::matrix_truncation(CompositionOperator(DiskSelfMap::identity()), 4);
    CHECK((I.entries - Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-15);

    auto P = hil::matrix_truncation(CompositionOperator(DiskSelfMap::monomial(2)), 5);
    for (int j = 0; j < 5; ++j)
        for (int k = 0; k < 5; ++k) CHECK(std::abs(P.entries(k, j) - ((k == 2 * j) ? 1.0 : 0.0)) < 1e-15);

    // Oracle: (z/2)^j = z^j / 2^j.
    auto D = hil::matrix_truncation(CompositionOperator(half()), 8);
    for (int j = 0; j < 8; ++j)
        for (int k = 0; k < 8; ++k) CHECK(std::abs(D.entries(k, j) - ((k == j) ? std::pow(0.5, j) : 0.0)) < 1e-15);

    CHECK_THROWS_AS(hil::matrix_truncation(CompositionOperator(half()), 1025), hil::InvalidInput);
}

TEST_CASE("norm bound check") {
    const hil::HardyExponent two(2.0);
    auto v1 = hil::norm_bound_check(CompositionOperator(half()), two);
    CHECK(v1.holds());
    CHECK(std::abs(v1.criterion.number("bound") - 1.0) < 1e-15);
    CHECK(v1.criterion.number("max_ratio") <= 1.0 + 1e-6);

    auto v2 = hil::norm_bound_check(CompositionOperator(DiskSelfMap::mobius(1.0, 0.5, 0.5, 1.0)), two);
    CHECK(v2.holds());
    CHECK(std::abs(v2.criterion.number("bound") - 3.0) < 1e-12);
    CHECK(v2.criterion.number("max_ratio") <= std::sqrt(3.0) + 1e-6);

    auto v3 = hil::norm_bound_check(CompositionOperator(DiskSelfMap::constant(0.0)), two);
    CHECK(v3.holds());
    CHECK(v3.criterion.number("max_ratio") <= 1.0 + 1e-12);

    auto v4 = hil::norm_bound_check(CompositionOperator(DiskSelfMap::mobius(1.0, 0.5, 0.5, 1.0)), hil::HardyExponent(0.5));
    CHECK(v4.outcome() == hil::Outcome::inconclusive);
    CHECK(v4.criterion.number("max_ratio") > 0.0);
}

TEST_CASE("compactness probe") {
    auto v1 = hil::compactness_probe(CompositionOperator(half()), 32);
    CHECK(v1.holds());
    const auto s = std::get<std::vector<double>>(*v1.criterion.find("singular_values"));
    for (std::size_t k = 0; k < 32; ++k) CHECK(std::abs(s[k] - std::pow(0.5, static_cast<double>(k))) < 1e-14);
    CHECK(std::abs(v1.criterion.number("fit_rate") - 0.5) < 1e-6);

    auto v2 = hil::compactness_probe(CompositionOperator(DiskSelfMap::constant(0.3 + 0.2i)), 16);
    CHECK(v2.holds());
    CHECK(std::get<bool>(*v2.criterion.find("finite_rank")));

    auto v3 = hil::compactness_probe(CompositionOperator(DiskSelfMap::polynomial({0.0, 0.5i})), 32);
    CHECK(v3.holds());
    CHECK(std::abs(v3.criterion.number("fit_rate") - 0.5) < 1e-6);

    CHECK_THROWS_AS(hil::compactness_probe(CompositionOperator(DiskSelfMap::rotation(1.0i))), hil::HypothesisViolated);
}

TEST_CASE("invertibility between vanishing subspaces") {
    auto v1 = hil::invertibility_Ha_Hb(hil::make_mobius_involution(0.5), 0.5, 0.0);
    CHECK(v1.holds());
    REQUIRE(v1.agreement.has_value());
    CHECK(*v1.agreement);

    auto v2 = hil::invertibility_Ha_Hb(DiskSelfMap::monomial(2), 0.0, 0.0);
    CHECK(v2.fails());

    const cplx b(0.3, 0.1);
    auto v3 = hil::invertibility_Ha_Hb(DiskSelfMap::rotation(1.0i), 1.0i * b, b);
    CHECK(v3.holds());
    CHECK(v3.direct->outcome == hil::Outcome::holds);

    auto v4 = hil::invertibility_Ha_Hb(DiskSelfMap::rotation(1.0i), b, b);
    CHECK(v4.fails());
    CHECK(v4.direct->outcome == hil::Outcome::fails);
}

TEST_CASE("property: semigroup") {
    std::mt19937_64 rng(67);
    std::vector<DiskSelfMap> maps{half(), DiskSelfMap::polynomial({0.1, 0.4, 0.3}), DiskSelfMap::mobius(1.0, 0.5, 0.5, 1.0),
                                  hil::make_mobius_involution(cplx(0.2, 0.3)), DiskSelfMap::rotation(std::polar(1.0, 0.4))};
    for (const auto& phi : maps) {
        const CompositionOperator C(phi);
        const CompositionOperator C2(hil::iterate(phi, 2));
        for (int t = 0; t < 5; ++t) {
            const TaylorSeries f(random_poly(rng, 8));
            const auto twice = C.apply(C.apply(f));
            const auto once = C2.apply(f);
            for (std::size_t k = 0; k <= 64; ++k) CHECK(std::abs(twice[k] - once[k]) < 1e-10);
        }
    }
}

TEST_CASE("property: matrix and series agree") {
    std::mt19937_64 rng(71);
    std::vector<DiskSelfMap> maps{half(), DiskSelfMap::polynomial({0.1, 0.4, 0.3}), DiskSelfMap::mobius(1.0, 0.5, 0.5, 1.0),
                                  DiskSelfMap::monomial(3), DiskSelfMap::constant(0.2)};
    for (const auto& phi : maps) {
        const CompositionOperator C(phi);
        const auto M = hil::matrix_truncation(C, 24);
        for (int t = 0; t < 5; ++t) {
            const auto c = random_poly(rng, 23);
            const auto mv = M.apply(c);
            const auto s = C.apply(TaylorSeries(c));
            for (std::size_t k = 0; k < 24; ++k) CHECK(std::abs(mv[k] - s[k]) < 1e-12 * (1.0 + std::abs(s[k])));
        }
    }
}

TEST_CASE("property: subordination keeps ratios at most one") {
    std::vector<DiskSelfMap> maps{half(), DiskSelfMap::monomial(3), DiskSelfMap::polynomial({0.0, 0.3, 0.6}),
                                  hil::make_mobius_involution(0.0), DiskSelfMap::composite({hil::make_mobius_involution(0.25), DiskSelfMap::monomial(2), hil::make_mobius_involution(0.5)})};
    for (const auto& phi : maps) {
        REQUIRE(std::abs(phi(0.0)) < 1e-12);
        for (double p : {1.0, 2.0, 3.5}) {
            auto v = hil::norm_bound_check(CompositionOperator(phi), hil::HardyExponent(p));
            CHECK(v.criterion.number("max_ratio") <= 1.0 + 1e-6);
        }
    }
}
