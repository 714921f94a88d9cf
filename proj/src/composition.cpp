#include "hil/composition.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hil/polynomial.hpp"

namespace hil {

namespace {

constexpr std::size_t kMaxMatrix = 1024;
constexpr std::size_t kBoundarySamples = 4096;
constexpr std::size_t kDefaultOrder = 256;

/// (mean over the unit circle of |f|^p)^(1/p).
double boundary_norm(const PointFunction& f, double p) {
    double acc = 0.0;
    for (std::size_t j = 0; j < kBoundarySamples; ++j) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / kBoundarySamples;
        acc += std::pow(std::abs(f(std::polar(1.0, t))), p);
    }
    return std::pow(acc / kBoundarySamples, 1.0 / p);
}

std::vector<cplx> random_coeffs(std::mt19937_64& rng, std::size_t degree) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<cplx> c(degree + 1);
    for (auto& x : c) x = cplx(g(rng), g(rng));
    return c;
}

}  // namespace

CompositionOperator::CompositionOperator(DiskSelfMap phi) : phi_(std::move(phi)), strict_(phi_.is_strict()) {}

TaylorSeries CompositionOperator::apply(const TaylorSeries& f, std::size_t order) const {
    const std::size_t N = order > 0 ? order : std::max(f.order(), kDefaultOrder);
    return series_compose(f, phi_.series(N), std::min(phi_.sup_estimate(), 1.0));
}

AnalyticFunction CompositionOperator::apply(const AnalyticFunction& f) const {
    const DiskSelfMap phi = phi_;
    const PointFunction fp = f.pointwise();
    const LogAbsFunction fl = f.log_abs_function();
    return AnalyticFunction([fp, phi](cplx z) { return fp(phi(z)); }, std::nullopt,
                            [fl, phi](cplx z) { return fl(phi(z)); });
}

std::vector<cplx> OperatorMatrix::apply(const std::vector<cplx>& f) const {
    if (f.size() > dimension) throw InvalidInput("polynomial degree exceeds the matrix dimension");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dimension));
    for (std::size_t k = 0; k < f.size(); ++k) v(static_cast<Eigen::Index>(k)) = f[k];
    const Eigen::VectorXcd w = entries * v;
    return std::vector<cplx>(w.data(), w.data() + w.size());
}

OperatorMatrix matrix_truncation(const CompositionOperator& C, std::size_t N) {
    if (N == 0 || N > kMaxMatrix) throw InvalidInput("matrix dimension must lie in [1, 1024]");
    const TaylorSeries s = C.phi().series(N - 1);
    std::vector<cplx> phi(N);
    for (std::size_t k = 0; k < N; ++k) phi[k] = s[k];

    OperatorMatrix M;
    M.dimension = N;
    const auto n = static_cast<Eigen::Index>(N);
    M.entries = Eigen::MatrixXcd::Zero(n, n);
    std::vector<cplx> power(N, cplx{});
    power[0] = 1.0;
    for (std::size_t j = 0; j < N; ++j) {
        for (std::size_t k = 0; k < N; ++k) M.entries(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = power[k];
        std::vector<cplx> next(N, cplx{});
        for (std::size_t a = 0; a < N; ++a) {
            if (power[a] == cplx{}) continue;
            for (std::size_t b = 0; a + b < N; ++b) next[a + b] += power[a] * phi[b];
        }
        power = std::move(next);
    }
    return M;
}

Verdict norm_bound_check(const CompositionOperator& C, const HardyExponent& p, const Settings& settings) {
    Verdict v;
    v.claim = "norm_bound";
    v.truncation = settings;
    const DiskSelfMap& phi = C.phi();
    const double a0 = std::abs(phi.at_zero());
    const double bound = (1.0 + a0) / (1.0 - a0);
    const double pv = p.value();

    std::vector<std::vector<cplx>> battery;
    std::mt19937_64 rng(settings.seed);
    std::uniform_int_distribution<std::size_t> deg(1, std::max<std::size_t>(settings.battery_degree, 1));
    for (int i = 0; i < 48; ++i) battery.push_back(random_coeffs(rng, deg(rng)));
    for (double r : {0.5, 0.8, 0.9, 0.95})
        for (int k = 0; k < 4; ++k) {
            const cplx w = std::polar(r, 2.0 * std::numbers::pi * (k + 0.125) / 4.0);
            std::vector<cplx> c(129);
            cplx pw = 1.0;
            for (auto& x : c) {
                x = pw;
                pw *= std::conj(w);
            }
            battery.push_back(std::move(c));
        }

    double worst = 0.0;
    std::size_t worst_index = 0;
    std::vector<double> ratios;
    for (std::size_t i = 0; i < battery.size(); ++i) {
        const auto& c = battery[i];
        const auto f = [&c](cplx z) { return poly::eval(c, z); };
        const auto cf = [&c, &phi](cplx z) { return poly::eval(c, phi(z)); };
        const double ratio = boundary_norm(cf, pv) / boundary_norm(f, pv);
        ratios.push_back(ratio);
        if (ratio > worst) {
            worst = ratio;
            worst_index = i;
        }
    }
    const double worst_p = std::pow(worst, pv);
    v.criterion.add("bound", bound)
        .add("max_ratio", worst)
        .add("max_ratio_pow_p", worst_p)
        .add("margin", bound - worst_p)
        .add("battery_size", static_cast<long long>(battery.size()))
        .add("worst_index", static_cast<long long>(worst_index))
        .add("ratios", ratios);
    if (pv < 1.0) {
        v.criterion.outcome = Outcome::inconclusive;
        v.criterion.note = "quasi-norm exponent: ratios are reported, no operator-norm claim is made";
    } else {
        v.criterion.outcome = outcome_of(worst_p <= bound + 1e-6);
    }
    return v;
}

Verdict compactness_probe(const CompositionOperator& C, std::size_t N, const Settings& settings) {
    const double delta = C.phi().sup_estimate();
    if (!C.strict()) throw HypothesisViolated("compactness probe needs sup |phi| < 1");
    if (N < 4) throw InvalidInput("compactness probe needs N >= 4");
    Verdict v;
    v.claim = "compactness";
    v.truncation = settings;
    const OperatorMatrix M = matrix_truncation(C, N);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(M.entries);
    const Eigen::VectorXd sv = svd.singularValues();
    std::vector<double> s(sv.data(), sv.data() + sv.size());
    const double s0 = s.front();

    std::vector<std::size_t> ks;
    for (std::size_t k = N / 2; k < N; ++k)
        if (s[k] > 1e-14 * s0) ks.push_back(k);
    if (ks.size() < 3) {
        ks.clear();
        for (std::size_t k = 1; k < N; ++k)
            if (s[k] > 1e-14 * s0) ks.push_back(k);
    }
    v.criterion.add("sup_phi", delta).add("singular_values", s);
    if (ks.size() < 3) {
        v.criterion.add("finite_rank", true);
        v.criterion.note = "numerically finite rank";
        v.criterion.outcome = Outcome::holds;
        return v;
    }
    double mk = 0.0, my = 0.0;
    for (std::size_t k : ks) {
        mk += static_cast<double>(k);
        my += std::log(s[k]);
    }
    mk /= static_cast<double>(ks.size());
    my /= static_cast<double>(ks.size());
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t k : ks) {
        const double dx = static_cast<double>(k) - mk;
        const double dy = std::log(s[k]) - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    const double slope = sxy / sxx;
    double ssr = 0.0;
    for (std::size_t k : ks) {
        const double r = std::log(s[k]) - (my + slope * (static_cast<double>(k) - mk));
        ssr += r * r;
    }
    const double rel = syy > 0.0 ? std::sqrt(ssr / syy) : (ssr > 0.0 ? 1.0 : 0.0);
    const double rate = std::exp(slope);
    v.criterion.add("finite_rank", false)
        .add("fit_rate", rate)
        .add("fit_relative_residual", rel)
        .add("fit_points", static_cast<long long>(ks.size()));
    v.criterion.outcome = outcome_of(rel < 0.2 && rate <= 1.05 * delta);
    return v;
}

Verdict invertibility_Ha_Hb(const DiskSelfMap& phi, cplx a, cplx b, const Settings& settings) {
    if (!(std::abs(a) < 1.0) || !(std::abs(b) < 1.0)) throw OutOfDisk("points a and b must lie in the open disk");
    Verdict v;
    v.claim = "invertibility_Ha_Hb";
    v.truncation = settings;
    const MapClass cls = classify_automorphism(phi, settings.tol);
    const bool automorphism = cls != MapClass::not_automorphism;
    const double miss = std::abs(phi(b) - a);
    v.criterion.add("classification", std::string(to_string(cls))).add("image_gap", miss);
    v.criterion.outcome = outcome_of(automorphism && miss <= 1e-9);
    if (!automorphism) {
        v.criterion.note = "not an automorphism of the disk";
        return v;
    }

    const DiskSelfMap inv = DiskSelfMap::mobius(phi.as_mobius()->inverse());
    std::mt19937_64 rng(settings.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<cplx> pts;
    for (int i = 0; i < 64; ++i) pts.push_back(std::polar(0.95 * std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng)));

    DirectLeg d;
    d.battery_size = 8;
    double worst = 0.0;
    for (std::size_t i = 0; i < 8; ++i) {
        const auto f = poly::mul(poly::Coeffs{-a, 1.0}, random_coeffs(rng, settings.battery_degree - 1));
        double scale = 0.0;
        for (cplx c : f) scale += std::abs(c);
        const auto F = [&f](cplx z) { return poly::eval(f, z); };
        double err = std::abs(F(phi(b))) / scale;
        for (cplx z : pts) {
            err = std::max(err, std::abs(F(phi(inv(z))) - F(z)) / scale);
            err = std::max(err, std::abs(F(phi(inv(phi(z)))) - F(phi(z))) / scale);
        }
        if (err > worst) {
            worst = err;
            if (err > 1e-9) d.witness = "battery function " + std::to_string(i);
        }
    }
    d.worst_violation = worst;
    d.add("worst_relative_error", worst);
    d.note = "C_phi maps (z - a) p(z) into functions vanishing at b; C_{phi^-1} inverts it on both sides";
    d.outcome = outcome_of(worst <= 1e-9);
    v.direct = d;
    v.settle();
    return v;
}

}  // namespace hil
