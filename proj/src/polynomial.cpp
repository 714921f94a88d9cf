#include "hil/polynomial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace hil::poly {

cplx eval(std::span<const cplx> p, cplx z) noexcept {
    cplx acc{};
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * z + p[k];
    return acc;
}

Coeffs add(std::span<const cplx> p, std::span<const cplx> q) {
    Coeffs out(std::max(p.size(), q.size()));
    for (std::size_t k = 0; k < p.size(); ++k) out[k] += p[k];
    for (std::size_t k = 0; k < q.size(); ++k) out[k] += q[k];
    return out;
}

Coeffs sub(std::span<const cplx> p, std::span<const cplx> q) {
    Coeffs out(std::max(p.size(), q.size()));
    for (std::size_t k = 0; k < p.size(); ++k) out[k] += p[k];
    for (std::size_t k = 0; k < q.size(); ++k) out[k] -= q[k];
    return out;
}

Coeffs mul(std::span<const cplx> p, std::span<const cplx> q) {
    if (p.empty() || q.empty()) return {cplx{}};
    Coeffs out(p.size() + q.size() - 1);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) out[i + j] += p[i] * q[j];
    return out;
}

Coeffs scale(std::span<const cplx> p, cplx c) {
    Coeffs out(p.begin(), p.end());
    for (auto& x : out) x *= c;
    return out;
}

Coeffs power(std::span<const cplx> p, std::size_t n) {
    Coeffs out{cplx{1.0}};
    for (std::size_t k = 0; k < n; ++k) out = mul(out, p);
    return out;
}

Coeffs derivative(std::span<const cplx> p) {
    if (p.size() <= 1) return {cplx{}};
    Coeffs out(p.size() - 1);
    for (std::size_t k = 1; k < p.size(); ++k) out[k - 1] = static_cast<double>(k) * p[k];
    return out;
}

Coeffs trimmed(Coeffs p, double tol) {
    double big = 0.0;
    for (const auto& c : p) big = std::max(big, std::abs(c));
    while (p.size() > 1 && std::abs(p.back()) <= tol * big) p.pop_back();
    if (p.empty()) p.push_back(cplx{});
    return p;
}

std::size_t degree(std::span<const cplx> p) noexcept {
    for (std::size_t k = p.size(); k-- > 0;)
        if (p[k] != cplx{}) return k;
    return 0;
}

Deflation deflate(std::span<const cplx> p, cplx root, std::size_t times) {
    Deflation d{Coeffs(p.begin(), p.end()), 0.0};
    for (std::size_t t = 0; t < times && d.quotient.size() > 1; ++t) {
        const std::size_t n = d.quotient.size() - 1;
        Coeffs q(n);
        cplx acc = d.quotient[n];
        for (std::size_t k = n; k-- > 0;) {
            q[k] = acc;
            acc = d.quotient[k] + acc * root;
        }
        d.remainder = std::max(d.remainder, std::abs(acc));
        d.quotient = std::move(q);
    }
    return d;
}

namespace {

cplx polish(std::span<const cplx> p, std::span<const cplx> dp, cplx z) {
    for (int it = 0; it < 8; ++it) {
        const cplx fz = eval(p, z);
        const cplx dz = eval(dp, z);
        if (dz == cplx{}) break;
        const cplx step = fz / dz;
        const cplx cand = z - step;
        if (std::abs(eval(p, cand)) >= std::abs(fz)) break;
        z = cand;
        if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
    }
    return z;
}

/// True when the first m-1 Taylor coefficients of p at c are negligible.
bool is_multiple_root(std::span<const cplx> p, cplx c, std::size_t m) {
    Coeffs shifted(p.begin(), p.end());
    const std::size_t n = shifted.size();
    double scale = 0.0;
    const double r = std::max(1.0, std::abs(c));
    for (std::size_t k = 0; k < n; ++k) scale += std::abs(p[k]) * std::pow(r, static_cast<double>(k));
    for (std::size_t j = 0; j < m && j < n; ++j) {
        for (std::size_t i = n - 1; i-- > j;) shifted[i] += c * shifted[i + 1];
        if (std::abs(shifted[j]) > 1e-11 * scale) return false;
    }
    return true;
}

}  // namespace

std::vector<Root> roots(std::span<const cplx> p_in, double cluster_radius) {
    Coeffs p = trimmed(Coeffs(p_in.begin(), p_in.end()), 1e-14);
    std::vector<Root> out;
    double big = 0.0;
    for (const auto& c : p) big = std::max(big, std::abs(c));
    if (big == 0.0) throw InvalidInput("roots of the zero polynomial are undefined");

    std::size_t zeros = 0;
    while (zeros + 1 < p.size() && std::abs(p[zeros]) <= 1e-14 * big) ++zeros;
    if (zeros > 0) out.push_back({cplx{}, zeros});
    Coeffs q(p.begin() + static_cast<std::ptrdiff_t>(zeros), p.end());
    const std::size_t n = q.size() - 1;
    if (n == 0) return out;

    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) companion(0, static_cast<Eigen::Index>(n - 1 - k)) = -q[k] / q[n];
    for (std::size_t k = 1; k < n; ++k) companion(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k - 1)) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    std::vector<cplx> raw(n);
    for (std::size_t k = 0; k < n; ++k) raw[k] = solver.eigenvalues()(static_cast<Eigen::Index>(k));

    // Single-linkage groups at a coarse radius; a group is kept as one multiple
    // root only when the Taylor coefficients at its centroid confirm it.
    const double coarse = std::max(cluster_radius, 1e-4);
    std::vector<std::size_t> group(n);
    std::iota(group.begin(), group.end(), 0);
    auto find = [&group](std::size_t i) {
        while (group[i] != i) i = group[i] = group[group[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(raw[i] - raw[j]) <= coarse * std::max(1.0, std::abs(raw[i]))) group[find(j)] = find(i);

    const Coeffs dq = derivative(q);
    std::vector<bool> done(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (done[i]) continue;
        std::vector<std::size_t> members;
        for (std::size_t j = i; j < n; ++j)
            if (!done[j] && find(j) == find(i)) members.push_back(j);
        for (auto j : members) done[j] = true;
        if (members.size() == 1) {
            out.push_back({polish(q, dq, raw[i]), 1});
            continue;
        }
        cplx centroid{};
        for (auto j : members) centroid += raw[j];
        centroid /= static_cast<double>(members.size());
        double spread = 0.0;
        for (auto j : members) spread = std::max(spread, std::abs(raw[j] - centroid));
        if (spread <= cluster_radius || is_multiple_root(q, centroid, members.size())) {
            out.push_back({centroid, members.size()});
        } else {
            for (auto j : members) out.push_back({polish(q, dq, raw[j]), 1});
        }
    }
    std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
        if (std::abs(a.value) != std::abs(b.value)) return std::abs(a.value) < std::abs(b.value);
        return std::arg(a.value) < std::arg(b.value);
    });
    return out;
}

std::size_t Rational::degree() const noexcept {
    return std::max(poly::degree(num), poly::degree(den));
}

Rational compose(const Rational& f, const Rational& g) {
    const std::size_t n = f.degree();
    Coeffs num{cplx{}}, den{cplx{}};
    std::vector<Coeffs> npow{Coeffs{cplx{1.0}}}, dpow{Coeffs{cplx{1.0}}};
    for (std::size_t k = 1; k <= n; ++k) {
        npow.push_back(mul(npow.back(), g.num));
        dpow.push_back(mul(dpow.back(), g.den));
    }
    for (std::size_t k = 0; k <= n; ++k) {
        const Coeffs term = mul(npow[k], dpow[n - k]);
        if (k < f.num.size()) num = add(num, scale(term, f.num[k]));
        if (k < f.den.size()) den = add(den, scale(term, f.den[k]));
    }
    return Rational{trimmed(std::move(num), 1e-15), trimmed(std::move(den), 1e-15)};
}

}  // namespace hil::poly
