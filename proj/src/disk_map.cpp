#include "hil/disk_map.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hil {

namespace {

constexpr std::size_t kBoundarySamples = 4096;
constexpr std::size_t kMaxRationalDegree = 256;

cplx ipow(cplx z, std::size_t k) noexcept {
    cplx result{1.0};
    cplx base = z;
    while (k > 0) {
        if (k & 1U) result *= base;
        base *= base;
        k >>= 1U;
    }
    return result;
}

double boundary_sup(const PointFunction& f) {
    double best = 0.0;
    for (std::size_t j = 0; j < kBoundarySamples; ++j) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(kBoundarySamples);
        best = std::max(best, std::abs(f(std::polar(1.0, t))));
    }
    return best;
}

std::string fmt(cplx z) {
    std::ostringstream os;
    os.precision(17);
    os << "[" << z.real() << "," << z.imag() << "]";
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------- Mobius

cplx Mobius::derivative(cplx z) const noexcept {
    const cplx den = c * z + d;
    return det() / (den * den);
}

Mobius Mobius::after(const Mobius& o) const noexcept {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

Mobius Mobius::normalized() const noexcept {
    const cplx s = std::sqrt(det());
    if (s == cplx{}) return *this;
    return {a / s, b / s, c / s, d / s};
}

Mobius Mobius::power(std::size_t n) const noexcept {
    Mobius result{};
    Mobius base = normalized();
    while (n > 0) {
        if (n & 1U) result = result.after(base).normalized();
        base = base.after(base).normalized();
        n >>= 1U;
    }
    return result;
}

Mobius Mobius::inverse() const noexcept { return {d, -b, -c, a}; }

cplx Mobius::image_centre() const noexcept {
    return (b * std::conj(d) - a * std::conj(c)) / (std::norm(d) - std::norm(c));
}

double Mobius::image_radius() const noexcept { return std::abs(det()) / (std::norm(d) - std::norm(c)); }

// ---------------------------------------------------------------- DiskSelfMap

struct DiskSelfMap::Data {
    MapKind kind = MapKind::identity;
    cplx value{};                 // rotation factor or constant
    std::size_t power = 1;        // monomial
    Mobius mobius{};
    std::vector<cplx> coeffs;     // polynomial
    std::vector<DiskSelfMap> parts;
    double sup = 1.0;
};

const char* to_string(MapKind k) noexcept {
    switch (k) {
        case MapKind::identity: return "identity";
        case MapKind::rotation: return "rotation";
        case MapKind::monomial: return "monomial";
        case MapKind::mobius: return "mobius";
        case MapKind::polynomial: return "poly";
        case MapKind::constant: return "constant";
        case MapKind::composite: return "compose";
    }
    return "unknown";
}

DiskSelfMap::DiskSelfMap(std::shared_ptr<const Data> d) : data_(std::move(d)) {}

DiskSelfMap DiskSelfMap::certified(std::shared_ptr<Data> d) {
    if (!(d->sup <= 1.0 + 1e-9)) {
        std::ostringstream os;
        os << "map is not a self-map of the disk (sup estimate " << d->sup << ")";
        throw InvalidInput(os.str());
    }
    return DiskSelfMap(std::move(d));
}

DiskSelfMap DiskSelfMap::identity() {
    auto d = std::make_shared<Data>();
    d->kind = MapKind::identity;
    return certified(d);
}

DiskSelfMap DiskSelfMap::rotation(cplx c) {
    if (std::abs(std::abs(c) - 1.0) > 1e-12) throw InvalidInput("rotation factor must be unimodular");
    auto d = std::make_shared<Data>();
    d->kind = MapKind::rotation;
    d->value = c / std::abs(c);
    return certified(d);
}

DiskSelfMap DiskSelfMap::monomial(std::size_t k) {
    if (k == 0) throw InvalidInput("monomial map needs power k >= 1");
    auto d = std::make_shared<Data>();
    d->kind = MapKind::monomial;
    d->power = k;
    return certified(d);
}

DiskSelfMap DiskSelfMap::mobius(cplx a, cplx b, cplx c, cplx dd) {
    Mobius m{a, b, c, dd};
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(dd)});
    if (scale == 0.0 || std::abs(m.det()) <= 1e-14 * scale * scale)
        throw InvalidInput("degenerate Mobius map (ad - bc = 0)");
    if (!(std::abs(dd) > std::abs(c))) throw InvalidInput("Mobius map has a pole in the closed disk");
    auto d = std::make_shared<Data>();
    d->kind = MapKind::mobius;
    d->mobius = m;
    d->sup = std::abs(m.image_centre()) + m.image_radius();
    return certified(d);
}

DiskSelfMap DiskSelfMap::polynomial(std::vector<cplx> coeffs) {
    if (coeffs.empty()) throw InvalidInput("polynomial map needs coefficients");
    auto d = std::make_shared<Data>();
    d->kind = MapKind::polynomial;
    d->coeffs = std::move(coeffs);
    const auto& c = d->coeffs;
    d->sup = boundary_sup([&c](cplx z) { return poly::eval(c, z); });
    return certified(d);
}

DiskSelfMap DiskSelfMap::constant(cplx a) {
    if (!(std::abs(a) < 1.0)) throw InvalidInput("constant map value must lie in the open disk");
    auto d = std::make_shared<Data>();
    d->kind = MapKind::constant;
    d->value = a;
    d->sup = std::abs(a);
    return certified(d);
}

DiskSelfMap DiskSelfMap::composite(std::vector<DiskSelfMap> parts) {
    if (parts.empty()) throw InvalidInput("composite map needs at least one part");
    std::vector<DiskSelfMap> flat;
    for (auto& p : parts) {
        if (p.kind() == MapKind::composite)
            flat.insert(flat.end(), p.parts().begin(), p.parts().end());
        else
            flat.push_back(std::move(p));
    }
    if (flat.size() == 1) return flat.front();
    auto d = std::make_shared<Data>();
    d->kind = MapKind::composite;
    d->parts = std::move(flat);
    DiskSelfMap tmp{std::shared_ptr<const Data>(d)};
    d->sup = boundary_sup([&tmp](cplx z) { return tmp(z); });
    return certified(d);
}

MapKind DiskSelfMap::kind() const noexcept { return data_->kind; }

cplx DiskSelfMap::operator()(cplx z) const {
    const Data& d = *data_;
    switch (d.kind) {
        case MapKind::identity: return z;
        case MapKind::rotation: return d.value * z;
        case MapKind::monomial: return ipow(z, d.power);
        case MapKind::mobius: return d.mobius(z);
        case MapKind::polynomial: return poly::eval(d.coeffs, z);
        case MapKind::constant: return d.value;
        case MapKind::composite: {
            cplx w = z;
            for (auto it = d.parts.rbegin(); it != d.parts.rend(); ++it) w = (*it)(w);
            return w;
        }
    }
    return z;
}

cplx DiskSelfMap::derivative(cplx z) const {
    const Data& d = *data_;
    switch (d.kind) {
        case MapKind::identity: return 1.0;
        case MapKind::rotation: return d.value;
        case MapKind::monomial: return static_cast<double>(d.power) * ipow(z, d.power - 1);
        case MapKind::mobius: return d.mobius.derivative(z);
        case MapKind::polynomial: return poly::eval(poly::derivative(d.coeffs), z);
        case MapKind::constant: return 0.0;
        case MapKind::composite: {
            cplx w = z;
            cplx acc{1.0};
            for (auto it = d.parts.rbegin(); it != d.parts.rend(); ++it) {
                acc *= it->derivative(w);
                w = (*it)(w);
            }
            return acc;
        }
    }
    return 1.0;
}

TaylorSeries DiskSelfMap::series(std::size_t order) const {
    const Data& d = *data_;
    switch (d.kind) {
        case MapKind::identity: return TaylorSeries::identity();
        case MapKind::rotation: return TaylorSeries::monomial(1, d.value);
        case MapKind::monomial: return TaylorSeries::monomial(d.power);
        case MapKind::polynomial: return TaylorSeries(d.coeffs);
        case MapKind::constant: return TaylorSeries::constant(d.value);
        case MapKind::mobius: {
            const Mobius& m = d.mobius;
            if (m.c == cplx{}) return TaylorSeries(std::vector<cplx>{m.b / m.d, m.a / m.d});
            const cplx q = m.c / m.d;
            const cplx lead = (m.a - m.b * q) / m.d;
            std::vector<cplx> c(order + 1);
            c[0] = m.b / m.d;
            cplx pw{1.0};
            for (std::size_t k = 1; k <= order; ++k) {
                c[k] = lead * pw;
                pw *= -q;
            }
            const double aq = std::abs(q);
            const double tail = std::abs(lead) * std::pow(aq, static_cast<double>(order)) / (1.0 - aq);
            return TaylorSeries(std::move(c), tail, 1.0);
        }
        case MapKind::composite: {
            const std::size_t n = d.parts.size();
            TaylorSeries acc = d.parts[n - 1].series(order);
            for (std::size_t i = n - 1; i-- > 0;) {
                std::vector<DiskSelfMap> inner(d.parts.begin() + static_cast<std::ptrdiff_t>(i + 1), d.parts.end());
                const double range = composite(inner).sup_estimate();
                acc = series_compose(d.parts[i].series(order), acc, std::min(range, 1.0));
                if (acc.order() > order) acc = acc.truncated(order);
            }
            return acc;
        }
    }
    return TaylorSeries::identity();
}

double DiskSelfMap::sup_estimate() const noexcept { return data_->sup; }

bool DiskSelfMap::is_strict() const noexcept { return data_->sup <= 1.0 - 1e-6; }

std::optional<Mobius> DiskSelfMap::as_mobius() const {
    const Data& d = *data_;
    switch (d.kind) {
        case MapKind::identity: return Mobius{};
        case MapKind::rotation: return Mobius{d.value, 0.0, 0.0, 1.0};
        case MapKind::monomial:
            if (d.power == 1) return Mobius{};
            return std::nullopt;
        case MapKind::mobius: return d.mobius;
        case MapKind::polynomial: {
            auto c = poly::trimmed(d.coeffs, 0.0);
            if (c.size() == 2 && c[1] != cplx{}) return Mobius{c[1], c[0], 0.0, 1.0};
            return std::nullopt;
        }
        case MapKind::constant: return std::nullopt;
        case MapKind::composite: {
            Mobius acc{};
            for (const auto& p : d.parts) {
                auto m = p.as_mobius();
                if (!m) return std::nullopt;
                acc = acc.after(*m).normalized();
            }
            return acc;
        }
    }
    return std::nullopt;
}

std::optional<poly::Rational> DiskSelfMap::as_rational() const {
    const Data& d = *data_;
    switch (d.kind) {
        case MapKind::identity: return poly::Rational{{0.0, 1.0}, {1.0}};
        case MapKind::rotation: return poly::Rational{{0.0, d.value}, {1.0}};
        case MapKind::monomial: {
            if (d.power > kMaxRationalDegree) return std::nullopt;
            poly::Coeffs c(d.power + 1);
            c[d.power] = 1.0;
            return poly::Rational{c, {1.0}};
        }
        case MapKind::mobius: return poly::Rational{{d.mobius.b, d.mobius.a}, {d.mobius.d, d.mobius.c}};
        case MapKind::polynomial: return poly::Rational{d.coeffs, {1.0}};
        case MapKind::constant: return poly::Rational{{d.value}, {1.0}};
        case MapKind::composite: {
            auto acc = d.parts.back().as_rational();
            for (std::size_t i = d.parts.size() - 1; acc && i-- > 0;) {
                auto outer = d.parts[i].as_rational();
                if (!outer || outer->degree() * acc->degree() > kMaxRationalDegree) return std::nullopt;
                acc = poly::compose(*outer, *acc);
            }
            return acc;
        }
    }
    return std::nullopt;
}

bool DiskSelfMap::is_identity(double tol, std::size_t order) const {
    if (auto m = as_mobius()) {
        const Mobius n = m->normalized();
        const cplx s = n.a;
        const double scale = std::abs(s);
        return std::abs(n.b) <= tol * scale && std::abs(n.c) <= tol * scale && std::abs(n.d - s) <= tol * scale;
    }
    const TaylorSeries s = series(order);
    for (std::size_t k = 0; k <= s.order(); ++k) {
        const cplx want = k == 1 ? cplx{1.0} : cplx{};
        if (std::abs(s[k] - want) > tol) return false;
    }
    return s.order() >= 1;
}

cplx DiskSelfMap::rotation_factor() const {
    if (kind() != MapKind::rotation) throw InvalidInput("not a rotation");
    return data_->value;
}

std::size_t DiskSelfMap::monomial_power() const {
    if (kind() != MapKind::monomial) throw InvalidInput("not a monomial map");
    return data_->power;
}

const std::vector<cplx>& DiskSelfMap::polynomial_coeffs() const {
    if (kind() != MapKind::polynomial) throw InvalidInput("not a polynomial map");
    return data_->coeffs;
}

cplx DiskSelfMap::constant_value() const {
    if (kind() != MapKind::constant) throw InvalidInput("not a constant map");
    return data_->value;
}

const std::vector<DiskSelfMap>& DiskSelfMap::parts() const {
    if (kind() != MapKind::composite) throw InvalidInput("not a composite map");
    return data_->parts;
}

std::string DiskSelfMap::describe() const {
    const Data& d = *data_;
    std::ostringstream os;
    os.precision(17);
    switch (d.kind) {
        case MapKind::identity: return "identity";
        case MapKind::rotation: return "rotation(" + fmt(d.value) + ")";
        case MapKind::monomial: os << "monomial(" << d.power << ")"; return os.str();
        case MapKind::mobius:
            return "mobius(" + fmt(d.mobius.a) + "," + fmt(d.mobius.b) + "," + fmt(d.mobius.c) + "," + fmt(d.mobius.d) + ")";
        case MapKind::polynomial: {
            os << "poly(";
            for (std::size_t k = 0; k < d.coeffs.size(); ++k) os << (k ? "," : "") << fmt(d.coeffs[k]);
            os << ")";
            return os.str();
        }
        case MapKind::constant: return "constant(" + fmt(d.value) + ")";
        case MapKind::composite: {
            os << "compose(";
            for (std::size_t k = 0; k < d.parts.size(); ++k) os << (k ? "," : "") << d.parts[k].describe();
            os << ")";
            return os.str();
        }
    }
    return "?";
}

DiskSelfMap make_mobius_involution(cplx a) {
    if (!(std::abs(a) < 1.0)) throw OutOfDisk("involution centre must lie in the open disk");
    return DiskSelfMap::mobius(-1.0, a, -std::conj(a), 1.0);
}

DiskSelfMap iterate(const DiskSelfMap& phi, std::size_t n) {
    if (n == 0) throw InvalidInput("iterate needs n >= 1");
    if (n == 1) return phi;
    switch (phi.kind()) {
        case MapKind::identity:
        case MapKind::constant: return phi;
        case MapKind::rotation: return DiskSelfMap::rotation(ipow(phi.rotation_factor(), n));
        case MapKind::monomial: {
            const std::size_t k = phi.monomial_power();
            std::size_t p = 1;
            bool overflow = false;
            for (std::size_t i = 0; i < n && !overflow; ++i) {
                if (p > (std::size_t{1} << 40) / k) overflow = true;
                else p *= k;
            }
            if (!overflow) return DiskSelfMap::monomial(p);
            break;
        }
        case MapKind::mobius: return DiskSelfMap::mobius(phi.as_mobius()->power(n));
        default: break;
    }
    return DiskSelfMap::composite(std::vector<DiskSelfMap>(n, phi));
}

// ---------------------------------------------------------------- fixed points

const char* to_string(MapClass c) noexcept {
    switch (c) {
        case MapClass::identity: return "identity";
        case MapClass::elliptic: return "elliptic";
        case MapClass::parabolic: return "parabolic";
        case MapClass::hyperbolic: return "hyperbolic";
        case MapClass::not_automorphism: return "not-automorphism";
    }
    return "not-automorphism";
}

namespace {

bool mobius_is_automorphism(const Mobius& m) {
    if (!(std::abs(m.d) > std::abs(m.c))) return false;
    return std::abs(m.image_centre()) <= 1e-10 && std::abs(m.image_radius() - 1.0) <= 1e-10;
}

void add_boundary(FixedPointReport& rep, cplx zeta, cplx multiplier, double cluster) {
    for (const auto& b : rep.boundary)
        if (std::abs(b.point - zeta) <= cluster) return;
    rep.boundary.push_back({zeta, multiplier});
}

}  // namespace

FixedPointReport fixed_points(const DiskSelfMap& phi, const Tolerances& tol) {
    FixedPointReport rep;
    if (auto mo = phi.as_mobius()) {
        const Mobius m = mo->normalized();
        if (phi.is_identity()) {
            rep.classification = MapClass::identity;
            return rep;
        }
        std::vector<cplx> candidates;
        const double scale = std::max({std::abs(m.a), std::abs(m.b), std::abs(m.c), std::abs(m.d)});
        if (std::abs(m.c) <= 1e-14 * scale) {
            if (std::abs(m.a - m.d) > 1e-14 * scale) candidates.push_back(-m.b / (m.a - m.d));
        } else {
            // c z^2 + (d - a) z - b = 0
            const cplx B = m.d - m.a;
            const cplx disc = std::sqrt(B * B + 4.0 * m.c * m.b);
            const cplx q = -0.5 * (B + (std::real(std::conj(B) * disc) >= 0.0 ? disc : -disc));
            if (q != cplx{}) {
                candidates.push_back(q / m.c);
                candidates.push_back(-m.b / q);
            } else {
                candidates.push_back(-B / (2.0 * m.c));
            }
        }
        for (cplx r : candidates) {
            const double mod = std::abs(r);
            if (std::abs(mod - 1.0) <= tol.snap) {
                const cplx zeta = r / mod;
                add_boundary(rep, zeta, m.derivative(zeta), tol.cluster);
            } else if (mod < 1.0) {
                rep.interior = FixedPoint{r, m.derivative(r)};
            }
        }
        if (mobius_is_automorphism(m)) {
            if (rep.interior) rep.classification = MapClass::elliptic;
            else if (rep.boundary.size() == 1) rep.classification = MapClass::parabolic;
            else if (rep.boundary.size() == 2) rep.classification = MapClass::hyperbolic;
        }
        return rep;
    }
    switch (phi.kind()) {
        case MapKind::constant:
            rep.interior = FixedPoint{phi.constant_value(), 0.0};
            return rep;
        case MapKind::monomial: {
            const std::size_t k = phi.monomial_power();
            rep.interior = FixedPoint{0.0, 0.0};
            for (std::size_t j = 0; j + 1 < k; ++j) {
                const cplx zeta = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(k - 1));
                rep.boundary.push_back({zeta, static_cast<double>(k)});
            }
            return rep;
        }
        case MapKind::polynomial: {
            auto c = poly::trimmed(phi.polynomial_coeffs(), 0.0);
            if (c.size() - 1 > 8) throw Unsupported("fixed points of polynomial maps of degree > 8");
            if (c.size() < 2) c.resize(2);
            c[1] -= 1.0;
            for (const auto& root : poly::roots(c, tol.cluster)) {
                const double mod = std::abs(root.value);
                if (std::abs(mod - 1.0) <= tol.snap) {
                    const cplx zeta = root.value / mod;
                    add_boundary(rep, zeta, phi.derivative(zeta), tol.cluster);
                } else if (std::abs(mod - 1.0) <= 1e-6) {
                    throw Inconclusive("fixed point within 1e-6 of the unit circle cannot be placed");
                } else if (mod < 1.0 && !rep.interior) {
                    rep.interior = FixedPoint{root.value, phi.derivative(root.value)};
                }
            }
            return rep;
        }
        default: break;
    }
    throw Unsupported("fixed points of composite maps without a Mobius closed form");
}

MapClass classify_automorphism(const DiskSelfMap& phi, const Tolerances& tol) {
    if (!phi.as_mobius()) return MapClass::not_automorphism;
    return fixed_points(phi, tol).classification;
}

// ---------------------------------------------------------------- Schwarz

Verdict schwarz_check(const DiskSelfMap& phi, const Settings& settings) {
    const cplx p0 = phi.at_zero();
    if (std::abs(p0) > 1e-12) throw HypothesisViolated("Schwarz lemma needs phi(0) = 0");
    Verdict v;
    v.claim = "schwarz";
    v.truncation = settings;
    const auto& grid = settings.grid;
    const cplx d0 = phi.derivative(0.0);
    double worst_ratio = 0.0;
    double worst_excess = 0.0;
    for (double r : grid.radii()) {
        for (std::size_t j = 0; j < grid.angular_count(); ++j) {
            const cplx z = std::polar(r, grid.angle(j));
            const double ratio = std::abs(phi(z)) / r;
            worst_ratio = std::max(worst_ratio, ratio);
            worst_excess = std::max(worst_excess, ratio - 1.0);
        }
    }
    const bool inequality = worst_excess <= 1e-12;
    const bool equality_case = worst_ratio >= 1.0 - 1e-9 || std::abs(std::abs(d0) - 1.0) <= 1e-9;
    v.criterion.add("max_ratio", worst_ratio).add("derivative_at_zero", d0).add("equality_case", equality_case);
    bool holds = inequality;
    if (equality_case) {
        double dev = 0.0;
        for (double r : grid.radii())
            for (std::size_t j = 0; j < grid.angular_count(); ++j) {
                const cplx z = std::polar(r, grid.angle(j));
                dev = std::max(dev, std::abs(phi(z) - d0 * z));
            }
        const bool rotation = dev <= 1e-9;
        v.criterion.add("rotation_deviation", dev).add("rotation", rotation);
        holds = holds && rotation;
        v.criterion.note = rotation ? "equality case: map is the rotation by phi'(0)"
                                    : "equality case without rotation";
    }
    v.criterion.outcome = outcome_of(holds);
    return v;
}

// ---------------------------------------------------------------- orbits

const char* to_string(Summability s) noexcept {
    switch (s) {
        case Summability::summable: return "summable";
        case Summability::divergent: return "divergent";
        case Summability::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

OrbitRecord orbit(const DiskSelfMap& phi, cplx z, std::size_t M) {
    if (!(std::abs(z) < 1.0)) throw OutOfDisk("orbit start must lie in the open disk");
    OrbitRecord rec;
    rec.start = z;
    rec.points.reserve(M + 1);
    rec.gaps.reserve(M + 1);
    rec.gap_partial_sums.reserve(M + 1);

    const auto mo = phi.as_mobius();
    const bool automorphism = mo && mobius_is_automorphism(mo->normalized());
    // For automorphisms 1 - |φ(w)|^2 = |φ'(w)| (1 - |w|^2) keeps the gaps accurate near the circle.
    double s = 1.0 - std::norm(z);
    cplx w = z;
    double total = 0.0;
    for (std::size_t m = 0; m <= M; ++m) {
        const double gap = automorphism ? s / (1.0 + std::abs(w)) : 1.0 - std::abs(w);
        rec.points.push_back(w);
        rec.gaps.push_back(gap);
        total += gap;
        rec.gap_partial_sums.push_back(total);
        if (m == M) break;
        if (automorphism) s *= std::abs(phi.derivative(w));
        w = phi(w);
        if (!automorphism) s = 1.0 - std::norm(w);
    }

    const std::size_t K = std::max<std::size_t>(1, M / 10);
    const auto& S = rec.gap_partial_sums;
    rec.last_block_increment = M >= K ? S[M] - S[M - K] : S[M];
    rec.tail_min_gap = *std::min_element(rec.gaps.end() - static_cast<std::ptrdiff_t>(std::min(K, rec.gaps.size())),
                                         rec.gaps.end());
    if (M >= 8) {
        const double upper = S[M] - S[M / 2];
        const double lower = S[M / 2] - S[M / 4];
        rec.block_ratio = lower > 0.0 ? upper / lower : (upper > 0.0 ? INFINITY : 0.0);
    }
    if (rec.last_block_increment < 1e-10 || (M >= 8 && rec.block_ratio <= 0.75))
        rec.summability = Summability::summable;
    else if (rec.tail_min_gap >= 1e-3)
        rec.summability = Summability::divergent;
    else
        rec.summability = Summability::inconclusive;
    return rec;
}

}  // namespace hil
