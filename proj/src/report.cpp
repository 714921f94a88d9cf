#include "hil/report.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "hil/composition.hpp"
#include "hil/verifiers.hpp"

namespace hil {

namespace {

std::string child(const std::string& pointer, const std::string& key) { return pointer + "/" + key; }
std::string child(const std::string& pointer, std::size_t index) { return pointer + "/" + std::to_string(index); }

const json& require(const json& j, const std::string& key, const std::string& pointer) {
    if (!j.is_object()) throw SchemaError(pointer.empty() ? "/" : pointer, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) throw SchemaError(child(pointer, key), "missing field");
    return *it;
}

double number_from_json(const json& j, const std::string& pointer) {
    if (!j.is_number()) throw SchemaError(pointer, "expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) throw SchemaError(pointer, "expected a finite number");
    return x;
}

std::size_t natural_from_json(const json& j, const std::string& pointer) {
    if (!j.is_number_integer() || j.get<long long>() < 0) throw SchemaError(pointer, "expected a natural number");
    return j.get<std::size_t>();
}

std::size_t natural_or(const json& j, const std::string& key, std::size_t fallback, const std::string& pointer) {
    return j.contains(key) ? natural_from_json(j.at(key), child(pointer, key)) : fallback;
}

HardyExponent exponent_or(const json& j, const std::string& key, double fallback, const std::string& pointer) {
    const double p = j.contains(key) ? number_from_json(j.at(key), child(pointer, key)) : fallback;
    try {
        return HardyExponent(p);
    } catch (const InvalidInput& e) {
        throw SchemaError(child(pointer, key), e.what());
    }
}

/// Runs a constructor and re-labels its InvalidInput-like failures with the pointer.
template <class F>
auto at_pointer(const std::string& pointer, F&& make) {
    try {
        return make();
    } catch (const SchemaError&) {
        throw;
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::invalid_input || e.kind() == ErrorKind::out_of_disk ||
            e.kind() == ErrorKind::range_violation)
        {
            std::string message = e.what();
            const auto cut = message.find(": ");
            if (cut != std::string::npos) message = message.substr(cut + 2);
            throw SchemaError(pointer.empty() ? "/" : pointer, message);
        }
        throw;
    }
}

json evidence_value_to_json(const EvidenceValue& v) {
    return std::visit(
        [](const auto& x) -> json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, cplx>) return complex_to_json(x);
            else if constexpr (std::is_same_v<T, double>) return std::isfinite(x) ? json(x) : json(nullptr);
            else if constexpr (std::is_same_v<T, std::vector<double>>) {
                json a = json::array();
                for (double d : x) a.push_back(std::isfinite(d) ? json(d) : json(nullptr));
                return a;
            } else return json(x);
        },
        v);
}

json leg_to_json(const Leg& leg) {
    json out{{"outcome", to_string(leg.outcome)}};
    json ev = json::object();
    for (const auto& e : leg.evidence) ev[e.name] = evidence_value_to_json(e.value);
    out["evidence"] = ev;
    if (!leg.note.empty()) out["note"] = leg.note;
    return out;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

int exit_code_for(Outcome o) { return o == Outcome::inconclusive ? 3 : 0; }

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::inconclusive:
        case ErrorKind::underflow:
        case ErrorKind::order_exceeded:
        case ErrorKind::boundary_root: return 3;
        default: return 2;
    }
}

json series_block(const std::string& name, const std::vector<double>& values, std::size_t first_n) {
    json rows = json::array();
    for (std::size_t i = 0; i < values.size(); ++i) rows.push_back({first_n + i, finite_or_null(values[i])});
    return {{"name", name}, {"rows", rows}};
}

struct CommandResult {
    json result;
    int exit_code = 0;
};

CommandResult verdict_result(const Verdict& v) { return {{{"verdict", verdict_to_json(v)}}, exit_code_for(v.outcome())}; }

CommandResult run_check(const json& job, const Settings& s) {
    const auto& which = require(job, "check", "");
    if (!which.is_string()) throw SchemaError("/check", "expected a string");
    const std::string name = which.get<std::string>();
    const auto phi = [&] { return map_from_json(require(job, "phi", ""), "/phi"); };
    const auto pair = [&] { return pair_from_json(require(job, "pair", ""), "/pair"); };

    if (name == "beurling") {
        const InnerFunction theta = inner_from_json(require(job, "theta", ""), "/theta");
        return verdict_result(check_beurling(theta, phi(), s));
    }
    if (name == "hab") {
        const DiskSelfMap f = phi();
        return verdict_result(check_Hab(f, pair(), s));
    }
    if (name == "zn_hab") {
        const std::size_t n = natural_from_json(require(job, "n", ""), "/n");
        const std::size_t k = natural_from_json(require(job, "k", ""), "/k");
        return verdict_result(check_zn_Hab_monomial(n, k, pair(), s));
    }
    if (name == "atomic_singular") {
        const double lambda = number_from_json(require(job, "lambda", ""), "/lambda");
        const AdmissiblePair ab = pair();
        return verdict_result(check_atomic_singular_Hab(lambda, ab, phi(), s));
    }
    if (name == "j_hab") {
        const InnerFunction J = inner_from_json(require(job, "J", ""), "/J");
        const AdmissiblePair ab = pair();
        return verdict_result(check_J_Hab(J, ab, phi(), s));
    }
    if (name == "elliptic") {
        const InnerFunction theta = inner_from_json(require(job, "theta", ""), "/theta");
        return verdict_result(elliptic_constant(theta, phi(), s));
    }
    if (name == "parabolic_orbit") {
        const DiskSelfMap f = phi();
        const cplx z = complex_from_json(require(job, "z", ""), "/z");
        const std::size_t M = natural_from_json(require(job, "M", ""), "/M");
        return verdict_result(parabolic_orbit_subspace(f, z, M, s));
    }
    if (name == "schwarz") return verdict_result(schwarz_check(phi(), s));
    if (name == "norm_bound") {
        const DiskSelfMap f = phi();
        return verdict_result(norm_bound_check(CompositionOperator(f), exponent_or(job, "p", 2.0, ""), s));
    }
    if (name == "compactness") {
        const DiskSelfMap f = phi();
        return verdict_result(compactness_probe(CompositionOperator(f), natural_or(job, "N", 32, ""), s));
    }
    if (name == "invertibility") {
        const DiskSelfMap f = phi();
        const cplx a = complex_from_json(require(job, "a", ""), "/a");
        const cplx b = complex_from_json(require(job, "b", ""), "/b");
        return verdict_result(invertibility_Ha_Hb(f, a, b, s));
    }
    throw SchemaError("/check",
                      "unknown check '" + name +
                          "' (beurling, hab, zn_hab, atomic_singular, j_hab, elliptic, parabolic_orbit, schwarz, "
                          "norm_bound, compactness, invertibility)");
}

CommandResult run_schur_quotient(const json& job, const Settings& s) {
    const InnerFunction theta = inner_from_json(require(job, "theta", ""), "/theta");
    const DiskSelfMap phi = map_from_json(require(job, "phi", ""), "/phi");
    const QuotientReport q = quotient_analytic(theta, phi, s.tol);
    json out{{"analytic", q.analytic}, {"singular_free", q.singular_free}, {"identically_zero", q.identically_zero}};
    out["witness"] = q.witness ? complex_to_json(*q.witness) : json(nullptr);
    Outcome schur = Outcome::fails;
    if (q.analytic) {
        const double sup = q.sup_estimate(s.grid);
        out["sup_estimate"] = finite_or_null(sup);
        schur = sup <= 1.0 + s.tol.sup ? Outcome::holds : Outcome::fails;
    }
    out["schur"] = to_string(schur);
    return {{{"quotient", out}}, 0};
}

CommandResult run_orbit(const json& job, const Settings&) {
    const DiskSelfMap phi = map_from_json(require(job, "phi", ""), "/phi");
    const cplx z = complex_from_json(require(job, "z", ""), "/z");
    const std::size_t M = natural_from_json(require(job, "M", ""), "/M");
    if (M == 0) throw SchemaError("/M", "expected M >= 1");
    const OrbitRecord r = at_pointer("/z", [&] { return orbit(phi, z, M); });
    json out{{"start", complex_to_json(r.start)},
             {"summability", to_string(r.summability)},
             {"points", r.points.size()},
             {"last_point", complex_to_json(r.points.back())},
             {"gap_sum", finite_or_null(r.gap_partial_sums.back())},
             {"last_block_increment", finite_or_null(r.last_block_increment)},
             {"block_ratio", finite_or_null(r.block_ratio)},
             {"tail_min_gap", finite_or_null(r.tail_min_gap)}};
    json result{{"orbit", out}, {"series", series_block("gap", r.gaps, 0)}};
    return {result, r.summability == Summability::inconclusive ? 3 : 0};
}

CommandResult run_norms(const json& job, const Settings& s) {
    const HardyExponent p = exponent_or(job, "p", 2.0, "");
    json out{{"p", p.value()}};
    NormEstimate est;
    SupEstimate sup;
    if (job.contains("f")) {
        const TaylorSeries f = series_from_json(job.at("f"), "/f");
        est = hardy_norm(f, p, s.grid);
        sup = sup_norm_estimate(f, s.grid);
    } else if (job.contains("theta")) {
        const InnerFunction theta = inner_from_json(job.at("theta"), "/theta");
        const PointFunction f = [theta](cplx z) { return theta.eval_unchecked(z); };
        est = hardy_norm(f, p, s.grid);
        sup = sup_norm_estimate(f, s.grid);
    } else {
        throw SchemaError("/f", "missing field (give \"f\" or \"theta\")");
    }
    out["norm"] = finite_or_null(est.value);
    out["attained_radius"] = est.attained_radius;
    out["sup_estimate"] = finite_or_null(sup.value);
    std::vector<double> means = est.circle_means;
    return {{{"norms", out}, {"series", series_block("circle_mean", means, 0)}}, 0};
}

std::vector<TaylorSeries> battery_from_json(const json& job) {
    if (!job.contains("battery")) return {TaylorSeries({1.0}), TaylorSeries({0.0, 1.0}), TaylorSeries({1.0, 1.0})};
    const json& b = job.at("battery");
    if (!b.is_array() || b.empty()) throw SchemaError("/battery", "expected a nonempty array of coefficient lists");
    std::vector<TaylorSeries> out;
    for (std::size_t i = 0; i < b.size(); ++i) out.push_back(series_from_json(b[i], child("/battery", i)));
    return out;
}

CommandResult probe_result(const DeddensProbeResult& r) {
    std::vector<double> per_n;
    for (std::size_t n = 0; n < r.n_max_used; ++n) {
        double m = 0.0;
        for (const auto& row : r.ratios)
            if (n < row.size()) m = std::max(m, row[n]);
        per_n.push_back(m);
    }
    return {{{"probe", probe_to_json(r)}, {"series", series_block("ratio", per_n, 1)}},
            exit_code_for(r.bounded_verdict)};
}

CommandResult run_deddens(const json& job, const Settings& s) {
    const auto& which = require(job, "probe", "");
    if (!which.is_string()) throw SchemaError("/probe", "expected a string");
    const std::string name = which.get<std::string>();
    const auto phi = [&] { return map_from_json(require(job, "phi", ""), "/phi"); };

    if (name == "ratio") {
        const auto& op = require(job, "operator", "");
        if (!op.is_string()) throw SchemaError("/operator", "expected a string");
        DeddensGenerator T = DeddensGenerator::composition();
        const std::string o = op.get<std::string>();
        if (o == "multiplication") {
            const json& h = require(job, "h", "");
            const auto hc = series_from_json(h, "/h").coeffs();
            T = DeddensGenerator::multiplication({hc.begin(), hc.end()});
        } else if (o == "antiderivative") {
            T = DeddensGenerator::antiderivative();
        } else if (o != "composition") {
            throw SchemaError("/operator", "expected composition, multiplication or antiderivative");
        }
        const DiskSelfMap f = phi();
        const auto battery = battery_from_json(job);
        const std::size_t n_max = natural_or(job, "n_max", 20, "");
        return probe_result(deddens_ratio_probe(T, f, battery, n_max, exponent_or(job, "p", 2.0, ""), s));
    }
    if (name == "antiderivative") {
        const DiskSelfMap f = phi();
        return probe_result(certify_antiderivative(f, natural_or(job, "n_max", 6, ""), exponent_or(job, "p", 2.0, ""), s));
    }
    if (name == "zero_moment") {
        const InnerFunction theta = inner_from_json(require(job, "theta", ""), "/theta");
        return verdict_result(zero_moment_probe(theta, phi(), s));
    }
    if (name == "singular_atom") {
        const InnerFunction S = inner_from_json(require(job, "S", ""), "/S");
        const std::size_t n = natural_or(job, "n", 0, "");
        return verdict_result(singular_atom_probe(S, n, phi(), s));
    }
    if (name == "lattice_decay") {
        const DiskSelfMap f = phi();
        const std::size_t m = natural_from_json(require(job, "m", ""), "/m");
        const std::size_t k = natural_from_json(require(job, "k", ""), "/k");
        const TaylorSeries g = job.contains("f") ? series_from_json(job.at("f"), "/f") : TaylorSeries({1.0});
        const HardyExponent p = exponent_or(job, "p", 2.0, "");
        return verdict_result(lattice_decay(f, m, k, g, p, natural_or(job, "n_max", 30, ""), s));
    }
    throw SchemaError("/probe", "unknown probe '" + name + "' (ratio, antiderivative, zero_moment, singular_atom, lattice_decay)");
}

CommandResult run_lattice(const json& job, const Settings& s) {
    const DiskSelfMap phi = map_from_json(require(job, "phi", ""), "/phi");
    const LatticeScanResult r = lattice_scan(phi, natural_or(job, "N_max", 6, ""), s);
    return {{{"lattice", lattice_to_json(r)}, {"series", series_block("leakage", r.max_leakage, 0)}}, 0};
}

}  // namespace

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j, const std::string& pointer) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw SchemaError(pointer.empty() ? "/" : pointer, "expected a complex number [re, im]");
    const cplx z(j[0].get<double>(), j[1].get<double>());
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw SchemaError(pointer, "expected finite parts");
    return z;
}

json map_to_json(const DiskSelfMap& phi) {
    switch (phi.kind()) {
        case MapKind::identity: return {{"identity", true}};
        case MapKind::rotation: return {{"rotation", complex_to_json(phi.rotation_factor())}};
        case MapKind::monomial: return {{"monomial", phi.monomial_power()}};
        case MapKind::mobius: {
            const Mobius m = *phi.as_mobius();
            return {{"mobius",
                     {{"a", complex_to_json(m.a)},
                      {"b", complex_to_json(m.b)},
                      {"c", complex_to_json(m.c)},
                      {"d", complex_to_json(m.d)}}}};
        }
        case MapKind::polynomial: {
            json c = json::array();
            for (const cplx& x : phi.polynomial_coeffs()) c.push_back(complex_to_json(x));
            return {{"poly", c}};
        }
        case MapKind::constant: return {{"constant", complex_to_json(phi.constant_value())}};
        case MapKind::composite: {
            json parts = json::array();
            for (const auto& part : phi.parts()) parts.push_back(map_to_json(part));
            return {{"compose", parts}};
        }
    }
    return {{"identity", true}};
}

DiskSelfMap map_from_json(const json& j, const std::string& pointer) {
    if (j.is_string() && j.get<std::string>() == "identity") return DiskSelfMap::identity();
    if (!j.is_object() || j.size() != 1)
        throw SchemaError(pointer.empty() ? "/" : pointer, "expected an object with exactly one map kind");
    const auto& [key, value] = *j.items().begin();
    const std::string here = child(pointer, key);
    return at_pointer(here, [&]() -> DiskSelfMap {
        if (key == "identity") return DiskSelfMap::identity();
        if (key == "rotation") return DiskSelfMap::rotation(complex_from_json(value, here));
        if (key == "monomial") return DiskSelfMap::monomial(natural_from_json(value, here));
        if (key == "constant") return DiskSelfMap::constant(complex_from_json(value, here));
        if (key == "mobius") {
            const auto part = [&](const char* name) { return complex_from_json(require(value, name, here), child(here, name)); };
            return DiskSelfMap::mobius(part("a"), part("b"), part("c"), part("d"));
        }
        if (key == "poly") {
            if (!value.is_array() || value.empty()) throw SchemaError(here, "expected a nonempty coefficient list");
            std::vector<cplx> c;
            for (std::size_t i = 0; i < value.size(); ++i) c.push_back(complex_from_json(value[i], child(here, i)));
            return DiskSelfMap::polynomial(std::move(c));
        }
        if (key == "compose") {
            if (!value.is_array() || value.empty()) throw SchemaError(here, "expected a nonempty list of maps");
            std::vector<DiskSelfMap> parts;
            for (std::size_t i = 0; i < value.size(); ++i) parts.push_back(map_from_json(value[i], child(here, i)));
            return DiskSelfMap::composite(std::move(parts));
        }
        throw SchemaError(here, "unknown map kind (identity, rotation, monomial, mobius, poly, constant, compose)");
    });
}

json inner_to_json(const InnerFunction& theta) {
    json zeros = json::array();
    for (const auto& z : theta.blaschke_zeros()) zeros.push_back({{"a", complex_to_json(z.a)}, {"mult", z.mult}});
    json atoms = json::array();
    for (const auto& a : theta.atoms()) atoms.push_back({{"t", a.t}, {"c", a.c}});
    return {{"lambda", complex_to_json(theta.lambda())},
            {"m0", theta.origin_multiplicity()},
            {"blaschke", zeros},
            {"atoms", atoms}};
}

InnerFunction inner_from_json(const json& j, const std::string& pointer) {
    if (!j.is_object()) throw SchemaError(pointer.empty() ? "/" : pointer, "expected an inner function object");
    for (const auto& [key, value] : j.items())
        if (key != "lambda" && key != "m0" && key != "blaschke" && key != "atoms")
            throw SchemaError(child(pointer, key), "unknown field (lambda, m0, blaschke, atoms)");
    const cplx lambda = j.contains("lambda") ? complex_from_json(j.at("lambda"), child(pointer, "lambda")) : cplx(1.0);
    const std::size_t m0 = natural_or(j, "m0", 0, pointer);
    std::vector<BlaschkeZero> zeros;
    if (j.contains("blaschke")) {
        const json& b = j.at("blaschke");
        const std::string here = child(pointer, "blaschke");
        if (!b.is_array()) throw SchemaError(here, "expected an array");
        for (std::size_t i = 0; i < b.size(); ++i) {
            const std::string at = child(here, i);
            const cplx a = complex_from_json(require(b[i], "a", at), child(at, "a"));
            const std::size_t mult = natural_or(b[i], "mult", 1, at);
            if (mult == 0) throw SchemaError(child(at, "mult"), "expected mult >= 1");
            zeros.push_back({a, mult});
        }
    }
    std::vector<SingularAtom> atoms;
    if (j.contains("atoms")) {
        const json& a = j.at("atoms");
        const std::string here = child(pointer, "atoms");
        if (!a.is_array()) throw SchemaError(here, "expected an array");
        for (std::size_t i = 0; i < a.size(); ++i) {
            const std::string at = child(here, i);
            atoms.push_back({number_from_json(require(a[i], "t", at), child(at, "t")),
                             number_from_json(require(a[i], "c", at), child(at, "c"))});
        }
    }
    return at_pointer(pointer, [&] { return InnerFunction(lambda, m0, std::move(zeros), std::move(atoms)); });
}

json pair_to_json(const AdmissiblePair& pair) {
    return {{"alpha", complex_to_json(pair.alpha())}, {"beta", complex_to_json(pair.beta())}};
}

AdmissiblePair pair_from_json(const json& j, const std::string& pointer) {
    const cplx alpha = complex_from_json(require(j, "alpha", pointer), child(pointer, "alpha"));
    const cplx beta = complex_from_json(require(j, "beta", pointer), child(pointer, "beta"));
    return at_pointer(pointer, [&] { return AdmissiblePair(alpha, beta); });
}

TaylorSeries series_from_json(const json& j, const std::string& pointer) {
    if (!j.is_array() || j.empty()) throw SchemaError(pointer.empty() ? "/" : pointer, "expected a nonempty coefficient list");
    std::vector<cplx> c;
    for (std::size_t i = 0; i < j.size(); ++i) c.push_back(complex_from_json(j[i], child(pointer, i)));
    return TaylorSeries(std::move(c));
}

json settings_to_json(const Settings& s) {
    return {{"order", s.order},
            {"grid", {{"radii", s.grid.radii()}, {"angles", s.grid.angular_count()}}},
            {"tolerances",
             {{"eq", s.tol.eq},
              {"map_eq", s.tol.map_eq},
              {"sup", s.tol.sup},
              {"root", s.tol.root},
              {"cluster", s.tol.cluster},
              {"snap", s.tol.snap}}},
            {"battery_degree", s.battery_degree},
            {"seed", s.seed}};
}

Settings settings_from_json(const json& j, Settings base, const std::string& pointer) {
    if (!j.is_object()) throw SchemaError(pointer, "expected an object");
    for (const auto& [key, value] : j.items()) {
        const std::string here = child(pointer, key);
        if (key == "order") {
            base.order = natural_from_json(value, here);
            if (base.order == 0) throw SchemaError(here, "expected order >= 1");
        } else if (key == "grid" || key == "angles") {
            continue;
        } else if (key == "tol_eq") {
            base.tol.eq = number_from_json(value, here);
            if (!(base.tol.eq > 0.0)) throw SchemaError(here, "expected a positive tolerance");
        } else if (key == "tol_sup") {
            base.tol.sup = number_from_json(value, here);
            if (!(base.tol.sup >= 0.0)) throw SchemaError(here, "expected a nonnegative tolerance");
        } else if (key == "seed") {
            base.seed = natural_from_json(value, here);
        } else {
            throw SchemaError(here, "unknown truncation field (order, grid, angles, tol_eq, tol_sup, seed)");
        }
    }
    if (j.contains("grid") || j.contains("angles")) {
        std::vector<double> radii = base.grid.radii();
        if (j.contains("grid")) {
            const json& g = j.at("grid");
            const std::string here = child(pointer, "grid");
            if (!g.is_array() || g.empty()) throw SchemaError(here, "expected a nonempty list of radii");
            radii.clear();
            for (std::size_t i = 0; i < g.size(); ++i) radii.push_back(number_from_json(g[i], child(here, i)));
        }
        const std::size_t angles =
            j.contains("angles") ? natural_from_json(j.at("angles"), child(pointer, "angles")) : base.grid.angular_count();
        base.grid = at_pointer(child(pointer, "grid"), [&] { return DiskGrid(radii, angles); });
    }
    return base;
}

json verdict_to_json(const Verdict& v) {
    json out{{"claim", v.claim}, {"outcome", to_string(v.outcome())}, {"criterion", leg_to_json(v.criterion)}};
    if (v.direct) {
        json d = leg_to_json(*v.direct);
        d["battery_size"] = v.direct->battery_size;
        d["worst_violation"] = finite_or_null(v.direct->worst_violation);
        d["witness"] = v.direct->witness ? json(*v.direct->witness) : json(nullptr);
        out["direct"] = d;
    }
    out["agreement"] = v.agreement ? json(*v.agreement) : json(nullptr);
    out["notes"] = v.notes;
    out["truncation"] = settings_to_json(v.truncation);
    return out;
}

json probe_to_json(const DeddensProbeResult& r) {
    json rows = json::array();
    for (const auto& row : r.ratios) {
        json a = json::array();
        for (double x : row) a.push_back(finite_or_null(x));
        rows.push_back(a);
    }
    json out{{"operator_id", r.operator_id},
             {"bounded_verdict", to_string(r.bounded_verdict)},
             {"sup_ratio", finite_or_null(r.sup_ratio)},
             {"n_max_requested", r.n_max_requested},
             {"n_max_used", r.n_max_used},
             {"ratios", rows}};
    out["intertwining_residual"] = r.intertwining_residual ? finite_or_null(*r.intertwining_residual) : json(nullptr);
    out["notes"] = r.notes;
    return out;
}

json lattice_to_json(const LatticeScanResult& r) {
    json per_n = json::array();
    for (std::size_t i = 0; i < r.n_values.size(); ++i)
        per_n.push_back({{"n", r.n_values[i]},
                         {"survived", static_cast<bool>(r.survived[i])},
                         {"max_leakage", r.max_leakage[i]},
                         {"witness", r.witnesses[i].empty() ? json(nullptr) : json(r.witnesses[i])}});
    return {{"all_survived", r.all_survived()}, {"per_n", per_n}};
}

JobResult run_job(const std::string& command, const json& job, const Settings& settings, bool timing) {
    const auto start = std::chrono::steady_clock::now();
    JobResult out;
    out.report["schema_version"] = kSchemaVersion;
    out.report["command"] = command;
    out.report["job"] = job;
    Settings s = settings;
    try {
        if (!job.is_object()) throw SchemaError("/", "expected a job object");
        if (job.contains("truncation")) s = settings_from_json(job.at("truncation"), s);
        CommandResult r;
        if (command == "check") r = run_check(job, s);
        else if (command == "schur-quotient") r = run_schur_quotient(job, s);
        else if (command == "orbit") r = run_orbit(job, s);
        else if (command == "norms") r = run_norms(job, s);
        else if (command == "deddens") r = run_deddens(job, s);
        else if (command == "lattice-scan") r = run_lattice(job, s);
        else throw SchemaError("/command", "unknown command '" + command + "'");
        out.report["result"] = std::move(r.result);
        out.exit_code = r.exit_code;
    } catch (const SchemaError& e) {
        out.report["error"] = {{"kind", to_string(e.kind())}, {"pointer", e.pointer()}, {"message", e.what()}};
        out.exit_code = 2;
    } catch (const Error& e) {
        out.report["error"] = {{"kind", to_string(e.kind())}, {"pointer", nullptr}, {"message", e.what()}};
        out.exit_code = exit_code_for(e.kind());
    }
    json prov = settings_to_json(s);
    if (timing)
        prov["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.report["provenance"] = prov;
    out.report["exit_code"] = out.exit_code;
    return out;
}

std::string report_to_csv(const json& report) {
    const auto r = report.find("result");
    if (r == report.end() || !r->contains("series")) throw InvalidInput("this report has no sequence to emit as CSV");
    const json& series = r->at("series");
    std::ostringstream os;
    os.precision(17);
    os << "n," << series.at("name").get<std::string>() << "\n";
    for (const auto& row : series.at("rows")) {
        os << row[0].get<long long>() << ",";
        if (row[1].is_null()) os << "nan";
        else os << row[1].get<double>();
        os << "\n";
    }
    return os.str();
}

}  // namespace hil
