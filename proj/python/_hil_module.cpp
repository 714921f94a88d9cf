#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hil/report.hpp"
#include "hil/verifiers.hpp"

namespace py = pybind11;

namespace {

/// Settings with optional overrides given as a JSON object string.
hil::Settings settings_from(const std::string& truncation) {
    hil::Settings s = hil::Settings::from_environment();
    if (truncation.empty()) return s;
    return hil::settings_from_json(hil::json::parse(truncation), s);
}

std::string dump(const hil::Verdict& v) { return hil::verdict_to_json(v).dump(); }

}  // namespace

PYBIND11_MODULE(_hil, m) {
    m.doc() = "Invariant subspace checks for composition operators on Hardy spaces";

    static py::exception<hil::Error> error(m, "HilError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const hil::Error& e) {
            PyErr_SetString(error.ptr(), e.what());
        }
    });

    py::class_<hil::DiskSelfMap>(m, "DiskSelfMap")
        .def_static("identity", &hil::DiskSelfMap::identity)
        .def_static("rotation", &hil::DiskSelfMap::rotation, py::arg("c"))
        .def_static("monomial", &hil::DiskSelfMap::monomial, py::arg("k"))
        .def_static("mobius", py::overload_cast<hil::cplx, hil::cplx, hil::cplx, hil::cplx>(&hil::DiskSelfMap::mobius),
                    py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"))
        .def_static("polynomial", &hil::DiskSelfMap::polynomial, py::arg("coeffs"))
        .def_static("constant", &hil::DiskSelfMap::constant, py::arg("a"))
        .def_static("composite", &hil::DiskSelfMap::composite, py::arg("parts"))
        .def_static("from_json", [](const std::string& s) { return hil::map_from_json(hil::json::parse(s)); })
        .def("to_json", [](const hil::DiskSelfMap& f) { return hil::map_to_json(f).dump(); })
        .def("__call__", &hil::DiskSelfMap::operator(), py::arg("z"))
        .def("derivative", &hil::DiskSelfMap::derivative, py::arg("z"))
        .def("sup_estimate", &hil::DiskSelfMap::sup_estimate)
        .def("is_strict", &hil::DiskSelfMap::is_strict)
        .def("__repr__", &hil::DiskSelfMap::describe);

    py::class_<hil::InnerFunction>(m, "InnerFunction")
        .def(py::init([](hil::cplx lambda, std::size_t m0, const std::vector<std::pair<hil::cplx, std::size_t>>& zeros,
                         const std::vector<std::pair<double, double>>& atoms) {
                 std::vector<hil::BlaschkeZero> zs;
                 for (const auto& [a, mult] : zeros) zs.push_back({a, mult});
                 std::vector<hil::SingularAtom> as;
                 for (const auto& [t, c] : atoms) as.push_back({t, c});
                 return hil::InnerFunction(lambda, m0, zs, as);
             }),
             py::arg("lam") = hil::cplx(1.0), py::arg("m0") = 0,
             py::arg("zeros") = std::vector<std::pair<hil::cplx, std::size_t>>{},
             py::arg("atoms") = std::vector<std::pair<double, double>>{})
        .def_static("monomial", &hil::InnerFunction::monomial, py::arg("m"))
        .def_static("blaschke", &hil::InnerFunction::blaschke, py::arg("a"), py::arg("mult") = 1)
        .def_static("atom", &hil::InnerFunction::atom, py::arg("t"), py::arg("c"))
        .def_static("from_json", [](const std::string& s) { return hil::inner_from_json(hil::json::parse(s)); })
        .def("to_json", [](const hil::InnerFunction& f) { return hil::inner_to_json(f).dump(); })
        .def("__call__", &hil::InnerFunction::operator(), py::arg("z"))
        .def("log_abs", &hil::InnerFunction::log_abs, py::arg("z"))
        .def("__repr__", &hil::InnerFunction::describe);

    py::class_<hil::AdmissiblePair>(m, "AdmissiblePair")
        .def(py::init<hil::cplx, hil::cplx>(), py::arg("alpha"), py::arg("beta"))
        .def_static("normalized", &hil::AdmissiblePair::normalized, py::arg("alpha"), py::arg("beta"))
        .def_property_readonly("alpha", &hil::AdmissiblePair::alpha)
        .def_property_readonly("beta", &hil::AdmissiblePair::beta);

    m.def(
        "check_beurling",
        [](const hil::InnerFunction& theta, const hil::DiskSelfMap& phi, const std::string& t) {
            return dump(hil::check_beurling(theta, phi, settings_from(t)));
        },
        py::arg("theta"), py::arg("phi"), py::arg("truncation") = "");
    m.def(
        "check_Hab",
        [](const hil::DiskSelfMap& phi, const hil::AdmissiblePair& pair, const std::string& t) {
            return dump(hil::check_Hab(phi, pair, settings_from(t)));
        },
        py::arg("phi"), py::arg("pair"), py::arg("truncation") = "");
    m.def(
        "check_zn_Hab_monomial",
        [](std::size_t n, std::size_t k, const hil::AdmissiblePair& pair, const std::string& t) {
            return dump(hil::check_zn_Hab_monomial(n, k, pair, settings_from(t)));
        },
        py::arg("n"), py::arg("k"), py::arg("pair"), py::arg("truncation") = "");
    m.def(
        "run_job",
        [](const std::string& command, const std::string& job, bool timing) {
            const hil::JobResult r = hil::run_job(command, hil::json::parse(job), hil::Settings::from_environment(), timing);
            return py::make_tuple(r.report.dump(), r.exit_code);
        },
        py::arg("command"), py::arg("job"), py::arg("timing") = false);
    m.attr("schema_version") = hil::kSchemaVersion;
}
