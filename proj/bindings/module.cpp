#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "syslat/io.hpp"
#include "syslat/search.hpp"

namespace py = pybind11;
using namespace syslat;

namespace {

py::object json_to_py(const nlohmann::json& j) {
  const py::module_ pyjson = py::module_::import("json");
  return pyjson.attr("loads")(j.dump());
}

EnumerationOptions enum_opts(std::int64_t budget, std::uint64_t seed) {
  EnumerationOptions opts;
  opts.node_budget = budget;
  opts.optimizer.seed = seed;
  return opts;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lattice successive minima, mass/comass norms on exterior powers, "
            "flat-torus systoles, and inequality certificates.";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<DegenerateLatticeError>(m, "DegenerateLatticeError",
                                                 PyExc_ValueError);
  py::register_exception<BudgetExceededError>(m, "BudgetExceededError",
                                              PyExc_RuntimeError);

  py::class_<Lattice>(m, "Lattice")
      .def(py::init<Eigen::MatrixXd>(), py::arg("basis"))
      .def_property_readonly("dim", &Lattice::dim)
      .def_property_readonly("basis", &Lattice::basis)
      .def_property_readonly("covolume", &Lattice::covolume)
      .def("gram", &Lattice::gram)
      .def("vector", &Lattice::vector, py::arg("coeffs"))
      .def("scaled", &Lattice::scaled, py::arg("factor"))
      .def("rescaled_to_unit_covolume", &Lattice::rescaled_to_unit_covolume)
      .def("__repr__", [](const Lattice& l) {
        return "<Lattice dim=" + std::to_string(l.dim()) + ">";
      });

  m.def("dual", &dual, py::arg("lattice"));
  m.def("lll_reduce", &lll_reduce, py::arg("lattice"),
        py::arg("delta") = kDefaultLllDelta);
  m.def("random_lattice", &random_lattice, py::arg("dim"), py::arg("seed"));
  m.def("exterior_power_lattice", &exterior_power_lattice, py::arg("lattice"),
        py::arg("p"));

  py::class_<PVector>(m, "PVector")
      .def(py::init(&PVector::from_coords), py::arg("n"), py::arg("p"),
           py::arg("coords"))
      .def_readonly("ambient_dim", &PVector::ambient_dim)
      .def_readonly("degree", &PVector::degree)
      .def_readonly("coords", &PVector::coords)
      .def("euclidean_norm", &PVector::euclidean_norm);

  m.def("wedge", &wedge, py::arg("a"), py::arg("b"));
  m.def("hodge_star", &hodge_star, py::arg("a"));
  m.def(
      "mass",
      [](const PVector& v) {
        const MassResult r = mass(v);
        return py::make_tuple(r.value, r.lower, r.upper, r.heuristic);
      },
      py::arg("v"), "Returns (value, lower, upper, heuristic).");
  m.def(
      "comass",
      [](const PVector& w) {
        const ComassResult r = comass(w);
        return py::make_tuple(r.value, r.frame, r.heuristic);
      },
      py::arg("w"), "Returns (value, frame, heuristic).");
  m.def("two_vector_canonical_coefficients", &two_vector_canonical_coefficients,
        py::arg("w"));

  m.def(
      "successive_minima",
      [](const Lattice& lattice, const std::string& norm, int count,
         std::int64_t budget, std::uint64_t seed) {
        const NormSpec spec = NormSpec::parse(norm, lattice.dim());
        return json_to_py(minima_profile_to_json(
            successive_minima(lattice, spec, count, enum_opts(budget, seed))));
      },
      py::arg("lattice"), py::arg("norm") = "euclidean", py::arg("count") = 1,
      py::arg("budget") = 10'000'000, py::arg("seed") = 0);

  m.def(
      "stable_systole",
      [](const Lattice& lattice, int p, std::int64_t budget, std::uint64_t seed) {
        return json_to_py(systole_report_to_json(
            stable_systole(FlatTorus(lattice), p, enum_opts(budget, seed))));
      },
      py::arg("lattice"), py::arg("p"), py::arg("budget") = 10'000'000,
      py::arg("seed") = 0);
  m.def(
      "codim1_systole",
      [](const Lattice& lattice, std::int64_t budget) {
        return json_to_py(systole_report_to_json(
            codim1_systole(FlatTorus(lattice), enum_opts(budget, 0))));
      },
      py::arg("lattice"), py::arg("budget") = 10'000'000);
  m.def(
      "conformal_systole",
      [](const Lattice& lattice, int p, std::int64_t budget) {
        return json_to_py(systole_report_to_json(
            conformal_systole(FlatTorus(lattice), p, enum_opts(budget, 0))));
      },
      py::arg("lattice"), py::arg("p"), py::arg("budget") = 10'000'000);

  m.def(
      "verify",
      [](const std::string& ineq, const Lattice& lattice, int p, int q,
         double big_d, std::int64_t budget) {
        const auto opts = enum_opts(budget, 0);
        std::vector<Certificate> certs;
        const FlatTorus torus(lattice);
        if (ineq == "transference") {
          certs = verify_transference(lattice, opts);
        } else if (ineq == "banaszczyk") {
          certs = verify_banaszczyk_general(lattice, p > 0 ? p : 1, opts);
        } else if (ineq == "cor-c") {
          certs = {verify_corollary_c(torus, opts)};
        } else if (ineq == "thm-b") {
          certs = {verify_theorem_b(torus, p, q, opts)};
        } else if (ineq == "cor-d") {
          certs = {verify_corollary_d(torus, opts)};
        } else if (ineq == "thm-e") {
          certs = {verify_theorem_e(torus, p, opts)};
        } else if (ineq == "thm-81") {
          certs = {verify_theorem_81(torus, p, opts)};
        } else if (ineq == "minkowski") {
          certs = {verify_minkowski(lattice, big_d, opts)};
        } else {
          throw InputError("unknown inequality '" + ineq + "'");
        }
        py::list out;
        for (const Certificate& cert : certs) {
          out.append(json_to_py(certificate_to_json(cert)));
        }
        return out;
      },
      py::arg("ineq"), py::arg("lattice"), py::arg("p") = 0, py::arg("q") = 0,
      py::arg("D") = 1.0, py::arg("budget") = 10'000'000);

  m.def(
      "search_dual_critical",
      [](int b, int starts, int iters, std::uint64_t seed) {
        SearchOptions opts;
        opts.starts = starts;
        opts.iters = iters;
        opts.seed = seed;
        return json_to_py(search_result_to_json(search_dual_critical(b, opts)));
      },
      py::arg("b"), py::arg("starts") = 32, py::arg("iters") = 2000,
      py::arg("seed") = 0);

  m.def("gamma_constants", [](int b) {
    const ConstantsTable t = gamma_constants(b);
    py::dict d;
    d["b"] = t.b;
    d["gamma_upper"] = t.gamma_upper;
    d["gamma_prime_upper"] = t.gamma_prime_upper;
    d["gamma_prime_lower"] = t.gamma_prime_lower;
    d["lower_provenance"] = t.lower_provenance;
    return d;
  });

  m.def("lattice_to_json", [](const Lattice& l) {
    return json_to_py(lattice_to_json(l));
  });
  m.def("record_schemas", []() { return json_to_py(record_schemas()); });
}
