#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gptinfo/cli.hpp"
#include "gptinfo/composites.hpp"
#include "gptinfo/error.hpp"
#include "gptinfo/quantum.hpp"
#include "gptinfo/spectra.hpp"

namespace py = pybind11;
using namespace gptinfo;

namespace {

std::vector<DensityMatrix> density_list(const std::vector<CMatrix>& ms) {
  std::vector<DensityMatrix> out;
  for (const auto& m : ms) out.emplace_back(m);
  return out;
}

JointState joint_from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw Error(ErrorCode::InvalidInput, "empty tensor");
  std::vector<double> flat;
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) throw Error(ErrorCode::InvalidInput, "ragged tensor");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return JointState(rows.size(), rows.front().size(), std::move(flat));
}

std::vector<std::vector<double>> joint_rows(const JointState& j) {
  std::vector<std::vector<double>> rows(j.rows(), std::vector<double>(j.cols()));
  for (std::size_t i = 0; i < j.rows(); ++i)
    for (std::size_t k = 0; k < j.cols(); ++k) rows[i][k] = j.at(i, k);
  return rows;
}

py::dict spectrum_dict(const SpectrumResult& r) {
  py::dict d;
  d["exists"] = r.exists();
  d["topk_bounds"] = r.topk_bounds;
  if (r.exists()) {
    d["weights"] = r.decomposition->weights.values();
    d["support"] = r.decomposition->support;
  } else {
    d["best_candidate"] = r.best_candidate;
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Generalized entropies, spectra and separability on classical, quantum and polytopic models.";

  static py::exception<Error> error_type(m, "GptinfoError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error_type.ptr())(e.what());
      exc.attr("code") = to_string(e.code());
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  m.def("classical_entropy",
        [](const std::vector<double>& p, const std::string& pair) {
          return classical_entropy(parse_pair_spec(pair), ProbVector(p));
        },
        py::arg("p"), py::arg("pair") = "shannon");
  m.def("entropy_upper_bound",
        [](std::size_t n, const std::string& pair) { return entropy_upper_bound(parse_pair_spec(pair), n); },
        py::arg("n"), py::arg("pair") = "shannon");
  m.def("majorizes",
        [](const std::vector<double>& q, const std::vector<double>& p) {
          return majorizes(ProbVector(q), ProbVector(p));
        },
        py::arg("q"), py::arg("p"), "True iff p is majorized by q.");

  m.def("eigen_spectrum", [](const CMatrix& rho) { return eigen_spectrum(DensityMatrix(rho)).values(); },
        py::arg("rho"));
  m.def("quantum_entropy",
        [](const CMatrix& rho, const std::string& pair) {
          return quantum_entropy(parse_pair_spec(pair), DensityMatrix(rho));
        },
        py::arg("rho"), py::arg("pair") = "shannon");
  m.def("quantum_entropy_min_search",
        [](const CMatrix& rho, const std::string& pair, std::size_t budget, std::uint64_t seed) {
          const auto r = quantum_entropy_min_search(parse_pair_spec(pair), DensityMatrix(rho), budget, seed);
          return py::make_tuple(r.value, r.witness.effects());
        },
        py::arg("rho"), py::arg("pair") = "shannon", py::arg("budget") = 2000, py::arg("seed") = 0,
        "Returns (value, witness effects).");
  m.def("holevo_chi",
        [](const std::vector<double>& w, const std::vector<CMatrix>& states) {
          return holevo_chi(Ensemble(ProbVector(w), density_list(states)));
        },
        py::arg("weights"), py::arg("states"));
  m.def("accessible_info",
        [](const std::vector<double>& w, const std::vector<CMatrix>& states, const std::vector<CMatrix>& effects) {
          return accessible_info_estimate(Ensemble(ProbVector(w), density_list(states)), Povm(effects));
        },
        py::arg("weights"), py::arg("states"), py::arg("effects"));

  py::class_<StateSpace>(m, "StateSpace")
      .def_static("simplex", &StateSpace::simplex, py::arg("n"))
      .def_static("regular_polygon", &StateSpace::regular_polygon, py::arg("n"))
      .def_static("custom", &StateSpace::custom, py::arg("vertices"))
      .def_property_readonly("vertices", &StateSpace::vertices)
      .def_property_readonly("kind", [](const StateSpace& s) { return std::string(to_string(s.kind())); })
      .def("__len__", &StateSpace::size)
      .def("frames",
           [](const StateSpace& s) {
             std::vector<std::vector<std::size_t>> out;
             for (const auto& f : enumerate_frames(s)) out.push_back(f.vertices);
             return out;
           })
      .def("spectrum",
           [](const StateSpace& s, const Point& raw) { return spectrum_dict(generalized_spectrum(s, s.state_from_raw(raw))); },
           py::arg("state"))
      .def("spectral_entropy",
           [](const StateSpace& s, const Point& raw, const std::string& pair) {
             return spectral_entropy(parse_pair_spec(pair), s, s.state_from_raw(raw));
           },
           py::arg("state"), py::arg("pair") = "shannon")
      .def("frame_entropy",
           [](const StateSpace& s, const Point& raw, const std::string& pair) {
             const auto fe = frame_entropy(parse_pair_spec(pair), s, s.state_from_raw(raw));
             return py::make_tuple(fe.value, fe.frame.vertices);
           },
           py::arg("state"), py::arg("pair") = "shannon", "Returns (value, frame vertices).");

  m.def("pr_box", [](const StateSpace& a, const StateSpace& b) { return joint_rows(pr_box(ProductSpace(a, b))); },
        py::arg("a"), py::arg("b"));
  m.def("is_separable",
        [](const StateSpace& a, const StateSpace& b, const std::vector<std::vector<double>>& tensor) {
          const ProductSpace ps(a, b);
          const auto r = is_separable(ps, joint_from_rows(tensor));
          py::list witness;
          for (const auto& t : r.witness) witness.append(py::make_tuple(t.weight, t.vertex_a, t.vertex_b));
          return py::make_tuple(r.separable, witness);
        },
        py::arg("a"), py::arg("b"), py::arg("tensor"), "Returns (separable, [(weight, a, b), ...]).");
  m.def("max_tensor_member",
        [](const StateSpace& a, const StateSpace& b, const std::vector<std::vector<double>>& tensor) {
          return max_tensor_member(ProductSpace(a, b), joint_from_rows(tensor));
        },
        py::arg("a"), py::arg("b"), py::arg("tensor"));
  m.def("classical_collapse_check", &classical_collapse_check, py::arg("a"), py::arg("b"));

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = cli::run(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line front end in process; returns (exit code, stdout, stderr).");
}
