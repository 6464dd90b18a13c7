#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dualmat/io.hpp"

namespace py = pybind11;
using namespace dualmat;

namespace {

MatrixClass class_from_string(const std::string& name) {
  if (name == "hermitian") return MatrixClass::hermitian;
  if (name == "idempotent") return MatrixClass::idempotent;
  if (name == "normal") return MatrixClass::normal;
  if (name == "dual_unitary") return MatrixClass::dual_unitary;
  throw Error(ErrorCode::invalid_argument, "unknown matrix class '" + name + "'");
}

template <class T, class F>
T parse_name(const std::string& name, F from_string, const char* what) {
  const auto v = from_string(name);
  if (!v) throw Error(ErrorCode::invalid_argument, std::string("unknown ") + what + " '" + name + "'");
  return *v;
}

std::string dump(const Json& j) {
  std::ostringstream out;
  write_json(out, j);
  return out.str();
}

py::dict residuals_dict(const InverseReport& r) {
  py::dict out;
  for (const auto& [label, res] : r.residuals) {
    out[py::str(label)] = py::make_tuple(res.std_dev, res.dual_dev, res.ratio);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Dual complex matrices: dual SVD, HS blocks and generalized inverses";

  // Kept alive for the lifetime of the interpreter.
  static py::handle error_type = py::exception<Error>(m, "DualMatError", PyExc_ValueError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error_type(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<ToleranceConfig>(m, "ToleranceConfig")
      .def(py::init([](double rank_rel_tol, double eq_abs_tol, double eq_rel_tol) {
             ToleranceConfig t{rank_rel_tol, eq_abs_tol, eq_rel_tol};
             t.validate();
             return t;
           }),
           py::arg("rank_rel_tol") = 1e-8, py::arg("eq_abs_tol") = 1e-9,
           py::arg("eq_rel_tol") = 1e-9)
      .def_readwrite("rank_rel_tol", &ToleranceConfig::rank_rel_tol)
      .def_readwrite("eq_abs_tol", &ToleranceConfig::eq_abs_tol)
      .def_readwrite("eq_rel_tol", &ToleranceConfig::eq_rel_tol);

  py::class_<DualReal>(m, "DualReal")
      .def(py::init<double, double>(), py::arg("std") = 0.0, py::arg("dual") = 0.0)
      .def_readwrite("std", &DualReal::std_part)
      .def_readwrite("dual", &DualReal::dual_part)
      .def("__repr__", [](const DualReal& x) {
        std::ostringstream out;
        out << "DualReal(" << x.std_part << ", " << x.dual_part << ")";
        return out.str();
      });

  py::class_<DualMatrix>(m, "DualMatrix")
      .def(py::init<CMatrix, CMatrix>(), py::arg("std"), py::arg("dual"))
      .def(py::init([](const CMatrix& s) { return DualMatrix(s, CMatrix::Zero(s.rows(), s.cols())); }),
           py::arg("std"))
      .def_static("identity", &DualMatrix::identity, py::arg("n"))
      .def_static("zero", &DualMatrix::zero, py::arg("rows"), py::arg("cols"))
      .def_property_readonly("std", [](const DualMatrix& a) { return a.std_part(); })
      .def_property_readonly("dual", [](const DualMatrix& a) { return a.dual_part(); })
      .def_property_readonly("shape", [](const DualMatrix& a) { return py::make_tuple(a.rows(), a.cols()); })
      .def("adjoint", &DualMatrix::adjoint)
      .def("__matmul__", [](const DualMatrix& a, const DualMatrix& b) { return a * b; })
      .def("__add__", [](const DualMatrix& a, const DualMatrix& b) { return a + b; })
      .def("__sub__", [](const DualMatrix& a, const DualMatrix& b) { return a - b; })
      .def("to_json", [](const DualMatrix& a) { return dump(to_json(a)); })
      .def("__repr__", [](const DualMatrix& a) {
        return "DualMatrix(" + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + ")";
      });

  py::class_<DualSvd>(m, "DualSvd")
      .def_readonly("u", &DualSvd::u)
      .def_readonly("v", &DualSvd::v)
      .def_readonly("sigma", &DualSvd::sigma)
      .def_readonly("appreciable_rank", &DualSvd::appreciable_rank)
      .def_readonly("nonzero_count", &DualSvd::nonzero_count)
      .def("sigma_matrix", &DualSvd::sigma_matrix)
      .def("reconstruct", &DualSvd::reconstruct);

  py::class_<HsDecomposition>(m, "HsDecomposition")
      .def_readonly("u", &HsDecomposition::u)
      .def_readonly("sigma1", &HsDecomposition::sigma1)
      .def_readonly("sigma2", &HsDecomposition::sigma2)
      .def_readonly("k", &HsDecomposition::k)
      .def_readonly("l", &HsDecomposition::l)
      .def_readonly("m", &HsDecomposition::m)
      .def_readonly("n", &HsDecomposition::n)
      .def_property_readonly("rank", &HsDecomposition::rank)
      .def_property_readonly("order", &HsDecomposition::order)
      .def("w", &HsDecomposition::w)
      .def("reconstruct", &hs_reconstruct)
      .def("essential", &hs_essential);

  py::class_<InverseReport>(m, "InverseReport")
      .def_readonly("exists", &InverseReport::exists)
      .def_property_readonly("value",
                             [](const InverseReport& r) {
                               return r.exists ? r.value : std::optional<DualMatrix>{};
                             })
      .def_readonly("candidate", &InverseReport::value)
      .def_property_readonly("residuals", &residuals_dict);

  const ToleranceConfig def;
  auto tol_arg = py::arg("tol") = def;

  m.def("dual_svd", [](const DualMatrix& a, const ToleranceConfig& tol) { return dual_svd(a, tol); },
        py::arg("a"), tol_arg);
  m.def("hs_decompose", &hs_decompose, py::arg("a"), tol_arg);
  m.def("essential_part", py::overload_cast<const DualMatrix&, const ToleranceConfig&>(&essential_part),
        py::arg("a"), tol_arg);
  m.def("nonessential_part",
        py::overload_cast<const DualMatrix&, const ToleranceConfig&>(&nonessential_part), py::arg("a"),
        tol_arg);
  m.def("ndmpi", &ndmpi_svd, py::arg("a"), tol_arg);
  m.def("ndmpi_hs", [](const DualMatrix& a, const ToleranceConfig& tol) {
        return ndmpi_hs(hs_decompose(a, tol));
      },
      py::arg("a"), tol_arg);
  m.def("mpdgi", &mpdgi, py::arg("a"), tol_arg);
  m.def("dmpgi", &dmpgi, py::arg("a"), tol_arg);
  m.def("dggi", &dggi, py::arg("a"), tol_arg);
  m.def("group_inverse_essential", [](const DualMatrix& a, const ToleranceConfig& tol) {
        return group_inverse_essential(hs_decompose(a, tol), tol);
      },
      py::arg("a"), tol_arg);
  m.def("inverse", &inverse, py::arg("a"), tol_arg);
  m.def("verify_ndmpi", [](const DualMatrix& a, const DualMatrix& x, const ToleranceConfig& tol) {
        return verify_inverse(a, x, InverseKind::ndmpi, tol);
      },
      py::arg("a"), py::arg("x"), tol_arg);
  m.def("is_class", [](const DualMatrix& a, const std::string& which, const ToleranceConfig& tol) {
        return is_class(a, class_from_string(which), tol);
      },
      py::arg("a"), py::arg("which"), tol_arg);
  m.def("approx_equal", &approx_equal, py::arg("x"), py::arg("y"), tol_arg);

  m.def("check_property", [](const DualMatrix& a, const std::string& name, const ToleranceConfig& tol) {
        const PropertyId p = parse_name<PropertyId>(name, property_from_string, "property");
        const MatrixAnalysis an = analyze(a, tol);
        return py::make_tuple(definitional_check(an, p, tol).holds,
                              structural_check(an.hs, p, tol).holds);
      },
      py::arg("a"), py::arg("property"), tol_arg);
  m.def("properties", [] {
    std::vector<std::string> out;
    for (PropertyId p : kAllProperties) out.emplace_back(to_string(p));
    return out;
  });
  m.def("theorems", [] {
    std::vector<std::string> out;
    for (TheoremId t : all_theorems()) out.emplace_back(to_string(t));
    return out;
  });
  m.def("random_dual_matrix", [](const std::string& kind, Index n, Index cols, std::uint64_t seed) {
        return random_dual_matrix(
            {parse_name<GeneratorKind>(kind, generator_kind_from_string, "generator kind"), n, cols, seed});
      },
      py::arg("kind"), py::arg("n"), py::arg("cols") = 0, py::arg("seed") = 0);
  m.def("_run_suite_json",
        [](const std::string& theorem, int trials, std::vector<Index> sizes, std::uint64_t seed,
           int threads) {
          SuiteConfig cfg;
          cfg.theorem = parse_name<TheoremId>(theorem, theorem_from_string, "theorem");
          cfg.trials = trials;
          cfg.sizes = std::move(sizes);
          cfg.seed = seed;
          cfg.threads = threads;
          SuiteReport r;
          {
            py::gil_scoped_release release;
            r = run_suite(cfg);
          }
          return dump(to_json(r));
        },
        py::arg("theorem"), py::arg("trials"), py::arg("sizes"), py::arg("seed"), py::arg("threads"));
}
