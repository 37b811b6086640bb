#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "tensorank/capacity.hpp"
#include "tensorank/decompose.hpp"
#include "tensorank/rank_analysis.hpp"
#include "tensorank/synth_io.hpp"

namespace py = pybind11;
using namespace tensorank;

namespace {

DenseTensor from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  std::vector<std::int64_t> dims(a.ndim());
  for (py::ssize_t i = 0; i < a.ndim(); ++i) dims[i] = a.shape(i);
  DenseTensor t(dims);
  std::copy(a.data(), a.data() + a.size(), t.data.begin());
  return t;
}

py::array_t<double> to_array(const DenseTensor& t) {
  std::vector<py::ssize_t> shape(t.dims.begin(), t.dims.end());
  py::array_t<double> a(shape);
  std::copy(t.data.begin(), t.data.end(), a.mutable_data());
  return a;
}

py::object json_to_py(const nlohmann::json& j) {
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      py::dict d;
      for (const auto& [k, v] : j.items()) d[py::str(k)] = json_to_py(v);
      return d;
    }
    case nlohmann::json::value_t::array: {
      py::list l;
      for (const auto& v : j) l.append(json_to_py(v));
      return l;
    }
    case nlohmann::json::value_t::string: return py::str(j.get<std::string>());
    case nlohmann::json::value_t::boolean: return py::bool_(j.get<bool>());
    case nlohmann::json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case nlohmann::json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case nlohmann::json::value_t::number_float: return py::float_(j.get<double>());
    default: return py::none();
  }
}

TensorNetworkGraph model_graph(const std::string& model, int L, std::int64_t D, std::int64_t r) {
  if (model == "tt") return structure_graph(make_tt(L, D, r, Fill::Zeros, 0));
  if (model == "ht") return structure_graph(make_ht(L, D, r, Fill::Zeros, 0));
  if (model == "mera") return structure_graph(make_mera(L, D, r, Fill::Zeros, 0));
  throw DomainError("unknown model '" + model + "' (expected tt, ht, or mera)");
}

ModelKind model_kind(const std::string& model) {
  if (model == "tt") return ModelKind::Tt;
  if (model == "ht") return ModelKind::Ht;
  if (model == "mera") return ModelKind::Mera;
  throw DomainError("unknown model '" + model + "'");
}

}  // namespace

PYBIND11_MODULE(_tensorank, m) {
  m.doc() = "tensor rank analysis: Schmidt spectra, TT/Tucker/HT/MERA, "
            "min-cut bounds, capacity formulas";

  py::register_exception<ParseError>(m, "ExpressionParseError", PyExc_ValueError);
  py::register_exception<CapExceededError>(m, "CapExceeded", PyExc_RuntimeError);
  py::register_exception<Error>(m, "TensorankError", PyExc_ValueError);

  m.def("random_cp",
        [](int order, std::int64_t dim, int terms, std::uint64_t seed) {
          return to_array(random_cp(order, dim, terms, seed));
        },
        py::arg("order"), py::arg("dim"), py::arg("terms"), py::arg("seed") = 0,
        "Random sum of `terms` rank-1 tensors (deterministic per seed).");

  m.def("sample_expression",
        [](const std::string& text, int order, std::int64_t points, double lo, double hi) {
          const auto ast = parse_expression(text);
          return to_array(sample_grid(*ast, order, points, {{lo, hi}}));
        },
        py::arg("text"), py::arg("order"), py::arg("points"), py::arg("lo") = 0.0,
        py::arg("hi") = 1.0,
        "Sample an expression over x1..xL on an inclusive uniform grid.");

  m.def("model_dense",
        [](const std::string& model, int L, std::int64_t D, std::int64_t r,
           std::uint64_t seed) {
          if (model == "tt") return to_array(to_dense(make_tt(L, D, r, Fill::Random, seed)));
          if (model == "ht") return to_array(to_dense(make_ht(L, D, r, Fill::Random, seed)));
          if (model == "mera")
            return to_array(to_dense(make_mera(L, D, r, Fill::Random, seed)));
          throw DomainError("unknown model '" + model + "'");
        },
        py::arg("model"), py::arg("L"), py::arg("D"), py::arg("r"), py::arg("seed") = 0,
        "Dense tensor of a random-filled tt/ht/mera model.");

  m.def("schmidt_spectrum",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
           const std::vector<int>& modes) {
          const DenseTensor t = from_array(a);
          std::uint32_t mask = 0;
          for (int mo : modes) mask |= 1u << mo;
          const auto p = ModeBipartition::canonical(mask, t.order());
          const auto s = matrix_spectrum(matricize(t, p));
          py::array_t<double> out(static_cast<py::ssize_t>(s.lambdas.size()));
          std::copy(s.lambdas.begin(), s.lambdas.end(), out.mutable_data());
          return out;
        },
        py::arg("tensor"), py::arg("modes"),
        "Descending Schmidt weights (squared singular values) across the "
        "bipartition separating `modes` from the rest.");

  m.def("matricization_rank",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
           const std::vector<int>& modes, double tol) {
          const DenseTensor t = from_array(a);
          std::uint32_t mask = 0;
          for (int mo : modes) mask |= 1u << mo;
          return matricization_rank(t, ModeBipartition::canonical(mask, t.order()), tol);
        },
        py::arg("tensor"), py::arg("modes"), py::arg("tol") = kDefaultTol);

  m.def("tt_svd",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
           std::int64_t max_rank, double eps, double tol) {
          const auto [tt, rep] = tt_svd(from_array(a), max_rank, eps, tol);
          nlohmann::json j = to_json(rep);
          j["bond_dims"] = tt.bond_dims();
          return py::make_tuple(to_array(to_dense(tt)), json_to_py(j));
        },
        py::arg("tensor"), py::arg("max_rank") = 0, py::arg("eps") = 0.0,
        py::arg("tol") = kDefaultTol,
        "Returns (reconstruction, report) of the TT-SVD.");

  m.def("ht_decompose",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
           std::int64_t max_rank, double tol) {
          const auto [ht, rep] = ht_decompose(from_array(a), max_rank, tol);
          return py::make_tuple(to_array(to_dense(ht)), json_to_py(to_json(rep)));
        },
        py::arg("tensor"), py::arg("max_rank") = 0, py::arg("tol") = kDefaultTol);

  m.def("hosvd",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
           const std::vector<std::int64_t>& ranks, double tol) {
          const auto [tk, rep] = hosvd_tucker(from_array(a), ranks, tol);
          return py::make_tuple(to_array(to_dense(tk)), json_to_py(to_json(rep)));
        },
        py::arg("tensor"), py::arg("ranks"), py::arg("tol") = kDefaultTol);

  m.def("rank_profile",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
           double tol, int m_max) {
          return json_to_py(to_json(rank_profile(from_array(a), tol, m_max)));
        },
        py::arg("tensor"), py::arg("tol") = kDefaultTol, py::arg("m_max") = 0,
        "Numerical rank of every canonical matricization, grouped by m.");

  m.def("separability_profile",
        [](const std::string& model, int L, std::int64_t D, std::int64_t r) {
          return json_to_py(to_json(separability_profile(model_graph(model, L, D, r))));
        },
        py::arg("model"), py::arg("L"), py::arg("D") = 2, py::arg("r") = 2,
        "n(m) curve and SSB class of a model's structure graph.");

  m.def("cannikin_check",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
           const std::string& model, std::int64_t r, std::int64_t D, double tol) {
          const DenseTensor t = from_array(a);
          return json_to_py(
              to_json(cannikin_check(t, model_graph(model, t.order(), D, r), tol)));
        },
        py::arg("tensor"), py::arg("model"), py::arg("r"), py::arg("D") = 2,
        py::arg("tol") = kDefaultTol,
        "Per-bipartition capacity-law verdicts of tensor vs model.");

  m.def("min_cut",
        [](const std::string& model, int L, std::int64_t D, std::int64_t r,
           const std::vector<int>& modes) {
          std::uint32_t mask = 0;
          for (int mo : modes) mask |= 1u << mo;
          const auto cut =
              min_cut_bound(model_graph(model, L, D, r), ModeBipartition::canonical(mask, L));
          py::dict d;
          d["severed_bonds"] = cut.severed_bonds;
          d["log2_bound"] = cut.log2_bound;
          d["rank_bound"] = cut.rank_bound;
          return d;
        },
        py::arg("model"), py::arg("L"), py::arg("D"), py::arg("r"), py::arg("modes"));

  m.def("required_dim_exact",
        [](const std::string& model, int order, int dim) {
          return json_to_py(to_json(required_dim_exact(model_kind(model), order, dim)));
        },
        py::arg("model"), py::arg("order"), py::arg("dim"));

  m.def("compare_models",
        [](const std::string& assume, int order) {
          auto n = AssumptionN::parse(assume);
          n.validate(order / 2);
          return json_to_py(to_json(compare_models(n, order)));
        },
        py::arg("assume"), py::arg("order"),
        "Capacity report for an N(m) spec like 'exp:2' or 'const:5'.");

  m.def("read_tensor", [](const std::string& path) { return to_array(read_tensor(path)); },
        py::arg("path"));
  m.def("write_tensor",
        [](const std::string& path,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
          write_tensor(path, from_array(a));
        },
        py::arg("path"), py::arg("tensor"));
}
