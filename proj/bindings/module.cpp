#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

#include "dyckmatch/asymptotics.hpp"
#include "dyckmatch/oracle.hpp"
#include "dyckmatch/sampling.hpp"

namespace py = pybind11;
using namespace dyck;

namespace {

SignPath to_path(const py::object& o) {
  if (py::isinstance<py::str>(o)) return parse_path(o.cast<std::string>());
  SignPath p = o.cast<SignPath>();
  require_signpath(p);
  return p;
}

py::object big(const bigint& z) {
  return py::module_::import("builtins").attr("int")(z.str());
}

Instance make_instance(std::vector<double> whites, std::vector<double> blacks) {
  std::sort(whites.begin(), whites.end());
  std::sort(blacks.begin(), blacks.end());
  return Instance{std::move(whites), std::move(blacks)};
}

py::dict moment_dict(const MomentResult& r) {
  py::dict d;
  d["N"] = r.N;
  d["ensemble"] = ensemble_name(r.ensemble);
  d["k"] = r.k;
  d["raw"] = r.raw;
  d["rescaled"] = r.rescaled;
  d["method"] = r.method;
  return d;
}

struct EnumIter {
  OptimalEnumerator en;
  explicit EnumIter(const SignPath& p) : en(p) {}
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "optimal matchings of the 1d assignment problem on Dyck paths";
  py::register_exception<Error>(m, "Error");

  m.def("parse_path", &parse_path, py::arg("text"));
  m.def("path_to_string", [](const py::object& p) { return path_to_string(to_path(p)); },
        py::arg("path"));
  m.def(
      "classify",
      [](const py::object& p) -> const char* {
        switch (classify(to_path(p))) {
          case PathClass::Bridge: return "bridge";
          case PathClass::Excursion: return "excursion";
          default: return "neither";
        }
      },
      py::arg("path"));
  m.def(
      "heights",
      [](const py::object& p) {
        HeightProfile h = heights(to_path(p));
        return py::make_tuple(h.doubled, h.hbar);
      },
      py::arg("path"), "doubled midpoint heights and the hbar profile");

  m.def(
      "count",
      [](const py::object& p) {
        OptimalFamily f = count_optimal(to_path(p));
        py::dict d;
        d["Z"] = big(f.Z);
        d["S"] = entropy(f.path);
        d["radices"] = f.radices;
        return d;
      },
      py::arg("path"), "degeneracy Z, entropy S and the mixed-radix digits");
  m.def("entropy", [](const py::object& p) { return entropy(to_path(p)); }, py::arg("path"));
  m.def(
      "is_optimal",
      [](const py::object& p, const std::vector<int>& perm) {
        return is_optimal(to_path(p), Matching{perm});
      },
      py::arg("path"), py::arg("perm"));
  m.def(
      "decode",
      [](const py::object& p, const py::int_& m_) {
        bigint idx(m_.attr("__str__")().cast<std::string>());
        return decode_mth(to_path(p), idx).perm;
      },
      py::arg("path"), py::arg("m"), "m-th optimal matching, 1 <= m <= Z, perm 0-based");

  py::class_<EnumIter>(m, "OptimalEnumerator")
      .def(py::init([](const py::object& p) { return new EnumIter(to_path(p)); }), py::arg("path"))
      .def_property_readonly("total", [](EnumIter& it) { return big(it.en.total()); })
      .def("__iter__", [](py::object self) { return self; })
      .def("__next__", [](EnumIter& it) {
        Matching out;
        if (!it.en.next(out)) throw py::stop_iteration();
        return out.perm;
      });
  m.def(
      "enumerate_optimal", [](const py::object& p) { return new EnumIter(to_path(p)); },
      py::arg("path"), py::return_value_policy::take_ownership);

  m.def(
      "cost",
      [](std::vector<double> whites, std::vector<double> blacks, const std::vector<int>& perm) {
        return cost(make_instance(std::move(whites), std::move(blacks)), Matching{perm});
      },
      py::arg("whites"), py::arg("blacks"), py::arg("perm"));
  m.def(
      "h_lb",
      [](std::vector<double> whites, std::vector<double> blacks) {
        return h_lb(make_instance(std::move(whites), std::move(blacks)));
      },
      py::arg("whites"), py::arg("blacks"), "cost of the ordered matching");

  m.def(
      "moment",
      [](int N, const std::string& ens, int k, const std::string& method, int threads) {
        Ensemble e = parse_ensemble(ens);
        MomentResult r;
        if (method == "dp") {
          r = exact_moment_dp(N, e, k);
        } else if (method == "closed") {
          r = exact_moment_closedform(N, e, k, threads);
        } else if (method == "brute") {
          r.N = N;
          r.ensemble = e;
          r.k = k;
          r.raw = brute_moment(N, e, k);
          r.rescaled = rescale_moment(N, k, brute_moment(N, e, 1), r.raw);
          r.method = "brute";
        } else {
          throw Error("method must be dp, closed or brute");
        }
        py::gil_scoped_acquire lock;
        return moment_dict(r);
      },
      py::arg("n"), py::arg("ensemble"), py::arg("k") = 1, py::arg("method") = "dp",
      py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
  m.def(
      "gf_series",
      [](const std::string& ens, int k, int order) {
        return gf_moment_series(parse_ensemble(ens), k, order);
      },
      py::arg("ensemble"), py::arg("k"), py::arg("order"));
  m.def(
      "tn_count",
      [](int N, const std::string& ens) { return big(tn_count(N, parse_ensemble(ens))); },
      py::arg("n"), py::arg("ensemble"));

  m.def(
      "sample_path",
      [](int N, const std::string& ens, std::uint64_t seed, std::uint64_t i) {
        SplitMix64 rng = stream_for(seed, i);
        return parse_ensemble(ens) == Ensemble::Bridge ? sample_bridge(N, rng)
                                                       : sample_excursion(N, rng);
      },
      py::arg("n"), py::arg("ensemble"), py::arg("seed"), py::arg("i") = 0);
  m.def(
      "sample_stats",
      [](int N, const std::string& ens, long long samples, std::uint64_t seed, int bins,
         int threads) {
        SampleStats st = mc_entropy_stats(N, parse_ensemble(ens), samples, seed, bins, threads);
        py::gil_scoped_acquire lock;
        py::dict d;
        d["N"] = st.N;
        d["ensemble"] = ensemble_name(st.ensemble);
        d["samples"] = st.samples;
        d["seed"] = st.seed;
        d["mean"] = st.mean;
        d["second_moment"] = st.second_moment;
        d["variance"] = st.variance;
        d["fourth_central"] = st.fourth_central;
        d["kurtosis_ratio"] = st.kurtosis_ratio;
        d["se_mean"] = st.se_mean;
        d["se_second_moment"] = st.se_second_moment;
        d["bin_edges"] = st.bin_edges;
        d["bin_counts"] = st.bin_counts;
        return d;
      },
      py::arg("n"), py::arg("ensemble"), py::arg("samples"), py::arg("seed") = 20250101,
      py::arg("bins") = 200, py::arg("threads") = 0,
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "chi2_uniformity",
      [](int N, const std::string& ens, long long draws, std::uint64_t seed) {
        Chi2Result r = chi2_uniformity(N, parse_ensemble(ens), draws, seed);
        py::dict d;
        d["statistic"] = r.statistic;
        d["df"] = r.df;
        d["critical_1e3"] = r.critical_1e3;
        d["pass"] = r.pass;
        return d;
      },
      py::arg("n"), py::arg("ensemble"), py::arg("draws"), py::arg("seed") = 20250101);

  m.def(
      "predicted_constants",
      [](const std::string& ens, int k) { return predicted_constants(parse_ensemble(ens), k); },
      py::arg("ensemble"), py::arg("k"));
  m.def(
      "predicted_moment",
      [](int N, const std::string& ens, int k) {
        return predicted_moment(N, parse_ensemble(ens), k);
      },
      py::arg("n"), py::arg("ensemble"), py::arg("k"));
  m.def("variance_quadrature", &variance_quadrature);
  m.attr("GAMMA_E") = GAMMA_E;
}
