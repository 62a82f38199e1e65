#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dyckmatch/asymptotics.hpp"
#include "dyckmatch/oracle.hpp"
#include "dyckmatch/sampling.hpp"

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;
using namespace dyck;

namespace {

constexpr std::uint64_t kDefaultSeed = 20250101;  // fixed, never time-based

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    f << content;
    if (!f) throw Error("cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

void emit(const std::string& out, const std::string& content) {
  if (out.empty())
    std::cout << content;
  else
    atomic_write(out, content);
}

json z_json(const bigint& z) {
  if (z <= std::numeric_limits<std::uint64_t>::max())
    return z.convert_to<std::uint64_t>();
  return z.str();
}

json matching_pairs(const Matching& m) {
  json pairs = json::array();
  for (std::size_t i = 0; i < m.perm.size(); ++i)
    pairs.push_back({i + 1, m.perm[i] + 1});
  return pairs;
}

SignPath parse_path_arg(const std::string& arg) {
  std::size_t k = arg.find_first_not_of(" \t");
  if (k != std::string::npos && arg[k] == '[') {
    json j;
    try {
      j = json::parse(arg);
    } catch (const json::exception& e) {
      throw Error(std::string("bad JSON path: ") + e.what());
    }
    SignPath p;
    for (const auto& v : j) {
      if (!v.is_number_integer()) throw Error("JSON path entries must be +1/-1");
      p.push_back(v.get<int>());
    }
    require_signpath(p);
    return p;
  }
  return parse_path(arg);
}

Instance read_instance_csv(const std::string& file) {
  std::ifstream f(file);
  if (!f) throw Error("cannot open " + file);
  Instance inst;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos || line[a] == '#') continue;
    std::size_t comma = line.find(',');
    if (comma == std::string::npos) throw Error("line " + std::to_string(lineno) + ": expected color,coordinate");
    std::string color = line.substr(a, comma - a);
    while (!color.empty() && (color.back() == ' ' || color.back() == '\t')) color.pop_back();
    std::string rest = line.substr(comma + 1);
    char* end = nullptr;
    double x = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) {
      if (lineno == 1) continue;  // header row
      throw Error("line " + std::to_string(lineno) + ": bad coordinate");
    }
    if (color == "w" || color == "W" || color == "white")
      inst.whites.push_back(x);
    else if (color == "b" || color == "B" || color == "black")
      inst.blacks.push_back(x);
    else
      throw Error("line " + std::to_string(lineno) + ": color must be w or b");
  }
  std::sort(inst.whites.begin(), inst.whites.end());
  std::sort(inst.blacks.begin(), inst.blacks.end());
  return inst;
}

struct PathInput {
  std::string path_arg, instance_file;
  SignPath path;
  Instance inst;

  void add_options(CLI::App* cmd) {
    auto* a = cmd->add_option("--path", path_arg, "path as U/D (or W/B) string, or JSON array of +-1");
    auto* b = cmd->add_option("--instance", instance_file, "CSV file of color,coordinate rows");
    a->excludes(b);
    b->excludes(a);
  }

  void resolve() {
    if (!path_arg.empty()) {
      path = parse_path_arg(path_arg);
      inst = to_canonical_instance(path);
    } else if (!instance_file.empty()) {
      inst = read_instance_csv(instance_file);
      path = from_instance(inst);
    } else {
      throw Error("need --path or --instance");
    }
  }
};

std::vector<int> parse_n_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t dash = tok.find('-', 1);
    if (dash == std::string::npos) {
      out.push_back(std::stoi(tok));
      continue;
    }
    std::size_t colon = tok.find(':', dash);
    int lo = std::stoi(tok.substr(0, dash));
    int hi = std::stoi(tok.substr(dash + 1, colon == std::string::npos ? std::string::npos : colon - dash - 1));
    int step = colon == std::string::npos ? 1 : std::stoi(tok.substr(colon + 1));
    if (step < 1 || hi < lo) throw Error("bad range " + tok);
    for (int n = lo; n <= hi; n += step) out.push_back(n);
  }
  if (out.empty()) throw Error("empty N list");
  return out;
}

int cmd_solve(PathInput& in, const std::string& out) {
  in.resolve();
  OptimalFamily fam = count_optimal(in.path);
  Matching m = decode_mth(in.path, 1);
  json j;
  j["N"] = in.path.size() / 2;
  j["path"] = path_to_string(in.path);
  j["Z"] = z_json(fam.Z);
  j["S"] = entropy(in.path);
  j["min_cost"] = cost(in.inst, m);
  j["matching"] = matching_pairs(m);
  emit(out, j.dump() + "\n");
  return 0;
}

int cmd_count(PathInput& in, const std::string& out) {
  in.resolve();
  OptimalFamily fam = count_optimal(in.path);
  json j;
  j["Z"] = z_json(fam.Z);
  j["S"] = entropy(in.path);
  emit(out, j.dump() + "\n");
  return 0;
}

int cmd_enumerate(PathInput& in, const std::string& index_str, long long limit,
                  const std::string& out) {
  in.resolve();
  std::ostringstream os;
  if (!index_str.empty()) {
    bigint m;
    try {
      m = bigint(index_str);
    } catch (const std::exception&) {
      throw Error("bad --index value");
    }
    os << matching_pairs(decode_mth(in.path, m)).dump() << "\n";
  } else {
    OptimalEnumerator en(in.path);
    Matching m;
    long long printed = 0;
    while (en.next(m)) {
      os << matching_pairs(m).dump() << "\n";
      if (limit > 0 && ++printed >= limit) break;
    }
  }
  emit(out, os.str());
  return 0;
}

int cmd_oracle_verify(int N, int instances, std::uint64_t seed, const std::string& out) {
  int failed = 0;
  for (int i = 0; i < instances; ++i) {
    SplitMix64 rng = stream_for(seed, static_cast<std::uint64_t>(i));
    Instance inst;
    for (int j = 0; j < N; ++j) inst.whites.push_back((rng.next() >> 11) * 0x1p-53);
    for (int j = 0; j < N; ++j) inst.blacks.push_back((rng.next() >> 11) * 0x1p-53);
    std::sort(inst.whites.begin(), inst.whites.end());
    std::sort(inst.blacks.begin(), inst.blacks.end());

    OptimaReport rep = exhaustive_optima(inst);
    SignPath p = from_instance(inst);
    OptimalFamily fam = count_optimal(p);

    std::set<std::vector<int>> expect, got;
    for (const Matching& m : rep.argmin) expect.insert(m.perm);
    OptimalEnumerator en(p);
    Matching m;
    while (en.next(m)) got.insert(m.perm);
    if (expect != got || bigint(rep.degeneracy) != fam.Z) ++failed;
  }
  json j;
  j["n"] = N;
  j["instances"] = instances;
  j["seed"] = seed;
  j["failed"] = failed;
  j["ok"] = failed == 0;
  emit(out, j.dump() + "\n");
  return failed == 0 ? 0 : 1;
}

MomentResult brute_result(int N, Ensemble e, int k) {
  MomentResult r;
  r.N = N;
  r.ensemble = e;
  r.k = k;
  r.raw = brute_moment(N, e, k);
  r.rescaled = rescale_moment(N, k, brute_moment(N, e, 1), r.raw);
  r.method = "brute";
  return r;
}

int cmd_moments(const std::string& nlist, const std::string& ens, int k, const std::string& method,
                int threads, const std::string& out) {
  std::vector<int> Ns = parse_n_list(nlist);
  Ensemble e = parse_ensemble(ens);
  std::ostringstream os;
  os << "N,ensemble,k,raw_moment,rescaled_moment,method\n";

  std::vector<double> series, series1;
  if (method == "gf") {
    int maxn = *std::max_element(Ns.begin(), Ns.end());
    series = gf_moment_series(e, k, maxn);
    series1 = k == 1 ? series : gf_moment_series(e, 1, maxn);
  }
  for (int N : Ns) {
    MomentResult r;
    if (method == "dp") {
      r = exact_moment_dp(N, e, k);
    } else if (method == "closed") {
      r = exact_moment_closedform(N, e, k, threads);
    } else if (method == "brute") {
      r = brute_result(N, e, k);
    } else if (method == "gf") {
      if (N < 1) throw Error("gf method needs N >= 1");
      double tn = tn_count(N, e).convert_to<double>();
      r.N = N;
      r.ensemble = e;
      r.k = k;
      r.raw = series[static_cast<std::size_t>(N)] / tn;
      r.rescaled = rescale_moment(N, k, series1[static_cast<std::size_t>(N)] / tn, r.raw);
      r.method = "gf";
    } else {
      throw Error("method must be dp, closed, gf or brute");
    }
    os << r.N << "," << ensemble_name(r.ensemble) << "," << r.k << "," << fmt17(r.raw) << ","
       << fmt17(r.rescaled) << "," << r.method << "\n";
  }
  emit(out, os.str());
  return 0;
}

int cmd_gfcheck(const std::string& ens, int k, int maxn, double tol, const std::string& out) {
  std::vector<Ensemble> es = ens.empty()
                                 ? std::vector<Ensemble>{Ensemble::Bridge, Ensemble::Excursion}
                                 : std::vector<Ensemble>{parse_ensemble(ens)};
  std::vector<int> ks = k == 0 ? std::vector<int>{1, 2} : std::vector<int>{k};
  std::ostringstream os;
  os << "ensemble,k,N,series_coeff,tn_times_moment,rel_err\n";
  double worst = 0;
  for (Ensemble e : es) {
    for (int kk : ks) {
      std::vector<double> series = gf_moment_series(e, kk, maxn);
      for (int N = 1; N <= maxn; ++N) {
        double expect = tn_count(N, e).convert_to<double>() * exact_moment_dp(N, e, kk).raw;
        double coeff = series[static_cast<std::size_t>(N)];
        double rel = std::abs(coeff - expect) / std::max(std::abs(expect), 1e-300);
        worst = std::max(worst, rel);
        os << ensemble_name(e) << "," << kk << "," << N << "," << fmt17(coeff) << ","
           << fmt17(expect) << "," << fmt17(rel) << "\n";
      }
    }
  }
  emit(out, os.str());
  std::cerr << "max relative error " << fmt17(worst) << (worst <= tol ? " <= " : " > ")
            << fmt17(tol) << "\n";
  return worst <= tol ? 0 : 1;
}

int cmd_sample(int N, const std::string& ens, long long samples, std::uint64_t seed, int bins,
               int threads, const std::string& out, const std::string& dump_raw) {
  Ensemble e = parse_ensemble(ens);
  std::vector<double> raw;
  SampleStats st =
      mc_entropy_stats(N, e, samples, seed, bins, threads, dump_raw.empty() ? nullptr : &raw);
  json j;
  j["N"] = st.N;
  j["ensemble"] = ensemble_name(st.ensemble);
  j["samples"] = st.samples;
  j["seed"] = st.seed;
  j["mean"] = st.mean;
  j["second_moment"] = st.second_moment;
  j["variance"] = st.variance;
  j["fourth_central"] = st.fourth_central;
  j["kurtosis_ratio"] = st.kurtosis_ratio;
  j["se_mean"] = st.se_mean;
  j["se_second_moment"] = st.se_second_moment;
  j["bin_edges"] = st.bin_edges;
  j["bin_counts"] = st.bin_counts;
  emit(out, j.dump(2) + "\n");
  if (!dump_raw.empty()) {
    std::ostringstream os;
    os << "s\n";
    for (double s : raw) os << fmt17(s) << "\n";
    atomic_write(dump_raw, os.str());
  }
  return 0;
}

int cmd_asymptotics_check() {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  double q = variance_quadrature();
  double closed = 1.0 / 3 - pi2 / 72;
  double var_b = predicted_constants(Ensemble::Bridge, 2) -
                 predicted_constants(Ensemble::Bridge, 1) * predicted_constants(Ensemble::Bridge, 1);
  bool ok1 = std::abs(q - closed) <= 1e-9;
  bool ok2 = std::abs(q - var_b) <= 1e-9;
  std::cout << "quadrature vs 1/3 - pi^2/72: " << (ok1 ? "ok" : "FAIL") << " (|diff| = "
            << fmt17(std::abs(q - closed)) << ")\n";
  std::cout << "quadrature vs <s^2>_B - <s>_B^2: " << (ok2 ? "ok" : "FAIL") << " (|diff| = "
            << fmt17(std::abs(q - var_b)) << ")\n";
  return ok1 && ok2 ? 0 : 1;
}

int cmd_asymptotics_report(const std::string& nlist, const std::string& ens, int k,
                           const std::string& source, int threads, const std::string& out) {
  std::vector<int> Ns = parse_n_list(nlist);
  Ensemble e = parse_ensemble(ens);
  MomentSource src;
  if (source == "dp")
    src = MomentSource::Dp;
  else if (source == "closed")
    src = MomentSource::ClosedForm;
  else
    throw Error("source must be dp or closed");
  ConvergenceTable tab = convergence_report(Ns, e, k, src, threads);
  std::ostringstream os;
  os << "N,rescaled_moment,constant,deviation,normalized_deviation\n";
  for (const ConvergenceRow& r : tab.rows)
    os << r.N << "," << fmt17(r.rescaled) << "," << fmt17(r.constant) << ","
       << fmt17(r.deviation) << "," << fmt17(r.normalized) << "\n";
  emit(out, os.str());
  if (tab.flagged)
    std::cerr << "warning: normalized deviation not bounded over the top decade of N\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"optimal matchings of the 1d assignment problem on Dyck paths"};
  app.name("dyck");
  app.require_subcommand(1);
  int rc = 0;

  PathInput solve_in;
  std::string solve_out;
  auto* solve = app.add_subcommand("solve", "optimal matching, cost, degeneracy of one instance");
  solve_in.add_options(solve);
  solve->add_option("--out", solve_out, "write JSON here instead of stdout");
  solve->callback([&] { rc = cmd_solve(solve_in, solve_out); });

  PathInput count_in;
  std::string count_out;
  auto* count = app.add_subcommand("count", "degeneracy Z and entropy S of a path");
  count_in.add_options(count);
  count->add_option("--out", count_out, "write JSON here instead of stdout");
  count->callback([&] { rc = cmd_count(count_in, count_out); });

  PathInput enum_in;
  std::string enum_index, enum_out;
  long long enum_limit = 0;
  auto* enumerate = app.add_subcommand("enumerate", "list optimal matchings, one JSON row each");
  enum_in.add_options(enumerate);
  enumerate->add_option("--index", enum_index, "emit only the m-th matching, 1-based");
  enumerate->add_option("--limit", enum_limit, "stop after this many matchings (0 = all)")
      ->capture_default_str();
  enumerate->add_option("--out", enum_out, "write here instead of stdout");
  enumerate->callback([&] { rc = cmd_enumerate(enum_in, enum_index, enum_limit, enum_out); });

  auto* oracle = app.add_subcommand("oracle", "independent brute-force checks");
  oracle->require_subcommand(1);
  int ov_n = 5, ov_instances = 100;
  std::uint64_t ov_seed = kDefaultSeed;
  std::string ov_out;
  auto* verify = oracle->add_subcommand("verify",
                                        "enumerated optima vs exhaustive argmin on random instances");
  verify->add_option("--n", ov_n, "points per color")->capture_default_str();
  verify->add_option("--instances", ov_instances, "number of random instances")->capture_default_str();
  verify->add_option("--seed", ov_seed, "RNG seed")->capture_default_str();
  verify->add_option("--out", ov_out, "write JSON here instead of stdout");
  verify->callback([&] { rc = cmd_oracle_verify(ov_n, ov_instances, ov_seed, ov_out); });

  std::string mo_n = "2-8", mo_ens = "bridge", mo_method = "dp", mo_out;
  int mo_k = 1, mo_threads = 0;
  auto* moments = app.add_subcommand("moments", "exact entropy moments M_{N,k}, CSV");
  moments->add_option("--n", mo_n, "N values: comma list, ranges lo-hi or lo-hi:step")
      ->capture_default_str();
  moments->add_option("--ensemble", mo_ens, "bridge or excursion")->capture_default_str();
  moments->add_option("--k", mo_k, "moment order, 1 or 2")->capture_default_str();
  moments->add_option("--method", mo_method, "dp, closed, gf or brute")->capture_default_str();
  moments->add_option("--threads", mo_threads, "worker threads (0 = DYCK_THREADS or cores)")
      ->capture_default_str();
  moments->add_option("--out", mo_out, "write CSV here instead of stdout");
  moments->callback([&] { rc = cmd_moments(mo_n, mo_ens, mo_k, mo_method, mo_threads, mo_out); });

  std::string gf_ens, gf_out;
  int gf_k = 0, gf_maxn = 50;
  double gf_tol = 1e-8;
  auto* gfcheck = app.add_subcommand("gfcheck",
                                     "generating-function coefficients vs exact T_N M_{N,k}");
  gfcheck->add_option("--ensemble", gf_ens, "bridge or excursion (default: both)");
  gfcheck->add_option("--k", gf_k, "moment order (default: both)");
  gfcheck->add_option("--max-n", gf_maxn, "compare coefficients up to this N")->capture_default_str();
  gfcheck->add_option("--tol", gf_tol, "relative tolerance")->capture_default_str();
  gfcheck->add_option("--out", gf_out, "write CSV here instead of stdout");
  gfcheck->callback([&] { rc = cmd_gfcheck(gf_ens, gf_k, gf_maxn, gf_tol, gf_out); });

  int sa_n = 100, sa_bins = 200, sa_threads = 0;
  long long sa_samples = 100000;
  std::uint64_t sa_seed = kDefaultSeed;
  std::string sa_ens = "excursion", sa_out, sa_raw;
  auto* sample = app.add_subcommand("sample", "Monte Carlo statistics of the rescaled entropy");
  sample->add_option("--n", sa_n, "path size N")->capture_default_str();
  sample->add_option("--ensemble", sa_ens, "bridge or excursion")->capture_default_str();
  sample->add_option("--samples", sa_samples, "number of sampled paths")->capture_default_str();
  sample->add_option("--seed", sa_seed, "RNG seed")->capture_default_str();
  sample->add_option("--bins", sa_bins, "histogram bins")->capture_default_str();
  sample->add_option("--threads", sa_threads, "worker threads (0 = DYCK_THREADS or cores)")
      ->capture_default_str();
  sample->add_option("--out", sa_out, "write stats JSON here instead of stdout");
  sample->add_option("--dump-raw", sa_raw, "also write per-sample s values as CSV");
  sample->callback(
      [&] { rc = cmd_sample(sa_n, sa_ens, sa_samples, sa_seed, sa_bins, sa_threads, sa_out, sa_raw); });

  bool as_check = false;
  std::string as_n = "100,1000", as_ens = "excursion", as_source = "dp", as_out;
  int as_k = 1, as_threads = 0;
  auto* asym = app.add_subcommand("asymptotics", "limit constants, quadrature, convergence tables");
  auto* check_flag = asym->add_flag("--check", as_check, "verify quadrature against the closed form");
  auto* report_flag = asym->add_flag("--report", "emit a convergence table as CSV");
  check_flag->excludes(report_flag);
  asym->add_option("--n-list", as_n, "N values for --report")->capture_default_str();
  asym->add_option("--ensemble", as_ens, "bridge or excursion")->capture_default_str();
  asym->add_option("--k", as_k, "moment order, 1 or 2")->capture_default_str();
  asym->add_option("--source", as_source, "moment source: dp or closed")->capture_default_str();
  asym->add_option("--threads", as_threads, "worker threads (0 = DYCK_THREADS or cores)")
      ->capture_default_str();
  asym->add_option("--out", as_out, "write CSV here instead of stdout");
  asym->callback([&] {
    if (as_check)
      rc = cmd_asymptotics_check();
    else if (report_flag->count() > 0)
      rc = cmd_asymptotics_report(as_n, as_ens, as_k, as_source, as_threads, as_out);
    else
      throw Error("asymptotics needs --check or --report");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 2;
  }
  return rc;
}
