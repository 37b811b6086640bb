#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tensorank/capacity.hpp"
#include "tensorank/decompose.hpp"
#include "tensorank/rank_analysis.hpp"
#include "tensorank/synth_io.hpp"

namespace {

using nlohmann::json;
using namespace tensorank;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

int exhaustive_cap() {
  if (const char* env = std::getenv("TENSORANK_MAX_L")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return kDefaultExhaustiveCap;
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
  return buf;
}

void emit(const json& report, const std::string& out_path, bool no_timestamp) {
  json r = report;
  if (!no_timestamp) r["timestamp"] = iso_timestamp();
  if (out_path.empty()) {
    r["schema_version"] = kReportSchemaVersion;
    std::cout << r.dump(2) << '\n';
  } else {
    write_report_json(out_path, r);
  }
}

struct SynthOpts {
  bool cp = false;
  std::string expr;
  std::string model;
  int L = 4;
  std::int64_t D = 2;
  int R = 1;
  std::int64_t r = 2;
  std::int64_t P = 4;
  double lo = 0.0, hi = 1.0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_synth(const SynthOpts& o) {
  DenseTensor t;
  if (o.cp) {
    t = random_cp(o.L, o.D, o.R, o.seed);
  } else if (!o.expr.empty()) {
    auto ast = parse_expression(o.expr);
    const int order = std::max(1, ast->max_var_index());
    t = sample_grid(*ast, order, o.P, {{o.lo, o.hi}});
  } else if (o.model == "tt") {
    t = to_dense(make_tt(o.L, o.D, o.r, Fill::Random, o.seed));
  } else if (o.model == "ht") {
    t = to_dense(make_ht(o.L, o.D, o.r, Fill::Random, o.seed));
  } else if (o.model == "mera") {
    t = to_dense(make_mera(o.L, o.D, o.r, Fill::Random, o.seed));
  } else {
    throw DomainError("pick one generator: --cp, --expr, or --model tt|ht|mera");
  }
  write_tensor(o.out, t);
  std::ostringstream dims;
  for (int k = 0; k < t.order(); ++k) dims << (k ? "x" : "") << t.dims[k];
  std::cout << "wrote " << o.out << "  dims " << dims.str() << "  norm^2 "
            << frobenius_norm_sq(t) << "  seed " << o.seed << '\n';
  return kExitOk;
}

struct DecomposeOpts {
  std::string input;
  std::string model = "tt";
  std::int64_t max_rank = 0;
  double eps = 0.0;
  double tol = kDefaultTol;
  std::string out;
  bool no_timestamp = false;
};

int cmd_decompose(const DecomposeOpts& o) {
  const DenseTensor t = read_tensor(o.input);
  json report;
  report["input"] = o.input;
  report["model"] = o.model;
  if (o.model == "tt") {
    auto [tt, rep] = tt_svd(t, o.max_rank, o.eps, o.tol);
    report["report"] = to_json(rep);
    report["bond_dims"] = tt.bond_dims();
  } else if (o.model == "tucker") {
    std::vector<std::int64_t> ranks(t.order(), o.max_rank);
    auto [tu, rep] = hosvd_tucker(t, ranks, o.tol);
    report["report"] = to_json(rep);
    report["core_dims"] = tu.core.dims;
  } else if (o.model == "ht") {
    auto [ht, rep] = ht_decompose(t, o.max_rank, o.tol);
    report["report"] = to_json(rep);
    std::vector<std::int64_t> leaf_ranks;
    for (const auto& f : ht.leaf_factors) leaf_ranks.push_back(f.cols);
    report["leaf_ranks"] = leaf_ranks;
  } else {
    throw DomainError("unknown decomposition model '" + o.model + "'");
  }
  emit(report, o.out, o.no_timestamp);
  const auto& r = report["report"];
  std::cout << "relative error " << r["relative_error"].get<double>()
            << "  bound_sq " << r["error_bound_sq"].get<double>() << '\n';
  return kExitOk;
}

struct AnalyzeOpts {
  std::string input;
  std::string model;
  int L = 0;
  std::int64_t D = 2;
  std::int64_t r = 2;
  int m_max = 0;
  double tol = kDefaultTol;
  std::string out;
  std::string csv;
  bool no_timestamp = false;
};

TensorNetworkGraph build_model_graph(const AnalyzeOpts& o) {
  if (o.model == "tt") return structure_graph(make_tt(o.L, o.D, o.r, Fill::Zeros, 0));
  if (o.model == "ht") return structure_graph(make_ht(o.L, o.D, o.r, Fill::Zeros, 0));
  if (o.model == "mera") return structure_graph(make_mera(o.L, o.D, o.r, Fill::Zeros, 0));
  throw DomainError("unknown model '" + o.model + "'");
}

int cmd_analyze(AnalyzeOpts o) {
  if (o.input.empty() && o.model.empty())
    throw DomainError("analyze needs an input tensor, a --model, or both");
  const int cap = exhaustive_cap();
  std::optional<DenseTensor> t;
  if (!o.input.empty()) {
    t = read_tensor(o.input);
    if (o.L == 0) o.L = t->order();
    if (t->order() > cap)
      throw CapExceededError("tensor order " + std::to_string(t->order()) +
                             " exceeds the exhaustive cap " + std::to_string(cap) +
                             " (set TENSORANK_MAX_L to raise it)");
  }
  json report;
  std::ostringstream csv;
  if (t) {
    const auto prof = rank_profile(*t, o.tol, o.m_max, cap);
    report["rank_profile"] = to_json(prof);
    csv << "series,m,value\n";
    for (int m = 1; m <= prof.m_max(); ++m)
      csv << "max_rank," << m << ',' << prof.max_rank(m) << '\n';
  }
  if (!o.model.empty()) {
    if (o.L == 0) throw DomainError("--model needs --L (or an input tensor)");
    const auto g = build_model_graph(o);
    const auto sep = separability_profile(g);
    report["model"] = o.model;
    report["separability"] = to_json(sep);
    if (csv.str().empty()) csv << "series,m,value\n";
    for (const auto& s : sep.samples) csv << "n," << s.m << ',' << s.n << '\n';
    if (t) {
      if (g.order() != t->order())
        throw DimensionError("model order does not match the input tensor");
      report["cannikin"] = to_json(cannikin_check(*t, g, o.tol, cap));
    }
  }
  emit(report, o.out, o.no_timestamp);
  if (!o.csv.empty()) {
    std::ofstream f(o.csv);
    if (!f) throw IoError("cannot open " + o.csv + " for writing");
    f << csv.str();
  }
  if (report.contains("cannikin"))
    std::cout << "cannikin "
              << (report["cannikin"]["satisfied"].get<bool>() ? "satisfied" : "violated")
              << '\n';
  if (report.contains("separability"))
    std::cout << "ssb_class " << report["separability"]["ssb_class"].get<std::string>()
              << '\n';
  return kExitOk;
}

struct CapacityOpts {
  int L = 8;
  std::int64_t D = 2;
  std::string assume;
  std::string out;
  bool no_timestamp = false;
};

AssumptionN parse_assumption(const std::string& spec, int half_l) {
  if (spec.rfind("table:", 0) == 0) {
    const std::string path = spec.substr(6);
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<std::pair<int, double>> rows;
    int m;
    double n;
    while (in >> m >> n) rows.emplace_back(m, n);
    auto a = AssumptionN::from_table(std::move(rows));
    a.validate(half_l);
    return a;
  }
  auto a = AssumptionN::parse(spec);
  a.validate(half_l);
  return a;
}

int cmd_capacity(const CapacityOpts& o) {
  json report;
  json table = json::array();
  for (auto model : {ModelKind::Tt, ModelKind::Ht, ModelKind::Mera}) {
    auto d = to_json(required_dim_exact(model, o.L, static_cast<int>(o.D)));
    d["model"] = to_string(model);
    table.push_back(d);
  }
  report["required_dim_exact"] = table;
  std::cout << "exact dims (L=" << o.L << ", D=" << o.D << "):";
  for (const auto& row : table)
    std::cout << "  " << row["model"].get<std::string>() << '='
              << row["value"].get<double>();
  std::cout << '\n';
  if (!o.assume.empty()) {
    const auto n = parse_assumption(o.assume, o.L / 2);
    const auto rep = compare_models(n, o.L);
    report["assumption"] = n.describe();
    report["capacity"] = to_json(rep);
    std::cout << "chi_TT,HT=" << rep.chi_tt_ht << "  chi_MERA=" << rep.mera.chi
              << " (argmax m=" << rep.mera.argmax_m << ")  margin=" << rep.margin
              << '\n';
  }
  emit(report, o.out, o.no_timestamp);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tensor rank analysis toolkit"};
  app.require_subcommand(1);

  SynthOpts so;
  auto* synth = app.add_subcommand("synth", "generate a tensor file");
  synth->add_flag("--cp", so.cp, "random CP sum of rank-1 terms");
  synth->add_option("--expr", so.expr, "expression over x1..xL to sample");
  synth->add_option("--model", so.model, "random-filled model: tt, ht, or mera");
  synth->add_option("--L", so.L, "tensor order");
  synth->add_option("--D", so.D, "physical dimension");
  synth->add_option("--R", so.R, "CP terms");
  synth->add_option("--r", so.r, "model bond dimension");
  synth->add_option("--P", so.P, "grid points per variable");
  synth->add_option("--lo", so.lo, "grid lower bound");
  synth->add_option("--hi", so.hi, "grid upper bound");
  synth->add_option("--seed", so.seed, "PRNG seed");
  synth->add_option("-o,--output", so.out, "output tensor file")->required();

  DecomposeOpts dopts;
  auto* dec = app.add_subcommand("decompose", "sequential-SVD decomposition");
  dec->add_option("-i,--input", dopts.input, "input tensor file")->required();
  dec->add_option("--model", dopts.model, "tt, tucker, or ht");
  dec->add_option("--max-rank", dopts.max_rank, "bond-rank cap (0 = exact)");
  dec->add_option("--eps", dopts.eps, "squared-error budget");
  dec->add_option("--tol", dopts.tol, "relative singular value cutoff");
  dec->add_option("-o,--output", dopts.out, "report JSON path");
  dec->add_flag("--no-timestamp", dopts.no_timestamp, "omit the timestamp field");

  AnalyzeOpts ao;
  auto* ana = app.add_subcommand("analyze", "rank profile, SSB, capacity check");
  ana->add_option("-i,--input", ao.input, "input tensor file");
  ana->add_option("--model", ao.model, "model graph: tt, ht, or mera");
  ana->add_option("--L", ao.L, "model order (defaults to tensor order)");
  ana->add_option("--D", ao.D, "model physical dimension");
  ana->add_option("--r", ao.r, "model bond dimension");
  ana->add_option("--m-max", ao.m_max, "largest cluster size to profile");
  ana->add_option("--tol", ao.tol, "numerical-rank threshold");
  ana->add_option("-o,--output", ao.out, "report JSON path");
  ana->add_option("--emit-csv", ao.csv, "write (m, value) series as CSV");
  ana->add_flag("--no-timestamp", ao.no_timestamp, "omit the timestamp field");

  CapacityOpts co;
  auto* cap = app.add_subcommand("capacity", "closed-form capacity report");
  cap->add_option("--L", co.L, "tensor order");
  cap->add_option("--D", co.D, "physical dimension");
  cap->add_option("--assume", co.assume,
                  "N(m) spec: exp:D, pow:c:alpha, log:c, const:c, table:path");
  cap->add_option("-o,--output", co.out, "report JSON path");
  cap->add_flag("--no-timestamp", co.no_timestamp, "omit the timestamp field");

  try {
    app.parse(argc, argv);
    if (synth->parsed()) return cmd_synth(so);
    if (dec->parsed()) return cmd_decompose(dopts);
    if (ana->parsed()) return cmd_analyze(ao);
    return cmd_capacity(co);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  } catch (const CapExceededError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCap;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
}
