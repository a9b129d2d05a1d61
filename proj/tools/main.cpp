// pcurv: weighted-graph p-Laplacian operators and p-Bakry-Emery curvature.
//
// Subcommands:
//   curvature    estimate K_{p,x,G}(m) at one vertex or all vertices
//   sweep-p      run the curvature estimate over a grid of p values
//   product-gap  Cartesian-product decomposition gap with per-pair terms
//   generate     write a graph file for a standard family
//   verify       run the self-verification suite

#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pcurv/closed_forms.hpp"
#include "pcurv/graph.hpp"
#include "pcurv/graph_io.hpp"
#include "pcurv/operators.hpp"
#include "pcurv/product.hpp"
#include "pcurv/solver.hpp"
#include "pcurv/verify.hpp"

namespace {

using nlohmann::ordered_json;
using namespace pcurv;

constexpr int kExitOk = 0;
constexpr int kExitFailedCheck = 1;
constexpr int kExitInputError = 2;
constexpr int kExitDegenerate = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write file '" + path + "'");
  out << text;
}

// All numeric output carries 12 significant digits.
std::string format12(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", x);
  return buffer;
}

double round12(double x) { return std::strtod(format12(x).c_str(), nullptr); }

Dimension parse_dimension(const std::string& text) {
  if (text == "inf") return Dimension::infinite();
  try {
    std::size_t pos = 0;
    const double m = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return Dimension::finite(m);
  } catch (const std::exception&) {
    throw std::invalid_argument("--dim must be a positive number or 'inf'");
  }
}

std::string dimension_text(const Dimension& m) {
  return m.is_infinite() ? "inf" : format12(m.get());
}

std::string status_text(CurvatureEstimate::Status status) {
  switch (status) {
    case CurvatureEstimate::Status::Converged:
      return "converged";
    case CurvatureEstimate::Status::DivergingToMinusInfinity:
      return "diverging_to_minus_infinity";
    case CurvatureEstimate::Status::Degenerate:
      return "degenerate";
  }
  return "unknown";
}

struct OutputRecord {
  std::string graph;
  std::string vertex;
  double p = 0.0;
  Dimension m = Dimension::infinite();
  std::string status;
  std::optional<double> value;
  int restarts = 0;
  std::uint64_t seed = 0;
  std::int64_t wall_time_ms = 0;
};

ordered_json record_to_json(const OutputRecord& r) {
  ordered_json j;
  j["graph"] = r.graph;
  j["vertex"] = r.vertex;
  j["p"] = round12(r.p);
  if (r.m.is_infinite())
    j["m"] = "inf";
  else
    j["m"] = round12(r.m.get());
  j["status"] = r.status;
  if (r.value) j["value"] = round12(*r.value);
  j["restarts"] = r.restarts;
  j["seed"] = r.seed;
  j["wall_time_ms"] = r.wall_time_ms;
  return j;
}

void emit_records(const std::vector<OutputRecord>& records, const std::string& format) {
  if (format == "csv") {
    std::printf("graph,vertex,p,m,status,value,restarts,seed,wall_time_ms\n");
    for (const OutputRecord& r : records)
      std::printf("%s,%s,%s,%s,%s,%s,%d,%" PRIu64 ",%lld\n", r.graph.c_str(),
                  r.vertex.c_str(), format12(r.p).c_str(), dimension_text(r.m).c_str(),
                  r.status.c_str(), r.value ? format12(*r.value).c_str() : "", r.restarts,
                  r.seed, static_cast<long long>(r.wall_time_ms));
    return;
  }
  ordered_json out = ordered_json::array();
  for (const OutputRecord& r : records) out.push_back(record_to_json(r));
  std::printf("%s\n", out.dump(2).c_str());
}

struct CurvatureArgs {
  std::string graph_path;
  std::string vertex;
  bool all = false;
  double p = 2.0;
  std::string dim = "inf";
  int restarts = 64;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string format = "json";
};

void add_curvature_flags(CLI::App* cmd, CurvatureArgs& args) {
  cmd->add_option("--graph", args.graph_path, "graph JSON file")->required();
  cmd->add_option("--vertex", args.vertex, "vertex label");
  cmd->add_flag("--all", args.all, "run at every vertex");
  cmd->add_option("--dim", args.dim, "dimension m: positive number or 'inf'");
  cmd->add_option("--restarts", args.restarts, "solver restarts");
  cmd->add_option("--seed", args.seed, "solver seed");
  cmd->add_option("--tol", args.tol, "value tolerance");
  cmd->add_option("--format", args.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

SolverConfig solver_config_from(const CurvatureArgs& args) {
  SolverConfig cfg;
  cfg.restarts = args.restarts;
  cfg.seed = args.seed;
  cfg.value_tolerance = args.tol;
  cfg.validate();
  return cfg;
}

std::vector<int> target_vertices(const WeightedGraph& g, const CurvatureArgs& args) {
  if (args.all) {
    std::vector<int> all(g.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) all[v] = v;
    return all;
  }
  if (args.vertex.empty())
    throw std::invalid_argument("one of --vertex or --all is required");
  return {g.require(args.vertex)};
}

OutputRecord run_estimate(const WeightedGraph& g, const std::string& graph_path, int x,
                          PValue p, Dimension m, const SolverConfig& cfg) {
  OutputRecord r;
  r.graph = graph_path;
  r.vertex = g.label(x);
  r.p = p.get();
  r.m = m;
  r.restarts = cfg.restarts;
  r.seed = cfg.seed;
  const auto start = std::chrono::steady_clock::now();
  const CurvatureEstimate est = estimate_curvature(g, x, p, m, cfg);
  const auto stop = std::chrono::steady_clock::now();
  r.wall_time_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
  r.status = status_text(est.status);
  if (est.status == CurvatureEstimate::Status::Converged) r.value = est.value;
  return r;
}

int cmd_curvature(const CurvatureArgs& args) {
  const WeightedGraph g = parse_graph(read_file(args.graph_path));
  const PValue p(args.p);
  const Dimension m = parse_dimension(args.dim);
  const SolverConfig cfg = solver_config_from(args);

  std::vector<OutputRecord> records;
  bool any_degenerate = false;
  for (int x : target_vertices(g, args)) {
    records.push_back(run_estimate(g, args.graph_path, x, p, m, cfg));
    any_degenerate = any_degenerate || records.back().status == "degenerate";
  }
  emit_records(records, args.format);
  return any_degenerate ? kExitDegenerate : kExitOk;
}

int cmd_sweep_p(const CurvatureArgs& args, double p_from, double p_to, double p_step) {
  if (!(p_from > 1.0) || !(p_from <= p_to) || !(p_step > 0.0))
    throw std::invalid_argument("need 1 < p-from <= p-to and p-step > 0");
  const WeightedGraph g = parse_graph(read_file(args.graph_path));
  const Dimension m = parse_dimension(args.dim);
  const SolverConfig cfg = solver_config_from(args);
  const std::vector<int> targets = target_vertices(g, args);

  std::vector<OutputRecord> records;
  bool any_degenerate = false;
  for (double pv = p_from; pv <= p_to + 1e-12; pv += p_step) {
    const PValue p(pv);
    for (int x : targets) {
      records.push_back(run_estimate(g, args.graph_path, x, p, m, cfg));
      any_degenerate = any_degenerate || records.back().status == "degenerate";
    }
  }
  emit_records(records, args.format);
  return any_degenerate ? kExitDegenerate : kExitOk;
}

int cmd_product_gap(const std::string& graph1_path, const std::string& graph2_path,
                    const std::string& xlabel, const std::string& ylabel, double pv,
                    const std::string& function_path) {
  const WeightedGraph g1 = parse_graph(read_file(graph1_path));
  const WeightedGraph g2 = parse_graph(read_file(graph2_path));
  const int x = g1.require(xlabel);
  const int y = g2.require(ylabel);
  const PValue p(pv);
  const WeightedGraph prod = cartesian_product(g1, g2);

  VertexFunction f;
  if (function_path.empty()) {
    f = counterexample_function(g1, g2, x, y);
  } else {
    f = parse_vertex_function(prod, read_file(function_path));
    const LocalBall ball = extract_ball2_inc(prod, product_vertex(g2, x, y));
    for (int v = 0; v < ball.size(); ++v)
      if (!f.is_defined(ball.source_index[v]))
        throw ParseError("function file misses required product vertex '" +
                         prod.label(ball.source_index[v]) + "'");
  }

  const GapBreakdown gb = gamma2_decomposition_gap(g1, g2, f, x, y, p);
  ordered_json out;
  out["graph1"] = graph1_path;
  out["graph2"] = graph2_path;
  out["x"] = xlabel;
  out["y"] = ylabel;
  out["p"] = round12(pv);
  out["gap"] = round12(gb.gap);
  out["direct"] = round12(gb.direct);
  out["closed_form"] = gb.closed_form;
  out["per_pair"] = ordered_json::array();
  for (const PairTerm& t : gb.per_pair)
    out["per_pair"].push_back({{"xi", g1.label(t.xi)},
                               {"yk", g2.label(t.yk)},
                               {"term", round12(t.value)}});
  if (pv == 2.0) {
    const double qs = quarter_sum_gap(g1, g2, f, x, y);
    out["quarter_sum"] = round12(qs);
    out["quarter_sum_matches"] = std::fabs(qs - gb.gap) <= 1e-12;
  }
  std::printf("%s\n", out.dump(2).c_str());
  return kExitOk;
}

int cmd_generate(const std::string& family, int size, const std::string& out_path) {
  WeightedGraph g;
  if (family == "path")
    g = make_path(size);
  else if (family == "cycle")
    g = make_cycle(size);
  else if (family == "star")
    g = make_star(size);
  else if (family == "complete")
    g = make_complete(size);
  else if (family == "hypercube")
    g = make_hypercube(size);
  else
    throw std::invalid_argument("unknown family '" + family + "'");

  const std::string text = serialize_graph(g);
  if (!graphs_equal(g, parse_graph(text)))
    throw std::logic_error("generated document does not round-trip");
  write_file(out_path, text);
  std::printf("wrote %s (%d vertices, %d edges)\n", out_path.c_str(), g.vertex_count(),
              g.edge_count());
  return kExitOk;
}

int cmd_verify(const std::string& level) {
  const bool full = level == "full";
  const auto results = pcurv::verify::run_suite(full);
  ordered_json summary;
  summary["level"] = level;
  summary["checks"] = ordered_json::array();
  for (const auto& r : results) {
    std::printf("[%s] %-24s %s (%.0f ms)\n", r.passed ? "PASS" : "FAIL", r.id.c_str(),
                r.detail.c_str(), r.millis);
    summary["checks"].push_back({{"id", r.id},
                                 {"name", r.name},
                                 {"passed", r.passed},
                                 {"detail", r.detail},
                                 {"ms", round12(r.millis)}});
  }
  const bool ok = pcurv::verify::all_passed(results);
  summary["passed"] = ok;
  std::printf("%s\n", summary.dump(2).c_str());
  return ok ? kExitOk : kExitFailedCheck;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted-graph p-Laplacian operators and p-Bakry-Emery curvature"};
  app.require_subcommand(1);

  CurvatureArgs curvature_args;
  CLI::App* curvature = app.add_subcommand("curvature", "estimate K_{p,x,G}(m)");
  add_curvature_flags(curvature, curvature_args);
  curvature->add_option("--p", curvature_args.p, "exponent p > 1")->required();

  CurvatureArgs sweep_args;
  double p_from = 2.0, p_to = 2.0, p_step = 0.5;
  CLI::App* sweep = app.add_subcommand("sweep-p", "curvature over a grid of p values");
  add_curvature_flags(sweep, sweep_args);
  sweep->add_option("--p-from", p_from, "first p value")->required();
  sweep->add_option("--p-to", p_to, "last p value")->required();
  sweep->add_option("--p-step", p_step, "grid step")->required();

  std::string graph1_path, graph2_path, xlabel, ylabel, function_path;
  double gap_p = 3.0;
  CLI::App* gap = app.add_subcommand("product-gap", "Cartesian-product decomposition gap");
  gap->add_option("--graph1", graph1_path, "first factor graph JSON")->required();
  gap->add_option("--graph2", graph2_path, "second factor graph JSON")->required();
  gap->add_option("--x", xlabel, "vertex label in the first factor")->required();
  gap->add_option("--y", ylabel, "vertex label in the second factor")->required();
  gap->add_option("--p", gap_p, "exponent p > 1")->required();
  gap->add_option("--function", function_path,
                  "function JSON (product vertices labeled \"x|y\"); defaults to the "
                  "built-in witness");

  std::string family, out_path;
  int size = 3;
  CLI::App* generate = app.add_subcommand("generate", "write a standard graph file");
  generate->add_option("--family", family, "path|cycle|star|complete|hypercube")->required();
  generate->add_option("--size", size, "family size parameter")->required();
  generate->add_option("--out", out_path, "output path")->required();

  std::string level = "quick";
  CLI::App* verify = app.add_subcommand("verify", "run the self-verification suite");
  verify->add_option("--level", level, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (curvature->parsed()) return cmd_curvature(curvature_args);
    if (sweep->parsed()) return cmd_sweep_p(sweep_args, p_from, p_to, p_step);
    if (gap->parsed())
      return cmd_product_gap(graph1_path, graph2_path, xlabel, ylabel, gap_p, function_path);
    if (generate->parsed()) return cmd_generate(family, size, out_path);
    if (verify->parsed()) return cmd_verify(level);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInputError;
  }
  return kExitInputError;
}
