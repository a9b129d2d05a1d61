#include "pcurv/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <limits>

#include "pcurv/classical.hpp"
#include "pcurv/closed_forms.hpp"
#include "pcurv/graph.hpp"
#include "pcurv/operators.hpp"
#include "pcurv/product.hpp"
#include "pcurv/rng.hpp"
#include "pcurv/solver.hpp"

namespace pcurv::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(const char* format, ...) {
  char buffer[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buffer, sizeof buffer, format, args);
  va_end(args);
  return buffer;
}

double rel_error(double got, double want) {
  return std::fabs(got - want) / std::max({1.0, std::fabs(got), std::fabs(want)});
}

VertexFunction random_function(Rng& rng, int size, double lo, double hi) {
  VertexFunction f(size);
  for (int v = 0; v < size; ++v) f.set(v, rng.uniform(lo, hi));
  return f;
}

SolverConfig solver_config(std::uint64_t seed, int restarts = 64) {
  SolverConfig cfg;
  cfg.restarts = restarts;
  cfg.seed = seed;
  return cfg;
}

// --- quick checks -----------------------------------------------------------

std::pair<bool, std::string> check_path_closed_form() {
  const WeightedGraph g = make_path(5);
  const int mid = 2;
  const double ps[] = {2.0, 2.5, 3.0, 4.0};
  Rng rng(0x5EED0001ULL);
  double worst = 0.0;
  for (int draw = 0; draw < 1000; ++draw) {
    const double A = rng.uniform(-5.0, 5.0);
    const double B = rng.uniform(-5.0, 5.0);
    const double C = rng.uniform(-5.0, 5.0);
    const double D = rng.uniform(-5.0, 5.0);
    VertexFunction f(5);
    f.set(0, A + C);
    f.set(1, A);
    f.set(2, 0.0);
    f.set(3, B);
    f.set(4, B + D);
    for (double pv : ps) {
      const PValue p(pv);
      worst = std::max(worst, rel_error(gamma2_p(g, f, mid, p),
                                        gamma2_path_middle(A, B, C, D, p)));
      worst = std::max(worst, rel_error(delta_p(g, f, mid, p), phi_p(A, p) + phi_p(B, p)));
      worst = std::max(
          worst, rel_error(gamma_p(g, f, mid, p),
                           (pv - 1.0) / 2.0 *
                               (std::pow(std::fabs(A), pv) + std::pow(std::fabs(B), pv))));
    }
  }
  return {worst <= 1e-10, fmt("12000 evaluations, max rel err %.3e (tol 1e-10)", worst)};
}

std::pair<bool, std::string> check_classical_reduction() {
  const std::vector<WeightedGraph> graphs = {make_path(5),  make_cycle(4), make_cycle(5),
                                             make_star(2),  make_star(3),  make_star(4)};
  const PValue two(2.0);
  Rng rng(0x5EED0002ULL);
  double worst = 0.0;
  for (int draw = 0; draw < 1000; ++draw) {
    const WeightedGraph& g = graphs[draw % graphs.size()];
    const VertexFunction f = random_function(rng, g.vertex_count(), -10.0, 10.0);
    for (int v = 0; v < g.vertex_count(); ++v) {
      worst = std::max(worst, std::fabs(gamma2_p(g, f, v, two) - classical_gamma2(g, f, v)));
      worst = std::max(worst, std::fabs(delta_p(g, f, v, two) - classical_delta(g, f, v)));
    }
  }
  return {worst <= 1e-12, fmt("1000 functions, max abs err %.3e (tol 1e-12)", worst)};
}

std::pair<bool, std::string> check_product_identities() {
  struct Pair {
    WeightedGraph g1, g2;
  };
  const std::vector<Pair> pairs = {{make_path(2), make_path(2)},
                                   {make_path(2), make_path(3)},
                                   {make_path(3), make_cycle(4)},
                                   {make_star(3), make_cycle(5)}};
  const double ps[] = {1.5, 2.0, 2.5, 3.0, 4.0};
  Rng rng(0x5EED0007ULL);

  double worst_additivity = 0.0;
  for (int draw = 0; draw < 1000; ++draw) {
    const Pair& pr = pairs[draw % pairs.size()];
    const int n = pr.g1.vertex_count() * pr.g2.vertex_count();
    const VertexFunction f = random_function(rng, n, -2.0, 2.0);
    const int x = static_cast<int>(rng.next_u64() % pr.g1.vertex_count());
    const int y = static_cast<int>(rng.next_u64() % pr.g2.vertex_count());
    for (double pv : ps) {
      const AdditivityResiduals res = check_additivity(pr.g1, pr.g2, f, x, y, PValue(pv));
      worst_additivity = std::max({worst_additivity, res.delta, res.gamma});
    }
  }
  if (worst_additivity > 1e-12)
    return {false, fmt("additivity residual %.3e exceeds 1e-12", worst_additivity)};

  // p = 2: the gap is the quarter-sum and in particular nonnegative.
  double worst_qs = 0.0;
  double most_negative = 0.0;
  for (int draw = 0; draw < 200; ++draw) {
    const Pair& pr = pairs[draw % pairs.size()];
    const int n = pr.g1.vertex_count() * pr.g2.vertex_count();
    const VertexFunction f = random_function(rng, n, -2.0, 2.0);
    const int x = static_cast<int>(rng.next_u64() % pr.g1.vertex_count());
    const int y = static_cast<int>(rng.next_u64() % pr.g2.vertex_count());
    const GapBreakdown gb = gamma2_decomposition_gap(pr.g1, pr.g2, f, x, y, PValue(2.0));
    worst_qs = std::max(worst_qs, std::fabs(gb.gap - quarter_sum_gap(pr.g1, pr.g2, f, x, y)));
    most_negative = std::min(most_negative, gb.gap);
  }
  if (worst_qs > 1e-12 || most_negative < -1e-12)
    return {false, fmt("p=2 quarter-sum err %.3e, min gap %.3e", worst_qs, most_negative)};

  // p > 2: the constant witness value on three products.
  struct WitnessCase {
    WeightedGraph g1, g2;
    int x, y;
  };
  const std::vector<WitnessCase> cases = {{make_path(2), make_path(2), 0, 0},
                                          {make_path(3), make_path(3), 1, 1},
                                          {make_star(2), make_cycle(4), 0, 0}};
  double worst_witness = 0.0;
  for (const WitnessCase& wc : cases) {
    const VertexFunction f = counterexample_function(wc.g1, wc.g2, wc.x, wc.y);
    for (double pv : {2.5, 3.0, 4.0}) {
      const PValue p(pv);
      const GapBreakdown gb = gamma2_decomposition_gap(wc.g1, wc.g2, f, wc.x, wc.y, p);
      const double want =
          -static_cast<double>(wc.g1.degree(wc.x) * wc.g2.degree(wc.y)) / (2.0 * pv * (pv - 1.0));
      worst_witness = std::max(worst_witness, std::fabs(gb.gap - want));
      if (!verify_product_superadditivity_failure(wc.g1, wc.g2, wc.x, wc.y, p))
        return {false, "superadditivity failure not detected for the witness"};
    }
  }
  if (worst_witness > 1e-12)
    return {false, fmt("witness gap err %.3e exceeds 1e-12", worst_witness)};
  return {true, fmt("additivity %.3e, quarter-sum %.3e, witness %.3e (tol 1e-12)",
                    worst_additivity, worst_qs, worst_witness)};
}

std::pair<bool, std::string> check_invariances() {
  Rng rng(0x5EED0008ULL);

  // Scale invariance of the ratio.
  struct Case {
    WeightedGraph g;
    int x;
  };
  const std::vector<Case> cases = {{make_path(5), 2}, {make_star(3), 1}, {make_cycle(4), 0}};
  const Dimension dims[] = {Dimension::infinite(), Dimension::finite(3.0)};
  double worst_scale = 0.0;
  for (const Case& c : cases)
    for (double pv : {2.0, 2.5, 3.0}) {
      const PValue p(pv);
      const VertexFunction f = random_function(rng, c.g.vertex_count(), -2.0, 2.0);
      for (const Dimension& m : dims) {
        const double base = cd_ratio(c.g, f, c.x, p, m);
        for (double lambda : {-3.0, 0.01, 7.0}) {
          VertexFunction scaled(c.g.vertex_count());
          for (int v = 0; v < c.g.vertex_count(); ++v) scaled.set(v, lambda * f[v]);
          const double got = cd_ratio(c.g, scaled, c.x, p, m);
          worst_scale = std::max(worst_scale,
                                 std::fabs(got - base) / std::max(1.0, std::fabs(base)));
        }
      }
    }
  if (worst_scale > 1e-9) return {false, fmt("scale invariance err %.3e", worst_scale)};

  // Translation invariance, exact on dyadic data.
  for (const Case& c : cases)
    for (double pv : {2.0, 2.5, 3.0, 4.0}) {
      const PValue p(pv);
      VertexFunction f(c.g.vertex_count());
      VertexFunction shifted(c.g.vertex_count());
      for (int v = 0; v < c.g.vertex_count(); ++v) {
        const double value = static_cast<double>(
                                 static_cast<int>(rng.next_u64() % 257) - 128) / 32.0;
        f.set(v, value);
        shifted.set(v, value + 3.5);
      }
      const Dimension m = Dimension::finite(4.0);
      if (delta_p(c.g, f, c.x, p) != delta_p(c.g, shifted, c.x, p) ||
          gamma_p(c.g, f, c.x, p) != gamma_p(c.g, shifted, c.x, p) ||
          gamma2_p(c.g, f, c.x, p) != gamma2_p(c.g, shifted, c.x, p) ||
          cd_gap(c.g, f, c.x, p, m, 0.5) != cd_gap(c.g, shifted, c.x, p, m, 0.5))
        return {false, "translation invariance is not exact on dyadic data"};
    }

  // Locality: ball restriction and spherical-edge toggling, bit for bit.
  {
    const WeightedGraph c5 = make_cycle(5);
    GraphBuilder b;
    for (int i = 0; i < 5; ++i) b.add_vertex("v" + std::to_string(i));
    b.add_edge(0, 1);
    b.add_edge(1, 2);
    b.add_edge(3, 4);
    b.add_edge(4, 0);
    const WeightedGraph c5_cut = b.build();  // C_5 with the spherical edge {2,3} removed
    const LocalBall ball = extract_ball2_inc(c5, 0);
    for (double pv : {2.0, 2.7, 3.5}) {
      const PValue p(pv);
      const VertexFunction f = random_function(rng, 5, -3.0, 3.0);
      const double on_graph = gamma2_p(c5, f, 0, p);
      if (on_graph != gamma2_p(ball.graph, ball.restricted(f), 0, p))
        return {false, "ball restriction changed Gamma_{2,p}"};
      if (on_graph != gamma2_p(c5_cut, f, 0, p))
        return {false, "spherical-edge toggle changed Gamma_{2,p}"};
    }
  }

  // Evenness and oddness.
  for (const Case& c : cases)
    for (double pv : {1.5, 2.0, 3.0}) {
      const PValue p(pv);
      const VertexFunction f = random_function(rng, c.g.vertex_count(), -2.0, 2.0);
      VertexFunction neg(c.g.vertex_count());
      for (int v = 0; v < c.g.vertex_count(); ++v) neg.set(v, -f[v]);
      if (delta_p(c.g, neg, c.x, p) != -delta_p(c.g, f, c.x, p) ||
          gamma_p(c.g, neg, c.x, p) != gamma_p(c.g, f, c.x, p) ||
          gamma2_p(c.g, neg, c.x, p) != gamma2_p(c.g, f, c.x, p))
        return {false, "evenness/oddness under f -> -f is not exact"};
    }

  // Seed determinism, independent of the number of workers.
  {
    const WeightedGraph star = make_star(3);
    SolverConfig one = solver_config(7, 16);
    SolverConfig many = one;
    many.workers = 4;
    const CurvatureEstimate a = estimate_curvature(star, 1, PValue(2.0), Dimension::infinite(), one);
    const CurvatureEstimate b =
        estimate_curvature(star, 1, PValue(2.0), Dimension::infinite(), many);
    if (a.value != b.value || a.best_per_restart != b.best_per_restart)
      return {false, "solver output depends on the number of workers"};
    for (int v = 0; v < star.vertex_count(); ++v)
      if (a.witness.is_defined(v) != b.witness.is_defined(v) ||
          (a.witness.is_defined(v) && a.witness[v] != b.witness[v]))
        return {false, "witness depends on the number of workers"};
  }

  return {true, fmt("scale err %.3e; translation/locality/evenness exact; workers bitwise equal",
                    worst_scale)};
}

std::pair<bool, std::string> check_gradient() {
  struct Case {
    WeightedGraph g;
    int x;
  };
  const std::vector<Case> cases = {{make_path(5), 2}, {make_star(4), 1}};
  Rng rng(0x5EED0009ULL);
  double worst = 0.0;
  int points = 0;
  for (const Case& c : cases) {
    const LocalBall ball = extract_ball2_inc(c.g, c.x);
    for (double pv : {3.0, 4.0}) {
      const BallRatio obj(ball, PValue(pv), Dimension::infinite());
      const int n = obj.dimension();
      std::vector<double> x(n), ga(n), gfd(n);
      for (int k = 0; k < 100; ++k) {
        // Draw until safely away from the kinks.
        for (int tries = 0; tries < 1000; ++tries) {
          for (double& xi : x) xi = rng.uniform(-2.0, 2.0);
          if (obj.min_abs_edge_difference(x) > 0.05 && obj.gamma_p_center(x) > 1e-3) break;
        }
        obj.gradient(x, ga);
        const double h = 1e-6;
        for (int i = 0; i < n; ++i) {
          std::vector<double> xp(x.begin(), x.end()), xm(x.begin(), x.end());
          xp[i] += h;
          xm[i] -= h;
          gfd[i] = (obj.value(xp) - obj.value(xm)) / (2.0 * h);
        }
        double na = 0.0, diff = 0.0;
        for (int i = 0; i < n; ++i) {
          na = std::max(na, std::fabs(gfd[i]));
          diff = std::max(diff, std::fabs(ga[i] - gfd[i]));
        }
        worst = std::max(worst, diff / std::max(1.0, na));
        ++points;
      }
    }
  }
  return {worst <= 1e-4, fmt("%d points, max rel err %.3e (tol 1e-4)", points, worst)};
}

// --- full checks ------------------------------------------------------------

std::pair<bool, std::string> check_nonnegative_curvature() {
  struct Case {
    const char* name;
    WeightedGraph g;
    int x;
  };
  const std::vector<Case> cases = {
      {"P3 middle", make_path(3), 1},  {"P4 middle", make_path(4), 1},
      {"P5 leaf", make_path(5), 0},    {"P7 center", make_path(7), 3},
      {"C3 vertex", make_cycle(3), 0}, {"C4 vertex", make_cycle(4), 0},
      {"C5 vertex", make_cycle(5), 0}};
  double lowest = kInf;
  for (const Case& c : cases)
    for (double pv : {3.0, 4.0}) {
      const CurvatureEstimate est =
          estimate_curvature(c.g, c.x, PValue(pv), Dimension::infinite(), solver_config(42));
      if (est.status != CurvatureEstimate::Status::Converged)
        return {false, fmt("%s at p=%.1f did not converge", c.name, pv)};
      lowest = std::min(lowest, est.value);
      if (est.value < -1e-6)
        return {false, fmt("%s at p=%.1f has value %.3e < -1e-6", c.name, pv, est.value)};
    }
  return {true, fmt("14 cases converged, minimum value %.3e >= -1e-6", lowest)};
}

std::pair<bool, std::string> check_subquadratic_divergence() {
  for (double pv : {1.2, 1.5, 1.8}) {
    const PValue p(pv);
    const Dimension inf = Dimension::infinite();

    for (const auto& [g, x] : {std::pair{make_path(3), 1}, std::pair{make_path(4), 1}}) {
      const auto probe = probe_divergence(g, x, p, inf);
      if (!probe) return {false, fmt("no divergence evidence at path middle, p=%.1f", pv)};
      const double ratio = cd_ratio(g, probe->witness, x, p, inf);
      if (!(ratio < -1e6))
        return {false, fmt("probe ratio %.3e not below -1e6 at p=%.1f", ratio, pv)};
    }

    const WeightedGraph c4 = make_cycle(4);
    const CdVerdict verdict = check_cd(c4, 0, p, inf, 0.0, solver_config(42));
    if (!verdict.falsified)
      return {false, fmt("CD_p(inf,0) not falsified on C4 at p=%.1f", pv)};

    const WeightedGraph p5 = make_path(5);
    if (probe_divergence(p5, 0, p, inf))
      return {false, fmt("spurious divergence evidence at path leaf, p=%.1f", pv)};
    const CurvatureEstimate est = estimate_curvature(p5, 0, p, inf, solver_config(42));
    if (est.status != CurvatureEstimate::Status::Converged)
      return {false, fmt("leaf estimate did not converge at p=%.1f", pv)};
    const double want = path_leaf_curvature(p);
    if (std::fabs(est.value - want) > 5e-2)
      return {false, fmt("leaf value %.6f vs %.6f at p=%.1f", est.value, want, pv)};
  }
  return {true, "divergence certified at path middles and C4; leaf stays positive"};
}

std::pair<bool, std::string> check_star_leaf_values() {
  double worst = 0.0;
  for (int d = 1; d <= 6; ++d) {
    const PValue p(2.0);
    const double formula = star_leaf_curvature(d, p);
    if (formula != 2.0 - (d - 1.0) / 2.0)
      return {false, fmt("closed form at p=2, D=%d differs from 2-(D-1)/2", d)};
    const CurvatureEstimate est =
        estimate_curvature(make_star(d), 1, p, Dimension::infinite(), solver_config(42));
    if (est.status != CurvatureEstimate::Status::Converged)
      return {false, fmt("no convergence at p=2, D=%d", d)};
    worst = std::max(worst, std::fabs(est.value - formula));
  }
  for (int d = 1; d <= 8; ++d) {
    const PValue p(3.0);
    const double formula = star_leaf_curvature(d, p);
    const CurvatureEstimate est =
        estimate_curvature(make_star(d), 1, p, Dimension::infinite(), solver_config(42));
    if (est.status != CurvatureEstimate::Status::Converged)
      return {false, fmt("no convergence at p=3, D=%d", d)};
    worst = std::max(worst, std::fabs(est.value - formula));
  }
  if (worst > 1e-3) return {false, fmt("solver vs formula max err %.3e > 1e-3", worst)};

  if (std::fabs(star_leaf_curvature(8, PValue(3.0)) - (-1.0 / 12.0)) > 1e-15)
    return {false, "D=8, p=3 does not give -1/12"};
  for (double pv : {2.0, 2.5, 3.0}) {
    const int d = static_cast<int>(2.0 * pv + 1.0);
    if (star_leaf_curvature(d, PValue(pv)) != 0.0)
      return {false, fmt("zero crossing at D=2p+1 not exact for p=%.1f", pv)};
  }
  return {true, fmt("14 solver runs, max err %.3e (tol 1e-3); sign flip and zero crossing exact",
                    worst)};
}

std::pair<bool, std::string> check_solver_vs_bruteforce() {
  const std::vector<WeightedGraph> graphs = {make_path(2), make_path(3), make_path(4),
                                             make_star(2), make_star(3), make_star(4),
                                             make_cycle(3), make_cycle(4)};
  double worst = 0.0;
  int runs = 0;
  for (const WeightedGraph& g : graphs)
    for (int x = 0; x < g.vertex_count(); ++x)
      for (double pv : {2.0, 3.0}) {
        const PValue p(pv);
        const CurvatureEstimate est =
            estimate_curvature(g, x, p, Dimension::infinite(), solver_config(42));
        const double oracle = brute_force_curvature(g, x, p, Dimension::infinite(), 11, 2.5);
        if (est.status != CurvatureEstimate::Status::Converged)
          return {false, fmt("no convergence on run %d", runs)};
        worst = std::max(worst, std::fabs(est.value - oracle));
        ++runs;
      }
  return {worst <= 5e-2, fmt("%d runs, max |solver - oracle| %.3e (tol 5e-2)", runs, worst)};
}

}  // namespace

const std::vector<Check>& standard_checks() {
  static const std::vector<Check> checks = {
      {"path-closed-form", "Gamma_{2,p} matches the path closed form", false,
       check_path_closed_form},
      {"classical-reduction", "p=2 operators match the classical evaluations", false,
       check_classical_reduction},
      {"product-identities", "Cartesian product additivity, quarter-sum and witness gap", false,
       check_product_identities},
      {"invariance-suite", "scale/translation/locality/evenness/determinism invariances", false,
       check_invariances},
      {"gradient-check", "analytic gradient matches central differences", false, check_gradient},
      {"nonnegative-curvature", "solver stays nonnegative where curvature is nonnegative", true,
       check_nonnegative_curvature},
      {"subquadratic-divergence", "1 < p < 2 divergence probes and leaf positivity", true,
       check_subquadratic_divergence},
      {"star-leaf-values", "solver reproduces exact star-leaf curvature values", true,
       check_star_leaf_values},
      {"solver-vs-oracle", "multistart solver agrees with the brute-force oracle", true,
       check_solver_vs_bruteforce},
  };
  return checks;
}

CheckResult run_check(const Check& check) {
  CheckResult result;
  result.id = check.id;
  result.name = check.name;
  const auto start = std::chrono::steady_clock::now();
  try {
    auto [passed, detail] = check.run();
    result.passed = passed;
    result.detail = std::move(detail);
  } catch (const std::exception& e) {
    result.passed = false;
    result.detail = std::string("exception: ") + e.what();
  }
  const auto stop = std::chrono::steady_clock::now();
  result.millis = std::chrono::duration<double, std::milli>(stop - start).count();
  return result;
}

std::vector<CheckResult> run_suite(const std::vector<Check>& checks, bool full) {
  std::vector<CheckResult> results;
  for (const Check& check : checks) {
    if (check.full_only && !full) continue;
    results.push_back(run_check(check));
  }
  return results;
}

std::vector<CheckResult> run_suite(bool full) { return run_suite(standard_checks(), full); }

bool all_passed(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results)
    if (!r.passed) return false;
  return true;
}

}  // namespace pcurv::verify
