#include "pcurv/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "pcurv/rng.hpp"

namespace pcurv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pow_abs(double t, double e) { return std::pow(std::fabs(t), e); }

// |t|^(p-2) with the operator zero conventions (1 at p == 2, 0 for p > 2,
// +infinity for p < 2).
double sing(double t, double p) {
  if (t == 0.0) {
    if (p > 2.0) return 0.0;
    if (p == 2.0) return 1.0;
    return kInf;
  }
  return pow_abs(t, p - 2.0);
}

double phi(double t, double p) { return t == 0.0 ? 0.0 : pow_abs(t, p - 2.0) * t; }

// d/dt |t|^(p-2); 0 at the (measure-zero) kinks where it is undefined.
double sing_deriv(double t, double p) {
  if (p == 2.0) return 0.0;
  if (t == 0.0) return 0.0;
  return (p - 2.0) * pow_abs(t, p - 3.0) * (t > 0.0 ? 1.0 : -1.0);
}

}  // namespace

void SolverConfig::validate() const {
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (!(step_tolerance > 0.0)) throw std::invalid_argument("step_tolerance must be positive");
  if (!(value_tolerance > 0.0)) throw std::invalid_argument("value_tolerance must be positive");
  if (smoothing_epsilon < 0.0) throw std::invalid_argument("smoothing_epsilon must be >= 0");
  if (!(divergence_threshold < 0.0))
    throw std::invalid_argument("divergence_threshold must be negative");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
}

BallRatio::BallRatio(const LocalBall& ball, PValue p, Dimension m)
    : n_(ball.size()), p_(p.get()), mcoef_(m.coefficient(p)) {
  mu_.reserve(n_);
  adj_.reserve(n_);
  for (int v = 0; v < n_; ++v) {
    mu_.push_back(ball.graph.mu(v));
    auto nbs = ball.graph.neighbors(v);
    adj_.emplace_back(nbs.begin(), nbs.end());
  }
}

double BallRatio::gamma_at(std::span<const double> x, int v) const {
  const double xv = at(x, v);
  double acc = 0.0;
  for (const Neighbor& nb : adj_[v]) acc += nb.w * pow_abs(at(x, nb.to) - xv, p_);
  return (p_ - 1.0) / (2.0 * mu_[v]) * acc;
}

double BallRatio::delta_at(std::span<const double> x, int v) const {
  const double xv = at(x, v);
  double acc = 0.0;
  for (const Neighbor& nb : adj_[v]) acc += nb.w * phi(at(x, nb.to) - xv, p_);
  return acc / mu_[v];
}

double BallRatio::gamma_p_center(std::span<const double> x) const {
  return gamma_at(x, 0);
}

double BallRatio::min_abs_edge_difference(std::span<const double> x) const {
  double best = kInf;
  for (int v = 0; v < n_; ++v)
    for (const Neighbor& nb : adj_[v])
      best = std::min(best, std::fabs(at(x, nb.to) - at(x, v)));
  return best;
}

void BallRatio::normalize(std::span<double> x) const {
  const double gp = gamma_p_center(x);
  if (!(gp > 0.0) || !std::isfinite(gp)) return;
  const double scale = std::pow(gp, -1.0 / p_);
  for (double& xi : x) xi *= scale;
}

double BallRatio::value(std::span<const double> x) const {
  const double gp0 = gamma_p_center(x);
  if (!(gp0 > 0.0)) return kInf;

  double first = 0.0;
  double second = 0.0;
  const double lp0 = delta_at(x, 0);
  for (const Neighbor& nb : adj_[0]) {
    const double ty = at(x, nb.to);
    first += nb.w * sing(ty, p_) * (gamma_at(x, nb.to) - gp0);
    second += nb.w * phi(ty, p_) * (delta_at(x, nb.to) - lp0);
  }
  first /= p_ * (p_ - 1.0) * mu_[0];
  second /= 2.0 * (p_ - 1.0) * mu_[0];

  double num = first - second - mcoef_ * lp0 * lp0;
  const double den = std::pow(gp0, (2.0 * p_ - 2.0) / p_);
  const double ratio = num / den;
  return std::isnan(ratio) ? kInf : ratio;
}

void BallRatio::gradient(std::span<const double> x, std::span<double> out) const {
  const double q = (2.0 * p_ - 2.0) / p_;
  const double gp0 = gamma_p_center(x);
  const double lp0 = delta_at(x, 0);
  const double den = std::pow(gp0, q);

  std::vector<double> dnum(n_, 0.0);   // gradient of the numerator, per vertex
  std::vector<double> dgp0(n_, 0.0);   // gradient of the center Gamma_p

  const double c1 = 1.0 / (p_ * (p_ - 1.0) * mu_[0]);
  const double c2 = 1.0 / (2.0 * (p_ - 1.0) * mu_[0]);

  double num = -mcoef_ * lp0 * lp0;
  double sum_w_sf = 0.0;   // sum of w_0y |t_y|^(p-2), multiplies dGamma_p(0)
  double sum_w_phi = 0.0;  // sum of w_0y phi(t_y), multiplies dDelta_p(0)

  for (const Neighbor& nb0 : adj_[0]) {
    const int y = nb0.to;
    const double ty = at(x, y);
    const double sfy = sing(ty, p_);
    const double phy = phi(ty, p_);
    const double gy = gamma_at(x, y);
    const double ly = delta_at(x, y);

    num += c1 * nb0.w * sfy * (gy - gp0) - c2 * nb0.w * phy * (ly - lp0);
    sum_w_sf += nb0.w * sfy;
    sum_w_phi += nb0.w * phy;

    // Through the standalone factor and phi at the center edge.
    dnum[y] += c1 * nb0.w * sing_deriv(ty, p_) * (gy - gp0);
    dnum[y] -= c2 * nb0.w * (p_ - 1.0) * sfy * (ly - lp0);

    // Through Gamma_p(y) and Delta_p(y).
    for (const Neighbor& nb : adj_[y]) {
      const double d = at(x, nb.to) - ty;
      const double gg = c1 * nb0.w * sfy * (p_ * (p_ - 1.0) / (2.0 * mu_[y])) * nb.w * phi(d, p_);
      dnum[nb.to] += gg;
      dnum[y] -= gg;
      const double ll = c2 * nb0.w * phy * ((p_ - 1.0) / mu_[y]) * nb.w * sing(d, p_);
      dnum[nb.to] -= ll;
      dnum[y] += ll;
    }
  }

  // Through Gamma_p(0), Delta_p(0) and the dimension term.
  for (const Neighbor& nb0 : adj_[0]) {
    const int z = nb0.to;
    const double tz = at(x, z);
    const double g0z = (p_ * (p_ - 1.0) / (2.0 * mu_[0])) * nb0.w * phi(tz, p_);
    const double l0z = ((p_ - 1.0) / mu_[0]) * nb0.w * sing(tz, p_);
    dgp0[z] = g0z;
    dnum[z] -= c1 * sum_w_sf * g0z;
    dnum[z] += c2 * sum_w_phi * l0z;
    dnum[z] -= 2.0 * mcoef_ * lp0 * l0z;
  }

  const double ratio = num / den;
  const double dden_scale = q * std::pow(gp0, q - 1.0);
  for (int v = 1; v < n_; ++v)
    out[v - 1] = (dnum[v] - ratio * dden_scale * dgp0[v]) / den;
}

namespace {

struct LocalMinResult {
  std::vector<double> x;
  double value = kInf;
  bool diverged = false;
};

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool all_finite(std::span<const double> a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

// Alternates gradient descent with backtracking line search (where the
// objective is smooth) and coordinate-wise pattern search, which both covers
// the |t|^(p-2) kinks for p < 3 and walks out of the flat saddles that
// gradient descent stalls in for p >= 3.
LocalMinResult minimize_from(const BallRatio& obj, std::vector<double> x,
                             const SolverConfig& cfg) {
  const int n = obj.dimension();
  if (!(obj.gamma_p_center(x) > 0.0)) x[0] = 1.0;
  obj.normalize(x);
  double v = obj.value(x);

  std::vector<double> g(n), trial(n);
  double h = 0.25;
  double alpha = 1.0;
  int gd_stall = 0;

  for (int it = 0; it < cfg.max_iterations; ++it) {
    if (v < cfg.divergence_threshold) return {std::move(x), v, true};

    bool moved = false;
    const bool smooth = obj.p() >= 3.0 ||
                        obj.min_abs_edge_difference(x) > cfg.smoothing_epsilon;
    if (smooth && gd_stall < 3 && std::isfinite(v)) {
      obj.gradient(x, g);
      const double gg = dot(g, g);
      if (all_finite(g) && gg > 1e-28) {
        double a = std::clamp(alpha * 2.0, 1e-12, 1e3);
        for (int ls = 0; ls < 60 && !moved; ++ls, a *= 0.5) {
          for (int i = 0; i < n; ++i) trial[i] = x[i] - a * g[i];
          const double vt = obj.value(trial);
          if (vt <= v - 1e-4 * a * gg) {
            const double gain = v - vt;
            x = trial;
            v = vt;
            alpha = a;
            moved = true;
            gd_stall = gain < cfg.value_tolerance * 1e-3 * (1.0 + std::fabs(v)) ? gd_stall + 1 : 0;
          }
        }
        if (!moved) ++gd_stall;
      }
    }

    if (!moved) {
      // One pattern sweep at radius h.
      bool improved = false;
      for (int i = 0; i < n; ++i)
        for (double s : {h, -h}) {
          trial = x;
          trial[i] += s;
          const double vt = obj.value(trial);
          if (vt < v) {
            x = trial;
            v = vt;
            improved = true;
            break;
          }
        }
      if (improved) {
        moved = true;
        gd_stall = 0;
      } else {
        h *= 0.5;
        if (h < cfg.step_tolerance) break;
      }
    }

    if (moved) {
      obj.normalize(x);
      v = obj.value(x);
    }
  }
  return {std::move(x), v, v < cfg.divergence_threshold};
}

std::vector<double> random_start(const BallRatio& obj, std::uint64_t seed, int restart) {
  Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(restart));
  std::vector<double> x(obj.dimension());
  for (double& xi : x) xi = rng.normal();
  return x;
}

VertexFunction to_host_function(const WeightedGraph& g, const LocalBall& ball,
                                std::span<const double> x) {
  VertexFunction f(g.vertex_count());
  f.set(ball.source_index[0], 0.0);
  for (int v = 1; v < ball.size(); ++v) f.set(ball.source_index[v], x[v - 1]);
  return f;
}

}  // namespace

std::optional<ProbeResult> probe_divergence(const WeightedGraph& g, int x, PValue p,
                                            Dimension m, double divergence_threshold) {
  if (p.get() >= 2.0)
    throw std::invalid_argument("probe_divergence applies to 1 < p < 2 only");
  const LocalBall ball = extract_ball2_inc(g, x);
  if (ball.s1_count == 0) return std::nullopt;
  const BallRatio obj(ball, p, m);

  std::vector<double> values(ball.size() - 1);
  for (int probe = 1; probe <= ball.s1_count; ++probe) {
    double t = 1e-1;
    for (int decade = 1; decade <= 100; ++decade, t *= 1e-1) {
      for (int v = 1; v <= ball.s1_count; ++v) values[v - 1] = (v == probe) ? t : 1.0;
      // 2-sphere vertices copy their first 1-sphere neighbor.
      for (int v = ball.s1_count + 1; v < ball.size(); ++v) {
        double copied = 1.0;
        for (const Neighbor& nb : ball.graph.neighbors(v))
          if (nb.to >= 1 && nb.to <= ball.s1_count) {
            copied = values[nb.to - 1];
            break;
          }
        values[v - 1] = copied;
      }
      const double ratio = obj.value(values);
      if (ratio < divergence_threshold) {
        ProbeResult result;
        result.witness = to_host_function(g, ball, values);
        result.info = {t, ball.source_index[probe], ratio};
        return result;
      }
    }
  }
  return std::nullopt;
}

CurvatureEstimate estimate_curvature(const WeightedGraph& g, int x, PValue p, Dimension m,
                                     const SolverConfig& cfg) {
  cfg.validate();
  g.require_vertex(x);
  const LocalBall ball = extract_ball2_inc(g, x);

  CurvatureEstimate est;
  if (ball.s1_count == 0) {
    est.status = CurvatureEstimate::Status::Degenerate;
    return est;
  }

  if (p.get() < 2.0 && cfg.probe_divergence) {
    if (auto probe = probe_divergence(g, x, p, m, cfg.divergence_threshold)) {
      est.status = CurvatureEstimate::Status::DivergingToMinusInfinity;
      est.value = -kInf;
      est.witness = std::move(probe->witness);
      est.evidence = probe->info;
      return est;
    }
  }

  // Validate warm starts up front; restart workers must not throw.
  for (const VertexFunction& warm : cfg.warm_starts)
    for (int v = 0; v < ball.size(); ++v)
      if (!warm.is_defined(ball.source_index[v]))
        throw MissingValue("warm start lacks a value on ball vertex '" +
                           g.label(ball.source_index[v]) + "'");

  const BallRatio obj(ball, p, m);
  const int total = std::max(cfg.restarts, static_cast<int>(cfg.warm_starts.size()));
  std::vector<LocalMinResult> results(total);

  auto run_restart = [&](int r) {
    std::vector<double> start;
    if (r < static_cast<int>(cfg.warm_starts.size())) {
      const VertexFunction local = ball.restricted(cfg.warm_starts[r]);
      start.resize(obj.dimension());
      const double base = local[0];
      for (int v = 1; v < ball.size(); ++v) start[v - 1] = local[v] - base;
    } else {
      start = random_start(obj, cfg.seed, r);
    }
    results[r] = minimize_from(obj, std::move(start), cfg);
  };

  const int workers = std::min(cfg.workers, total);
  if (workers <= 1) {
    for (int r = 0; r < total; ++r) run_restart(r);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (int r = w; r < total; r += workers) run_restart(r);
      });
    for (std::thread& th : pool) th.join();
  }

  int best = 0;
  for (int r = 1; r < total; ++r)
    if (results[r].value < results[best].value) best = r;

  est.restarts_used = total;
  est.best_per_restart.reserve(total);
  for (const LocalMinResult& r : results) est.best_per_restart.push_back(r.value);
  est.witness = to_host_function(g, ball, results[best].x);

  if (results[best].diverged || results[best].value < cfg.divergence_threshold) {
    est.status = CurvatureEstimate::Status::DivergingToMinusInfinity;
    est.value = -kInf;
    est.evidence = DivergenceEvidence{0.0, -1, results[best].value};
  } else {
    est.status = CurvatureEstimate::Status::Converged;
    est.value = results[best].value;
  }
  return est;
}

double brute_force_curvature(const WeightedGraph& g, int x, PValue p, Dimension m,
                             int grid_resolution, double range_bound) {
  g.require_vertex(x);
  if (grid_resolution < 2) throw std::invalid_argument("grid_resolution must be >= 2");
  if (!(range_bound > 0.0)) throw std::invalid_argument("range_bound must be positive");

  const LocalBall ball = extract_ball2_inc(g, x);
  const int nfree = ball.size() - 1;
  if (nfree == 0) throw DegenerateFunction("isolated vertex has no admissible functions");
  if (nfree > 6)
    throw BallTooLarge("ball has " + std::to_string(nfree) + " free variables; limit is 6");

  const double step = 2.0 * range_bound / (grid_resolution - 1);
  VertexFunction f(ball.size());
  f.set(0, 0.0);
  auto ratio_of = [&](const std::vector<double>& values) {
    for (int v = 1; v < ball.size(); ++v) f.set(v, values[v - 1]);
    bool s1_all_zero = true;
    for (int v = 1; v <= ball.s1_count; ++v)
      if (values[v - 1] != 0.0) s1_all_zero = false;
    if (s1_all_zero) return kInf;
    const double r = cd_ratio(ball.graph, f, 0, p, m);
    return std::isnan(r) ? kInf : r;
  };

  // Exhaustive product grid.
  std::vector<int> digits(nfree, 0);
  std::vector<double> values(nfree), best_values(nfree);
  double best = kInf;
  while (true) {
    for (int i = 0; i < nfree; ++i) values[i] = -range_bound + step * digits[i];
    const double r = ratio_of(values);
    if (r < best) {
      best = r;
      best_values = values;
    }
    int pos = 0;
    while (pos < nfree && ++digits[pos] == grid_resolution) digits[pos++] = 0;
    if (pos == nfree) break;
  }

  // Coordinate-descent refinement from the best grid point.
  values = best_values;
  double h = step;
  for (int sweep = 0; sweep < 20000 && h > 1e-10; ++sweep) {
    bool improved = false;
    for (int i = 0; i < nfree; ++i)
      for (double s : {h, -h}) {
        std::vector<double> trial = values;
        trial[i] += s;
        const double r = ratio_of(trial);
        if (r < best) {
          best = r;
          values = trial;
          improved = true;
          break;
        }
      }
    if (!improved) h *= 0.5;
  }
  return best;
}

CdVerdict check_cd(const WeightedGraph& g, int x, PValue p, Dimension m, double K,
                   const SolverConfig& cfg) {
  const CurvatureEstimate est = estimate_curvature(g, x, p, m, cfg);
  CdVerdict verdict;
  if (est.status == CurvatureEstimate::Status::Degenerate) return verdict;

  const double gap = cd_gap(g, est.witness, x, p, m, K);
  if (gap < -cfg.value_tolerance) {
    verdict.falsified = true;
    verdict.gap = gap;
    verdict.witness = est.witness;
  }
  return verdict;
}

std::vector<CurvatureEstimate> curvature_profile(const WeightedGraph& g, int x, PValue p,
                                                 std::span<const Dimension> m_list,
                                                 const SolverConfig& cfg) {
  std::vector<CurvatureEstimate> out;
  out.reserve(m_list.size());
  for (const Dimension& m : m_list) out.push_back(estimate_curvature(g, x, p, m, cfg));
  return out;
}

}  // namespace pcurv
