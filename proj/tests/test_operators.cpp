#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "pcurv/classical.hpp"
#include "pcurv/closed_forms.hpp"
#include "pcurv/graph.hpp"
#include "pcurv/operators.hpp"
#include "pcurv/rng.hpp"

using namespace pcurv;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

VertexFunction path_function(double A, double B, double C, double D) {
  // On P_5 around the middle vertex v2: differences A, B to the neighbors
  // and C, D continuing outward.
  VertexFunction f(5);
  f.set(0, A + C);
  f.set(1, A);
  f.set(2, 0.0);
  f.set(3, B);
  f.set(4, B + D);
  return f;
}

VertexFunction random_function(Rng& rng, int n, double lo = -5.0, double hi = 5.0) {
  VertexFunction f(n);
  for (int v = 0; v < n; ++v) f.set(v, rng.uniform(lo, hi));
  return f;
}

}  // namespace

TEST_CASE("phi_p") {
  CHECK(phi_p(0.0, PValue(1.5)) == 0.0);
  CHECK(phi_p(0.0, PValue(3.0)) == 0.0);
  CHECK(phi_p(1.25, PValue(2.0)) == 1.25);
  CHECK(phi_p(-0.5, PValue(2.0)) == -0.5);
  CHECK(phi_p(-2.0, PValue(3.0)) == doctest::Approx(-4.0));
  CHECK_THROWS_AS(PValue(1.0), std::invalid_argument);
}

TEST_CASE("delta_p on P3") {
  const WeightedGraph p3 = make_path(3);
  SUBCASE("constant function") {
    CHECK(delta_p(p3, VertexFunction::constant(3, 4.0), 1, PValue(3.0)) == 0.0);
  }
  SUBCASE("p=3 with A=1, B=-2") {
    VertexFunction f(3);
    f.set(0, 1.0);
    f.set(1, 0.0);
    f.set(2, -2.0);
    CHECK(delta_p(p3, f, 1, PValue(3.0)) == doctest::Approx(-3.0));
  }
  SUBCASE("p=2 is the classical Laplacian") {
    VertexFunction f(3);
    f.set(0, 1.0);
    f.set(1, 0.0);
    f.set(2, 1.0);
    CHECK(delta_p(p3, f, 1, PValue(2.0)) == doctest::Approx(2.0));
  }
  SUBCASE("missing value") {
    VertexFunction f(3);
    f.set(1, 0.0);
    CHECK_THROWS_AS(delta_p(p3, f, 1, PValue(2.0)), MissingValue);
  }
}

TEST_CASE("gamma_p on P3") {
  const WeightedGraph p3 = make_path(3);
  VertexFunction f(3);
  f.set(0, 1.0);
  f.set(1, 0.0);
  f.set(2, 2.0);
  CHECK(gamma_p(p3, f, 1, PValue(3.0)) == doctest::Approx(9.0));
  f.set(2, 1.0);
  CHECK(gamma_p(p3, f, 1, PValue(2.0)) == doctest::Approx(1.0));
  CHECK(gamma_p(p3, VertexFunction::constant(3, 7.0), 1, PValue(2.5)) == 0.0);
}

TEST_CASE("gamma_p_bilinear") {
  const WeightedGraph g = make_star(3);
  Rng rng(11);
  SUBCASE("diagonal recovers gamma_p") {
    for (double pv : {1.5, 2.0, 3.0}) {
      const VertexFunction f = random_function(rng, g.vertex_count());
      CHECK(gamma_p_bilinear(g, f, f, f, 0, PValue(pv)) ==
            doctest::Approx(gamma_p(g, f, 0, PValue(pv))).epsilon(1e-12));
    }
  }
  SUBCASE("symmetric in the last two arguments") {
    const VertexFunction u = random_function(rng, g.vertex_count());
    const VertexFunction f = random_function(rng, g.vertex_count());
    const VertexFunction h = random_function(rng, g.vertex_count());
    CHECK(gamma_p_bilinear(g, u, f, h, 0, PValue(2.5)) ==
          gamma_p_bilinear(g, u, h, f, 0, PValue(2.5)));
  }
  SUBCASE("p=2 equals the classical bilinear form for any u") {
    const VertexFunction u = random_function(rng, g.vertex_count());
    const VertexFunction f = random_function(rng, g.vertex_count());
    const VertexFunction h = random_function(rng, g.vertex_count());
    CHECK(gamma_p_bilinear(g, u, f, h, 0, PValue(2.0)) ==
          doctest::Approx(classical_gamma(g, f, h, 0)).epsilon(1e-14));
  }
}

TEST_CASE("gamma2_p pinned values") {
  const WeightedGraph p3 = make_path(3);
  SUBCASE("constant function") {
    CHECK(gamma2_p(p3, VertexFunction::constant(3, 1.0), 1, PValue(3.0)) == 0.0);
  }
  SUBCASE("P3 middle, p=2, A=B=1 gives 2.5") {
    VertexFunction f(3);
    f.set(0, 1.0);
    f.set(1, 0.0);
    f.set(2, 1.0);
    CHECK(gamma2_p(p3, f, 1, PValue(2.0)) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(classical_gamma2(p3, f, 1) == doctest::Approx(2.5).epsilon(1e-14));
  }
  SUBCASE("P3 middle, p=3, A=B=1 gives 7/6") {
    VertexFunction f(3);
    f.set(0, 1.0);
    f.set(1, 0.0);
    f.set(2, 1.0);
    CHECK(gamma2_p(p3, f, 1, PValue(3.0)) == doctest::Approx(7.0 / 6.0).epsilon(1e-14));
  }
  SUBCASE("P3 leaf, p=2, A=C=1 gives 3/4") {
    VertexFunction f(3);
    f.set(0, 0.0);
    f.set(1, 1.0);
    f.set(2, 2.0);
    CHECK(gamma2_p(p3, f, 0, PValue(2.0)) == doctest::Approx(0.75).epsilon(1e-14));
  }
}

TEST_CASE("gamma2_p matches the path closed form") {
  const WeightedGraph p5 = make_path(5);
  Rng rng(23);
  for (double pv : {2.0, 2.5, 3.0, 4.0}) {
    const PValue p(pv);
    for (int k = 0; k < 250; ++k) {
      const double A = rng.uniform(-5.0, 5.0);
      const double B = rng.uniform(-5.0, 5.0);
      const double C = rng.uniform(-5.0, 5.0);
      const double D = rng.uniform(-5.0, 5.0);
      const VertexFunction f = path_function(A, B, C, D);
      const double got = gamma2_p(p5, f, 2, p);
      const double want = gamma2_path_middle(A, B, C, D, p);
      CHECK(std::fabs(got - want) <=
            1e-10 * std::max({1.0, std::fabs(got), std::fabs(want)}));
    }
  }
}

TEST_CASE("leaf values match their closed forms") {
  Rng rng(31);
  auto pw = [](double t, double e) { return std::pow(std::fabs(t), e); };
  for (double pv : {2.0, 2.5, 3.0, 4.0}) {
    const PValue p(pv);
    SUBCASE("path leaf") {
      // Gamma_{2,p} at a leaf with neighbor difference A and outward C.
      const WeightedGraph p4 = make_path(4);
      for (int k = 0; k < 50; ++k) {
        const double A = rng.uniform(-3.0, 3.0);
        const double C = rng.uniform(-3.0, 3.0);
        VertexFunction f(4);
        f.set(0, 0.0);
        f.set(1, A);
        f.set(2, A + C);
        f.set(3, rng.uniform(-3.0, 3.0));  // outside the 2-ball
        const double want = pw(A, 2.0 * pv - 2.0) / (pv - 1.0) +
                            pw(A, pv - 2.0) * pw(C, pv) / (2.0 * pv) -
                            pw(A, pv - 2.0) * A * pw(C, pv - 2.0) * C / (2.0 * (pv - 1.0));
        CHECK(gamma2_p(p4, f, 0, p) ==
              doctest::Approx(want).epsilon(1e-12));
      }
    }
    SUBCASE("star leaf") {
      const int D = 4;
      const WeightedGraph star = make_star(D);
      for (int k = 0; k < 50; ++k) {
        const double A = rng.uniform(-3.0, 3.0);
        VertexFunction f(star.vertex_count());
        f.set(1, 0.0);   // base leaf
        f.set(0, A);     // hub
        double sum_abs = 0.0, sum_phi = 0.0;
        for (int i = 2; i <= D; ++i) {
          const double B = rng.uniform(-3.0, 3.0);
          f.set(i, A + B);
          sum_abs += pw(B, pv);
          sum_phi += pw(B, pv - 2.0) * B;
        }
        const double want = pw(A, 2.0 * pv - 2.0) / (pv - 1.0) +
                            pw(A, pv - 2.0) * sum_abs / (2.0 * pv) -
                            pw(A, pv - 2.0) * A * sum_phi / (2.0 * (pv - 1.0));
        CHECK(gamma2_p(star, f, 1, p) == doctest::Approx(want).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("cycle values reduce to the path expansion with constrained variables") {
  Rng rng(29);
  // On C_4 at v0 the outward differences share the antipode: C - B = D - A.
  const WeightedGraph c4 = make_cycle(4);
  // On C_3 at v0 the two neighbors are adjacent: D = -C with C = B - A.
  const WeightedGraph c3 = make_cycle(3);
  for (double pv : {2.0, 2.5, 3.0, 4.0}) {
    const PValue p(pv);
    for (int k = 0; k < 100; ++k) {
      VertexFunction f4(4);
      for (int v = 0; v < 4; ++v) f4.set(v, rng.uniform(-3.0, 3.0));
      const double a4 = f4[1] - f4[0], b4 = f4[3] - f4[0];
      const double c4d = f4[2] - f4[1], d4 = f4[2] - f4[3];
      const double want4 = gamma2_path_middle(a4, b4, c4d, d4, p);
      CHECK(std::fabs(gamma2_p(c4, f4, 0, p) - want4) <= 1e-12 * std::max(1.0, std::fabs(want4)));

      VertexFunction f3(3);
      for (int v = 0; v < 3; ++v) f3.set(v, rng.uniform(-3.0, 3.0));
      const double a3 = f3[1] - f3[0], b3 = f3[2] - f3[0], c3d = f3[2] - f3[1];
      const double want3 = gamma2_path_middle(a3, b3, c3d, -c3d, p);
      CHECK(std::fabs(gamma2_p(c3, f3, 0, p) - want3) <= 1e-12 * std::max(1.0, std::fabs(want3)));
    }
  }
}

TEST_CASE("subquadratic zero-difference produces a signed infinity") {
  const WeightedGraph p3 = make_path(3);
  VertexFunction f(3);
  f.set(0, 0.0);  // A = 0 against a nonzero B
  f.set(1, 0.0);
  f.set(2, 1.0);
  const double value = gamma2_p(p3, f, 1, PValue(1.5));
  CHECK(std::isinf(value));
  CHECK(value < 0.0);
}

TEST_CASE("cd_gap pinned values") {
  const WeightedGraph p3 = make_path(3);
  VertexFunction f(3);
  f.set(0, 1.0);
  f.set(1, 0.0);
  f.set(2, 1.0);
  CHECK(cd_gap(p3, VertexFunction::constant(3, 3.0), 1, PValue(2.0), Dimension::finite(4.0),
               1.0) == 0.0);
  CHECK(cd_gap(p3, f, 1, PValue(2.0), Dimension::infinite(), 0.0) ==
        doctest::Approx(2.5).epsilon(1e-14));
  CHECK(cd_gap(p3, f, 1, PValue(2.0), Dimension::finite(2.0), 0.0) ==
        doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("cd_ratio pinned values and degeneracy") {
  const WeightedGraph p3 = make_path(3);
  VertexFunction f(3);
  f.set(0, 1.0);
  f.set(1, 0.0);
  f.set(2, 1.0);
  CHECK(cd_ratio(p3, f, 1, PValue(2.0), Dimension::infinite()) ==
        doctest::Approx(2.5).epsilon(1e-14));
  CHECK(cd_ratio(p3, f, 1, PValue(2.0), Dimension::finite(2.0)) ==
        doctest::Approx(0.5).epsilon(1e-14));

  VertexFunction scaled(3);
  for (int v = 0; v < 3; ++v) scaled.set(v, 3.0 * f[v]);
  CHECK(cd_ratio(p3, scaled, 1, PValue(2.0), Dimension::infinite()) ==
        doctest::Approx(2.5).epsilon(1e-12));

  CHECK_THROWS_AS(cd_ratio(p3, VertexFunction::constant(3, 1.0), 1, PValue(2.0),
                           Dimension::infinite()),
                  DegenerateFunction);
}

TEST_CASE("translation invariance and symmetry under negation") {
  Rng rng(37);
  const WeightedGraph g = make_cycle(5);
  for (double pv : {1.5, 2.0, 2.5, 3.0}) {
    const PValue p(pv);
    // Dyadic values keep the shifted differences exact.
    VertexFunction f(5), shifted(5), neg(5);
    for (int v = 0; v < 5; ++v) {
      const double value = (static_cast<int>(rng.next_u64() % 257) - 128) / 32.0;
      f.set(v, value);
      shifted.set(v, value + 3.5);
      neg.set(v, -value);
    }
    CHECK(delta_p(g, f, 0, p) == delta_p(g, shifted, 0, p));
    CHECK(gamma_p(g, f, 0, p) == gamma_p(g, shifted, 0, p));
    CHECK(gamma2_p(g, f, 0, p) == gamma2_p(g, shifted, 0, p));

    CHECK(delta_p(g, neg, 0, p) == -delta_p(g, f, 0, p));
    CHECK(gamma_p(g, neg, 0, p) == gamma_p(g, f, 0, p));
    CHECK(gamma2_p(g, neg, 0, p) == gamma2_p(g, f, 0, p));
  }
}

TEST_CASE("gamma2_p is 2-ball local, bit for bit") {
  Rng rng(41);
  for (const auto& [g, x] : {std::pair{make_cycle(5), 0}, std::pair{make_path(7), 3},
                             std::pair{cartesian_product(make_path(3), make_path(3)), 4}}) {
    const LocalBall ball = extract_ball2_inc(g, x);
    for (double pv : {1.7, 2.0, 2.5, 3.0}) {
      const VertexFunction f = random_function(rng, g.vertex_count());
      CHECK(gamma2_p(g, f, x, PValue(pv)) ==
            gamma2_p(ball.graph, ball.restricted(f), 0, PValue(pv)));
    }
  }
}

TEST_CASE("functions agreeing on the ball give identical gamma2_p") {
  // On P_7 at v3 the incomplete 2-ball is v1..v5; values at v0 and v6 are
  // irrelevant.
  const WeightedGraph p7 = make_path(7);
  Rng rng(53);
  for (double pv : {1.6, 2.0, 3.0}) {
    VertexFunction f(7), h(7);
    for (int v = 0; v < 7; ++v) {
      const double value = rng.uniform(-4.0, 4.0);
      f.set(v, value);
      h.set(v, (v == 0 || v == 6) ? value + rng.uniform(1.0, 2.0) : value);
    }
    CHECK(gamma2_p(p7, f, 3, PValue(pv)) == gamma2_p(p7, h, 3, PValue(pv)));
  }
}

TEST_CASE("gamma_p is nonnegative") {
  Rng rng(43);
  const WeightedGraph g = make_star(4);
  for (int k = 0; k < 50; ++k) {
    const VertexFunction f = random_function(rng, g.vertex_count());
    for (double pv : {1.2, 2.0, 3.7})
      for (int v = 0; v < g.vertex_count(); ++v) CHECK(gamma_p(g, f, v, PValue(pv)) >= 0.0);
  }
}

TEST_CASE("p=2 reduction against the classical code path") {
  Rng rng(47);
  for (const WeightedGraph& g : {make_path(5), make_cycle(4), make_cycle(5), make_star(4)}) {
    for (int k = 0; k < 100; ++k) {
      const VertexFunction f = random_function(rng, g.vertex_count(), -10.0, 10.0);
      for (int v = 0; v < g.vertex_count(); ++v) {
        CHECK(std::fabs(gamma2_p(g, f, v, PValue(2.0)) - classical_gamma2(g, f, v)) <= 1e-12);
        CHECK(std::fabs(delta_p(g, f, v, PValue(2.0)) - classical_delta(g, f, v)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("non-unit weights and measures") {
  // Weighted K_2: Delta_p u(x) = w/mu(x) phi(u(y)-u(x)).
  GraphBuilder b;
  b.add_vertex("x", 2.0);
  b.add_vertex("y", 3.0);
  b.add_edge(0, 1, 0.5);
  const WeightedGraph g = b.build();
  VertexFunction f(2);
  f.set(0, 0.0);
  f.set(1, 2.0);
  CHECK(delta_p(g, f, 0, PValue(3.0)) == doctest::Approx(0.5 * 4.0 / 2.0));
  CHECK(gamma_p(g, f, 0, PValue(3.0)) == doctest::Approx(2.0 / (2.0 * 2.0) * 0.5 * 8.0));
}
