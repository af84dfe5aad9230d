#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "birk/errors.hpp"
#include "birk/norm.hpp"
#include "birk/orthogonality.hpp"
#include "birk/rng.hpp"

#include "support.hpp"

using namespace birk;

namespace {
constexpr double kPi = 3.141592653589793;
}

TEST_CASE("minimizer on the euclidean plane hits the projection") {
  Norm e = Norm::euclidean();
  Vec2 x{1, 0};
  Vec2 y = dir(kPi / 4);
  MinimizeResult r = minimize_lambda(e, x, y);
  // closed form: lambda = -<x,y>, value = sqrt(1 - <x,y>^2)
  CHECK(r.lambda_star == doctest::Approx(-0.7071067811865476).epsilon(1e-6));
  CHECK(r.value == doctest::Approx(0.7071067811865476).epsilon(1e-10));
  CHECK(r.bracket_width <= 1e-11);

  CHECK(defect(e, x, y) == doctest::Approx(0.2928932188134524).epsilon(1e-9));

  auto oracle = testsupport::oracle_min_lambda(e, x, y, 1e-5);
  CHECK(r.value == doctest::Approx(oracle.value).epsilon(1e-8));
  CHECK(r.lambda_star == doctest::Approx(oracle.lambda).epsilon(1e-4));
}

TEST_CASE("minimize_lambda rejects a degenerate direction") {
  CHECK_THROWS_AS(minimize_lambda(Norm::euclidean(), {1, 0}, {0, 0}), DegenerateDirection);
}

TEST_CASE("value never exceeds the norm of x") {
  auto pool = testsupport::mixed_norm_pool(31, 3);
  std::mt19937_64 gen(32);
  for (const Norm& n : pool) {
    for (int i = 0; i < 60; ++i) {
      Vec2 x{rng_uniform(gen, -2, 2), rng_uniform(gen, -2, 2)};
      Vec2 y{rng_uniform(gen, -2, 2), rng_uniform(gen, -2, 2)};
      if (n.evaluate(y) < 1e-6) continue;
      MinimizeResult r = minimize_lambda(n, x, y);
      CHECK(r.value <= n.evaluate(x));
      CHECK(r.value >= 0.0);
    }
  }
}

TEST_CASE("defect scales with x and ignores the scale of y") {
  auto pool = testsupport::mixed_norm_pool(41, 2);
  std::mt19937_64 gen(42);
  for (const Norm& n : pool) {
    for (int i = 0; i < 40; ++i) {
      Vec2 x{rng_uniform(gen, -2, 2), rng_uniform(gen, -2, 2)};
      Vec2 y{rng_uniform(gen, -2, 2), rng_uniform(gen, -2, 2)};
      if (n.evaluate(x) < 0.1 || n.evaluate(y) < 0.1) continue;
      double base = defect(n, x, y);
      double t = rng_uniform(gen, 0.2, 3.0);
      CHECK(defect(n, t * x, y) == doctest::Approx(t * base).epsilon(1e-7).scale(1.0));
      CHECK(defect(n, x, t * y) == doctest::Approx(base).epsilon(1e-7).scale(1.0));
      CHECK(defect(n, x, -1.0 * y) == doctest::Approx(base).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("golden section agrees with a dense grid oracle") {
  auto pool = testsupport::mixed_norm_pool(51, 3);
  std::mt19937_64 gen(52);
  for (int i = 0; i < 100; ++i) {
    const Norm& n = pool[i % pool.size()];
    Vec2 x = sphere_point(n, rng_uniform(gen, 0, 2 * kPi)).coords;
    Vec2 y = sphere_point(n, rng_uniform(gen, 0, 2 * kPi)).coords;
    MinimizeResult r = minimize_lambda(n, x, y);
    auto oracle = testsupport::oracle_min_lambda(n, x, y, 1e-4);
    CHECK(std::fabs(r.value - oracle.value) <= 5e-4);
    CHECK(r.value <= oracle.value + 1e-12);  // the grid can only overshoot
  }
}

TEST_CASE("textbook orthogonal pairs are recognized") {
  Norm e = Norm::euclidean();
  CHECK(is_orthogonal(e, {1, 0}, {0, 1}));
  CHECK(is_orthogonal(e, {1, 1}, {-1, 1}));
  CHECK(!is_orthogonal(e, {1, 0}, {1, 1}));

  Norm linf = Norm::pnorm(std::numeric_limits<double>::infinity());
  CHECK(is_orthogonal(linf, {1, 1}, {0, 1}));
  CHECK(is_orthogonal(linf, {1, 1}, {-1, 1}));
  CHECK(is_orthogonal(linf, {1, 0}, {0, 1}));
  CHECK(!is_orthogonal(linf, {1, 1}, {1, 0.5}));

  // smooth p-norm: x is orthogonal to y iff sum sign(x_i)|x_i|^(p-1) y_i = 0
  Norm l4 = Norm::pnorm(4);
  CHECK(is_orthogonal(l4, {1, 1}, {-1, 1}));
  CHECK(is_orthogonal(l4, {1, 0}, {0, 1}));
  CHECK(!is_orthogonal(l4, {1, 1}, {-1, 2}));
}

TEST_CASE("euclidean companion arcs sit at right angles") {
  Norm e = Norm::euclidean();
  auto arcs = companion_arcs(e, 0.0, 512);
  REQUIRE(arcs.size() == 1);
  double mid = 0.5 * (arcs[0].psi_lo + arcs[0].psi_hi);
  CHECK(mid == doctest::Approx(kPi / 2).epsilon(1e-8).scale(1.0));
  CHECK(arcs[0].psi_hi - arcs[0].psi_lo <= 1e-5);
  CHECK(arcs[0].anchor_defect <= 1e-11);

  std::mt19937_64 gen(61);
  for (int i = 0; i < 20; ++i) {
    double theta = rng_uniform(gen, 0, kPi);
    auto a = companion_arcs(e, theta, 512);
    REQUIRE(a.size() == 1);
    double m = 0.5 * (a[0].psi_lo + a[0].psi_hi);
    double want = std::fmod(theta + kPi / 2, kPi);
    double diff = std::fabs(m - want);
    diff = std::min(diff, std::fabs(diff - kPi));
    CHECK(diff <= 1e-6);
  }
}

TEST_CASE("max norm corner direction owns a quarter-circle arc") {
  Norm linf = Norm::pnorm(std::numeric_limits<double>::infinity());
  auto arcs = companion_arcs(linf, kPi / 4, 512);
  REQUIRE(arcs.size() == 1);
  CHECK(arcs[0].psi_lo == doctest::Approx(kPi / 2).epsilon(1e-6).scale(1.0));
  CHECK(arcs[0].psi_hi == doctest::Approx(kPi).epsilon(1e-6).scale(1.0));

  // every direction inside the arc really is a companion
  SpherePoint x = sphere_point(linf, kPi / 4);
  for (int k = 0; k <= 50; ++k) {
    double psi = arcs[0].psi_lo + (arcs[0].psi_hi - arcs[0].psi_lo) * k / 50;
    CHECK(defect(linf, x.coords, dir(psi)) <= 1e-9);
  }

  // an edge-interior direction has a single companion line
  auto edge = companion_arcs(linf, 0.0, 512);
  REQUIRE(edge.size() == 1);
  CHECK(0.5 * (edge[0].psi_lo + edge[0].psi_hi) ==
        doctest::Approx(kPi / 2).epsilon(1e-6).scale(1.0));
  CHECK(edge[0].psi_hi - edge[0].psi_lo <= 1e-5);
}

TEST_CASE("taxicab corner spans between the diagonals") {
  Norm l1 = Norm::pnorm(1);
  auto arcs = companion_arcs(l1, 0.0, 512);
  REQUIRE(arcs.size() == 1);
  CHECK(arcs[0].psi_lo == doctest::Approx(kPi / 4).epsilon(1e-6).scale(1.0));
  CHECK(arcs[0].psi_hi == doctest::Approx(3 * kPi / 4).epsilon(1e-6).scale(1.0));
}

TEST_CASE("hexagon vertex arc covers its normal cone") {
  Norm hex = norm_from_arg("hexagon");
  auto arcs = companion_arcs(hex, kPi / 4, 512);
  REQUIRE(arcs.size() == 1);
  CHECK(arcs[0].psi_lo == doctest::Approx(kPi / 2).epsilon(1e-6).scale(1.0));
  CHECK(arcs[0].psi_hi == doctest::Approx(kPi).epsilon(1e-6).scale(1.0));
}

TEST_CASE("companion arcs exist, are sorted and stay disjoint") {
  auto pool = testsupport::mixed_norm_pool(71, 3);
  std::mt19937_64 gen(72);
  for (const Norm& n : pool) {
    for (int i = 0; i < 12; ++i) {
      double theta = rng_uniform(gen, 0, kPi);
      auto arcs = companion_arcs(n, theta, 256);
      REQUIRE(!arcs.empty());
      for (size_t k = 0; k < arcs.size(); ++k) {
        CHECK(arcs[k].psi_lo >= 0.0);
        CHECK(arcs[k].psi_lo < kPi);
        CHECK(arcs[k].psi_hi >= arcs[k].psi_lo);
        CHECK(arcs[k].psi_hi <= arcs[k].psi_lo + kPi + 1e-6);
        CHECK(arcs[k].anchor_defect <= 1e-11);
        if (k > 0) CHECK(arcs[k].psi_lo > arcs[k - 1].psi_hi);
      }
    }
  }
}

TEST_CASE("scan_count below 64 is rejected") {
  CHECK_THROWS_AS(companion_arcs(Norm::euclidean(), 0.0, 32), DomainError);
}
