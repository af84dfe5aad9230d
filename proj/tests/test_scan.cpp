#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "birk/errors.hpp"
#include "birk/norm.hpp"
#include "birk/orthogonality.hpp"
#include "birk/scan.hpp"

#include "support.hpp"

using namespace birk;

namespace {
constexpr double kPi = 3.141592653589793;

GridParams small_grid() {
  GridParams g;
  g.theta_count = 128;
  g.psi_scan = 128;
  return g;
}

bool scans_identical(const PairScan& a, const PairScan& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (size_t i = 0; i < a.rows.size(); ++i) {
    const ThetaRow& r = a.rows[i];
    const ThetaRow& s = b.rows[i];
    if (r.theta != s.theta) return false;
    if (r.x.coords.x != s.x.coords.x || r.x.coords.y != s.x.coords.y) return false;
    if (r.arcs.size() != s.arcs.size()) return false;
    for (size_t k = 0; k < r.arcs.size(); ++k) {
      if (r.arcs[k].psi_lo != s.arcs[k].psi_lo) return false;
      if (r.arcs[k].psi_hi != s.arcs[k].psi_hi) return false;
      if (r.arcs[k].anchor_psi != s.arcs[k].anchor_psi) return false;
      if (r.arcs[k].anchor_defect != s.arcs[k].anchor_defect) return false;
    }
    if (r.samples.size() != s.samples.size()) return false;
    for (size_t k = 0; k < r.samples.size(); ++k) {
      if (r.samples[k].psi != s.samples[k].psi) return false;
      if (r.samples[k].s != s.samples[k].s) return false;
      if (r.samples[k].d != s.samples[k].d) return false;
      if (r.samples[k].defect != s.samples[k].defect) return false;
    }
  }
  return true;
}
}  // namespace

TEST_CASE("serial and parallel scans agree bit for bit") {
  for (const char* name : {"euclid", "linf", "hexagon", "l4"}) {
    Norm n = norm_from_arg(name);
    PairScan par = build_pair_scan(n, small_grid(), Execution::Parallel);
    PairScan ser = build_pair_scan(n, small_grid(), Execution::Serial);
    CHECK(scans_identical(par, ser));
  }
}

TEST_CASE("scan construction is deterministic") {
  Norm n = norm_from_arg("sqrt2max");
  PairScan a = build_pair_scan(n, small_grid(), Execution::Parallel);
  PairScan b = build_pair_scan(n, small_grid(), Execution::Parallel);
  CHECK(scans_identical(a, b));
}

TEST_CASE("every stored pair is a verified orthogonal pair") {
  auto pool = testsupport::mixed_norm_pool(81, 2);
  for (const Norm& n : pool) {
    PairScan scan = build_pair_scan(n, small_grid(), Execution::Parallel);
    REQUIRE(scan.rows.size() == 128);
    size_t total = 0;
    for (const ThetaRow& row : scan.rows) {
      REQUIRE(!row.arcs.empty());
      REQUIRE(!row.samples.empty());
      CHECK(n.evaluate(row.x.coords) == doctest::Approx(1.0).epsilon(1e-12));
      for (const PairSample& ps : row.samples) {
        CHECK(ps.defect <= 1e-11);
        Vec2 y = sphere_point(n, ps.psi).coords;
        CHECK(n.evaluate(row.x.coords + y) == doctest::Approx(ps.s).epsilon(1e-12));
        CHECK(n.evaluate(row.x.coords - y) == doctest::Approx(ps.d).epsilon(1e-12));
        CHECK(ps.s <= 2.0 + 1e-9);
        CHECK(ps.d <= 2.0 + 1e-9);
        CHECK(ps.s >= 0.0);
        CHECK(ps.d >= 0.0);
      }
      ++total;
    }
    CHECK(total == scan.rows.size());
  }
}

TEST_CASE("theta rows cover the half-circle uniformly") {
  Norm e = Norm::euclidean();
  PairScan scan = build_pair_scan(e, small_grid(), Execution::Serial);
  for (size_t i = 0; i < scan.rows.size(); ++i) {
    CHECK(scan.rows[i].theta == doctest::Approx(kPi * double(i) / 128).epsilon(1e-15));
  }
}

TEST_CASE("grid guards reject tiny scans") {
  GridParams g = small_grid();
  g.theta_count = 2;
  CHECK_THROWS_AS(build_pair_scan(Norm::euclidean(), g, Execution::Serial), DomainError);
  g = small_grid();
  g.psi_scan = 16;
  CHECK_THROWS_AS(build_pair_scan(Norm::euclidean(), g, Execution::Serial), DomainError);
}

TEST_CASE("smooth norms still yield arcs at the coarsest allowed scan") {
  GridParams g;
  g.theta_count = 64;
  g.psi_scan = 64;
  PairScan scan = build_pair_scan(norm_from_arg("l4"), g, Execution::Serial);
  for (const ThetaRow& row : scan.rows) {
    REQUIRE(!row.arcs.empty());
    CHECK(row.arcs[0].anchor_defect <= 1e-11);
  }
}
