#include "birk/scan.hpp"

#include <cmath>
#include <string>

#include "birk/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace birk {

namespace {

constexpr double kPi = 3.141592653589793;

ThetaRow build_row(const Norm& norm, const GridParams& grid, int i) {
  ThetaRow row;
  row.theta = i * kPi / grid.theta_count;
  row.x = sphere_point(norm, row.theta);
  const double nx = norm.evaluate(row.x.coords);
  const double cut = detail::tight_tol(grid.ortho_tol);

  int n = grid.psi_scan;
  while (true) {
    row.arcs = detail::find_arcs(norm, row.x, n, grid.ortho_tol);
    if (!row.arcs.empty() || n >= 4096) break;
    n *= 2;
  }
  if (row.arcs.empty())
    throw NoCompanionFound("no companion directions at theta=" +
                           format_double(row.theta) + " up to scan_count 4096");

  const double h = kPi / grid.psi_scan;
  auto push = [&](double psi) {
    double v = minimize_lambda(norm, row.x.coords, dir(psi)).value;
    double df = nx > v ? nx - v : 0.0;
    if (df > cut) return;  // boundary rounding, drop
    Vec2 y = sphere_point(norm, psi).coords;
    row.samples.push_back({psi,
                           norm.evaluate(row.x.coords + y),
                           norm.evaluate(row.x.coords - y), df});
  };
  for (const CompanionArc& arc : row.arcs) {
    double len = arc.psi_hi - arc.psi_lo;
    int k = std::max(8, static_cast<int>(std::ceil(len / h)));
    for (int j = 0; j <= k; ++j) push(arc.psi_lo + len * j / k);
    if (arc.anchor_psi > arc.psi_lo && arc.anchor_psi < arc.psi_hi)
      push(arc.anchor_psi);
  }
  return row;
}

}  // namespace

PairScan build_pair_scan(const Norm& norm, const GridParams& grid, Execution exec) {
  if (grid.theta_count < 4) throw DomainError("theta_count must be at least 4");
  if (grid.psi_scan < 64) throw DomainError("psi_scan must be at least 64");

  PairScan scan;
  scan.grid = grid;
  scan.rows.resize(grid.theta_count);

  std::string error;
  if (exec == Execution::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < grid.theta_count; ++i) {
      try {
        scan.rows[i] = build_row(norm, grid, i);
      } catch (const std::exception& e) {
#pragma omp critical
        if (error.empty()) error = e.what();
      }
    }
#else
    exec = Execution::Serial;
#endif
  }
  if (exec == Execution::Serial) {
    for (int i = 0; i < grid.theta_count; ++i) scan.rows[i] = build_row(norm, grid, i);
  }
  if (!error.empty()) throw NoCompanionFound(error);
  return scan;
}

}  // namespace birk
