#include "birk/constants.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "birk/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace birk {

namespace {

constexpr double kPi = 3.141592653589793;
// extrema within this margin count as ties and the earlier cell wins
constexpr double kTieMargin = 1e-12;

struct Cand {
  bool valid = false;
  double theta = 0, psi = 0, s = 0, d = 0, defect = 0, value = 0;
};

bool improves(bool sup, const Cand& incumbent, double v) {
  if (!incumbent.valid) return true;
  return sup ? v > incumbent.value + kTieMargin : v < incumbent.value - kTieMargin;
}

}  // namespace

const char* constant_name(ConstantTag tag) {
  switch (tag) {
    case ConstantTag::HeinzB: return "H";
    case ConstantTag::JamesB: return "JB";
    case ConstantTag::A2B: return "A2B";
    case ConstantTag::DeltaB: return "deltaB";
    case ConstantTag::RhoB: return "rhoB";
    case ConstantTag::RectangularB: return "mu_prime";
    case ConstantTag::James: return "J";
    case ConstantTag::Schaffer: return "S";
    case ConstantTag::A2: return "A2";
  }
  return "?";
}

bool is_supremum(ConstantTag tag) {
  return tag != ConstantTag::DeltaB && tag != ConstantTag::Schaffer;
}

bool is_constrained(ConstantTag tag) {
  switch (tag) {
    case ConstantTag::HeinzB:
    case ConstantTag::JamesB:
    case ConstantTag::A2B:
    case ConstantTag::DeltaB:
    case ConstantTag::RhoB:
    case ConstantTag::RectangularB:
      return true;
    default:
      return false;
  }
}

bool is_sign_symmetric(ConstantTag tag) {
  switch (tag) {
    case ConstantTag::DeltaB:
    case ConstantTag::RhoB:
    case ConstantTag::RectangularB:
      return false;
    default:
      return true;
  }
}

double heinz_mean(double a, double b, double nu) {
  if (!(a >= 0.0) || !(b >= 0.0)) throw DomainError("heinz_mean needs a, b >= 0");
  if (!(nu >= 0.0 && nu <= 1.0)) throw DomainError("heinz_mean needs nu in [0, 1]");
  if (nu == 0.0 || nu == 1.0) return 0.5 * (a + b);
  if (nu == 0.5) return std::sqrt(a * b);
  return 0.5 * (std::pow(a, nu) * std::pow(b, 1.0 - nu) +
                std::pow(a, 1.0 - nu) * std::pow(b, nu));
}

double pair_objective(ConstantTag tag, double nu, double s, double d) {
  switch (tag) {
    case ConstantTag::HeinzB:
      return heinz_mean(s, d, nu);
    case ConstantTag::JamesB:
    case ConstantTag::James:
      return s < d ? s : d;
    case ConstantTag::A2B:
    case ConstantTag::A2:
      return 0.5 * (s + d);
    case ConstantTag::DeltaB:
    case ConstantTag::RhoB:
      return 1.0 - 0.5 * s;
    case ConstantTag::RectangularB:
      return 2.0 / s;
    case ConstantTag::Schaffer:
      return s > d ? s : d;
  }
  return 0.0;
}

namespace {

void validate_kind(ConstantKind kind) {
  if (kind.tag == ConstantTag::HeinzB && !(kind.nu >= 0.0 && kind.nu <= 1.0))
    throw DomainError("Heinz constant needs nu in [0, 1]");
}

// local refinement shared by the constrained estimators: nested 32x32 grids
// around the incumbent, shrinking 10x per level, points admitted by defect
void refine_constrained(const Norm& norm, ConstantKind kind, const GridParams& grid,
                        Cand& best) {
  const bool sup = is_supremum(kind.tag);
  const double cut = detail::tight_tol(grid.ortho_tol);
  double wt = 2.0 * kPi / grid.theta_count;
  double wp = 2.0 * kPi / grid.psi_scan;
  std::vector<double> levels;
  for (int lev = 0; lev < grid.refine_levels; ++lev) {
    const Cand center = best;
    for (int a = 0; a < 32; ++a) {
      double theta = center.theta + wt * (a / 31.0 - 0.5);
      SpherePoint x = sphere_point(norm, theta);
      double nx = norm.evaluate(x.coords);
      double ps[32], df[32];
      int imin = 0;
      for (int b = 0; b < 32; ++b) {
        ps[b] = center.psi + wp * (b / 31.0 - 0.5);
        df[b] = detail::full_defect(norm, x.coords, nx, ps[b]);
        if (df[b] < df[imin]) imin = b;
      }
      std::vector<std::pair<double, double>> adm;
      for (int b = 0; b < 32; ++b)
        if (df[b] <= cut) adm.emplace_back(ps[b], df[b]);
      // thin admissible arcs slip between samples; chase the defect dip
      double step = wp / 31.0;
      auto dip = detail::refine_dip(norm, x.coords, nx, ps[imin] - step, ps[imin] + step);
      if (dip.second <= cut) adm.emplace_back(dip.first, dip.second);
      for (int b = 0; b + 1 < 32; ++b) {
        bool in0 = df[b] <= cut, in1 = df[b + 1] <= cut;
        if (in0 == in1) continue;
        double out = in0 ? ps[b + 1] : ps[b];
        double in = in0 ? ps[b] : ps[b + 1];
        double edge = detail::bisect_edge(norm, x.coords, nx, out, in, cut);
        adm.emplace_back(edge, detail::full_defect(norm, x.coords, nx, edge));
      }
      for (auto [psi, dfv] : adm) {
        if (dfv > cut) continue;
        Vec2 y = sphere_point(norm, psi).coords;
        double s = norm.evaluate(x.coords + y);
        double d = norm.evaluate(x.coords - y);
        double v = pair_objective(kind.tag, kind.nu, s, d);
        if (improves(sup, best, v)) best = {true, theta, psi, s, d, dfv, v};
      }
    }
    levels.push_back(best.value);
    wt /= 10.0;
    wp /= 10.0;
  }
  for (size_t i = 1; i < levels.size(); ++i)
    if (std::fabs(levels[i] - levels[i - 1]) > 1e-2)
      throw GridTooCoarse("refinement for " + std::string(constant_name(kind.tag)) +
                          " moved by " + format_double(levels[i] - levels[i - 1]) +
                          " between levels; increase the grid");
}

ConstantEstimate finish(const Norm& norm, ConstantKind kind, const GridParams& grid,
                        const Cand& best) {
  ConstantEstimate est;
  est.kind = kind;
  est.value = best.value;
  est.s = best.s;
  est.d = best.d;
  est.grid = grid;
  est.tolerance = grid.ortho_tol;
  est.witness.x = sphere_point(norm, best.theta);
  est.witness.y = sphere_point(norm, best.psi);
  est.witness.defect = best.defect;
  return est;
}

ConstantEstimate estimate_unconstrained(const Norm& norm, ConstantKind kind,
                                        const GridParams& grid, Execution exec) {
  const bool sup = is_supremum(kind.tag);
  const int nt = grid.theta_count, np = grid.psi_scan;
  std::vector<Cand> rowbest(nt);

  auto do_row = [&](int i) {
    double theta = i * kPi / nt;
    SpherePoint x = sphere_point(norm, theta);
    Cand rb;
    for (int j = 0; j < np; ++j) {
      double psi = j * kPi / np;
      Vec2 y = sphere_point(norm, psi).coords;
      double s = norm.evaluate(x.coords + y);
      double d = norm.evaluate(x.coords - y);
      double v = pair_objective(kind.tag, kind.nu, s, d);
      if (improves(sup, rb, v)) rb = {true, theta, psi, s, d, 0.0, v};
    }
    rowbest[i] = rb;
  };

  if (exec == Execution::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < nt; ++i) do_row(i);
#else
    exec = Execution::Serial;
#endif
  }
  if (exec == Execution::Serial)
    for (int i = 0; i < nt; ++i) do_row(i);

  Cand best;
  for (int i = 0; i < nt; ++i)
    if (rowbest[i].valid && improves(sup, best, rowbest[i].value)) best = rowbest[i];

  // unconstrained refinement: plain nested grids, every pair admissible
  double wt = 2.0 * kPi / nt, wp = 2.0 * kPi / np;
  std::vector<double> levels;
  for (int lev = 0; lev < grid.refine_levels; ++lev) {
    const Cand center = best;
    for (int a = 0; a < 32; ++a) {
      double theta = center.theta + wt * (a / 31.0 - 0.5);
      SpherePoint x = sphere_point(norm, theta);
      for (int b = 0; b < 32; ++b) {
        double psi = center.psi + wp * (b / 31.0 - 0.5);
        Vec2 y = sphere_point(norm, psi).coords;
        double s = norm.evaluate(x.coords + y);
        double d = norm.evaluate(x.coords - y);
        double v = pair_objective(kind.tag, kind.nu, s, d);
        if (improves(sup, best, v)) best = {true, theta, psi, s, d, 0.0, v};
      }
    }
    levels.push_back(best.value);
    wt /= 10.0;
    wp /= 10.0;
  }
  for (size_t i = 1; i < levels.size(); ++i)
    if (std::fabs(levels[i] - levels[i - 1]) > 1e-2)
      throw GridTooCoarse("refinement for " + std::string(constant_name(kind.tag)) +
                          " failed to stabilize; increase the grid");

  best.defect = defect(norm, sphere_point(norm, best.theta).coords,
                       sphere_point(norm, best.psi).coords);
  return finish(norm, kind, grid, best);
}

}  // namespace

ConstantEstimate estimate_with_scan(const Norm& norm, const PairScan& scan,
                                    ConstantKind kind) {
  if (!is_constrained(kind.tag))
    throw DomainError(std::string(constant_name(kind.tag)) +
                      " does not range over orthogonal pairs; use estimate_constant");
  validate_kind(kind);
  const bool sup = is_supremum(kind.tag);
  const bool sym = is_sign_symmetric(kind.tag);

  Cand best;
  for (const ThetaRow& row : scan.rows) {
    Cand rb;
    auto track = [&](double psi, double s, double d, double df) {
      double v = pair_objective(kind.tag, kind.nu, s, d);
      if (improves(sup, rb, v)) rb = {true, row.theta, psi, s, d, df, v};
    };
    for (const PairSample& smp : row.samples) track(smp.psi, smp.s, smp.d, smp.defect);
    if (!sym)  // the pair at psi + pi swaps the roles of x+y and x-y
      for (const PairSample& smp : row.samples) track(smp.psi + kPi, smp.d, smp.s, smp.defect);
    if (rb.valid && improves(sup, best, rb.value)) best = rb;
  }
  if (!best.valid)
    throw NoCompanionFound("scan admitted no orthogonal pairs");

  refine_constrained(norm, kind, scan.grid, best);
  return finish(norm, kind, scan.grid, best);
}

ConstantEstimate estimate_constant(const Norm& norm, ConstantKind kind,
                                   const GridParams& grid, Execution exec) {
  validate_kind(kind);
  if (!is_constrained(kind.tag)) return estimate_unconstrained(norm, kind, grid, exec);
  PairScan scan = build_pair_scan(norm, grid, exec);
  return estimate_with_scan(norm, scan, kind);
}

double radon_defect(const Norm& norm, const PairScan& scan, Execution exec) {
  const int n = static_cast<int>(scan.rows.size());
  std::vector<double> rowmax(n, 0.0);
  auto do_row = [&](int i) {
    const ThetaRow& row = scan.rows[i];
    double m = 0.0;
    for (const PairSample& smp : row.samples) {
      Vec2 y = sphere_point(norm, smp.psi).coords;
      double dv = defect(norm, y, row.x.coords);
      if (dv > m) m = dv;
    }
    rowmax[i] = m;
  };
  if (exec == Execution::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) do_row(i);
#else
    exec = Execution::Serial;
#endif
  }
  if (exec == Execution::Serial)
    for (int i = 0; i < n; ++i) do_row(i);
  double m = 0.0;
  for (double v : rowmax) m = std::max(m, v);
  return m;
}

SquarenessResult classify_nonsquare(const Norm& norm, const GridParams& grid,
                                    double band, Execution exec) {
  ConstantEstimate j = estimate_constant(norm, {ConstantTag::James, 0.5}, grid, exec);
  SquarenessResult r;
  r.james = j.value;
  r.cls = j.value >= 2.0 - band ? Squareness::NotUniformlyNonSquare
                                : Squareness::UniformlyNonSquare;
  return r;
}

}  // namespace birk
