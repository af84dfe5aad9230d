#include "birk/orthogonality.hpp"

#include <algorithm>
#include <cmath>

#include "birk/errors.hpp"

namespace birk {

namespace {
constexpr double kInvPhi = 0.6180339887498949;
constexpr double kPi = 3.141592653589793;
}  // namespace

MinimizeResult minimize_lambda(const Norm& norm, Vec2 x, Vec2 y,
                               double width_target, int max_iters) {
  double ny = norm.evaluate(y);
  if (!(ny > 0.0) || !std::isfinite(ny))
    throw DegenerateDirection("minimize_lambda needs ||y|| > 0");
  double nx = norm.evaluate(x);
  if (nx == 0.0) return {0.0, 0.0, 0.0};

  // ||x + ly|| >= |l| ||y|| - ||x|| > ||x|| outside this bracket
  double r = 2.0 * nx / ny;
  double a = -r, b = r;
  auto f = [&](double l) { return norm.evaluate({x.x + l * y.x, x.y + l * y.y}); };

  double best_l = 0.0, best_f = nx;
  auto consider = [&](double l, double v) {
    if (v < best_f) { best_f = v; best_l = l; }
  };

  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  consider(c, fc);
  consider(d, fd);
  for (int it = 0; it < max_iters && b - a > width_target; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      consider(d, fd);
    }
  }
  return {best_l, best_f, b - a};
}

double defect(const Norm& norm, Vec2 x, Vec2 y) {
  double nx = norm.evaluate(x);
  double v = minimize_lambda(norm, x, y).value;
  return nx > v ? nx - v : 0.0;
}

bool is_orthogonal(const Norm& norm, Vec2 x, Vec2 y, double tol) {
  return defect(norm, x, y) <= tol;
}

namespace detail {

namespace {

double coarse_defect(const Norm& norm, Vec2 x, double nx, double psi) {
  double v = minimize_lambda(norm, x, dir(psi), 1e-6).value;
  return nx > v ? nx - v : 0.0;
}

}  // namespace

double full_defect(const Norm& norm, Vec2 x, double nx, double psi) {
  double v = minimize_lambda(norm, x, dir(psi)).value;
  return nx > v ? nx - v : 0.0;
}

std::pair<double, double> refine_dip(const Norm& norm, Vec2 x, double nx,
                                     double lo, double hi) {
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = full_defect(norm, x, nx, c);
  double fd = full_defect(norm, x, nx, d);
  double best_p = fc <= fd ? c : d;
  double best_f = std::min(fc, fd);
  // narrow well below the admission cut: the defect floor left by a psi
  // offset delta is about slope * delta, and slopes reach ~10 for skewed gauges
  while (b - a > 1e-12) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - kInvPhi * (b - a);
      fc = full_defect(norm, x, nx, c);
      if (fc < best_f) { best_f = fc; best_p = c; }
    } else {
      a = c; c = d; fc = fd;
      d = a + kInvPhi * (b - a);
      fd = full_defect(norm, x, nx, d);
      if (fd < best_f) { best_f = fd; best_p = d; }
    }
  }
  return {best_p, best_f};
}

double bisect_edge(const Norm& norm, Vec2 x, double nx, double out_psi,
                   double in_psi, double cut) {
  for (int it = 0; it < 40 && std::fabs(in_psi - out_psi) > 1e-10; ++it) {
    double mid = 0.5 * (out_psi + in_psi);
    if (full_defect(norm, x, nx, mid) <= cut)
      in_psi = mid;
    else
      out_psi = mid;
  }
  return in_psi;
}

std::vector<CompanionArc> find_arcs(const Norm& norm, const SpherePoint& x,
                                    int n, double tol) {
  const double cut = tight_tol(tol);
  const double h = kPi / n;
  const double nx = norm.evaluate(x.coords);

  std::vector<double> coarse(n), full(n, -1.0);
  std::vector<char> inside(n, 0);
  int total_inside = 0;
  for (int i = 0; i < n; ++i) {
    coarse[i] = coarse_defect(norm, x.coords, nx, i * h);
    if (coarse[i] <= tol) {
      full[i] = full_defect(norm, x.coords, nx, i * h);
      if (full[i] <= cut) {
        inside[i] = 1;
        ++total_inside;
      }
    }
  }
  if (total_inside == n) return {{0.0, kPi, 0.0, 0.0, 0.0}};

  struct Run {  // psi interval known inside (may extend past pi), plus anchor
    double lo, hi, anchor, adef;
  };
  std::vector<Run> runs;

  if (total_inside > 0) {
    // rotate the walk so it starts just after a run boundary
    int start = 0;
    while (inside[(start + n - 1) % n]) start = (start + n - 1) % n;
    for (int u = 0; u < n;) {
      if (!inside[(start + u) % n]) { ++u; continue; }
      int len = 1;
      while (len < n - u && inside[(start + u + len) % n]) ++len;
      Run r;
      r.lo = (start + u) * h;
      r.hi = (start + u + len - 1) * h;
      r.anchor = r.lo;
      r.adef = full[(start + u) % n];
      for (int j = 1; j < len; ++j) {
        double fj = full[(start + u + j) % n];
        if (fj < r.adef) { r.adef = fj; r.anchor = (start + u + j) * h; }
      }
      runs.push_back(r);
      u += len;
    }
  }

  // arcs thinner than the sample spacing: refine coarse local minima
  for (int i = 0; i < n; ++i) {
    if (inside[i]) continue;
    double d0 = coarse[i];
    if (d0 > 0.1 || d0 <= cut) continue;
    if (d0 > coarse[(i + n - 1) % n] || d0 > coarse[(i + 1) % n]) continue;
    double psi = i * h;
    auto [p, f] = refine_dip(norm, x.coords, nx, psi - h, psi + h);
    if (f > cut) continue;
    bool covered = false;
    for (const Run& r : runs)
      for (double cand : {p, p + kPi, p + 2 * kPi})
        if (cand >= r.lo - h && cand <= r.hi + h) covered = true;
    if (!covered) runs.push_back({p, p, p, f});
  }

  std::vector<CompanionArc> arcs;
  for (const Run& r : runs) {
    CompanionArc arc;
    arc.psi_lo = bisect_edge(norm, x.coords, nx, r.lo - h, r.lo, cut);
    arc.psi_hi = bisect_edge(norm, x.coords, nx, r.hi + h, r.hi, cut);
    arc.boundary_tol = 1e-10;
    arc.anchor_psi = r.anchor;
    arc.anchor_defect = r.adef;
    while (arc.psi_lo < 0.0) { arc.psi_lo += kPi; arc.psi_hi += kPi; arc.anchor_psi += kPi; }
    while (arc.psi_lo >= kPi) { arc.psi_lo -= kPi; arc.psi_hi -= kPi; arc.anchor_psi -= kPi; }
    arcs.push_back(arc);
  }

  std::sort(arcs.begin(), arcs.end(),
            [](const CompanionArc& a, const CompanionArc& b) { return a.psi_lo < b.psi_lo; });
  std::vector<CompanionArc> merged;
  for (const CompanionArc& a : arcs) {
    if (!merged.empty() && a.psi_lo <= merged.back().psi_hi + 1e-9) {
      CompanionArc& m = merged.back();
      m.psi_hi = std::max(m.psi_hi, a.psi_hi);
      if (a.anchor_defect < m.anchor_defect) {
        m.anchor_defect = a.anchor_defect;
        m.anchor_psi = a.anchor_psi;
      }
    } else {
      merged.push_back(a);
    }
  }
  // wrap merge: last arc running past pi may continue into the first one
  if (merged.size() > 1) {
    CompanionArc& first = merged.front();
    const CompanionArc& last = merged.back();
    if (last.psi_hi - kPi >= first.psi_lo - 1e-9) {
      double lo = last.psi_lo - kPi;
      double hi = std::max(first.psi_hi, last.psi_hi - kPi);
      double apsi = last.anchor_defect < first.anchor_defect ? last.anchor_psi - kPi
                                                             : first.anchor_psi;
      double adef = std::min(first.anchor_defect, last.anchor_defect);
      first = {lo, hi, first.boundary_tol, apsi, adef};
      while (first.psi_lo < 0.0) { first.psi_lo += kPi; first.psi_hi += kPi; first.anchor_psi += kPi; }
      merged.pop_back();
    }
  }
  return merged;
}

}  // namespace detail

std::vector<CompanionArc> companion_arcs(const Norm& norm, double theta,
                                         int scan_count, double tol) {
  if (scan_count < 64) throw DomainError("companion_arcs needs scan_count >= 64");
  SpherePoint x = sphere_point(norm, theta);
  auto arcs = detail::find_arcs(norm, x, scan_count, tol);
  if (arcs.empty())
    throw NoCompanionFound("no companion directions at theta=" + format_double(theta));
  return arcs;
}

}  // namespace birk
