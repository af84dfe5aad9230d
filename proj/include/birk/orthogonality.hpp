#pragma once

#include <vector>

#include "birk/norm.hpp"
#include "birk/vec2.hpp"

namespace birk {

struct MinimizeResult {
  double lambda_star = 0.0;
  double value = 0.0;
  double bracket_width = 0.0;
};

// minimizes lambda -> ||x + lambda y|| (convex) by golden section over
// [-2||x||/||y||, 2||x||/||y||]; lambda = 0 is always a candidate, so
// value <= ||x|| holds exactly
MinimizeResult minimize_lambda(const Norm& norm, Vec2 x, Vec2 y,
                               double width_target = 1e-12, int max_iters = 200);

// ||x|| - min_lambda ||x + lambda y||, clamped to >= 0; zero iff x is
// Birkhoff orthogonal to y
double defect(const Norm& norm, Vec2 x, Vec2 y);

bool is_orthogonal(const Norm& norm, Vec2 x, Vec2 y, double tol = 1e-9);

// closed arc of directions psi (mod pi) whose sphere points are Birkhoff
// companions of x; psi_lo in [0, pi), psi_lo <= psi_hi <= psi_lo + pi
struct CompanionArc {
  double psi_lo = 0.0;
  double psi_hi = 0.0;
  double boundary_tol = 0.0;   // localization width of the endpoints
  double anchor_psi = 0.0;     // best-defect direction seen inside
  double anchor_defect = 0.0;
};

// all companion arcs of x = sphere_point(theta); scan_count >= 64 directions
// are classified by defect and arc boundaries are bisected. Throws
// NoCompanionFound when nothing is admitted (callers retry with a denser scan).
std::vector<CompanionArc> companion_arcs(const Norm& norm, double theta,
                                         int scan_count, double tol = 1e-9);

namespace detail {
// admission level used inside arcs: two orders tighter than the public tol
inline double tight_tol(double tol) { return tol * 1e-2; }
std::vector<CompanionArc> find_arcs(const Norm& norm, const SpherePoint& x,
                                    int scan_count, double tol);
// defect of (x, sphere direction psi) at full precision; nx = ||x||
double full_defect(const Norm& norm, Vec2 x, double nx, double psi);
// golden minimization of psi -> defect over [lo, hi]; returns (psi, defect)
std::pair<double, double> refine_dip(const Norm& norm, Vec2 x, double nx,
                                     double lo, double hi);
// boundary of {defect <= cut} between an outside and an inside direction
double bisect_edge(const Norm& norm, Vec2 x, double nx, double out_psi,
                   double in_psi, double cut);
}  // namespace detail

}  // namespace birk
