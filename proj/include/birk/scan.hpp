#pragma once

#include <vector>

#include "birk/norm.hpp"
#include "birk/orthogonality.hpp"

namespace birk {

enum class Execution { Serial, Parallel };

struct GridParams {
  int theta_count = 2048;   // sphere directions for x
  int psi_scan = 512;       // companion scan directions per x
  int refine_levels = 3;    // nested refinement grids, 10x shrink each
  double ortho_tol = 1e-9;  // admission tolerance for orthogonal pairs
};

// one admitted near-orthogonal pair: y = sphere_point(psi),
// s = ||x+y||, d = ||x-y||
struct PairSample {
  double psi = 0.0;
  double s = 0.0;
  double d = 0.0;
  double defect = 0.0;
};

struct ThetaRow {
  double theta = 0.0;
  SpherePoint x;
  std::vector<CompanionArc> arcs;
  std::vector<PairSample> samples;
};

// companion arcs and sampled orthogonal pairs for every sphere direction;
// rows are independent, which is what the parallel build exploits
struct PairScan {
  GridParams grid;
  std::vector<ThetaRow> rows;
};

PairScan build_pair_scan(const Norm& norm, const GridParams& grid,
                         Execution exec = Execution::Parallel);

}  // namespace birk
