#pragma once

#include <string>

#include "birk/scan.hpp"

namespace birk {

// constants with a B suffix range over Birkhoff-orthogonal unit pairs only
enum class ConstantTag {
  HeinzB,        // sup Heinz_nu(||x+y||, ||x-y||)
  JamesB,        // sup min(||x+y||, ||x-y||)
  A2B,           // sup (||x+y|| + ||x-y||) / 2
  DeltaB,        // inf 1 - ||x+y||/2
  RhoB,          // sup 1 - ||x+y||/2
  RectangularB,  // sup 2/||x+y||
  James,         // sup min(||x+y||, ||x-y||) over all unit pairs
  Schaffer,      // inf max(||x+y||, ||x-y||) over all unit pairs
  A2,            // sup (||x+y|| + ||x-y||) / 2 over all unit pairs
};

struct ConstantKind {
  ConstantTag tag = ConstantTag::HeinzB;
  double nu = 0.5;  // HeinzB only
};

const char* constant_name(ConstantTag tag);
bool is_supremum(ConstantTag tag);
bool is_constrained(ConstantTag tag);
// objective unchanged under y -> -y; when false the scan table is also
// read with s and d swapped (the pair at psi + pi)
bool is_sign_symmetric(ConstantTag tag);

// (a^nu b^(1-nu) + a^(1-nu) b^nu) / 2 for a, b >= 0, nu in [0, 1];
// interpolates geometric (nu = 1/2) and arithmetic (nu = 0 or 1) means
double heinz_mean(double a, double b, double nu);

double pair_objective(ConstantTag tag, double nu, double s, double d);

struct OrthoPair {
  SpherePoint x;
  SpherePoint y;
  double defect = 0.0;
};

struct ConstantEstimate {
  ConstantKind kind;
  double value = 0.0;
  OrthoPair witness;
  double s = 0.0;  // ||x+y|| at the witness
  double d = 0.0;  // ||x-y|| at the witness
  GridParams grid;
  double tolerance = 0.0;  // orthogonality admission tolerance used
};

// estimate from a prebuilt scan (constrained tags) or a fresh direction grid
// (unconstrained tags); nested local refinement around the winning cell
ConstantEstimate estimate_with_scan(const Norm& norm, const PairScan& scan,
                                    ConstantKind kind);
ConstantEstimate estimate_constant(const Norm& norm, ConstantKind kind,
                                   const GridParams& grid,
                                   Execution exec = Execution::Parallel);

// sup of defect(y, x) over the admitted pairs (x, y) of the scan; zero
// exactly when Birkhoff orthogonality is symmetric (a Radon plane)
double radon_defect(const Norm& norm, const PairScan& scan,
                    Execution exec = Execution::Parallel);

enum class Squareness { UniformlyNonSquare, NotUniformlyNonSquare };

struct SquarenessResult {
  Squareness cls = Squareness::UniformlyNonSquare;
  double james = 0.0;  // the unconstrained James estimate used
};

// a plane fails to be uniformly non-square exactly when James reaches 2;
// `band` absorbs the grid error of the estimate
SquarenessResult classify_nonsquare(const Norm& norm, const GridParams& grid,
                                    double band = 5e-3,
                                    Execution exec = Execution::Parallel);

}  // namespace birk
