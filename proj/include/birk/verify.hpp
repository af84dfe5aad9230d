#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "birk/constants.hpp"

namespace birk {

// one verified inequality; margin >= -slack exactly when passed
struct Check {
  std::string name;
  double nu = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string relation;  // "LE", "GE" or "EQ"
  double margin = 0.0;
  double slack = 0.0;
  bool applicable = true;  // radon_upper only binds on Radon planes
  bool passed = false;
  std::string detail;  // plain statement of what was compared
};

struct VerifyReport {
  std::string norm_label;
  std::string norm_spec;
  GridParams grid;
  std::vector<double> nus;
  std::vector<ConstantEstimate> constants;
  double radon_defect_value = 0.0;
  bool is_radon = false;
  double james_unconstrained = 0.0;
  std::vector<Check> checks;
  bool passed = false;
};

// runs the ten-check catalog for every requested nu against one shared scan
VerifyReport run_checks(const Norm& norm, const std::vector<double>& nus,
                        const GridParams& grid,
                        Execution exec = Execution::Parallel);

std::string report_json(const VerifyReport& report);

// random invertible affine images of the regular hexagon gauge; the Heinz
// constant at nu = 1/2 must stay at 3/2 across the family
struct HexagonCase {
  double alpha = 0.0, beta = 0.0, s1 = 1.0, s2 = 1.0;  // rotation/scale/rotation
  double h = 0.0;
  bool passed = false;
};

std::vector<HexagonCase> hexagon_family_check(std::uint64_t seed, int count,
                                              const GridParams& grid,
                                              double tol = 1e-3,
                                              Execution exec = Execution::Parallel);

}  // namespace birk
