#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "birk/norm.hpp"
#include "birk/rng.hpp"
#include "birk/vec2.hpp"

namespace testsupport {

struct LambdaOracle {
  double lambda = 0.0;
  double value = 0.0;
};

// independent check for minimize_lambda: brute-force grid over the same
// bracket, no golden section involved
inline LambdaOracle oracle_min_lambda(const birk::Norm& n, birk::Vec2 x,
                                      birk::Vec2 y, double step) {
  double nx = n.evaluate(x), ny = n.evaluate(y);
  double r = 2.0 * nx / ny;
  long count = std::lround(2.0 * r / step);
  LambdaOracle best{0.0, nx};
  for (long k = 0; k <= count; ++k) {
    double l = -r + 2.0 * r * k / count;
    double v = n.evaluate({x.x + l * y.x, x.y + l * y.y});
    if (v < best.value) best = {l, v};
  }
  return best;
}

// norms that exercise every evaluate branch; includes seeded random polygons
inline std::vector<birk::Norm> mixed_norm_pool(std::uint64_t seed, int n_random) {
  std::vector<birk::Norm> pool;
  for (auto& [name, norm] : birk::norm_zoo()) pool.push_back(norm);
  std::mt19937_64 gen(seed);
  for (int i = 0; i < n_random; ++i) pool.push_back(birk::random_polygon(gen));
  return pool;
}

}  // namespace testsupport
