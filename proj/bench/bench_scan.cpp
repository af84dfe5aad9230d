// compares the serial and OpenMP builds of the pair scan.
//   bench_scan [norm] [theta] [psi] [reps]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "birk/constants.hpp"
#include "birk/scan.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double now() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
#endif
}

double time_build(const birk::Norm& norm, const birk::GridParams& grid,
                  birk::Execution exec, int reps, std::size_t* pairs) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    double t0 = now();
    birk::PairScan scan = birk::build_pair_scan(norm, grid, exec);
    double dt = now() - t0;
    if (dt < best) best = dt;
    std::size_t n = 0;
    for (const auto& row : scan.rows) n += row.samples.size();
    *pairs = n;
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  std::string alias = argc > 1 ? argv[1] : "hexagon";
  birk::GridParams grid;
  grid.theta_count = argc > 2 ? std::atoi(argv[2]) : 1024;
  grid.psi_scan = argc > 3 ? std::atoi(argv[3]) : 256;
  int reps = argc > 4 ? std::atoi(argv[4]) : 3;

  birk::Norm norm = birk::norm_from_arg(alias);
#ifdef _OPENMP
  int threads = omp_get_max_threads();
#else
  int threads = 1;
#endif
  std::printf("norm=%s theta=%d psi=%d reps=%d threads=%d\n", norm.label().c_str(),
              grid.theta_count, grid.psi_scan, reps, threads);

  std::size_t pairs = 0;
  double ts = time_build(norm, grid, birk::Execution::Serial, reps, &pairs);
  std::printf("  serial    %8.3f ms   (%zu pairs)\n", ts * 1e3, pairs);
  double tp = time_build(norm, grid, birk::Execution::Parallel, reps, &pairs);
  std::printf("  parallel  %8.3f ms   (%zu pairs)\n", tp * 1e3, pairs);
  std::printf("  speedup   %8.2fx\n", ts / tp);
  return 0;
}
