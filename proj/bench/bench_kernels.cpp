// Serial reference versus OpenMP kernels on a spectra-sized problem.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "archetypal/geometry.hpp"
#include "archetypal/init.hpp"
#include "archetypal/risk.hpp"
#include "archetypal/solvers.hpp"
#include "archetypal/synth.hpp"

using namespace archetypal;

static double time_ms(const std::function<void()>& f, int reps) {
  f();  // warm up
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

static void row(const char* name, const std::function<void(Exec)>& f, int reps) {
  const double s = time_ms([&] { f(Exec::serial); }, reps);
  const double p = time_ms([&] { f(Exec::parallel); }, reps);
  std::printf("%-22s serial %9.3f ms  parallel %9.3f ms  speedup %5.2fx\n", name, s, p,
              s / p);
}

int main() {
  const ArchetypeSet h0 = gen_smooth_spectra(4, 87, 7);
  const NoisyDataset ds = gen_dataset(h0, MixtureRecipe::spectra_default(2000, 1e-3), 1);
  const HullProjector arch_hull(h0);
  const HullProjector data_hull(ds.x);
  std::printf("threads: %d  n=%td d=%td r=%td\n", omp_get_max_threads(), ds.x.rows(),
              ds.x.cols(), h0.rows());

  row("project_rows (X on H)", [&](Exec e) { project_rows(ds.x, arch_hull, e); }, 5);
  row("project_rows (H on X)", [&](Exec e) { project_rows(h0, data_hull, e); }, 5);
  row("solve_weights", [&](Exec e) { solve_weights(ds.x, h0, e); }, 5);
  row("risk + gradient",
      [&](Exec e) { evaluate_risk(ds.x, data_hull, h0, 4.0, e); }, 3);
  row("successive projections",
      [&](Exec e) { successive_projections_init(ds.x, 4, e); }, 3);
  return 0;
}
