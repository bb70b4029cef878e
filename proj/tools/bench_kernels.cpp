// times the OpenMP kernels against the serial reference on representative
// workloads; the test suite asserts exact agreement, this reports throughput
#include <chrono>
#include <cstdio>

#include "geomlab/builtins.hpp"
#include "geomlab/curvature.hpp"
#include "geomlab/models.hpp"
#include "geomlab/timesep.hpp"
#include "geomlab/volume.hpp"

using namespace geomlab;

namespace {

template <class F>
double time_ms(F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  body();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* kernel, double serial_ms, double openmp_ms) {
  std::printf("%-26s serial %9.1f ms   openmp %9.1f ms   speedup %.2fx\n", kernel, serial_ms,
              openmp_ms, serial_ms / openmp_ms);
}

}  // namespace

int main() {
  const ComparisonModel m = make_model(1.0, 0.0, 3);
  const MetricField mf = model_metric(m, -0.05, 1.45);
  const Hypersurface sigma = time_slice(mf, 0.0, model_slice_box(m.fiber, 3));

  {
    double ts = 0.0, tp = 0.0;
    for (Exec exec : {Exec::serial, Exec::openmp}) {
      BoundCheckConfig bc;
      bc.kappa = 1.0;
      bc.grid_per_axis = 6;
      bc.directions = 24;
      bc.exec = exec;
      const double ms = time_ms([&] { (void)check_ricci_bound(mf, bc); });
      (exec == Exec::serial ? ts : tp) = ms;
    }
    report("ricci-bound-scan", ts, tp);
  }

  {
    double ts = 0.0, tp = 0.0;
    for (Exec exec : {Exec::serial, Exec::openmp}) {
      AtlasConfig ac;
      ac.t_max = 1.39;
      ac.exec = exec;
      const double ms = time_ms([&] { NormalExpAtlas atlas(mf, sigma, ac); });
      (exec == Exec::serial ? ts : tp) = ms;
    }
    report("atlas-build", ts, tp);
  }

  {
    AtlasConfig ac;
    ac.t_max = 1.39;
    std::vector<double> grid;
    for (int i = 1; i <= 12; ++i) grid.push_back(0.1 * i);
    double ts = 0.0, tp = 0.0;
    for (Exec exec : {Exec::serial, Exec::openmp}) {
      ac.exec = exec;
      const NormalExpAtlas atlas(mf, sigma, ac);
      LorentzVolumeConfig vc;
      vc.exec = exec;
      const double ms = time_ms([&] { (void)lorentzian_ball_volume(atlas, grid, vc); });
      (exec == Exec::serial ? ts : tp) = ms;
    }
    report("lorentz-ball-volume", ts, tp);
  }

  {
    AtlasConfig ac;
    ac.t_max = 1.39;
    double ts = 0.0, tp = 0.0;
    for (Exec exec : {Exec::serial, Exec::openmp}) {
      ac.exec = exec;
      const NormalExpAtlas atlas(mf, sigma, ac);
      const double ms = time_ms(
          [&] { (void)lorentzian_ball_volume_mc(atlas, 1.2, 20000, 20240817, 1e-3, exec); });
      (exec == Exec::serial ? ts : tp) = ms;
    }
    report("lorentz-ball-mc", ts, tp);
  }

  return 0;
}
