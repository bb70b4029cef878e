// Ball volumes.  Lorentzian: vol B_A^+(t) by quadrature over a foot grid on
// the patch (normal-exponential Jacobian integrated radially, clipped at the
// cut time) and by Monte Carlo box sampling against the time-separation
// classifier.  Riemannian: vol B_p(r) by polar quadrature over a direction
// set (point-exponential Jacobian clipped at the first conjugate zero) and by
// Monte Carlo over the polar parametrization.
#pragma once

#include <cstdint>
#include <vector>

#include "geomlab/metric.hpp"
#include "geomlab/parallel.hpp"
#include "geomlab/timesep.hpp"
#include "geomlab/transport.hpp"

namespace geomlab {

struct BallVolumeSeries {
  std::vector<double> t;       // times (resp. radii), increasing
  std::vector<double> volume;  // measured volumes
  double area = 0.0;           // quadrature measure of A (lorentzian case)
  std::int64_t columns = 0;    // feet resp. directions that contributed
  std::int64_t skipped = 0;    // columns without a valid Jacobian
  double min_clip = 0.0;       // smallest radial clip over the columns
  bool any_truncated = false;  // some column left the chart early
};

struct LorentzVolumeConfig {
  int a_grid_per_axis = 16;  // foot cells per patch axis
  double jac_h = 5e-3;       // transport base step
  bool clip_at_cut = true;
  CutConfig cut;
  Exec exec = Exec::serial;
};

// volumes of B_A^+(t) for each requested t; the foot grid is the cell-center
// lattice of the atlas patch and the same weights produce `area`
BallVolumeSeries lorentzian_ball_volume(const NormalExpAtlas& atlas, const std::vector<double>& ts,
                                        const LorentzVolumeConfig& cfg);

struct McEstimate {
  double value = 0.0;
  double sigma = 0.0;  // standard error
  std::int64_t samples = 0;
  std::int64_t inside = 0;    // interior hits (boundary hits count half)
  std::int64_t boundary = 0;
  std::array<Interval, kMaxDim> box{};  // sampling box used
  double box_volume = 0.0;
};

McEstimate lorentzian_ball_volume_mc(const NormalExpAtlas& atlas, double t, std::int64_t samples,
                                     std::uint64_t seed, double sphere_tol, Exec exec);

struct RiemannBallConfig {
  int directions = 256;
  double jac_h = 5e-3;
  Exec exec = Exec::serial;
};

BallVolumeSeries riemannian_ball_volume(const MetricField& mf, const Vec& p,
                                        const std::vector<double>& rs,
                                        const RiemannBallConfig& cfg);

// Monte Carlo over (r, omega): uniform radius in [0, r], direction uniform on
// the frame sphere, integrand r * |S^(n-1)| * J clipped as in the quadrature
McEstimate riemannian_ball_volume_mc(const MetricField& mf, const Vec& p, double r,
                                     std::int64_t samples, std::uint64_t seed,
                                     const RiemannBallConfig& cfg);

struct RatioReport {
  std::vector<double> ratio;
  bool nonincreasing = true;
  double worst_step = 0.0;  // most positive relative increase between neighbors
  int worst_index = -1;     // left index of the worst step
};

// ratio[i] = num[i]/den[i]; nonincreasing up to the relative slack tol_mono
RatioReport ratio_monotone(const std::vector<double>& num, const std::vector<double>& den,
                           double tol_mono);

}  // namespace geomlab
