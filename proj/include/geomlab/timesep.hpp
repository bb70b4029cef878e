// Time separation from a spacelike hypersurface, realized through the family
// of future-directed normal geodesics.  An atlas integrates the family once
// from a foot grid over a padded copy of the patch; queries then solve
// gamma(u, t) = p with a damped Newton iteration on the quadratically
// interpolated family and return the longest solution.  Every solution is a
// causal curve from Sigma to p, so the result is always a lower bound for the
// time separation and is exact whenever the maximizer is an orthogonal
// geodesic with foot inside the padded patch.
#pragma once

#include <cstdint>
#include <vector>

#include "geomlab/geodesic.hpp"
#include "geomlab/hypersurface.hpp"
#include "geomlab/metric.hpp"
#include "geomlab/parallel.hpp"

namespace geomlab {

struct AtlasConfig {
  int feet_per_axis = 24;   // foot grid nodes per patch axis (>= 3)
  double foot_pad = 0.4;    // patch padding per axis, absolute
  double geo_h = 0.01;      // geodesic base step
  double t_max = 1.5;       // proper-time horizon of the family
  double chart_pad = 0.0;   // chart overshoot allowed during integration
  Exec exec = Exec::serial;
};

struct AtlasFoot {
  Vec u;               // patch parameters
  GeodesicPath path;   // future normal geodesic from embed(u)
  double horizon = 0;  // min(t_max, chart exit time)
  Vec box_lo, box_hi;  // bounds of the stored nodes, chart coordinates
  bool valid = false;
};

struct TimeSepWitness {
  Vec u;        // foot parameters of the solution
  double t;     // its proper time, = the candidate separation
  bool in_A;    // foot inside the unpadded patch box
  bool on_edge; // foot near the padded boundary or t near the family horizon
};

struct TimeSepResult {
  double tau = 0.0;
  bool covered = false;           // a witness converged, or the exact past-side zero
  bool lower_bound_only = false;  // best witness sits on the search boundary
  bool foot_in_A = false;
  int distinct_witnesses = 0;     // separated feet within witness_tol of tau
  double second_tau = 0.0;        // best t among witnesses away from the argmax
  std::vector<TimeSepWitness> witnesses;  // deduped, t descending
};

struct CutRecord {
  double estimate = 0.0;       // cut time, or the horizon when none was found
  bool exceeds_horizon = false;
  double horizon = 0.0;        // what bounded the search along this geodesic
  bool truncated = false;      // geodesic left the chart before t_max
  double bracket_lo = 0.0, bracket_hi = 0.0;
  Vec witness_u;               // competitor foot at the first failure
  double witness_tau = 0.0;
};

struct CutConfig {
  double tol_cut = 1e-3;  // slack in the predicate tau(gamma(t)) > t + tol_cut
  double bracket = 1e-2;  // coarse scan step
};

enum class BallClass { outside, interior, boundary };

class NormalExpAtlas {
 public:
  NormalExpAtlas(const MetricField& mf, const Hypersurface& sig, const AtlasConfig& cfg);

  const MetricField& metric() const { return mf_; }
  const Hypersurface& surface() const { return sig_; }
  const AtlasConfig& config() const { return cfg_; }
  std::int64_t foot_count() const { return static_cast<std::int64_t>(feet_.size()); }
  std::int64_t dropped_feet() const { return dropped_; }
  const AtlasFoot& foot(std::int64_t idx) const { return feet_[static_cast<std::size_t>(idx)]; }

  // fresh (non-interpolated) normal geodesic from patch point u
  GeodesicPath normal_geodesic(const Vec& u) const;

  TimeSepResult time_separation(const Vec& p) const;

  // first failure of maximization along the normal geodesic from u, by coarse
  // scan plus bisection of tau(gamma(t)) > t + tol_cut
  CutRecord cut_time(const Vec& u, const CutConfig& ccfg = {}) const;

  // ball/sphere classification against B_A^+(t): interior iff 0 < tau < t with
  // foot in A, boundary iff |tau - t| <= tol with foot in A
  BallClass ball_membership(const Vec& p, double t, double tol, TimeSepResult* out = nullptr) const;

 private:
  MetricField mf_;
  Hypersurface sig_;
  AtlasConfig cfg_;
  int m_ = 0;                            // patch dimension
  std::array<double, kMaxDim> elo_{};    // padded grid origin per axis
  std::array<double, kMaxDim> du_{};     // grid spacing per axis
  std::array<std::int64_t, kMaxDim> stride_{};
  std::vector<AtlasFoot> feet_;
  std::int64_t dropped_ = 0;
  double resid_tol_ = 0.0;
  double witness_tol_ = 1e-3;

  struct Stencil {
    std::array<int, kMaxDim> j;      // center grid index per axis
    std::array<double, kMaxDim> xi;  // offset from the center in du units
    double horizon;                  // min foot horizon over the 3^m block
    bool valid;
  };
  Stencil stencil_at(const Vec& u) const;
  // interpolated family point and its derivatives d(gamma)/du_a, d(gamma)/dt
  Vec family_point(const Stencil& st, const Vec& u, double t, Vec* du_cols, Vec* dt_col) const;
  bool newton_solve(const Vec& p, Vec& u, double& t) const;
  double node_distance2(const Vec& x, const Vec& p) const;
};

}  // namespace geomlab
