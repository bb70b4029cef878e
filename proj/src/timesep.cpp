#include "geomlab/timesep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace geomlab {

namespace {

// quadratic Lagrange weights on the 3-node stencil {-1, 0, 1}, offset xi from
// the center, plus their xi-derivatives
void quad_weights(double xi, double* L, double* dL) {
  L[0] = 0.5 * xi * (xi - 1.0);
  L[1] = (1.0 - xi) * (1.0 + xi);
  L[2] = 0.5 * xi * (xi + 1.0);
  dL[0] = xi - 0.5;
  dL[1] = -2.0 * xi;
  dL[2] = xi + 0.5;
}

}  // namespace

NormalExpAtlas::NormalExpAtlas(const MetricField& mf, const Hypersurface& sig,
                               const AtlasConfig& cfg)
    : mf_(mf), sig_(sig), cfg_(cfg) {
  m_ = sig_.patch.n;
  if (cfg_.feet_per_axis < 3) throw std::runtime_error("atlas needs at least 3 feet per axis");
  const int M = cfg_.feet_per_axis;
  std::int64_t total = 1;
  for (int a = 0; a < m_; ++a) {
    const Interval& box = sig_.patch.box[static_cast<std::size_t>(a)];
    elo_[static_cast<std::size_t>(a)] = box.lo - cfg_.foot_pad;
    du_[static_cast<std::size_t>(a)] =
        (box.extent() + 2.0 * cfg_.foot_pad) / static_cast<double>(M - 1);
    total *= M;
  }
  for (int a = m_ - 1; a >= 0; --a)
    stride_[static_cast<std::size_t>(a)] = (a == m_ - 1) ? 1 : stride_[static_cast<std::size_t>(a + 1)] * M;

  double ext = 0.0;
  for (int i = 0; i < mf_.chart.n; ++i)
    ext = std::max(ext, mf_.chart.box[static_cast<std::size_t>(i)].extent());
  resid_tol_ = 1e-9 * std::max(1.0, ext);

  feet_.resize(static_cast<std::size_t>(total));
  par_for(cfg_.exec, total, [&](std::int64_t idx) {
    AtlasFoot& ft = feet_[static_cast<std::size_t>(idx)];
    ft.u = Vec::zero(m_);
    std::int64_t rem = idx;
    for (int a = 0; a < m_; ++a) {
      const std::int64_t ia = rem / stride_[static_cast<std::size_t>(a)];
      rem %= stride_[static_cast<std::size_t>(a)];
      ft.u[a] = elo_[static_cast<std::size_t>(a)] +
                static_cast<double>(ia) * du_[static_cast<std::size_t>(a)];
    }
    const Vec x0 = sig_.embed_point(ft.u);
    if (!mf_.chart.contains(x0, cfg_.chart_pad)) return;
    const NormalData nd = unit_normal(mf_, sig_, x0);
    if (!nd.valid) return;
    GeoConfig gc;
    gc.h = cfg_.geo_h;
    gc.t_end = cfg_.t_max;
    gc.chart_pad = cfg_.chart_pad;
    ft.path = integrate_geodesic(mf_, x0, nd.n, gc);
    if (ft.path.stop == GeoStop::step_failure || ft.path.nodes.size() < 2) return;
    ft.horizon = ft.path.t_end();
    const int n = mf_.chart.n;
    ft.box_lo = Vec::zero(n);
    ft.box_hi = Vec::zero(n);
    for (int i = 0; i < n; ++i) {
      ft.box_lo[i] = std::numeric_limits<double>::infinity();
      ft.box_hi[i] = -std::numeric_limits<double>::infinity();
    }
    for (const GeoNode& nd2 : ft.path.nodes)
      for (int i = 0; i < n; ++i) {
        ft.box_lo[i] = std::min(ft.box_lo[i], nd2.x[i]);
        ft.box_hi[i] = std::max(ft.box_hi[i], nd2.x[i]);
      }
    ft.valid = true;
  });
  for (const AtlasFoot& ft : feet_)
    if (!ft.valid) ++dropped_;
}

GeodesicPath NormalExpAtlas::normal_geodesic(const Vec& u) const {
  const Vec x0 = sig_.embed_point(u);
  const NormalData nd = unit_normal(mf_, sig_, x0);
  if (!nd.valid) throw std::runtime_error("normal_geodesic: no valid unit normal at the foot");
  GeoConfig gc;
  gc.h = cfg_.geo_h;
  gc.t_end = cfg_.t_max;
  gc.chart_pad = cfg_.chart_pad;
  return integrate_geodesic(mf_, x0, nd.n, gc);
}

NormalExpAtlas::Stencil NormalExpAtlas::stencil_at(const Vec& u) const {
  Stencil st;
  st.valid = true;
  st.horizon = std::numeric_limits<double>::infinity();
  const int M = cfg_.feet_per_axis;
  for (int a = 0; a < m_; ++a) {
    const double s = (u[a] - elo_[static_cast<std::size_t>(a)]) / du_[static_cast<std::size_t>(a)];
    int j = static_cast<int>(std::lround(s));
    j = std::max(1, std::min(M - 2, j));
    st.j[static_cast<std::size_t>(a)] = j;
    st.xi[static_cast<std::size_t>(a)] = s - static_cast<double>(j);
  }
  int combos = 1;
  for (int a = 0; a < m_; ++a) combos *= 3;
  for (int c = 0; c < combos; ++c) {
    std::int64_t idx = 0;
    int rem = c;
    for (int a = 0; a < m_; ++a) {
      const int off = rem % 3 - 1;
      rem /= 3;
      idx += (st.j[static_cast<std::size_t>(a)] + off) * stride_[static_cast<std::size_t>(a)];
    }
    const AtlasFoot& ft = feet_[static_cast<std::size_t>(idx)];
    if (!ft.valid) {
      st.valid = false;
      return st;
    }
    st.horizon = std::min(st.horizon, ft.horizon);
  }
  return st;
}

Vec NormalExpAtlas::family_point(const Stencil& st, const Vec& u, double t, Vec* du_cols,
                                 Vec* dt_col) const {
  const int n = mf_.chart.n;
  std::array<std::array<double, 3>, kMaxDim> L{}, dL{};
  for (int a = 0; a < m_; ++a) {
    const double s = (u[a] - elo_[static_cast<std::size_t>(a)]) / du_[static_cast<std::size_t>(a)];
    const double xi = s - static_cast<double>(st.j[static_cast<std::size_t>(a)]);
    quad_weights(xi, L[static_cast<std::size_t>(a)].data(), dL[static_cast<std::size_t>(a)].data());
  }
  Vec gx = Vec::zero(n);
  if (dt_col) *dt_col = Vec::zero(n);
  for (int b = 0; b < m_; ++b)
    if (du_cols) du_cols[b] = Vec::zero(n);

  int combos = 1;
  for (int a = 0; a < m_; ++a) combos *= 3;
  for (int c = 0; c < combos; ++c) {
    std::array<int, kMaxDim> w{};
    std::int64_t idx = 0;
    int rem = c;
    for (int a = 0; a < m_; ++a) {
      w[static_cast<std::size_t>(a)] = rem % 3;
      rem /= 3;
      idx += (st.j[static_cast<std::size_t>(a)] + w[static_cast<std::size_t>(a)] - 1) *
             stride_[static_cast<std::size_t>(a)];
    }
    const AtlasFoot& ft = feet_[static_cast<std::size_t>(idx)];
    double wgt = 1.0;
    for (int a = 0; a < m_; ++a) wgt *= L[static_cast<std::size_t>(a)][static_cast<std::size_t>(w[static_cast<std::size_t>(a)])];
    const Vec pos = ft.path.position(t);
    for (int i = 0; i < n; ++i) gx[i] += wgt * pos[i];
    if (dt_col) {
      const Vec vel = ft.path.velocity(t);
      for (int i = 0; i < n; ++i) (*dt_col)[i] += wgt * vel[i];
    }
    if (du_cols)
      for (int b = 0; b < m_; ++b) {
        double pb = dL[static_cast<std::size_t>(b)][static_cast<std::size_t>(w[static_cast<std::size_t>(b)])] /
                    du_[static_cast<std::size_t>(b)];
        for (int a = 0; a < m_; ++a)
          if (a != b)
            pb *= L[static_cast<std::size_t>(a)][static_cast<std::size_t>(w[static_cast<std::size_t>(a)])];
        for (int i = 0; i < n; ++i) du_cols[b][i] += pb * pos[i];
      }
  }
  return gx;
}

bool NormalExpAtlas::newton_solve(const Vec& p, Vec& u, double& t) const {
  const int n = mf_.chart.n;
  const int M = cfg_.feet_per_axis;
  for (int it = 0; it < 14; ++it) {
    const Stencil st = stencil_at(u);
    if (!st.valid) return false;
    if (t < 0.0) t = 0.0;
    if (t > st.horizon) t = st.horizon;

    Vec du_cols[kMaxDim];
    Vec dt_col;
    const Vec gx = family_point(st, u, t, du_cols, &dt_col);
    Vec r = Vec::zero(n);
    double rn = 0.0;
    for (int i = 0; i < n; ++i) {
      r[i] = mf_.chart.coord_delta(i, gx[i], p[i]);
      rn = std::max(rn, std::abs(r[i]));
    }
    if (rn <= resid_tol_) return true;

    Mat J = Mat::zero(n);
    for (int i = 0; i < n; ++i) {
      for (int a = 0; a < m_; ++a) J(i, a) = du_cols[a][i];
      J(i, m_) = dt_col[i];
    }
    Vec step;
    try {
      step = matvec(inverse(J), r);
    } catch (const std::exception&) {
      return false;
    }
    for (int a = 0; a < m_; ++a) {
      const double cap = du_[static_cast<std::size_t>(a)];
      step[a] = std::max(-cap, std::min(cap, step[a]));
      double ua = u[a] + step[a];
      const double lo = elo_[static_cast<std::size_t>(a)];
      const double hi = lo + static_cast<double>(M - 1) * du_[static_cast<std::size_t>(a)];
      u[a] = std::max(lo, std::min(hi, ua));
    }
    const double tcap = std::max(0.1 * cfg_.t_max, 4.0 * cfg_.geo_h);
    t += std::max(-tcap, std::min(tcap, step[m_]));
  }
  return false;
}

double NormalExpAtlas::node_distance2(const Vec& x, const Vec& p) const {
  double d2 = 0.0;
  for (int i = 0; i < mf_.chart.n; ++i) {
    const double d = mf_.chart.coord_delta(i, x[i], p[i]);
    d2 += d * d;
  }
  return d2;
}

TimeSepResult NormalExpAtlas::time_separation(const Vec& p) const {
  TimeSepResult res;
  if (sig_.future_sign * sig_.level(p) <= 0.0) {
    res.covered = true;  // on Sigma or its past side: exactly zero
    return res;
  }

  // seed candidates: nearest stored node of the closest feet, bounding boxes
  // first to keep the scan cheap
  struct Seed {
    double d2;
    std::int64_t foot;
    double t;
  };
  std::vector<Seed> cand;
  cand.reserve(16);
  const int n = mf_.chart.n;
  for (std::int64_t fi = 0; fi < foot_count(); ++fi) {
    const AtlasFoot& ft = feet_[static_cast<std::size_t>(fi)];
    if (!ft.valid) continue;
    double box_d2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double per = mf_.chart.period[static_cast<std::size_t>(i)];
      double best = std::numeric_limits<double>::infinity();
      for (int s = -1; s <= 1; ++s) {
        if (s != 0 && per <= 0.0) continue;
        const double xi = p[i] + static_cast<double>(s) * per;
        double d = 0.0;
        if (xi < ft.box_lo[i]) d = ft.box_lo[i] - xi;
        else if (xi > ft.box_hi[i]) d = xi - ft.box_hi[i];
        best = std::min(best, d);
      }
      box_d2 += best * best;
    }
    if (cand.size() >= 12 && box_d2 > cand.back().d2) continue;

    // stride over the stored nodes for the closest parameter
    const std::size_t count = ft.path.nodes.size();
    const std::size_t stride = std::max<std::size_t>(1, count / 24);
    double best_d2 = std::numeric_limits<double>::infinity();
    double best_t = 0.0;
    for (std::size_t k = 0; k < count; k += stride) {
      const GeoNode& nd = ft.path.nodes[k];
      const double d2 = node_distance2(nd.x, p);
      if (d2 < best_d2) {
        best_d2 = d2;
        best_t = nd.t;
      }
    }
    Seed s{best_d2, fi, best_t};
    cand.insert(std::upper_bound(cand.begin(), cand.end(), s,
                                 [](const Seed& a, const Seed& b) { return a.d2 < b.d2; }),
                s);
    if (cand.size() > 12) cand.pop_back();
  }

  // up to 6 Newton starts with separated feet
  double dumax = 0.0;
  for (int a = 0; a < m_; ++a) dumax = std::max(dumax, du_[static_cast<std::size_t>(a)]);
  std::vector<Vec> starts;
  for (const Seed& s : cand) {
    const Vec& su = feet_[static_cast<std::size_t>(s.foot)].u;
    bool too_close = false;
    for (const Vec& prev : starts) {
      double sep = 0.0;
      for (int a = 0; a < m_; ++a)
        sep = std::max(sep, std::abs(sig_.patch.coord_delta(a, prev[a], su[a])));
      if (sep < 1.9 * dumax) {
        too_close = true;
        break;
      }
    }
    if (too_close) continue;
    starts.push_back(su);
    Vec u = su;
    double t = s.t;
    if (!newton_solve(p, u, t)) continue;
    if (t <= 0.0) continue;

    // dedupe against recorded witnesses
    bool dup = false;
    for (TimeSepWitness& w : res.witnesses) {
      double sep = 0.0;
      for (int a = 0; a < m_; ++a)
        sep = std::max(sep, std::abs(sig_.patch.coord_delta(a, w.u[a], u[a])));
      if (sep < 0.5 * dumax && std::abs(w.t - t) < witness_tol_) {
        w.t = std::max(w.t, t);
        dup = true;
        break;
      }
    }
    if (dup) continue;

    TimeSepWitness w;
    w.u = u;
    w.t = t;
    w.in_A = sig_.patch.contains(u);
    w.on_edge = false;
    const int M = cfg_.feet_per_axis;
    for (int a = 0; a < m_; ++a) {
      if (sig_.patch.period[static_cast<std::size_t>(a)] > 0.0) continue;
      const double lo = elo_[static_cast<std::size_t>(a)];
      const double hi = lo + static_cast<double>(M - 1) * du_[static_cast<std::size_t>(a)];
      if (u[a] < lo + 1.2 * du_[static_cast<std::size_t>(a)] ||
          u[a] > hi - 1.2 * du_[static_cast<std::size_t>(a)])
        w.on_edge = true;
    }
    const Stencil st = stencil_at(u);
    if (st.valid && t > st.horizon - 2.0 * cfg_.geo_h) w.on_edge = true;
    res.witnesses.push_back(w);
    if (static_cast<int>(res.witnesses.size()) >= 6) break;
  }

  if (res.witnesses.empty()) return res;  // covered stays false: no solution found

  std::sort(res.witnesses.begin(), res.witnesses.end(),
            [](const TimeSepWitness& a, const TimeSepWitness& b) { return a.t > b.t; });
  const TimeSepWitness& top = res.witnesses.front();
  res.tau = top.t;
  res.covered = true;
  res.foot_in_A = top.in_A;
  res.lower_bound_only = top.on_edge;
  res.distinct_witnesses = 1;
  for (std::size_t k = 1; k < res.witnesses.size(); ++k) {
    const TimeSepWitness& w = res.witnesses[k];
    double sep = 0.0;
    for (int a = 0; a < m_; ++a)
      sep = std::max(sep, std::abs(sig_.patch.coord_delta(a, top.u[a], w.u[a])));
    if (sep > 2.0 * dumax) {
      res.second_tau = std::max(res.second_tau, w.t);
      if (w.t >= res.tau - witness_tol_) ++res.distinct_witnesses;
    }
  }
  return res;
}

CutRecord NormalExpAtlas::cut_time(const Vec& u, const CutConfig& ccfg) const {
  const GeodesicPath path = normal_geodesic(u);
  CutRecord rec;
  rec.horizon = path.t_end();
  rec.truncated = (path.stop == GeoStop::left_chart);

  auto fires = [&](double t, TimeSepResult* out) {
    const Vec q = path.position(t);
    const TimeSepResult res = time_separation(q);
    if (out) *out = res;
    return res.covered && res.tau > t + ccfg.tol_cut;
  };

  double prev = 0.0;
  const int steps = static_cast<int>(std::ceil(rec.horizon / ccfg.bracket));
  for (int k = 1; k <= steps; ++k) {
    const double t = std::min(rec.horizon, static_cast<double>(k) * ccfg.bracket);
    TimeSepResult res;
    if (fires(t, &res)) {
      double lo = prev, hi = t;
      TimeSepResult at_hi = res;
      while (hi - lo > 0.1 * ccfg.tol_cut) {
        const double mid = 0.5 * (lo + hi);
        TimeSepResult rm;
        if (fires(mid, &rm)) {
          hi = mid;
          at_hi = rm;
        } else {
          lo = mid;
        }
      }
      rec.estimate = 0.5 * (lo + hi);
      rec.bracket_lo = lo;
      rec.bracket_hi = hi;
      if (!at_hi.witnesses.empty()) {
        rec.witness_u = at_hi.witnesses.front().u;
        rec.witness_tau = at_hi.witnesses.front().t;
      }
      return rec;
    }
    prev = t;
  }
  rec.exceeds_horizon = true;
  rec.estimate = rec.horizon;
  rec.bracket_lo = rec.horizon;
  rec.bracket_hi = rec.horizon;
  return rec;
}

BallClass NormalExpAtlas::ball_membership(const Vec& p, double t, double tol,
                                          TimeSepResult* out) const {
  const TimeSepResult res = time_separation(p);
  if (out) *out = res;
  if (!res.covered || res.witnesses.empty()) return BallClass::outside;
  if (res.foot_in_A && std::abs(res.tau - t) <= tol) return BallClass::boundary;
  if (res.foot_in_A && res.tau > 0.0 && res.tau < t) return BallClass::interior;
  return BallClass::outside;
}

}  // namespace geomlab
