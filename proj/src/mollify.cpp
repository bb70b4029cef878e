#include "geomlab/mollify.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "geomlab/directions.hpp"
#include "geomlab/rng.hpp"

namespace geomlab {

namespace {

// bump profile exp(-1/(1-u^2)) on (-1,1)
double bump(double u) {
  const double s = 1.0 - u * u;
  if (s < 1e-4) return 0.0;
  return std::exp(-1.0 / s);
}

}  // namespace

MollifiedField::MollifiedField(std::shared_ptr<const ComponentField> base,
                               const ChartDomain& chart, double width, int ppr,
                               double collapse_tol)
    : base_(std::move(base)), n_(chart.n), w_(width) {
  if (width <= 0.0 || ppr < 2) throw std::invalid_argument("MollifiedField: bad width or ppr");

  // midpoint offsets, symmetric and strictly inside the kernel support
  double total = 0.0;
  for (int k = -ppr; k < ppr; ++k) {
    const double u = (k + 0.5) / ppr;
    node_u_.push_back(u);
    node_w_.push_back(bump(u));
    total += node_w_.back();
  }
  for (double& wk : node_w_) wk /= total;

  // an axis stays untouched when no component varies along it
  const double fr[4] = {0.23, 0.48, 0.71, 0.92};
  for (int a = 0; a < n_; ++a) {
    bool varies = false;
    for (int k = 0; k < 4 && !varies; ++k) {
      Vec p;
      p.n = n_;
      for (int j = 0; j < n_; ++j) {
        const Interval& iv = chart.box[static_cast<std::size_t>(j)];
        p[j] = iv.lo + fr[(j + k) % 4] * iv.extent();
      }
      const Mat ref = base_->value(p);
      for (int s = 0; s < 3 && !varies; ++s) {
        Vec q = p;
        const Interval& iv = chart.box[static_cast<std::size_t>(a)];
        q[a] = iv.lo + (0.1 + 0.4 * s) * iv.extent();
        const Mat other = base_->value(q);
        for (int i = 0; i < n_ && !varies; ++i)
          for (int j = 0; j < n_; ++j)
            if (std::fabs(other(i, j) - ref(i, j)) >
                collapse_tol * (1.0 + std::fabs(ref(i, j)))) {
              varies = true;
              break;
            }
      }
    }
    active_[static_cast<std::size_t>(a)] = varies;
  }
}

// Averages base jets of the requested order over the offset product on the
// active axes; the results land in out (value in g, first order in dg,
// second order in d2g).
void MollifiedField::accumulate(const Vec& x, int order, Jet2& out) const {
  int axes[kMaxDim];
  int k = 0;
  for (int a = 0; a < n_; ++a)
    if (active_[static_cast<std::size_t>(a)]) axes[k++] = a;
  const int q = static_cast<int>(node_u_.size());

  out.g = Mat::zero(n_);
  if (order >= 1)
    for (int a = 0; a < n_; ++a) out.dg[static_cast<std::size_t>(a)] = Mat::zero(n_);
  if (order >= 2)
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        out.d2g[static_cast<std::size_t>(a * kMaxDim + b)] = Mat::zero(n_);

  auto add = [this, order, &out](const Jet2& j, double weight) {
    for (int i = 0; i < n_; ++i)
      for (int jj = 0; jj < n_; ++jj) out.g(i, jj) += weight * j.g(i, jj);
    if (order >= 1)
      for (int a = 0; a < n_; ++a) {
        Mat& da = out.dg[static_cast<std::size_t>(a)];
        const Mat& sa = j.dg[static_cast<std::size_t>(a)];
        for (int i = 0; i < n_; ++i)
          for (int jj = 0; jj < n_; ++jj) da(i, jj) += weight * sa(i, jj);
      }
    if (order >= 2)
      for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) {
          Mat& dab = out.d2g[static_cast<std::size_t>(a * kMaxDim + b)];
          const Mat& sab = j.d2g[static_cast<std::size_t>(a * kMaxDim + b)];
          for (int i = 0; i < n_; ++i)
            for (int jj = 0; jj < n_; ++jj) dab(i, jj) += weight * sab(i, jj);
        }
  };

  // enumerate the offset product over the active axes
  int idx[kMaxDim] = {0};
  Jet2 node;
  bool done = false;
  while (!done) {
    Vec pos = x;
    double weight = 1.0;
    for (int c = 0; c < k; ++c) {
      pos[axes[c]] += w_ * node_u_[static_cast<std::size_t>(idx[c])];
      weight *= node_w_[static_cast<std::size_t>(idx[c])];
    }
    if (order >= 2) {
      base_->jet2(pos, node);
    } else if (order == 1) {
      Jet1 j1;
      base_->jet1(pos, j1);
      node.g = j1.g;
      node.dg = j1.dg;
    } else {
      node.g = base_->value(pos);
    }
    add(node, weight);

    // advance the product index
    done = true;
    for (int c = k - 1; c >= 0; --c) {
      if (++idx[c] < q) {
        done = false;
        break;
      }
      idx[c] = 0;
    }
    if (k == 0) break;  // no active axis: single pass over the point itself
  }
}

Mat MollifiedField::value(const Vec& x) const {
  Jet2 jet;
  accumulate(x, 0, jet);
  return jet.g;
}

void MollifiedField::jet1(const Vec& x, Jet1& out) const {
  Jet2 jet;
  accumulate(x, 1, jet);
  out.g = jet.g;
  out.dg = jet.dg;
}

void MollifiedField::jet2(const Vec& x, Jet2& out) const { accumulate(x, 2, out); }

MetricField mollify_metric(const MetricField& base, double width, int ppr) {
  MetricField out = base;
  out.comp = std::make_shared<MollifiedField>(base.comp, base.chart, width, ppr);
  out.smoothness = Smoothness::smooth;
  out.loci.clear();
  out.deriv_mode = DerivMode::closed_form;
  out.name = base.name + "_mollified";
  return out;
}

MetricDistance metric_distance_dh(const MetricField& a, const MetricField& b, int per_axis,
                                  Exec exec) {
  const int n = a.chart.n;
  std::int64_t total = 1;
  for (int i = 0; i < n; ++i) total *= per_axis;
  std::vector<double> norms(static_cast<std::size_t>(total));
  std::vector<Vec> pts(static_cast<std::size_t>(total));
  par_for(exec, total, [&](std::int64_t idx) {
    Vec x;
    x.n = n;
    std::int64_t rem = idx;
    for (int i = 0; i < n; ++i) {
      const int cell = static_cast<int>(rem % per_axis);
      rem /= per_axis;
      const Interval& iv = a.chart.box[static_cast<std::size_t>(i)];
      x[i] = iv.lo + (cell + 0.5) * iv.extent() / per_axis;
    }
    pts[static_cast<std::size_t>(idx)] = x;
    const Mat diff = a.g(x) + (-1.0) * b.g(x);
    norms[static_cast<std::size_t>(idx)] = spectral_norm_sym(diff);
  });
  MetricDistance d;
  for (std::int64_t i = 0; i < total; ++i)
    if (norms[static_cast<std::size_t>(i)] > d.sup) {
      d.sup = norms[static_cast<std::size_t>(i)];
      d.arg_point = pts[static_cast<std::size_t>(i)];
    }
  if (total > 0 && d.arg_point.n == 0) d.arg_point = pts[0];
  return d;
}

CalibratedMollification calibrate_mollification(const MetricField& base, double target_dh,
                                                double start_width, int ppr, int dh_grid,
                                                int max_halvings, Exec exec) {
  CalibratedMollification out;
  double w = start_width;
  for (int k = 0; k <= max_halvings; ++k) {
    MetricField cand = mollify_metric(base, w, ppr);
    const MetricDistance d = metric_distance_dh(cand, base, dh_grid, exec);
    if (d.sup < target_dh) {
      out.field = cand;
      out.width = w;
      out.dh = d.sup;
      out.halvings = k;
      out.converged = true;
      return out;
    }
    w *= 0.5;
  }
  out.width = w;
  out.converged = false;
  // hand back the last candidate anyway so callers can report it
  out.field = mollify_metric(base, w, ppr);
  out.dh = metric_distance_dh(out.field, base, dh_grid, exec).sup;
  return out;
}

namespace {

class ShiftedField : public ComponentField {
 public:
  ShiftedField(std::shared_ptr<const ComponentField> base, int n, double lambda)
      : base_(std::move(base)), n_(n), lambda_(lambda) {}
  Mat value(const Vec& x) const override {
    Mat g = base_->value(x);
    for (int i = 0; i < n_; ++i) g(i, i) += lambda_;
    return g;
  }
  bool has_closed_form() const override { return base_->has_closed_form(); }
  void jet1(const Vec& x, Jet1& out) const override {
    base_->jet1(x, out);
    for (int i = 0; i < n_; ++i) out.g(i, i) += lambda_;
  }
  void jet2(const Vec& x, Jet2& out) const override {
    base_->jet2(x, out);
    for (int i = 0; i < n_; ++i) out.g(i, i) += lambda_;
  }

 private:
  std::shared_ptr<const ComponentField> base_;
  int n_;
  double lambda_;
};

}  // namespace

MetricField inner_approximation(const MetricField& mollified, double lambda) {
  MetricField out = mollified;
  out.comp = std::make_shared<ShiftedField>(mollified.comp, mollified.chart.n, lambda);
  out.name = mollified.name + "_inner";
  return out;
}

ConeCheckReport cone_nesting_check(const MetricField& original, const MetricField& inner,
                                   std::int64_t target_samples, std::uint64_t seed, Exec exec) {
  const int n = original.chart.n;
  const int dirs_per_point = 200;
  const std::vector<Vec> dirs = unit_directions(n - 1, dirs_per_point);
  const std::int64_t npts =
      (target_samples + static_cast<std::int64_t>(dirs.size()) - 1) /
      static_cast<std::int64_t>(dirs.size());

  std::vector<std::int64_t> viol(static_cast<std::size_t>(npts), 0);
  std::vector<double> worst(static_cast<std::size_t>(npts),
                            -std::numeric_limits<double>::infinity());
  par_for(exec, npts, [&](std::int64_t p) {
    SampleStream st(seed, static_cast<std::uint64_t>(p));
    Vec x;
    x.n = n;
    for (int i = 0; i < n; ++i) {
      const Interval& iv = original.chart.box[static_cast<std::size_t>(i)];
      x[i] = st.uniform(static_cast<unsigned>(i), iv.lo, iv.hi);
    }
    const Mat gi = inner.g(x);
    const Mat go = original.g(x);
    Vec eig;
    Mat q;
    sym_eigen(gi, eig, q);
    int negatives = 0;
    for (int i = 0; i < n; ++i)
      if (eig[i] < 0.0) ++negatives;
    if (negatives != 1) {
      // the inner metric must stay time-orientable; count the whole point
      viol[static_cast<std::size_t>(p)] = static_cast<std::int64_t>(dirs.size());
      worst[static_cast<std::size_t>(p)] = 0.0;
      return;
    }
    Vec frame[kMaxDim];
    for (int i = 0; i < n; ++i) {
      Vec c;
      c.n = n;
      for (int j = 0; j < n; ++j) c[j] = q(j, i);
      frame[i] = (1.0 / std::sqrt(std::fabs(eig[i]))) * c;
    }
    for (std::size_t d = 0; d < dirs.size(); ++d) {
      Vec X = frame[0];
      for (int i = 0; i < n - 1; ++i) X = X + dirs[d][i] * frame[i + 1];
      const double v = bilinear(go, X, X);
      if (v >= 0.0) ++viol[static_cast<std::size_t>(p)];
      if (v > worst[static_cast<std::size_t>(p)]) worst[static_cast<std::size_t>(p)] = v;
    }
  });

  ConeCheckReport rep;
  rep.samples = npts * static_cast<std::int64_t>(dirs.size());
  rep.worst = -std::numeric_limits<double>::infinity();
  for (std::int64_t p = 0; p < npts; ++p) {
    rep.violations += viol[static_cast<std::size_t>(p)];
    rep.worst = std::max(rep.worst, worst[static_cast<std::size_t>(p)]);
  }
  return rep;
}

}  // namespace geomlab
