#include "geomlab/builtins.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "geomlab/fields.hpp"

namespace geomlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

Vec covector_e0(int n) {
  Vec w = Vec::zero(n);
  w[0] = 1.0;
  return w;
}

void set_box(MetricField& mf, const std::vector<Interval>& box) {
  for (std::size_t i = 0; i < box.size(); ++i) mf.chart.box[i] = box[i];
}

Warp1D sin_warp() {
  Warp1D w;
  w.eval = [](double t, double& f, double& df, double& ddf) {
    f = std::sin(t);
    df = std::cos(t);
    ddf = -std::sin(t);
  };
  return w;
}

GeomDocument minkowski(int n) {
  GeomDocument doc;
  MetricField& mf = doc.metric;
  mf.chart.n = n;
  const char* names[] = {"t", "x", "y", "z"};
  std::vector<Interval> box;
  box.push_back({-0.5, 2.6});
  for (int i = 1; i < n; ++i) box.push_back({-3.0, 3.0});
  for (int i = 0; i < n; ++i) mf.chart.coords.push_back(names[i]);
  set_box(mf, box);
  mf.signature = Signature::lorentzian;
  mf.time_covector = covector_e0(n);
  std::vector<double> diag(static_cast<std::size_t>(n), 1.0);
  diag[0] = -1.0;
  mf.comp = std::make_shared<ConstDiagField>(n, diag);
  mf.name = "minkowski" + std::to_string(n);
  std::vector<Interval> ubox(static_cast<std::size_t>(n - 1), Interval{-1.0, 1.0});
  doc.sigma = time_slice(mf, 0.0, ubox);
  doc.kappa = 0.0;
  doc.beta = 0.0;
  doc.has_model_params = true;
  return doc;
}

// diag(-(1 + x^2 y^2 z^2), 1, 1): timelike Ricci bounds fail on no compact
// set once boosts are allowed, which is what the bound checker demonstrates
GeomDocument remark_fixture() {
  GeomDocument doc;
  MetricField& mf = doc.metric;
  mf.chart.n = 3;
  mf.chart.coords = {"x", "y", "z"};
  set_box(mf, {{0.6, 1.4}, {0.6, 1.4}, {0.6, 1.4}});
  mf.signature = Signature::lorentzian;
  mf.time_covector = covector_e0(3);
  std::vector<ExprPtr> upper;
  const std::vector<std::string> srcs = {"-1 - x^2*y^2*z^2", "0", "0", "1", "0", "1"};
  for (const auto& s : srcs) upper.push_back(parse_expr(s, mf.chart.coords));
  mf.comp = std::make_shared<ExprField>(3, upper);
  mf.name = "remark";
  return doc;
}

GeomDocument round_sphere(int n) {
  GeomDocument doc;
  MetricField& mf = doc.metric;
  mf.chart.n = n;
  if (n == 2) {
    mf.chart.coords = {"theta", "phi"};
    set_box(mf, {{0.003, kPi - 0.003}, {-10.0, 10.0}});
    mf.chart.period[1] = 2.0 * kPi;
  } else {
    mf.chart.coords = {"chi", "theta", "phi"};
    set_box(mf, {{0.25, kPi - 0.25}, {0.25, kPi - 0.25}, {-7.0, 7.0}});
    mf.chart.period[2] = 2.0 * kPi;
  }
  mf.signature = Signature::riemannian;
  mf.comp = std::make_shared<WarpedField>(
      n, 1.0, sin_warp(), n == 2 ? FiberKind::flat : FiberKind::sphere);
  mf.name = "round_sphere" + std::to_string(n);
  doc.kappa = 1.0;
  doc.has_model_params = true;
  return doc;
}

// surface of revolution d(rho)^2 + f(rho)^2 d(phi)^2 with f = sin up to
// rho = 1.2, then a C^1-matched faster cosine arc (curvature jumps up)
GeomDocument revolution_c11() {
  GeomDocument doc;
  MetricField& mf = doc.metric;
  mf.chart.n = 2;
  mf.chart.coords = {"rho", "phi"};
  set_box(mf, {{0.05, 2.5}, {-10.0, 10.0}});
  mf.chart.period[1] = 2.0 * kPi;
  mf.signature = Signature::riemannian;
  mf.smoothness = Smoothness::c11;
  mf.loci.push_back({0, 1.2});
  mf.comp = std::make_shared<WarpedField>(2, 1.0, sine_kink_warp(1.2, 1.3), FiberKind::flat);
  mf.name = "revolution_c11";
  doc.kappa = 1.0;
  doc.has_model_params = true;
  return doc;
}

// Robertson-Walker style -dt^2 + f(t)^2 h_{H^2} with f = cos t up to
// t = 0.5, then a C^1-matched cosine of frequency om2 > 1.  Satisfies the
// timelike bound for kappa = 1 strictly past the kink; Sigma = {t=0} has
// H = 0.  om2 near 1 puts the collapse just short of pi/2.
GeomDocument rw_c11(double om2, double t_margin) {
  GeomDocument doc;
  MetricField& mf = doc.metric;
  mf.chart.n = 3;
  mf.chart.coords = {"t", "chi", "phi"};
  double zero_time = 0.0;
  Warp1D warp = cosine_kink_warp(0.5, om2, zero_time);
  set_box(mf, {{-0.05, zero_time - t_margin}, {0.1, 1.6}, {-1.2, 1.2}});
  mf.signature = Signature::lorentzian;
  mf.smoothness = Smoothness::c11;
  mf.loci.push_back({0, 0.5});
  mf.time_covector = covector_e0(3);
  mf.comp = std::make_shared<WarpedField>(3, -1.0, warp, FiberKind::hyperbolic);
  doc.sigma = time_slice(mf, 0.0, {{0.3, 1.1}, {-0.6, 0.6}});
  doc.kappa = 1.0;
  doc.beta = 0.0;
  doc.has_model_params = true;
  return doc;
}

std::string fiber_name(FiberKind f) {
  switch (f) {
    case FiberKind::sphere: return "sphere";
    case FiberKind::flat: return "flat";
    case FiberKind::hyperbolic: return "hyperbolic";
  }
  return "?";
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  std::size_t b = s.find_last_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

InterfaceLocus parse_locus(const std::string& src, const std::vector<std::string>& coords) {
  std::size_t eq = src.find('=');
  if (eq == std::string::npos)
    throw std::runtime_error("locus must have the form \"coord = value\": " + src);
  const std::string lhs = trim(src.substr(0, eq));
  const std::string rhs = trim(src.substr(eq + 1));
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (coords[i] == lhs) return {static_cast<int>(i), std::stod(rhs)};
  throw std::runtime_error("locus names unknown coordinate: " + lhs);
}

std::vector<Interval> parse_box(const nlohmann::json& j, std::size_t count) {
  if (!j.is_array() || j.size() != count)
    throw std::runtime_error("box must list one [lo, hi] pair per coordinate");
  std::vector<Interval> box;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw std::runtime_error("box entry must be [lo, hi]");
    box.push_back({e[0].get<double>(), e[1].get<double>()});
  }
  return box;
}

Hypersurface parse_sigma(const nlohmann::json& s, const MetricField& mf) {
  Hypersurface sig;
  sig.F = parse_expr(s.at("level").get<std::string>(), mf.chart.coords);
  for (int i = 0; i < mf.chart.n; ++i) sig.dF.push_back(diff_expr(sig.F, i));
  sig.future_sign = s.value("future_sign", 1.0);

  const auto& p = s.at("patch");
  std::vector<std::string> pcoords = p.at("coords").get<std::vector<std::string>>();
  const int m = static_cast<int>(pcoords.size());
  if (m != mf.chart.n - 1)
    throw std::runtime_error("patch must have one fewer parameter than the chart");
  sig.patch.n = m;
  sig.patch.coords = pcoords;
  const auto pbox = parse_box(p.at("box"), static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) sig.patch.box[static_cast<std::size_t>(i)] = pbox[static_cast<std::size_t>(i)];
  if (p.contains("period"))
    for (int i = 0; i < m; ++i)
      sig.patch.period[static_cast<std::size_t>(i)] = p["period"][static_cast<std::size_t>(i)].get<double>();

  const auto& emb = p.at("embed");
  if (!emb.is_array() || static_cast<int>(emb.size()) != mf.chart.n)
    throw std::runtime_error("embed must give every chart coordinate");
  for (const auto& e : emb) {
    ExprPtr f = parse_expr(e.get<std::string>(), pcoords);
    std::vector<ExprPtr> row;
    for (int a = 0; a < m; ++a) row.push_back(diff_expr(f, a));
    sig.embed.push_back(f);
    sig.dembed.push_back(row);
  }
  return sig;
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"minkowski2",  "minkowski3",    "minkowski4",
          "remark",      "round_sphere2", "round_sphere3",
          "revolution_c11", "rw_c11_strict", "rw_c11_near"};
}

GeomDocument builtin_fixture(const std::string& name) {
  if (name == "minkowski2") return minkowski(2);
  if (name == "minkowski3") return minkowski(3);
  if (name == "minkowski4") return minkowski(4);
  if (name == "remark") return remark_fixture();
  if (name == "round_sphere2") return round_sphere(2);
  if (name == "round_sphere3") return round_sphere(3);
  if (name == "revolution_c11") return revolution_c11();
  if (name == "rw_c11_strict") return rw_c11(1.3, 5e-3);
  if (name == "rw_c11_near") return rw_c11(1.01, 2e-3);
  throw std::runtime_error("unknown builtin fixture: " + name);
}

std::vector<Interval> model_slice_box(FiberKind fiber, int n) {
  std::vector<Interval> box;
  if (n == 2) {
    box.push_back(fiber == FiberKind::sphere ? Interval{-0.6, 0.6} : Interval{-0.8, 0.8});
    return box;
  }
  switch (fiber) {
    case FiberKind::sphere:
      box.push_back({0.4, 1.2});
      for (int i = 2; i < n - 1; ++i) box.push_back({0.4, 1.2});
      box.push_back({-0.6, 0.6});
      break;
    case FiberKind::hyperbolic:
      box.push_back({0.3, 1.1});
      for (int i = 2; i < n - 1; ++i) box.push_back({0.4, 1.2});
      box.push_back({-0.6, 0.6});
      break;
    case FiberKind::flat:
      for (int i = 1; i < n; ++i) box.push_back({-0.8, 0.8});
      break;
  }
  return box;
}

double model_horizon(const ComparisonModel& m, double margin, double cap) {
  if (m.collapses()) return std::min(cap, m.collapse - margin);
  return cap;
}

MetricField model_metric(const ComparisonModel& m, double t_lo, double t_hi) {
  MetricField mf;
  const int n = m.n;
  mf.chart.n = n;
  mf.chart.coords.push_back("t");
  std::vector<Interval> box;
  box.push_back({t_lo, t_hi});
  if (m.fiber == FiberKind::flat) {
    const char* names[] = {"x", "y", "z"};
    for (int i = 1; i < n; ++i) {
      mf.chart.coords.push_back(names[i - 1]);
      box.push_back({-1.5, 1.5});
    }
  } else if (n == 2) {
    // one fiber dimension: a circle for the sphere, a line otherwise
    if (m.fiber == FiberKind::sphere) {
      mf.chart.coords.push_back("phi");
      box.push_back({-7.0, 7.0});
      mf.chart.period[1] = 2.0 * kPi;
    } else {
      mf.chart.coords.push_back("x");
      box.push_back({-1.5, 1.5});
    }
  } else {
    mf.chart.coords.push_back("chi");
    box.push_back(m.fiber == FiberKind::sphere ? Interval{0.25, kPi - 0.25}
                                               : Interval{0.1, 1.6});
    for (int i = 2; i < n - 1; ++i) {
      mf.chart.coords.push_back("theta");
      box.push_back({0.25, kPi - 0.25});
    }
    mf.chart.coords.push_back("phi");
    box.push_back(m.fiber == FiberKind::sphere ? Interval{-7.0, 7.0} : Interval{-1.2, 1.2});
    if (m.fiber == FiberKind::sphere)
      mf.chart.period[static_cast<std::size_t>(n - 1)] = 2.0 * kPi;
  }
  set_box(mf, box);
  mf.signature = Signature::lorentzian;
  mf.time_covector = covector_e0(n);
  mf.comp = std::make_shared<WarpedField>(n, -1.0, m.f, m.fiber);
  std::ostringstream name;
  name << "model_k" << m.kappa << "_b" << m.beta << "_n" << n << "_" << fiber_name(m.fiber);
  mf.name = name.str();
  return mf;
}

GeomDocument parse_document(const nlohmann::json& j) {
  const std::string kind = j.value("kind", "components");
  if (kind == "builtin") return builtin_fixture(j.at("name").get<std::string>());

  GeomDocument doc;
  MetricField& mf = doc.metric;
  const int n = j.at("n").get<int>();
  if (n < 1 || n > kMaxDim) throw std::runtime_error("dimension out of range");
  mf.chart.n = n;
  mf.chart.coords = j.at("coords").get<std::vector<std::string>>();
  if (static_cast<int>(mf.chart.coords.size()) != n)
    throw std::runtime_error("coords must list one name per dimension");
  set_box(mf, parse_box(j.at("box"), static_cast<std::size_t>(n)));
  if (j.contains("period"))
    for (int i = 0; i < n; ++i)
      mf.chart.period[static_cast<std::size_t>(i)] = j["period"][static_cast<std::size_t>(i)].get<double>();

  const std::string sigstr = j.value("signature", "riemannian");
  if (sigstr == "riemannian")
    mf.signature = Signature::riemannian;
  else if (sigstr == "lorentzian")
    mf.signature = Signature::lorentzian;
  else
    throw std::runtime_error("signature must be riemannian or lorentzian");
  if (mf.signature == Signature::lorentzian) {
    mf.time_covector = covector_e0(n);
    if (j.contains("time_covector")) {
      for (int i = 0; i < n; ++i)
        mf.time_covector[i] = j["time_covector"][static_cast<std::size_t>(i)].get<double>();
    }
  }

  if (j.contains("loci"))
    for (const auto& l : j["loci"])
      mf.loci.push_back(parse_locus(l.get<std::string>(), mf.chart.coords));
  mf.smoothness = mf.loci.empty() ? Smoothness::smooth : Smoothness::c11;
  mf.name = j.value("name", std::string("document"));

  if (kind == "components") {
    const auto& comps = j.at("components");
    if (!comps.is_array() ||
        static_cast<int>(comps.size()) != n * (n + 1) / 2)
      throw std::runtime_error("incomplete symmetric matrix");
    std::vector<ExprPtr> upper;
    for (const auto& c : comps) upper.push_back(parse_expr(c.get<std::string>(), mf.chart.coords));
    mf.comp = std::make_shared<ExprField>(n, upper);
  } else if (kind == "warped_product") {
    const double bs = j.value("base_sign", mf.signature == Signature::lorentzian ? -1.0 : 1.0);
    const std::string fstr = j.at("fiber").get<std::string>();
    FiberKind fiber;
    if (fstr == "sphere")
      fiber = FiberKind::sphere;
    else if (fstr == "flat")
      fiber = FiberKind::flat;
    else if (fstr == "hyperbolic")
      fiber = FiberKind::hyperbolic;
    else
      throw std::runtime_error("fiber must be sphere, flat or hyperbolic");
    ExprPtr e0 = parse_expr(j.at("warp").get<std::string>(), {mf.chart.coords[0]});
    ExprPtr e1 = diff_expr(e0, 0);
    ExprPtr e2 = diff_expr(e1, 0);
    Warp1D warp;
    warp.eval = [e0, e1, e2](double t, double& f, double& df, double& ddf) {
      f = e0->eval(&t);
      df = e1->eval(&t);
      ddf = e2->eval(&t);
    };
    for (const auto& l : mf.loci)
      if (l.axis == 0) warp.kinks.push_back(l.value);
    mf.comp = std::make_shared<WarpedField>(n, bs, warp, fiber);
  } else {
    throw std::runtime_error("kind must be builtin, components or warped_product");
  }

  if (j.contains("sigma")) doc.sigma = parse_sigma(j["sigma"], mf);
  if (j.contains("kappa") && j.contains("beta")) {
    doc.kappa = j["kappa"].get<double>();
    doc.beta = j["beta"].get<double>();
    doc.has_model_params = true;
  }
  return doc;
}

GeomDocument load_document(const std::string& path) {
  for (const auto& name : builtin_names())
    if (name == path) return builtin_fixture(name);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open metric document: " + path);
  nlohmann::json j;
  in >> j;
  return parse_document(j);
}

}  // namespace geomlab
