#include "manetsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace manet {

namespace {

constexpr double kGolden = 0.6180339887498949;

// Deterministic golden-section minimization of a unimodal-ish 1-D slice.
template <typename F>
double golden_min(F&& f, double lo, double hi, double tol, double* fmin) {
  double a = lo, b = hi;
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = f(x2);
    }
  }
  const double fa = f(a), fb = f(b);
  double xbest = a, fbest = fa;
  if (f1 < fbest) { xbest = x1; fbest = f1; }
  if (f2 < fbest) { xbest = x2; fbest = f2; }
  if (fb < fbest) { xbest = b; fbest = fb; }
  if (fmin) *fmin = fbest;
  return xbest;
}

}  // namespace

double logistic_eta(double eta0, double g, double sigma) {
  return eta0 / (eta0 + (1.0 - eta0) * std::exp(-g * sigma));
}

namespace {

struct FitPoint {
  double sigma;
  double eta;
  double weight;
};

double fit_objective(const std::vector<FitPoint>& pts, double eta0, double g) {
  double rss = 0.0;
  for (const auto& p : pts) {
    const double d = logistic_eta(eta0, g, p.sigma) - p.eta;
    rss += p.weight * d * d;
  }
  return rss;
}

// Closed-form gradient of the weighted rss in (eta0, g).
std::pair<double, double> fit_gradient(const std::vector<FitPoint>& pts,
                                       double eta0, double g) {
  double d_eta0 = 0.0, d_g = 0.0;
  for (const auto& p : pts) {
    const double E = std::exp(-g * p.sigma);
    const double D = eta0 + (1.0 - eta0) * E;
    const double m = eta0 / D;
    const double r = 2.0 * p.weight * (m - p.eta);
    d_eta0 += r * E / (D * D);
    d_g += r * eta0 * (1.0 - eta0) * p.sigma * E / (D * D);
  }
  return {d_eta0, d_g};
}

double clamp01(double x, double lo, double hi) {
  return std::min(hi, std::max(lo, x));
}

// theta = (logit(eta0), ln g) keeps both parameters in bounds.
struct Theta {
  double a;  // logit(eta0)
  double b;  // ln g
  double eta0() const { return 1.0 / (1.0 + std::exp(-a)); }
  double g() const { return std::exp(b); }
};

// Nelder-Mead on the 2-parameter weighted rss.  Plenty for a smooth
// two-dimensional problem; the closed-form gradient is only used as a
// certificate at the end.
std::pair<Theta, double> nelder_mead(const std::vector<FitPoint>& pts,
                                     Theta start, int max_iter,
                                     double* diameter_out) {
  auto eval = [&](const Theta& t) {
    return fit_objective(pts, t.eta0(), t.g());
  };
  Theta simplex[3] = {start,
                      {start.a + 0.05, start.b},
                      {start.a, start.b + 0.05}};
  double value[3] = {eval(simplex[0]), eval(simplex[1]), eval(simplex[2])};

  auto order = [&] {
    for (int i = 0; i < 2; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        if (value[j] < value[i]) {
          std::swap(value[i], value[j]);
          std::swap(simplex[i], simplex[j]);
        }
      }
    }
  };
  auto diameter = [&] {
    double d = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        d = std::max(d, std::hypot(simplex[i].a - simplex[j].a,
                                   simplex[i].b - simplex[j].b));
      }
    }
    return d;
  };

  for (int it = 0; it < max_iter; ++it) {
    order();
    if (diameter() < 1e-12 &&
        value[2] - value[0] <= 1e-15 * (1.0 + value[0])) {
      break;
    }
    const Theta centroid{(simplex[0].a + simplex[1].a) / 2.0,
                         (simplex[0].b + simplex[1].b) / 2.0};
    const Theta reflect{centroid.a + (centroid.a - simplex[2].a),
                        centroid.b + (centroid.b - simplex[2].b)};
    const double fr = eval(reflect);
    if (fr < value[0]) {
      const Theta expand{centroid.a + 2.0 * (centroid.a - simplex[2].a),
                         centroid.b + 2.0 * (centroid.b - simplex[2].b)};
      const double fe = eval(expand);
      if (fe < fr) {
        simplex[2] = expand;
        value[2] = fe;
      } else {
        simplex[2] = reflect;
        value[2] = fr;
      }
    } else if (fr < value[1]) {
      simplex[2] = reflect;
      value[2] = fr;
    } else {
      const Theta contract{centroid.a + 0.5 * (simplex[2].a - centroid.a),
                           centroid.b + 0.5 * (simplex[2].b - centroid.b)};
      const double fc = eval(contract);
      if (fc < value[2]) {
        simplex[2] = contract;
        value[2] = fc;
      } else {
        for (int i = 1; i < 3; ++i) {
          simplex[i].a = simplex[0].a + 0.5 * (simplex[i].a - simplex[0].a);
          simplex[i].b = simplex[0].b + 0.5 * (simplex[i].b - simplex[0].b);
          value[i] = eval(simplex[i]);
        }
      }
    }
  }
  order();
  if (diameter_out) *diameter_out = diameter();
  return {simplex[0], value[0]};
}

}  // namespace

LogisticFit fit_logistic(const ConnectivityCurve& curve, FitOptions opt) {
  double eta_lo = std::numeric_limits<double>::infinity();
  double eta_hi = -std::numeric_limits<double>::infinity();
  for (const auto& p : curve.points) {
    eta_lo = std::min(eta_lo, p.eta_mean);
    eta_hi = std::max(eta_hi, p.eta_mean);
  }
  if (curve.points.size() < 5 || !(eta_lo < 0.2) || !(eta_hi > 0.8)) {
    throw std::invalid_argument(
        "fit_logistic: curve does not span the transition (need >= 5 points "
        "with eta below 0.2 and above 0.8)");
  }

  std::vector<FitPoint> pts;
  bool all_have_stderr = true;
  for (const auto& p : curve.points) {
    if (p.eta_mean < opt.eta_min || p.eta_mean > opt.eta_max) continue;
    pts.push_back({p.sigma, p.eta_mean, 1.0});
    if (p.eta_stderr <= 0.0) all_have_stderr = false;
  }
  if (pts.size() < 5) {
    throw std::invalid_argument(
        "fit_logistic: fewer than 5 points inside the fit window");
  }
  if (all_have_stderr) {
    std::size_t i = 0;
    for (const auto& p : curve.points) {
      if (p.eta_mean < opt.eta_min || p.eta_mean > opt.eta_max) continue;
      pts[i++].weight = 1.0 / (p.eta_stderr * p.eta_stderr);
    }
  }

  // The logistic law is linear in logit(eta), so a weighted regression of
  // logit(eta) on sigma lands essentially on top of the optimum; the
  // simplex then minimizes the true weighted rss.
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& p : pts) {
    const double y = std::log(clamp01(p.eta, 1e-12, 1.0 - 1e-12) /
                              (1.0 - clamp01(p.eta, 1e-12, 1.0 - 1e-12)));
    sw += 1.0;
    sx += p.sigma;
    sy += y;
    sxx += p.sigma * p.sigma;
    sxy += p.sigma * y;
  }
  const double denom = sw * sxx - sx * sx;
  double g_start = 1.0, a_start = 0.0;
  if (std::abs(denom) > 0) {
    g_start = (sw * sxy - sx * sy) / denom;
    a_start = (sy - g_start * sx) / sw;
  }
  if (!(g_start > 1e-6)) g_start = 1.0;

  Theta best{clamp01(a_start, -46.0, 46.0), std::log(g_start)};
  double best_rss = std::numeric_limits<double>::infinity();
  double diam = 0.0;
  bool converged = false;
  // Coarse multi-start grid around the regression estimate.
  const double da[3] = {0.0, -2.0, 2.0};
  const double db[3] = {0.0, std::log(0.5), std::log(2.0)};
  for (double sa : da) {
    for (double sb : db) {
      Theta start{clamp01(best.a + sa, -46.0, 46.0), best.b + sb};
      auto [theta, rss] = nelder_mead(pts, start, 600, &diam);
      if (rss < best_rss) {
        best = theta;
        best_rss = rss;
        converged = diam < 1e-9;
      }
    }
  }
  if (!converged) {
    // One polishing restart from the incumbent.
    auto [theta, rss] = nelder_mead(pts, best, 2000, &diam);
    if (rss <= best_rss) {
      best = theta;
      best_rss = rss;
    }
    if (diam >= 1e-6) {
      char msg[128];
      std::snprintf(msg, sizeof msg,
                    "fit_logistic: no convergence (simplex diameter %.3g, "
                    "rss %.6g)",
                    diam, best_rss);
      throw std::runtime_error(msg);
    }
  }

  LogisticFit fit;
  fit.eta0 = best.eta0();
  fit.g = best.g();
  fit.rss = best_rss;
  fit.z = curve.z;
  fit.points_used = static_cast<int>(pts.size());
  fit.weighted = all_have_stderr;
  if (pts.size() > 2) {
    fit.reduced_chisq = best_rss / (static_cast<double>(pts.size()) - 2.0);
  }
  const auto [ga, gb] = fit_gradient(pts, fit.eta0, fit.g);
  fit.gradient_norm = std::hypot(ga, gb);
  return fit;
}

SigmaCritical estimate_sigma_c(const LogisticFit& fit) {
  SigmaCritical out;
  const double odds = (1.0 - fit.eta0) / fit.eta0;
  out.sigma_mid = std::log(odds) / fit.g;
  out.sigma_99 = std::log(99.0 * odds) / fit.g;
  return out;
}

namespace {

struct RescaledCurve {
  std::vector<double> x;    // monotone increasing
  std::vector<double> eta;
};

RescaledCurve rescale(const ConnectivityCurve& c, double beta, double ln_anchor,
                      int reference_z) {
  const double R = (c.z == reference_z) ? 1.0 : static_cast<double>(c.z - 1);
  const double scale = std::pow(R, beta);
  RescaledCurve out;
  out.x.reserve(c.points.size());
  out.eta.reserve(c.points.size());
  for (const auto& p : c.points) {
    out.x.push_back(scale * (std::log(p.sigma) - ln_anchor));
    out.eta.push_back(p.eta_mean);
  }
  return out;
}

double interp(const RescaledCurve& c, double x) {
  const auto it = std::lower_bound(c.x.begin(), c.x.end(), x);
  if (it == c.x.begin()) return c.eta.front();
  if (it == c.x.end()) return c.eta.back();
  const auto i = static_cast<std::size_t>(it - c.x.begin());
  const double t = (x - c.x[i - 1]) / (c.x[i] - c.x[i - 1]);
  return c.eta[i - 1] + t * (c.eta[i] - c.eta[i - 1]);
}

double objective_impl(double beta, const std::vector<ConnectivityCurve>& curves,
                      double ln_anchor, int reference_z) {
  const ConnectivityCurve* ref = nullptr;
  for (const auto& c : curves) {
    if (c.z == reference_z) ref = &c;
  }
  if (ref == nullptr) {
    throw std::invalid_argument("collapse: reference curve (z=2) missing");
  }
  const RescaledCurve rref = rescale(*ref, beta, ln_anchor, reference_z);

  double total = 0.0;
  std::int64_t count = 0;
  for (const auto& c : curves) {
    if (&c == ref) continue;
    const RescaledCurve rc = rescale(c, beta, ln_anchor, reference_z);
    const double lo = std::max(rref.x.front(), rc.x.front());
    const double hi = std::min(rref.x.back(), rc.x.back());
    bool any = false;
    for (std::size_t i = 0; i < rref.x.size(); ++i) {
      if (rref.x[i] < lo || rref.x[i] > hi) continue;
      const double d = interp(rc, rref.x[i]) - rref.eta[i];
      total += d * d;
      ++count;
      any = true;
    }
    if (!any) {
      throw std::runtime_error(
          "collapse: no overlap between rescaled curve and reference");
    }
  }
  if (count == 0) {
    // Only the reference was supplied: compared with itself, exactly zero.
    return 0.0;
  }
  return total / static_cast<double>(count);
}

}  // namespace

double collapse_objective(double beta,
                          const std::vector<ConnectivityCurve>& curves,
                          double anchor_sigma0, int reference_z) {
  if (curves.empty()) throw std::invalid_argument("collapse: no curves");
  return objective_impl(beta, curves, std::log(anchor_sigma0), reference_z);
}

CollapseResult find_beta(const std::vector<ConnectivityCurve>& curves,
                         CollapseOptions opt) {
  std::size_t non_reference = 0;
  for (const auto& c : curves) {
    if (c.z != opt.reference_z) ++non_reference;
  }
  if (non_reference == 0) {
    throw std::invalid_argument(
        "find_beta: need at least one non-reference curve");
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  const double a_lo = -1.5, a_hi = 1.5, a_step = 0.05;

  // Objective at fixed beta, with the anchor either fixed or optimized by
  // the same coarse-grid + golden-section recipe as beta itself.
  auto eval = [&](double beta, double* anchor_out) {
    auto slice = [&](double a) {
      try {
        return objective_impl(beta, curves, a, opt.reference_z);
      } catch (const std::runtime_error&) {
        return kInf;  // no overlap at this rescaling
      }
    };
    if (!opt.fit_anchor) {
      if (anchor_out) *anchor_out = std::log(opt.anchor_sigma0);
      return slice(std::log(opt.anchor_sigma0));
    }
    double best_a = 0.0, best_f = kInf;
    for (double a = a_lo; a <= a_hi + 1e-12; a += a_step) {
      const double f = slice(a);
      if (f < best_f) {
        best_f = f;
        best_a = a;
      }
    }
    if (best_f == kInf) {
      if (anchor_out) *anchor_out = 0.0;
      return kInf;
    }
    double fref = 0.0;
    const double refined =
        golden_min(slice, std::max(a_lo, best_a - a_step),
                   std::min(a_hi, best_a + a_step), opt.tolerance, &fref);
    if (fref < best_f) {
      best_f = fref;
      best_a = refined;
    }
    if (anchor_out) *anchor_out = best_a;
    return best_f;
  };

  CollapseResult result;
  result.reference_z = opt.reference_z;

  double best_beta = opt.beta_min, best_f = kInf;
  for (double b = opt.beta_min; b <= opt.beta_max + 1e-12; b += opt.grid_step) {
    const double f = eval(b, nullptr);
    result.profile.emplace_back(b, f);
    if (f < best_f) {
      best_f = f;
      best_beta = b;
    }
  }
  if (best_f == kInf) {
    throw std::runtime_error(
        "find_beta: no overlap between curves anywhere in the search interval");
  }

  double fref = 0.0;
  const double refined = golden_min(
      [&](double b) { return eval(b, nullptr); },
      std::max(opt.beta_min, best_beta - opt.grid_step),
      std::min(opt.beta_max, best_beta + opt.grid_step), opt.tolerance, &fref);
  if (fref < best_f) {
    best_f = fref;
    best_beta = refined;
  }

  result.beta = best_beta;
  result.residual = eval(best_beta, &result.anchor_sigma0);
  result.anchor_sigma0 = std::exp(result.anchor_sigma0);
  return result;
}

KnnLinearity knn_linearity_fit(const std::map<int, double>& knn, int k_c) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [k, v] : knn) {
    if (k >= 2 && k <= k_c) pts.emplace_back(static_cast<double>(k), v);
  }
  if (pts.size() < 4) {
    throw std::invalid_argument(
        "knn_linearity_fit: fewer than 4 usable degrees below k_c");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto n = static_cast<double>(pts.size());
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  KnnLinearity fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  const double ymean = sy / n;
  double ss_res = 0, ss_tot = 0;
  for (const auto& [x, y] : pts) {
    const double e = y - (fit.intercept + fit.slope * x);
    ss_res += e * e;
    ss_tot += (y - ymean) * (y - ymean);
  }
  fit.r_squared = (ss_tot > 0) ? 1.0 - ss_res / ss_tot : 1.0;
  fit.k_used_min = static_cast<int>(pts.front().first);
  fit.k_used_max = static_cast<int>(pts.back().first);
  fit.points = static_cast<int>(pts.size());
  return fit;
}

KnnLinearity check_knn_linearity(const MetricsTable& table) {
  return knn_linearity_fit(table.knn_by_degree(), table.cutoff_degree());
}

MixingCheck homogeneous_mixing_check(const LogisticFit& fit, double eta_lo,
                                     double eta_hi, int points) {
  const double odds = (1.0 - fit.eta0) / fit.eta0;
  auto sigma_at = [&](double eta) {
    return (std::log(odds) + std::log(eta / (1.0 - eta))) / fit.g;
  };
  const double s_lo = sigma_at(eta_lo);
  const double s_hi = sigma_at(eta_hi);
  const double h = (s_hi - s_lo) * 1e-5;

  MixingCheck out;
  out.ratio_min = std::numeric_limits<double>::infinity();
  out.ratio_max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (int i = 0; i < points; ++i) {
    const double s = s_lo + (s_hi - s_lo) * i / (points - 1);
    const double eta = logistic_eta(fit.eta0, fit.g, s);
    const double deriv = (logistic_eta(fit.eta0, fit.g, s + h) -
                          logistic_eta(fit.eta0, fit.g, s - h)) /
                         (2.0 * h);
    const double ratio = deriv / (eta * (1.0 - eta));
    out.ratio_min = std::min(out.ratio_min, ratio);
    out.ratio_max = std::max(out.ratio_max, ratio);
    sum += ratio;
  }
  const double mean = sum / points;
  out.spread = (out.ratio_max - out.ratio_min) / mean;
  return out;
}

Proportionality proportional_fit(
    const std::vector<std::pair<int, double>>& g_by_z) {
  if (g_by_z.empty()) throw std::invalid_argument("proportional_fit: empty");
  double szz = 0, szg = 0;
  for (const auto& [z, g] : g_by_z) {
    szz += static_cast<double>(z) * z;
    szg += static_cast<double>(z) * g;
  }
  Proportionality out;
  out.coefficient = szg / szz;
  for (const auto& [z, g] : g_by_z) {
    const double model = out.coefficient * z;
    out.max_rel_dev = std::max(out.max_rel_dev, std::abs(g - model) / model);
  }
  return out;
}

}  // namespace manet
