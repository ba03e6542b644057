#pragma once

#include <map>
#include <utility>
#include <vector>

#include "manetsim/ensemble.hpp"
#include "manetsim/netmetrics.hpp"

namespace manet {

/// Fitted parameters of the logistic connectivity law
/// eta(sigma) = eta0 / (eta0 + (1 - eta0) * exp(-g * sigma)).
struct LogisticFit {
  double eta0 = 0.0;
  double g = 0.0;
  double rss = 0.0;            // weighted residual sum of squares
  double reduced_chisq = 0.0;  // rss / (points_used - 2), weighted fits only
  int z = 0;
  int points_used = 0;
  bool weighted = false;
  double gradient_norm = 0.0;  // closed-form gradient at the optimum
};

/// Fit window: the bottom of the measured curves deviates from the
/// homogeneous-mixing law, so eta below eta_min is exempt.
struct FitOptions {
  double eta_min = 0.1;
  double eta_max = 0.95;
};

double logistic_eta(double eta0, double g, double sigma);

/// Weighted least squares of (eta0, g); weights 1/stderr^2, falling back
/// to unweighted when any in-window stderr is zero.  Deterministic.
/// Throws: insufficient-span if the curve does not cross the transition
/// (below 0.2 to above 0.8, with at least 5 usable points); fit-failure
/// with diagnostics on non-convergence.
LogisticFit fit_logistic(const ConnectivityCurve& curve, FitOptions opt = {});

struct SigmaCritical {
  double sigma_mid = 0.0;  // logistic midpoint, eta = 1/2
  double sigma_99 = 0.0;   // eta = 0.99 crossing, secondary statistic
};

SigmaCritical estimate_sigma_c(const LogisticFit& fit);

/// Scaling-collapse result: eta(ln sigma) curves for all z overlaid on the
/// z=2 reference after scaling the ln(sigma) axis by R^beta, R = z - 1,
/// about the anchor ln(sigma0).
struct CollapseResult {
  double beta = 0.0;
  double residual = 0.0;
  int reference_z = 2;
  double anchor_sigma0 = 1.0;
  std::vector<std::pair<double, double>> profile;  // (beta, objective) scan
};

struct CollapseOptions {
  double beta_min = -1.5;
  double beta_max = 0.0;
  double grid_step = 0.01;
  double tolerance = 1e-6;
  int reference_z = 2;
  bool fit_anchor = true;   // optimize sigma0 jointly with beta
  double anchor_sigma0 = 1.0;  // used (and kept fixed) when !fit_anchor
};

/// Mean squared eta-difference between the reference curve and every other
/// curve, after mapping abscissae to x = R^beta * (ln sigma - ln sigma0)
/// and linearly interpolating onto the reference points in the overlapping
/// x-range.  Throws a no-overlap error if any curve ends up disjoint from
/// the reference.
double collapse_objective(double beta,
                          const std::vector<ConnectivityCurve>& curves,
                          double anchor_sigma0 = 1.0, int reference_z = 2);

/// Coarse grid scan (step 0.01) refined by golden-section search; the
/// anchor, when fitted, is optimized the same way inside each beta
/// evaluation.  Deterministic.
CollapseResult find_beta(const std::vector<ConnectivityCurve>& curves,
                         CollapseOptions opt = {});

/// Ordinary least squares of knn(k) on k over 2 <= k <= k_c.
struct KnnLinearity {
  double intercept = 0.0;  // b(r)
  double slope = 0.0;      // compare against the C(k) plateau
  double r_squared = 0.0;
  int k_used_min = 0;
  int k_used_max = 0;
  int points = 0;
};

KnnLinearity knn_linearity_fit(const std::map<int, double>& knn, int k_c);
KnnLinearity check_knn_linearity(const MetricsTable& table);

/// Finite-difference check of d(eta)/d(sigma) = g * eta * (1 - eta): the
/// ratio eta' / (eta (1 - eta)) evaluated across eta in [eta_lo, eta_hi].
struct MixingCheck {
  double ratio_min = 0.0;
  double ratio_max = 0.0;
  double spread = 0.0;  // (max - min) / mean
};

MixingCheck homogeneous_mixing_check(const LogisticFit& fit,
                                     double eta_lo = 0.2, double eta_hi = 0.8,
                                     int points = 81);

/// Best proportional fit g(z) = c * z and the largest relative deviation.
struct Proportionality {
  double coefficient = 0.0;
  double max_rel_dev = 0.0;
};

Proportionality proportional_fit(const std::vector<std::pair<int, double>>& g_by_z);

}  // namespace manet
