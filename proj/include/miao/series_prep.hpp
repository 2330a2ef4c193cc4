#pragma once

#include <span>
#include <vector>

namespace miao {

struct AdfResult {
  double statistic = 0.0;
  double p_value = 1.0;
  int lags_used = 0;
};

/// Augmented Dickey-Fuller test with a constant term. The lag order of the
/// augmenting differences is picked by AIC over a common sample, up to the
/// Schwert bound floor(12 * (T/100)^(1/4)) when max_lag < 0. P-values come
/// from the MacKinnon response-surface approximation for the constant-only
/// case. Throws DegenerateSeriesError on zero-variance input.
AdfResult adf_test(std::span<const double> values, int max_lag = -1);

/// Subtracts per-weekday means. `start_weekday` is the weekday of values[0]
/// (0 = Monday).
std::vector<double> weekday_adjust(std::span<const double> values, int start_weekday);

/// Identity unless `weekly_adjust` is set.
std::vector<double> preprocess(std::span<const double> values, int start_weekday, bool weekly_adjust);

/// Binomial fractional-differencing weights w_0 = 1,
/// w_k = -w_{k-1} * (d - k + 1) / k, truncated at the first |w_k| < cutoff.
std::vector<double> frac_diff_weights(double d, double cutoff = 1e-4);

/// Fixed-window fractional differencing; drops the warm-up prefix of
/// window-width - 1 points. Requires 0 <= d <= 1 and a series at least as
/// long as the weight window.
std::vector<double> frac_diff(std::span<const double> values, double d, double cutoff = 1e-4);

struct StationarySeries {
  std::vector<double> values;
  double frac_order = 0.0;
  bool grid_exhausted = false;  // no d in the grid achieved stationarity
};

/// Scans d = 0.1, 0.2, ..., 1.0 and returns the first whose differenced
/// series rejects the ADF unit root at `adf_significance`. Grid points whose
/// weight window would leave fewer than `min_obs` observations are skipped.
/// Falls back to d = 1.0 with the grid_exhausted flag when nothing passes.
StationarySeries min_stationary_d(std::span<const double> values, double adf_significance = 0.05,
                                  double cutoff = 1e-4, std::size_t min_obs = 30);

}  // namespace miao
