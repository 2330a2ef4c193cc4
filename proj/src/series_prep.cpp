#include "miao/series_prep.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "miao/distributions.hpp"
#include "miao/errors.hpp"

namespace miao {

namespace {

// MacKinnon (1994) response-surface coefficients, constant-only case.
constexpr double kTauMax = 2.74;
constexpr double kTauMin = -18.83;
constexpr double kTauStar = -1.61;
constexpr std::array<double, 3> kSmallP{2.1659, 1.4412, 3.8269e-2};
constexpr std::array<double, 4> kLargeP{1.7339, 9.3202e-1, -1.4584e-1, -3.4631e-2};

double mackinnon_pvalue(double tau) {
  if (tau > kTauMax) return 1.0;
  if (tau < kTauMin) return 0.0;
  double z;
  if (tau <= kTauStar) {
    z = kSmallP[0] + tau * (kSmallP[1] + tau * kSmallP[2]);
  } else {
    z = kLargeP[0] + tau * (kLargeP[1] + tau * (kLargeP[2] + tau * kLargeP[3]));
  }
  return normal_cdf(z);
}

struct AdfFit {
  double tstat = 0.0;
  double ssr = 0.0;
  int nobs = 0;
};

// Regression dy_t = a + g*y_{t-1} + sum phi_i dy_{t-i} + e over
// t = start_t .. T-2 of the diff index; returns the t-statistic on g.
AdfFit fit_adf_regression(std::span<const double> y, std::span<const double> dy, int lag,
                          int start_t) {
  const int nobs = static_cast<int>(dy.size()) - start_t;
  const int k = 2 + lag;
  Eigen::MatrixXd X(nobs, k);
  Eigen::VectorXd z(nobs);
  for (int r = 0; r < nobs; ++r) {
    const int t = start_t + r;
    z(r) = dy[static_cast<std::size_t>(t)];
    X(r, 0) = 1.0;
    X(r, 1) = y[static_cast<std::size_t>(t)];  // y_{t-1} relative to dy_t
    for (int i = 1; i <= lag; ++i) X(r, 1 + i) = dy[static_cast<std::size_t>(t - i)];
  }
  const Eigen::MatrixXd xtx = X.transpose() * X;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(xtx);
  if (!lu.isInvertible()) throw DegenerateSeriesError("degenerate series: singular ADF regression");
  const Eigen::MatrixXd xtx_inv = lu.inverse();
  const Eigen::VectorXd beta = xtx_inv * (X.transpose() * z);
  const Eigen::VectorXd resid = z - X * beta;
  const double ssr = resid.squaredNorm();
  const int dof = nobs - k;
  if (dof <= 0) throw std::invalid_argument("adf_test: too few observations for lag order");
  const double sigma2 = ssr / dof;
  const double se = std::sqrt(sigma2 * xtx_inv(1, 1));
  if (!(se > 0.0)) throw DegenerateSeriesError("degenerate series: zero standard error");
  return {beta(1) / se, ssr, nobs};
}

}  // namespace

AdfResult adf_test(std::span<const double> values, int max_lag) {
  const int T = static_cast<int>(values.size());
  if (T < 30) throw std::invalid_argument("adf_test: need at least 30 observations");

  const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
  if (*mn == *mx) throw DegenerateSeriesError("degenerate series: zero variance");

  if (max_lag < 0) {
    max_lag = static_cast<int>(std::floor(12.0 * std::pow(T / 100.0, 0.25)));
  }
  max_lag = std::clamp(max_lag, 0, (T - 1) / 2 - 2);

  std::vector<double> dy(static_cast<std::size_t>(T - 1));
  for (int t = 0; t + 1 < T; ++t) dy[static_cast<std::size_t>(t)] = values[t + 1] - values[t];

  // Lag selection by AIC over the common sample t = max_lag .. T-2.
  int best_lag = 0;
  double best_aic = std::numeric_limits<double>::infinity();
  for (int lag = 0; lag <= max_lag; ++lag) {
    AdfFit fit;
    try {
      fit = fit_adf_regression(values, dy, lag, max_lag);
    } catch (const DegenerateSeriesError&) {
      if (lag == 0) throw;
      continue;
    }
    const double aic =
        fit.nobs * std::log(std::max(fit.ssr / fit.nobs, 1e-300)) + 2.0 * (lag + 2);
    if (aic < best_aic) {
      best_aic = aic;
      best_lag = lag;
    }
  }

  // Refit at the chosen lag on the full usable sample.
  const AdfFit fit = fit_adf_regression(values, dy, best_lag, best_lag);
  return {fit.tstat, mackinnon_pvalue(fit.tstat), best_lag};
}

std::vector<double> weekday_adjust(std::span<const double> values, int start_weekday) {
  std::array<double, 7> sums{};
  std::array<std::int64_t, 7> counts{};
  for (std::size_t i = 0; i < values.size(); ++i) {
    const int wd = static_cast<int>((start_weekday + i) % 7);
    sums[wd] += values[i];
    ++counts[wd];
  }
  std::array<double, 7> means{};
  for (int wd = 0; wd < 7; ++wd) means[wd] = counts[wd] ? sums[wd] / counts[wd] : 0.0;
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = values[i] - means[(start_weekday + i) % 7];
  }
  return out;
}

std::vector<double> preprocess(std::span<const double> values, int start_weekday,
                               bool weekly_adjust) {
  if (weekly_adjust) return miao::weekday_adjust(values, start_weekday);
  return {values.begin(), values.end()};
}

std::vector<double> frac_diff_weights(double d, double cutoff) {
  if (d < 0.0 || d > 1.0) throw std::invalid_argument("frac_diff: d must lie in [0, 1]");
  std::vector<double> w{1.0};
  for (int k = 1;; ++k) {
    const double next = -w.back() * (d - k + 1) / k;
    if (std::abs(next) < cutoff) break;
    w.push_back(next);
  }
  return w;
}

std::vector<double> frac_diff(std::span<const double> values, double d, double cutoff) {
  const std::vector<double> w = frac_diff_weights(d, cutoff);
  if (values.size() < w.size()) {
    throw std::invalid_argument("frac_diff: series shorter than the weight window");
  }
  const std::size_t width = w.size();
  std::vector<double> out(values.size() - width + 1);
  for (std::size_t t = width - 1; t < values.size(); ++t) {
    double acc = 0.0;
    for (std::size_t k = 0; k < width; ++k) acc += w[k] * values[t - k];
    out[t - width + 1] = acc;
  }
  return out;
}

StationarySeries min_stationary_d(std::span<const double> values, double adf_significance,
                                  double cutoff, std::size_t min_obs) {
  for (int step = 1; step <= 10; ++step) {
    const double d = step / 10.0;
    const std::vector<double> w = frac_diff_weights(d, cutoff);
    if (values.size() < w.size() + min_obs - 1) continue;  // window eats too much sample
    std::vector<double> diffed = frac_diff(values, d, cutoff);
    try {
      if (adf_test(diffed).p_value < adf_significance) {
        return {std::move(diffed), d, false};
      }
    } catch (const DegenerateSeriesError&) {
      continue;
    }
  }
  return {frac_diff(values, 1.0, cutoff), 1.0, true};
}

}  // namespace miao
