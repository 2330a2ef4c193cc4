#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace miao {

enum class InfoCriterion { aic, bic, hqic };

/// Reduced-form VAR(p): y_t = c + A_1 y_{t-1} + ... + A_p y_{t-p} + e_t.
struct VarModel {
  int lag = 0;
  Eigen::VectorXd intercept;             // n
  std::vector<Eigen::MatrixXd> coeffs;   // A_1..A_p, each n x n
  Eigen::MatrixXd residuals;             // (T - p) x n
  Eigen::MatrixXd resid_cov;             // n x n, E'E / (T - p)
  int sample_size = 0;                   // T

  int dim() const { return static_cast<int>(intercept.size()); }
};

/// Per-equation least squares on lagged regressors plus intercept. `data` has
/// one column per variable. Throws CollinearityError on a rank-deficient
/// regressor matrix (e.g. two identical series).
VarModel fit_var_ols(const Eigen::MatrixXd& data, int lag);

/// Criterion values for lag = 1..max_lag, all fit on the same trailing
/// T - max_lag observations so the values are comparable. Infeasible lags
/// yield +infinity.
std::vector<double> information_criteria(const Eigen::MatrixXd& data, int max_lag,
                                         InfoCriterion ic);

struct LjungBoxResult {
  double statistic = 0.0;
  double p_value = 1.0;
  int lags = 0;
  int dof = 0;
};

/// Portmanteau Q = n(n+2) sum_k r_k^2 / (n-k) against chi-squared with
/// lags - fit_dof degrees of freedom.
LjungBoxResult ljung_box(std::span<const double> values, int lags, int fit_dof = 0);

/// Test-lag rule: 10 when the VAR lag is below 10, else twice the VAR lag.
int ljung_box_lag_rule(int var_lag);

/// Runs ljung_box per residual column with fit_dof = var_lag and returns the
/// result with the minimum p-value across equations.
LjungBoxResult ljung_box_min_p(const Eigen::MatrixXd& residuals, int lags, int var_lag);

struct LagCandidate {
  double ic_value = 0.0;
  int lag = 0;
  double whiteness_p = -1.0;  // negative marks an infeasible fit
};

struct LagSelection {
  std::vector<LagCandidate> histories;
  int chosen = 0;
  bool degraded = false;  // no candidate passed the whiteness constraint
};

/// Minimal-criterion lag among candidates whose whiteness p-value meets the
/// significance level; falls back to the maximum-p candidate with the
/// degraded flag when none qualifies.
LagSelection best_lag(std::vector<LagCandidate> histories, double whiteness_significance = 0.10);

/// Recursive identification of a fitted VAR. `ordering` lists variable
/// indices from contemporaneously exogenous to endogenous; b0_inv and
/// shock_scale live in that ordered basis.
struct SvarModel {
  VarModel var;
  std::vector<int> ordering;
  Eigen::MatrixXd b0_inv;       // lower triangular; unit diagonal in unit-shock mode
  Eigen::VectorXd shock_scale;

  /// Contemporaneous response matrix expressed in original variable order:
  /// entry (i, j) is the impact response of variable i to a shock in j.
  Eigen::MatrixXd contemporaneous_impact() const;
};

/// Cholesky factorization of the permuted residual covariance. In unit-shock
/// mode the factor's columns are rescaled to unit diagonal so they represent
/// one-unit shocks; otherwise columns are one-standard-deviation shocks.
/// Throws on a non-positive-definite covariance, naming the offending
/// eigenvalue.
SvarModel identify_svar(VarModel var, std::vector<int> ordering, bool unit_shock = true);

Eigen::MatrixXd companion_matrix(const std::vector<Eigen::MatrixXd>& coeffs);
double companion_spectral_radius(const std::vector<Eigen::MatrixXd>& coeffs);

/// Modulus of the companion matrix's largest eigenvalue.
double stability(const VarModel& var);

}  // namespace miao
