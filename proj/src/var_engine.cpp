#include "miao/var_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "miao/distributions.hpp"
#include "miao/errors.hpp"

namespace miao {

namespace {

// Lag matrix [1, y_{t-1}, ..., y_{t-p}] for rows first_t .. T-1.
Eigen::MatrixXd lag_regressors(const Eigen::MatrixXd& data, int lag, int first_t) {
  const int n = static_cast<int>(data.cols());
  const int rows = static_cast<int>(data.rows()) - first_t;
  Eigen::MatrixXd X(rows, 1 + n * lag);
  for (int r = 0; r < rows; ++r) {
    const int t = first_t + r;
    X(r, 0) = 1.0;
    for (int i = 1; i <= lag; ++i) {
      X.block(r, 1 + (i - 1) * n, 1, n) = data.row(t - i);
    }
  }
  return X;
}

struct OlsFit {
  Eigen::MatrixXd coeffs;     // k x n
  Eigen::MatrixXd residuals;  // rows x n
};

OlsFit ols(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < X.cols()) {
    throw CollinearityError("collinear regressors: rank " + std::to_string(qr.rank()) + " < " +
                            std::to_string(X.cols()));
  }
  OlsFit fit;
  fit.coeffs = qr.solve(Y);
  fit.residuals = Y - X * fit.coeffs;
  return fit;
}

double log_det_spd(const Eigen::MatrixXd& m) {
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

double ic_penalty(InfoCriterion ic, int nobs) {
  switch (ic) {
    case InfoCriterion::aic:
      return 2.0 / nobs;
    case InfoCriterion::bic:
      return std::log(static_cast<double>(nobs)) / nobs;
    case InfoCriterion::hqic:
      return 2.0 * std::log(std::log(static_cast<double>(nobs))) / nobs;
  }
  return 0.0;
}

}  // namespace

VarModel fit_var_ols(const Eigen::MatrixXd& data, int lag) {
  const int T = static_cast<int>(data.rows());
  const int n = static_cast<int>(data.cols());
  if (lag < 1) throw std::invalid_argument("fit_var_ols: lag must be >= 1");
  if (T <= n * lag + 1) {
    throw std::invalid_argument("fit_var_ols: need more than n*p + 1 observations");
  }

  const Eigen::MatrixXd X = lag_regressors(data, lag, lag);
  const Eigen::MatrixXd Y = data.bottomRows(T - lag);
  const OlsFit fit = ols(X, Y);

  VarModel model;
  model.lag = lag;
  model.sample_size = T;
  model.intercept = fit.coeffs.row(0).transpose();
  model.coeffs.reserve(static_cast<std::size_t>(lag));
  for (int i = 0; i < lag; ++i) {
    model.coeffs.push_back(fit.coeffs.middleRows(1 + i * n, n).transpose());
  }
  model.residuals = fit.residuals;
  model.resid_cov = fit.residuals.transpose() * fit.residuals / (T - lag);
  return model;
}

std::vector<double> information_criteria(const Eigen::MatrixXd& data, int max_lag,
                                         InfoCriterion ic) {
  const int T = static_cast<int>(data.rows());
  const int n = static_cast<int>(data.cols());
  if (max_lag < 1) throw std::invalid_argument("information_criteria: max_lag must be >= 1");
  std::vector<double> values(static_cast<std::size_t>(max_lag),
                             std::numeric_limits<double>::infinity());
  const int nobs = T - max_lag;
  if (nobs <= n * max_lag + 1) return values;

  const Eigen::MatrixXd Y = data.bottomRows(nobs);
  for (int lag = 1; lag <= max_lag; ++lag) {
    const Eigen::MatrixXd full = lag_regressors(data, lag, max_lag);
    try {
      const OlsFit fit = ols(full, Y);
      const Eigen::MatrixXd sigma = fit.residuals.transpose() * fit.residuals / nobs;
      const double ld = log_det_spd(sigma);
      const int free_params = lag * n * n + n;
      values[static_cast<std::size_t>(lag - 1)] = ld + ic_penalty(ic, nobs) * free_params;
    } catch (const CollinearityError&) {
      // leave +inf
    }
  }
  return values;
}

LjungBoxResult ljung_box(std::span<const double> values, int lags, int fit_dof) {
  const int n = static_cast<int>(values.size());
  if (lags < 1) throw std::invalid_argument("ljung_box: need at least one lag");
  if (n <= lags) throw std::invalid_argument("ljung_box: series shorter than lag span");
  const int dof = lags - fit_dof;
  if (dof < 1) throw std::invalid_argument("ljung_box: non-positive degrees of freedom");

  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= n;

  double c0 = 0.0;
  for (const double v : values) c0 += (v - mean) * (v - mean);
  if (c0 <= 0.0) throw DegenerateSeriesError("degenerate series: zero residual variance");

  double q = 0.0;
  for (int k = 1; k <= lags; ++k) {
    double ck = 0.0;
    for (int t = k; t < n; ++t) ck += (values[t] - mean) * (values[t - k] - mean);
    const double rk = ck / c0;
    q += rk * rk / (n - k);
  }
  q *= static_cast<double>(n) * (n + 2);
  return {q, chi_squared_sf(q, dof), lags, dof};
}

int ljung_box_lag_rule(int var_lag) { return var_lag < 10 ? 10 : 2 * var_lag; }

LjungBoxResult ljung_box_min_p(const Eigen::MatrixXd& residuals, int lags, int var_lag) {
  if (residuals.cols() < 1) throw std::invalid_argument("ljung_box_min_p: no residual columns");
  LjungBoxResult worst;
  worst.p_value = 2.0;
  for (int j = 0; j < residuals.cols(); ++j) {
    const Eigen::VectorXd col = residuals.col(j);
    const LjungBoxResult r =
        ljung_box(std::span<const double>(col.data(), static_cast<std::size_t>(col.size())), lags,
                  var_lag);
    if (r.p_value < worst.p_value) worst = r;
  }
  return worst;
}

LagSelection best_lag(std::vector<LagCandidate> histories, double whiteness_significance) {
  if (histories.empty()) throw std::invalid_argument("best_lag: empty histories");
  LagSelection sel;
  sel.histories = std::move(histories);

  const LagCandidate* best = nullptr;
  for (const LagCandidate& c : sel.histories) {
    if (c.whiteness_p < whiteness_significance) continue;
    if (!best || c.ic_value < best->ic_value ||
        (c.ic_value == best->ic_value && c.lag < best->lag)) {
      best = &c;
    }
  }
  if (!best) {
    sel.degraded = true;
    for (const LagCandidate& c : sel.histories) {
      if (c.whiteness_p < 0.0) continue;  // infeasible fit
      if (!best || c.whiteness_p > best->whiteness_p ||
          (c.whiteness_p == best->whiteness_p && c.lag < best->lag)) {
        best = &c;
      }
    }
  }
  if (!best) throw std::runtime_error("best_lag: no feasible lag order");
  sel.chosen = best->lag;
  return sel;
}

Eigen::MatrixXd SvarModel::contemporaneous_impact() const {
  const int n = static_cast<int>(ordering.size());
  std::vector<int> pos(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) pos[static_cast<std::size_t>(ordering[static_cast<std::size_t>(k)])] = k;
  Eigen::MatrixXd out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out(i, j) = b0_inv(pos[static_cast<std::size_t>(i)], pos[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

SvarModel identify_svar(VarModel var, std::vector<int> ordering, bool unit_shock) {
  const int n = var.dim();
  if (static_cast<int>(ordering.size()) != n) {
    throw std::invalid_argument("identify_svar: ordering size mismatch");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (const int idx : ordering) {
    if (idx < 0 || idx >= n || seen[static_cast<std::size_t>(idx)]) {
      throw std::invalid_argument("identify_svar: ordering is not a permutation");
    }
    seen[static_cast<std::size_t>(idx)] = true;
  }

  Eigen::MatrixXd permuted(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      permuted(a, b) = var.resid_cov(ordering[static_cast<std::size_t>(a)],
                                     ordering[static_cast<std::size_t>(b)]);
    }
  }

  Eigen::LLT<Eigen::MatrixXd> llt(permuted);
  if (llt.info() != Eigen::Success) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(permuted);
    std::ostringstream msg;
    msg << "residual covariance is not positive definite (smallest eigenvalue "
        << es.eigenvalues().minCoeff() << ")";
    throw std::runtime_error(msg.str());
  }

  const Eigen::MatrixXd chol = llt.matrixL();
  SvarModel svar;
  svar.var = std::move(var);
  svar.ordering = std::move(ordering);
  if (unit_shock) {
    svar.shock_scale = chol.diagonal();
    svar.b0_inv = chol * chol.diagonal().cwiseInverse().asDiagonal();
  } else {
    svar.shock_scale = Eigen::VectorXd::Ones(n);
    svar.b0_inv = chol;
  }
  return svar;
}

Eigen::MatrixXd companion_matrix(const std::vector<Eigen::MatrixXd>& coeffs) {
  const int p = static_cast<int>(coeffs.size());
  if (p == 0) return Eigen::MatrixXd::Zero(0, 0);
  const int n = static_cast<int>(coeffs.front().rows());
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n * p, n * p);
  for (int i = 0; i < p; ++i) comp.block(0, i * n, n, n) = coeffs[static_cast<std::size_t>(i)];
  for (int i = 1; i < p; ++i) comp.block(i * n, (i - 1) * n, n, n).setIdentity();
  return comp;
}

double companion_spectral_radius(const std::vector<Eigen::MatrixXd>& coeffs) {
  const Eigen::MatrixXd comp = companion_matrix(coeffs);
  if (comp.rows() == 0) return 0.0;
  const Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double stability(const VarModel& var) { return companion_spectral_radius(var.coeffs); }

}  // namespace miao
