#include "miao/irf_engine.hpp"

#include <stdexcept>

namespace miao {

std::vector<Eigen::MatrixXd> vma_coefficients(const std::vector<Eigen::MatrixXd>& coeffs, int dim,
                                              int horizon) {
  if (horizon < 0) throw std::invalid_argument("vma_coefficients: horizon must be >= 0");
  const int p = static_cast<int>(coeffs.size());
  std::vector<Eigen::MatrixXd> psi;
  psi.reserve(static_cast<std::size_t>(horizon) + 1);
  psi.push_back(Eigen::MatrixXd::Identity(dim, dim));
  for (int k = 1; k <= horizon; ++k) {
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 1; i <= std::min(k, p); ++i) {
      acc += psi[static_cast<std::size_t>(k - i)] * coeffs[static_cast<std::size_t>(i - 1)];
    }
    psi.push_back(std::move(acc));
  }
  return psi;
}

std::vector<Eigen::MatrixXd> vma_coefficients(const VarModel& var, int horizon) {
  return vma_coefficients(var.coeffs, var.dim(), horizon);
}

IrfTensor impulse_response(const SvarModel& svar, int horizon) {
  const Eigen::MatrixXd impact = svar.contemporaneous_impact();
  const auto psi = vma_coefficients(svar.var, horizon);
  IrfTensor irf;
  irf.horizon = horizon;
  irf.responses.reserve(psi.size());
  for (const Eigen::MatrixXd& p : psi) irf.responses.push_back(p * impact);
  return irf;
}

SceMatrix sce_from_coeffs(const std::vector<Eigen::MatrixXd>& coeffs,
                          const Eigen::MatrixXd& impact, const SceOptions& options) {
  const int n = static_cast<int>(impact.rows());
  const double radius = companion_spectral_radius(coeffs);
  SceMatrix result;
  if (radius < 1.0 - options.stability_margin) {
    Eigen::MatrixXd sum_a = Eigen::MatrixXd::Zero(n, n);
    for (const Eigen::MatrixXd& a : coeffs) sum_a += a;
    const Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(n, n) - sum_a;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(lhs);
    if (!lu.isInvertible()) {
      throw std::logic_error("sce: singular (I - sum A_i) despite stable coefficients");
    }
    result.values = (lu.inverse() - Eigen::MatrixXd::Identity(n, n)) * impact;
    result.method = SceMatrix::Method::closed_form;
    return result;
  }

  // Unstable estimate: accumulate responses until they fade or the horizon
  // caps out.
  result.method = SceMatrix::Method::truncated;
  result.values = Eigen::MatrixXd::Zero(n, n);
  const int p = static_cast<int>(coeffs.size());
  std::vector<Eigen::MatrixXd> psi;
  psi.push_back(Eigen::MatrixXd::Identity(n, n));
  for (int k = 1; k <= options.max_horizon; ++k) {
    Eigen::MatrixXd next = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i <= std::min(k, p); ++i) {
      next += psi[static_cast<std::size_t>(k - i)] * coeffs[static_cast<std::size_t>(i - 1)];
    }
    psi.push_back(next);
    const Eigen::MatrixXd response = next * impact;
    result.values += response;
    if (response.cwiseAbs().maxCoeff() < options.tail_tolerance) break;
  }
  return result;
}

SceMatrix sce(const SvarModel& svar, const SceOptions& options) {
  return sce_from_coeffs(svar.var.coeffs, svar.contemporaneous_impact(), options);
}

ScoreTable raw_miao_scores(std::span<const SceMatrix> sce_per_window,
                           std::vector<std::string> project_ids) {
  if (sce_per_window.empty()) throw std::invalid_argument("raw_miao_scores: no windows");
  const int n = static_cast<int>(project_ids.size());
  for (const SceMatrix& m : sce_per_window) {
    if (m.values.rows() != n || m.values.cols() != n) {
      throw std::invalid_argument("raw_miao_scores: dimension mismatch");
    }
  }
  ScoreTable table(std::move(project_ids), ScoreStage::raw_ms);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      double acc = 0.0;
      for (const SceMatrix& m : sce_per_window) acc += m.values(j, i);
      table.set(i, j, -acc);
    }
  }
  return table;
}

}  // namespace miao
