#pragma once

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

#include "miao/score_table.hpp"
#include "miao/var_engine.hpp"

namespace miao {

/// VMA coefficients Psi_0 = I, Psi_k = sum_{i<=min(k,p)} Psi_{k-i} A_i.
std::vector<Eigen::MatrixXd> vma_coefficients(const std::vector<Eigen::MatrixXd>& coeffs, int dim,
                                              int horizon);
std::vector<Eigen::MatrixXd> vma_coefficients(const VarModel& var, int horizon);

/// Impulse responses in original variable order: responses[k](i, j) is the
/// response of variable i to a one-unit structural shock in j after k
/// periods; responses[0] is the contemporaneous impact matrix.
struct IrfTensor {
  std::vector<Eigen::MatrixXd> responses;
  int horizon = 0;

  double at(int i, int j, int k) const { return responses[static_cast<std::size_t>(k)](i, j); }
};

IrfTensor impulse_response(const SvarModel& svar, int horizon);

/// Cumulative impulse responses from k = 1 onward (the contemporaneous
/// response is excluded). Closed form ((I - sum A_i)^-1 - I) * B when the
/// VAR is stable; otherwise a flagged truncated sum.
struct SceMatrix {
  Eigen::MatrixXd values;
  enum class Method { closed_form, truncated } method = Method::closed_form;
};

struct SceOptions {
  double stability_margin = 1e-6;
  int max_horizon = 1000;
  double tail_tolerance = 1e-10;
};

SceMatrix sce(const SvarModel& svar, const SceOptions& options = {});

/// Same computation from explicit coefficients and impact matrix; used for
/// analytic ground truth.
SceMatrix sce_from_coeffs(const std::vector<Eigen::MatrixXd>& coeffs,
                          const Eigen::MatrixXd& impact, const SceOptions& options = {});

/// MIAO scores over expanding windows: the entry for source i -> target j is
/// the sign-inverted sum over windows of the target-to-source-shock
/// cumulative response, score(i, j) = -sum_m sce_m(j, i). Positive scores
/// mean a net negative long-run impact of the source on the target.
ScoreTable raw_miao_scores(std::span<const SceMatrix> sce_per_window,
                           std::vector<std::string> project_ids);

}  // namespace miao
