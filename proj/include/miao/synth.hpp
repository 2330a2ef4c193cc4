#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "miao/dates.hpp"
#include "miao/ingest.hpp"
#include "miao/irf_engine.hpp"

namespace miao {

/// Ground-truth system for simulation and analytic oracles: reduced-form
/// coefficients plus the structural impact matrix and shock scales.
struct SynthSpec {
  int dim = 3;
  int lag = 1;
  std::vector<Eigen::MatrixXd> coeffs;   // A_1..A_p
  Eigen::MatrixXd b0_inv;                // lower triangular, unit diagonal
  Eigen::VectorXd shock_scale;
  Eigen::VectorXd intercept;
  int length = 1000;
  std::uint64_t seed = 0;
  int burn_in = 500;
  double trend_per_step = 0.0;
  Eigen::VectorXd weekly_amplitude;      // optional, one value per variable

  static SynthSpec identity_impact(int dim, int lag, int length, std::uint64_t seed);
  double spectral_radius() const { return companion_spectral_radius(coeffs); }
  void validate() const;  // throws on shape mismatches
};

/// Deterministic standard-normal stream (Box-Muller over mt19937_64), so
/// generated data is reproducible across standard libraries.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed) : engine_(seed) {}
  double next();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Simulates y_t = c + sum A_i y_{t-i} + b0_inv * (shock_scale .* eps_t)
/// from a zero initial state, discarding `burn_in` steps. One column per
/// variable.
Eigen::MatrixXd generate(const SynthSpec& spec);

/// Rounds `offset + scale * x` into non-negative daily counts, one
/// ActivitySeries per column.
std::vector<ActivitySeries> to_activity_series(const Eigen::MatrixXd& data,
                                               const std::vector<std::string>& project_ids,
                                               Date start, double offset, double scale);

IrfTensor analytic_irf(const SynthSpec& spec, int horizon);
SceMatrix analytic_sce(const SynthSpec& spec, const SceOptions& options = {});

/// JSON (de)serialization for simulation spec files.
std::string synth_spec_to_json(const SynthSpec& spec);
SynthSpec synth_spec_from_json(const std::string& text);

}  // namespace miao
