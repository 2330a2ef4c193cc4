#include "miao/distributions.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <stdexcept>

namespace miao {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / 1.4142135623730951); }

namespace {
boost::math::chi_squared_distribution<double> chi2(double dof) {
  if (dof <= 0) throw std::invalid_argument("chi-squared dof must be positive");
  return boost::math::chi_squared_distribution<double>(dof);
}
}  // namespace

double chi_squared_cdf(double x, double dof) {
  if (x <= 0) return 0.0;
  return boost::math::cdf(chi2(dof), x);
}

double chi_squared_sf(double x, double dof) {
  if (x <= 0) return 1.0;
  return boost::math::cdf(boost::math::complement(chi2(dof), x));
}

}  // namespace miao
