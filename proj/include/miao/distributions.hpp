#pragma once

namespace miao {

double normal_cdf(double x);

double chi_squared_cdf(double x, double dof);

/// Upper tail 1 - F(x); keeps precision for large statistics.
double chi_squared_sf(double x, double dof);

}  // namespace miao
