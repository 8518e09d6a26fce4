#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ranlase {

/// log K_{m+1/2}(z) from the closed finite sum
///   K_{m+1/2}(z) = sqrt(pi/2z) e^{-z} sum_{k=0}^{m} (m+k)! / (k! (m-k)! (2z)^k),
/// evaluated in log space so large orders do not overflow.
double log_bessel_k_half(int m, double z);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x)/Gamma(a).
double regularized_gamma_q(double a, double x);

/// Survival p-value of a chi-square statistic with `dof` degrees of freedom.
double chi_square_p_value(double statistic, int dof);

double log_sum_exp(std::span<const double> logs);

}  // namespace ranlase
