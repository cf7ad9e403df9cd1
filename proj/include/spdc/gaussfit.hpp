#ifndef SPDC_GAUSSFIT_HPP
#define SPDC_GAUSSFIT_HPP

// Double-Gaussian approximation of the biphoton state: the three sigma_-
// estimators, the full joint-statistics table, and Heisenberg products.
//
// sigma_plus always comes from the pump (sqrt(2) sigma_p); only sigma_minus
// distinguishes the estimators:
//   moment_match    sqrt(a/3)     (matches <k_-^2> = 3/(4a))
//   peak_match      sqrt(8a/9)    (matches the density maxima)
//   exact_variance  sqrt(9a/5)    (the exact second moment of rho(x_-))

#include "spdc/model.hpp"

namespace spdc {

struct DoubleGaussian {
  double sigma_plus = 0.0;   // width of the x_+ = (x1+x2)/sqrt(2) Gaussian [m]
  double sigma_minus = 0.0;  // width of the x_- = (x1-x2)/sqrt(2) Gaussian [m]

  void validate() const;  // throws DomainError unless both widths > 0
  // physical SPDC configs have sigma_plus >= sigma_minus; violations are
  // allowed (warn-level) since e.g. far-field states flip the ordering
  bool inverted() const { return sigma_plus < sigma_minus; }
};

enum class LogBase { two, e };

struct GaussianStats {
  double marginal_variance = 0.0;     // [m^2]
  double conditional_variance = 0.0;  // [m^2]
  double covariance = 0.0;            // [m^2]
  double pearson_r = 0.0;
  double joint_entropy = 0.0;
  double marginal_entropy = 0.0;
  double mutual_information = 0.0;
  LogBase base = LogBase::two;
};

DoubleGaussian fit_moment_match(const SpdcConfig& config);
DoubleGaussian fit_peak_match(const SpdcConfig& config);
DoubleGaussian fit_exact_variance(const SpdcConfig& config);

// Transverse correlation width sigma_(x1-x2) = sqrt(2) sigma_minus. [m]
double correlation_width(const DoubleGaussian& dg);

GaussianStats stats(const DoubleGaussian& dg, LogBase base = LogBase::two);

// Conditioned mean <x2 | x1 = x_given> = r * x_given.
double conditional_mean(const DoubleGaussian& dg, double x_given);

struct HeisenbergProducts {
  double x_plus_k_plus = 0.0;    // sigma_x+ sigma_k+
  double x_minus_k_minus = 0.0;  // sigma_x- sigma_k-
  double x1_k1_given_k2 = 0.0;   // sigma_x1 sigma_(k1|k2)
  double k1_x1_given_x2 = 0.0;   // sigma_k1 sigma_(x1|x2)
};

// All four products are exactly 1/2 for the Double-Gaussian (the rotated
// pairs are transform-limited and the conditional relations saturate too).
HeisenbergProducts heisenberg_products(const DoubleGaussian& dg);

}  // namespace spdc

#endif  // SPDC_GAUSSFIT_HPP
