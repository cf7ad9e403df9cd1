#ifndef SPDC_PROPAGATION_HPP
#define SPDC_PROPAGATION_HPP

// Free-space propagation of the Double-Gaussian joint state: analytic
// equal-plane widths, general unequal-plane quadratic-form coefficients,
// the propagated Pearson r, and an FFT Fresnel-propagation oracle.
//
// Intensity-level quantities only: the density and its moments. The cross
// phase that intermediate planes acquire is out of scope; entanglement at
// such planes lives in that phase, not in the density.

#include <complex>
#include <vector>

#include "spdc/gaussfit.hpp"
#include "spdc/numerics.hpp"

namespace spdc {

// Joint density proportional to exp(-(a x1^2 + 2 b x1 x2 + c x2^2)).
struct BivariateGaussian {
  double coeff_a = 0.0;  // [m^-2]
  double coeff_b = 0.0;  // [m^-2]
  double coeff_c = 0.0;  // [m^-2]

  void validate() const;  // a > 0, c > 0, a*c - b^2 > 0
  double pearson_r() const { return -coeff_b / std::sqrt(coeff_a * coeff_c); }
  double marginal_variance_x1() const;
  double marginal_variance_x2() const;
};

struct PropagationPlanes {
  double z1 = 0.0;  // signal plane [m]; negative = back-propagation
  double z2 = 0.0;  // idler plane [m]
  double k_p = 0.0;  // pump wavenumber [rad/m]
};

// Paraxial per-photon transfer phase exp(-i z kx^2 / k_p) at half the pump
// frequency, global phase removed. Unit modulus.
std::complex<double> transfer_phase(double z, double kx, double k_p);

// Equal-plane widths sigma~(z) = sqrt(sigma^2 + (z/(sigma k_p))^2).
DoubleGaussian propagate_equal(const DoubleGaussian& dg, double z, double k_p);

// General unequal-plane quadratic form coefficients.
BivariateGaussian propagate_general(const DoubleGaussian& dg,
                                    const PropagationPlanes& planes);

// r = r0 (1 - z1b z2b) / sqrt((z1b^2+1)(z2b^2+1)) with zib = zi/(k_p s+ s-);
// equals -b/sqrt(ac) of propagate_general.
double pearson_propagated(const DoubleGaussian& dg,
                          const PropagationPlanes& planes);

// Sampled 2D joint density |psi(x1,x2; z1,z2)|^2 on axis x axis (row-major,
// density[i*n+j] at (x1=coord(i), x2=coord(j))).
struct JointDensityGrid {
  Grid1D axis;
  std::vector<double> density;
};

struct JointMoments {
  double mass = 0.0;
  double sigma_x1 = 0.0;
  double sigma_x2 = 0.0;
  double sigma_plus = 0.0;   // std of (x1+x2)/sqrt(2)
  double sigma_minus = 0.0;  // std of (x1-x2)/sqrt(2)
  double pearson_r = 0.0;
  double cross_plus_minus = 0.0;  // <x+ x-> (vanishes for equal planes)
};

// Momentum grid for the propagation oracle: spans +-8 of the largest
// momentum width so the Double-Gaussian is fully resolved.
Grid1D propagation_momentum_grid(const DoubleGaussian& dg, std::size_t n_points);

// Builds the momentum-space Double-Gaussian on grid x grid, applies the two
// quadratic transfer phases, inverse-transforms, and returns |psi|^2.
// Validity (throws BadGrid): power-of-two n >= 1024, position span at least
// 8 max(sigma~+, sigma~-), transfer phase advancing at most pi per sample at
// the grid edge.
JointDensityGrid fft_propagate_oracle(const DoubleGaussian& dg,
                                      const PropagationPlanes& planes,
                                      const Grid1D& momentum_grid);

JointMoments joint_moments(const JointDensityGrid& grid);

}  // namespace spdc

#endif  // SPDC_PROPAGATION_HPP
