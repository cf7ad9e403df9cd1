#ifndef SPDC_MODEL_HPP
#define SPDC_MODEL_HPP

// Crystal-plane physics: SPDC configuration, the paraxial sinc-Gaussian
// momentum amplitude, and the exact momentum-/position-difference densities.
//
// The scale parameter a = L_z*lambda_p/(4*pi) carries units of m^2; the
// rotated difference coordinates are k_- = (k_1x - k_2x)/sqrt(2) and
// x_- = (x_1 - x_2)/sqrt(2).

#include <array>
#include <optional>

#include "spdc/numerics.hpp"

namespace spdc {

struct SpdcConfig {
  double lambda_p = 0.0;  // pump wavelength [m]
  double L_z = 0.0;       // crystal length along the optic axis [m]
  double sigma_p = 0.0;   // pump radius in position space, std of (x1+x2)/2 [m]
  std::optional<double> d_eff;  // effective nonlinearity [m/V]
  std::optional<double> P_p;    // pump power [W]

  double scale_a() const { return L_z * lambda_p / (4.0 * M_PI); }
  double pump_wavenumber() const { return 2.0 * M_PI / lambda_p; }
  void validate() const;  // throws DomainError on a nonphysical config
};

struct TransverseMomentumPair {
  std::array<double, 2> q1 = {0.0, 0.0};  // signal transverse wavevector [rad/m]
  std::array<double, 2> q2 = {0.0, 0.0};  // idler transverse wavevector [rad/m]

  // small-angle validity: |q|/k_p <= 0.1 for both photons (warning level,
  // never an error; the Delta k_z error grows as theta^4 beyond this)
  bool paraxial(double k_p) const;
};

// Longitudinal wavevector mismatch -|q1-q2|^2/(2 k_p), always <= 0. [rad/m]
double delta_kz(const TransverseMomentumPair& pair, const SpdcConfig& config);

// The sinc-Gaussian biphoton momentum amplitude
//   N * sinc(L_z lambda_p |q1-q2|^2 / (8 pi)) * exp(-sigma_p^2 |q1+q2|^2)
// with N fixed so the modulus squared integrates to 1 over both transverse
// planes. N is computed by quadrature once at construction and cached, so a
// fully constructed object is safe to share across threads.
class SincGaussianAmplitude {
 public:
  explicit SincGaussianAmplitude(const SpdcConfig& config);

  double operator()(const TransverseMomentumPair& pair) const;
  double normalization() const { return norm_; }
  const SpdcConfig& config() const { return config_; }

 private:
  SpdcConfig config_;
  double norm_ = 0.0;
};

// rho(k_-) = (3/4) sqrt(a/pi) sinc^2(a k_-^2); even, nonnegative, unit mass.
double k_minus_density(double k_minus, double a);

// Fresnel closed form of the position-difference density rho(x_-); even,
// nonnegative, unit mass, second moment 9a/5.
double x_minus_density(double x_minus, double a);

// Momentum-space grid for x_minus_density_oracle balancing truncation
// against chirp sampling: the sinc phase a*k^2 advances ~0.9 rad per sample
// at the grid edge. Grids far outside this balance fail the oracle's
// validity checks.
Grid1D oracle_momentum_grid(double a, std::size_t n_points);

// Numerically Fourier-transforms the normalized sinc amplitude
// sqrt((3/4)sqrt(a/pi)) * sinc(a k^2) on the given momentum grid (interpreted
// as k_j = min + j*(max-min)/n, so min = -max places k = 0 on the grid) and
// returns position-space density samples on the conjugate axis. Validity
// checks (throw BadGrid): power-of-two size, symmetric span, chirp phase
// advance <= pi per sample at the edge, edge envelope 1/(a k_edge^2) <= 5e-3,
// position span >= 8 sqrt(a).
Grid1D x_minus_density_oracle(double a, const Grid1D& momentum_grid);

// Relative brightness (d_eff^2 P_p L_z^2) / (same, reference). Dimensionless.
// Throws MissingField when either config lacks d_eff or P_p.
double pair_rate_scaling(const SpdcConfig& config, const SpdcConfig& reference);

}  // namespace spdc

#endif  // SPDC_MODEL_HPP
