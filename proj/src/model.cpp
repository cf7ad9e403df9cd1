#include "spdc/model.hpp"

#include <cmath>
#include <complex>

#include "spdc/errors.hpp"

namespace spdc {

void SpdcConfig::validate() const {
  if (!(lambda_p > 0.0)) throw DomainError("SpdcConfig: lambda_p must be > 0");
  if (!(L_z > 0.0)) throw DomainError("SpdcConfig: L_z must be > 0");
  if (!(sigma_p > 0.0)) throw DomainError("SpdcConfig: sigma_p must be > 0");
}

bool TransverseMomentumPair::paraxial(double k_p) const {
  const double q1n = std::hypot(q1[0], q1[1]);
  const double q2n = std::hypot(q2[0], q2[1]);
  return q1n <= 0.1 * k_p && q2n <= 0.1 * k_p;
}

double delta_kz(const TransverseMomentumPair& pair, const SpdcConfig& config) {
  const double dx = pair.q1[0] - pair.q2[0];
  const double dy = pair.q1[1] - pair.q2[1];
  return -(dx * dx + dy * dy) / (2.0 * config.pump_wavenumber());
}

namespace {

// Tail of int_X^inf sin(2u)/u^n du and cos counterpart, by repeated
// integration by parts; remainder after `depth` steps is O(X^{-(n+depth)}).
double tail_cos_lin(double X, int n, int depth);

double tail_sin_lin(double X, int n, int depth) {
  if (depth == 0) return 0.0;
  return std::cos(2.0 * X) / (2.0 * std::pow(X, n)) -
         0.5 * n * tail_cos_lin(X, n + 1, depth - 1);
}

double tail_cos_lin(double X, int n, int depth) {
  if (depth == 0) return 0.0;
  return -std::sin(2.0 * X) / (2.0 * std::pow(X, n)) +
         0.5 * n * tail_sin_lin(X, n + 1, depth - 1);
}

// int_0^inf sinc^2(u) du = pi/2, evaluated as finite quadrature plus the
// analytic tail: sin^2 u / u^2 integrates by parts to
// sin^2(X)/X + int_X^inf sin(2u)/u du.
double sinc_sq_halfline() {
  const double X = 64.0 * M_PI;
  const double finite = integrate([](double u) { return sinc(u) * sinc(u); },
                                  0.0, X, 1e-12);
  const double tail = std::sin(X) * std::sin(X) / X + tail_sin_lin(X, 1, 6);
  return finite + tail;
}

}  // namespace

SincGaussianAmplitude::SincGaussianAmplitude(const SpdcConfig& config)
    : config_(config) {
  config_.validate();
  // In rotated coordinates Q+- = q1 +- q2 the modulus squared separates:
  //   int |Phi|^2 = N^2/4 * [pi/(2 sigma_p^2)] * [2 pi/a * J],
  // with J = int_0^inf sinc^2(u) du from the radial Q- integral.
  const double a = config_.scale_a();
  static const double J = sinc_sq_halfline();
  norm_ = 2.0 * config_.sigma_p / M_PI * std::sqrt(a / J);
}

double SincGaussianAmplitude::operator()(const TransverseMomentumPair& pair) const {
  const double dx = pair.q1[0] - pair.q2[0];
  const double dy = pair.q1[1] - pair.q2[1];
  const double sx = pair.q1[0] + pair.q2[0];
  const double sy = pair.q1[1] + pair.q2[1];
  const double diff_sq = dx * dx + dy * dy;
  const double sum_sq = sx * sx + sy * sy;
  const double a = config_.scale_a();
  return norm_ * sinc(0.5 * a * diff_sq) *
         std::exp(-config_.sigma_p * config_.sigma_p * sum_sq);
}

double k_minus_density(double k_minus, double a) {
  if (!(a > 0.0)) throw DomainError("k_minus_density: a must be > 0");
  const double s = sinc(a * k_minus * k_minus);
  return 0.75 * std::sqrt(a / M_PI) * s * s;
}

double x_minus_density(double x_minus, double a) {
  if (!(a > 0.0)) throw DomainError("x_minus_density: a must be > 0");
  const double x = x_minus;
  const double u = x / std::sqrt(2.0 * M_PI * a);
  const double theta = x * x / (4.0 * a);
  const double amp = x * std::sqrt(2.0 * M_PI) * (fresnel_s(u) - fresnel_c(u)) +
                     2.0 * std::sqrt(a) * (std::cos(theta) + std::sin(theta));
  return 3.0 / (16.0 * std::sqrt(M_PI * a * a * a)) * amp * amp;
}

Grid1D oracle_momentum_grid(double a, std::size_t n_points) {
  const double k_edge = std::sqrt(0.9 * static_cast<double>(n_points) / (4.0 * a));
  Grid1D g;
  g.min = -k_edge;
  g.max = k_edge;
  g.values.assign(n_points, 0.0);
  return g;
}

Grid1D x_minus_density_oracle(double a, const Grid1D& momentum_grid) {
  if (!(a > 0.0)) throw DomainError("x_minus_density_oracle: a must be > 0");
  const std::size_t n = momentum_grid.values.size();
  if (n < 2 || (n & (n - 1)) != 0) {
    throw BadGrid("x_minus_density_oracle: grid size must be a power of two");
  }
  const double k_edge = momentum_grid.max;
  if (std::fabs(momentum_grid.min + k_edge) > 1e-9 * k_edge || !(k_edge > 0.0)) {
    throw BadGrid("x_minus_density_oracle: grid must span [-k_edge, k_edge)");
  }
  // DFT sampling: k_j = -k_edge + j*dk, dk = 2 k_edge/n (half-open span)
  const double dk = (momentum_grid.max - momentum_grid.min) / static_cast<double>(n);
  // chirp must stay Nyquist-sampled out to the edge
  const double phase_per_sample = 2.0 * a * k_edge * dk;
  if (phase_per_sample > M_PI) {
    throw BadGrid("x_minus_density_oracle: sinc chirp unresolved at grid edge "
                  "(phase advance > pi per sample)");
  }
  // truncated amplitude must be negligible at the edge
  if (1.0 / (a * k_edge * k_edge) > 5e-3) {
    throw BadGrid("x_minus_density_oracle: momentum span too small "
                  "(edge envelope > 5e-3)");
  }
  const double x_max = M_PI / dk;
  if (x_max < 8.0 * std::sqrt(a)) {
    throw BadGrid("x_minus_density_oracle: position span below 8 sqrt(a)");
  }

  const double c = std::sqrt(0.75 * std::sqrt(a / M_PI));
  // pack in DFT order (ifftshift) so index 0 holds k = 0
  std::vector<std::complex<double>> phi(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t shifted = (j + n / 2) % n;
    const double k = (static_cast<double>(j) - static_cast<double>(n) / 2.0) * dk;
    phi[shifted] = c * sinc(a * k * k);
  }
  auto psi_raw = dft_1d(std::move(phi), DftDirection::inverse);
  // psi(x_j) = dk/sqrt(2 pi) * sum_k phi e^{ikx}; unitary inverse carried
  // 1/sqrt(n), so scale by sqrt(n)*dk/sqrt(2 pi)
  const double scale = std::sqrt(static_cast<double>(n)) * dk /
                       std::sqrt(2.0 * M_PI);
  const double dx = 2.0 * M_PI / (static_cast<double>(n) * dk);
  Grid1D out;
  out.min = -x_max;
  out.max = x_max - dx;  // closed endpoints: coord(j) = -x_max + j*dx
  out.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t shifted = (j + n / 2) % n;
    const std::complex<double> psi = psi_raw[shifted] * scale;
    out.values[j] = std::norm(psi);
  }
  return out;
}

double pair_rate_scaling(const SpdcConfig& config, const SpdcConfig& reference) {
  if (!config.d_eff || !config.P_p) {
    throw MissingField("pair_rate_scaling: config needs d_eff and P_p");
  }
  if (!reference.d_eff || !reference.P_p) {
    throw MissingField("pair_rate_scaling: reference needs d_eff and P_p");
  }
  const double num = (*config.d_eff) * (*config.d_eff) * (*config.P_p) *
                     config.L_z * config.L_z;
  const double den = (*reference.d_eff) * (*reference.d_eff) * (*reference.P_p) *
                     reference.L_z * reference.L_z;
  return num / den;
}

}  // namespace spdc
