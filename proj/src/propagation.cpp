#include "spdc/propagation.hpp"

#include <cmath>

#include "spdc/errors.hpp"

namespace spdc {

void BivariateGaussian::validate() const {
  if (!(coeff_a > 0.0) || !(coeff_c > 0.0) ||
      !(coeff_a * coeff_c - coeff_b * coeff_b > 0.0)) {
    throw DomainError("BivariateGaussian: form is not normalizable");
  }
}

double BivariateGaussian::marginal_variance_x1() const {
  return coeff_c / (2.0 * (coeff_a * coeff_c - coeff_b * coeff_b));
}

double BivariateGaussian::marginal_variance_x2() const {
  return coeff_a / (2.0 * (coeff_a * coeff_c - coeff_b * coeff_b));
}

std::complex<double> transfer_phase(double z, double kx, double k_p) {
  const double phi = -z * kx * kx / k_p;
  return {std::cos(phi), std::sin(phi)};
}

DoubleGaussian propagate_equal(const DoubleGaussian& dg, double z, double k_p) {
  dg.validate();
  if (!(k_p > 0.0)) throw DomainError("propagate_equal: k_p must be > 0");
  auto spread = [&](double sigma) {
    const double far = z / (sigma * k_p);
    return std::sqrt(sigma * sigma + far * far);
  };
  DoubleGaussian out;
  out.sigma_plus = spread(dg.sigma_plus);
  out.sigma_minus = spread(dg.sigma_minus);
  return out;
}

BivariateGaussian propagate_general(const DoubleGaussian& dg,
                                    const PropagationPlanes& planes) {
  dg.validate();
  if (!(planes.k_p > 0.0)) throw DomainError("propagate_general: k_p must be > 0");
  const double kp2 = planes.k_p * planes.k_p;
  const double sp2 = dg.sigma_plus * dg.sigma_plus;
  const double sm2 = dg.sigma_minus * dg.sigma_minus;
  const double z1 = planes.z1, z2 = planes.z2;
  const double sum = sp2 + sm2;
  const double dif = sp2 - sm2;
  const double d = kp2 * (z1 * z1 + z2 * z2) * sum * sum +
                   2.0 * kp2 * z1 * z2 * dif * dif + 4.0 * z1 * z1 * z2 * z2 +
                   4.0 * kp2 * kp2 * sp2 * sp2 * sm2 * sm2;
  BivariateGaussian bg;
  bg.coeff_a = kp2 * sum * (z2 * z2 + kp2 * sp2 * sm2) / d;
  bg.coeff_b = kp2 * dif * (z1 * z2 - kp2 * sp2 * sm2) / d;
  bg.coeff_c = kp2 * sum * (z1 * z1 + kp2 * sp2 * sm2) / d;
  return bg;
}

double pearson_propagated(const DoubleGaussian& dg,
                          const PropagationPlanes& planes) {
  dg.validate();
  if (!(planes.k_p > 0.0)) throw DomainError("pearson_propagated: k_p must be > 0");
  const double sp2 = dg.sigma_plus * dg.sigma_plus;
  const double sm2 = dg.sigma_minus * dg.sigma_minus;
  const double r0 = (sp2 - sm2) / (sp2 + sm2);
  const double zb1 = planes.z1 / (planes.k_p * dg.sigma_plus * dg.sigma_minus);
  const double zb2 = planes.z2 / (planes.k_p * dg.sigma_plus * dg.sigma_minus);
  return r0 * (1.0 - zb1 * zb2) /
         std::sqrt((zb1 * zb1 + 1.0) * (zb2 * zb2 + 1.0));
}

Grid1D propagation_momentum_grid(const DoubleGaussian& dg, std::size_t n_points) {
  dg.validate();
  const double sk_max = 1.0 / (2.0 * std::min(dg.sigma_plus, dg.sigma_minus));
  const double k_edge = 8.0 * sk_max;
  Grid1D g;
  g.min = -k_edge;
  g.max = k_edge;
  g.values.assign(n_points, 0.0);
  return g;
}

JointDensityGrid fft_propagate_oracle(const DoubleGaussian& dg,
                                      const PropagationPlanes& planes,
                                      const Grid1D& momentum_grid) {
  dg.validate();
  if (!(planes.k_p > 0.0)) throw DomainError("fft_propagate_oracle: k_p must be > 0");
  const std::size_t n = momentum_grid.values.size();
  if (n < 1024 || (n & (n - 1)) != 0) {
    throw BadGrid("fft_propagate_oracle: need a power-of-two grid, >= 1024 points");
  }
  const double k_edge = momentum_grid.max;
  if (std::fabs(momentum_grid.min + k_edge) > 1e-9 * k_edge || !(k_edge > 0.0)) {
    throw BadGrid("fft_propagate_oracle: grid must span [-k_edge, k_edge)");
  }
  const double dk = (momentum_grid.max - momentum_grid.min) / static_cast<double>(n);
  const double z_max = std::max(std::fabs(planes.z1), std::fabs(planes.z2));
  if (2.0 * z_max * k_edge * dk / planes.k_p > M_PI) {
    throw BadGrid("fft_propagate_oracle: transfer phase exceeds pi per sample "
                  "at the grid edge (aliasing risk)");
  }
  const DoubleGaussian at_z1 = propagate_equal(dg, planes.z1, planes.k_p);
  const DoubleGaussian at_z2 = propagate_equal(dg, planes.z2, planes.k_p);
  const double widest = std::max(
      std::max(at_z1.sigma_plus, at_z1.sigma_minus),
      std::max(at_z2.sigma_plus, at_z2.sigma_minus));
  const double x_max = M_PI / dk;
  if (x_max < 8.0 * widest) {
    throw BadGrid("fft_propagate_oracle: position span below 8 propagated widths");
  }
  // momentum amplitude must have room to decay at the edge as well
  const double sk_max = 1.0 / (2.0 * std::min(dg.sigma_plus, dg.sigma_minus));
  if (k_edge < 6.0 * sk_max) {
    throw BadGrid("fft_propagate_oracle: momentum span below 6 momentum widths");
  }

  const double sk_plus = 1.0 / (2.0 * dg.sigma_plus);
  const double sk_minus = 1.0 / (2.0 * dg.sigma_minus);
  const double amp0 = 1.0 / std::sqrt(2.0 * M_PI * sk_plus * sk_minus);

  auto k_of = [&](std::size_t idx) {
    return (static_cast<double>(idx) - static_cast<double>(n) / 2.0) * dk;
  };

  // psi~(k1,k2) * exp(-i z1 k1^2/k_p) * exp(-i z2 k2^2/k_p), DFT-ordered
  std::vector<std::complex<double>> field(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double k1 = k_of(i);
    const std::size_t si = (i + n / 2) % n;
    const std::complex<double> ph1 = transfer_phase(planes.z1, k1, planes.k_p);
    for (std::size_t j = 0; j < n; ++j) {
      const double k2 = k_of(j);
      const std::size_t sj = (j + n / 2) % n;
      const double kplus = (k1 + k2) / std::sqrt(2.0);
      const double kminus = (k1 - k2) / std::sqrt(2.0);
      const double gauss =
          amp0 * std::exp(-kplus * kplus / (4.0 * sk_plus * sk_plus) -
                          kminus * kminus / (4.0 * sk_minus * sk_minus));
      field[si * n + sj] = gauss * ph1 * transfer_phase(planes.z2, k2, planes.k_p);
    }
  }

  // separable 2D inverse transform: rows, then columns
  std::vector<std::complex<double>> row(n), col(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::copy(field.begin() + i * n, field.begin() + (i + 1) * n, row.begin());
    auto out = dft_1d(std::move(row), DftDirection::inverse);
    std::copy(out.begin(), out.end(), field.begin() + i * n);
    row = std::move(out);  // reuse capacity
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = field[i * n + j];
    auto out = dft_1d(std::move(col), DftDirection::inverse);
    for (std::size_t i = 0; i < n; ++i) field[i * n + j] = out[i];
    col = std::move(out);
  }

  // each axis contributes sqrt(n)*dk/sqrt(2 pi) to the continuous transform
  const double scale = static_cast<double>(n) * dk * dk / (2.0 * M_PI);
  const double dx = 2.0 * M_PI / (static_cast<double>(n) * dk);
  JointDensityGrid out;
  out.axis.min = -x_max;
  out.axis.max = x_max - dx;
  out.axis.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.axis.values[j] = out.axis.coord(j);
  out.density.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t si = (i + n / 2) % n;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t sj = (j + n / 2) % n;
      out.density[i * n + j] = std::norm(field[si * n + sj] * scale);
    }
  }
  return out;
}

JointMoments joint_moments(const JointDensityGrid& grid) {
  const std::size_t n = grid.axis.values.size();
  const double dA = grid.axis.step() * grid.axis.step();
  double mass = 0.0, m11 = 0.0, m22 = 0.0, m12 = 0.0, mpm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x1 = grid.axis.coord(i);
    for (std::size_t j = 0; j < n; ++j) {
      const double x2 = grid.axis.coord(j);
      const double w = grid.density[i * n + j] * dA;
      mass += w;
      m11 += w * x1 * x1;
      m22 += w * x2 * x2;
      m12 += w * x1 * x2;
      mpm += w * 0.5 * (x1 + x2) * (x1 - x2);
    }
  }
  JointMoments jm;
  jm.mass = mass;
  jm.sigma_x1 = std::sqrt(m11 / mass);
  jm.sigma_x2 = std::sqrt(m22 / mass);
  jm.pearson_r = (m12 / mass) / (jm.sigma_x1 * jm.sigma_x2);
  jm.sigma_plus = std::sqrt((m11 + m22 + 2.0 * m12) / (2.0 * mass));
  jm.sigma_minus = std::sqrt((m11 + m22 - 2.0 * m12) / (2.0 * mass));
  jm.cross_plus_minus = mpm / mass;
  return jm;
}

}  // namespace spdc
