#include "spdc/coherence.hpp"

#include <cmath>

#include "spdc/errors.hpp"

namespace spdc {

BirthZoneGeometry birth_zone_number(const DoubleGaussian& dg) {
  dg.validate();
  BirthZoneGeometry bz;
  bz.delta_p = std::sqrt(2.0) * dg.sigma_plus;
  bz.delta_bz = std::sqrt(2.0) * dg.sigma_minus;
  bz.n = dg.sigma_plus / dg.sigma_minus;
  return bz;
}

double birth_zone_number_from_fwhm(double fwhm_p, const SpdcConfig& config) {
  config.validate();
  if (!(fwhm_p > 0.0)) throw DomainError("birth_zone_number_from_fwhm: fwhm_p <= 0");
  const double bz = std::sqrt(8.0 * std::log(2.0) / (9.0 * M_PI) *
                              config.L_z * config.lambda_p);
  return fwhm_p / bz;
}

SchmidtSpectrum schmidt_eigenvalues(double n, int n_max) {
  if (!(n >= 1.0)) throw DomainError("schmidt_eigenvalues: n must be >= 1");
  SchmidtSpectrum sp;
  sp.birth_zone_number = n;
  sp.schmidt_number = schmidt_number(n);
  if (n == 1.0) {
    sp.eigenvalues = {1.0};
    sp.truncation_mass = 0.0;
    return sp;
  }
  const double q = ((n - 1.0) / (n + 1.0)) * ((n - 1.0) / (n + 1.0));
  int count = n_max;
  if (count <= 0) {
    count = static_cast<int>(std::ceil(60.0 / -std::log(q)));
  }
  const double head = 4.0 * n / ((n + 1.0) * (n + 1.0));
  sp.eigenvalues.resize(count);
  double lam = head;
  for (int i = 0; i < count; ++i) {
    sp.eigenvalues[i] = lam;
    lam *= q;
  }
  // remaining geometric mass: head q^count/(1-q) = q^count (since head = 1-q)
  sp.truncation_mass = std::pow(q, count);
  return sp;
}

// K(n) = K(1/n); accepts any n > 0 so the symmetry is usable directly
double schmidt_number(double n) {
  if (!(n > 0.0)) throw DomainError("schmidt_number: n must be > 0");
  return 0.5 * (n + 1.0 / n);
}

double mutual_information_bits(const DoubleGaussian& dg) {
  const double n = birth_zone_number(dg).n;
  return std::log2(schmidt_number(n));
}

double g1_symmetric(const DoubleGaussian& dg, double x) {
  const BirthZoneGeometry bz = birth_zone_number(dg);
  const double n2 = bz.n * bz.n;
  const double coef = (n2 - 1.0) * (n2 - 1.0) / (n2 + 1.0);
  return std::exp(-x * x / (2.0 * bz.delta_p * bz.delta_p) * coef);
}

double g2_symmetric(const DoubleGaussian& dg, double x) {
  const BirthZoneGeometry bz = birth_zone_number(dg);
  const double n2 = bz.n * bz.n;
  const double half_width = bz.delta_p / (2.0 * bz.n);
  const double coef = (n2 - 1.0) / (n2 + 1.0);
  return (n2 + 1.0) / (2.0 * bz.n) *
         std::exp(-x * x / (2.0 * half_width * half_width) * coef);
}

double g1_width(const DoubleGaussian& dg) {
  const BirthZoneGeometry bz = birth_zone_number(dg);
  if (bz.n == 1.0) {
    throw DegenerateState("g1_width: undefined at N = 1 (g1 never decays)");
  }
  const double n2 = bz.n * bz.n;
  return bz.delta_p * std::sqrt((n2 + 1.0) / ((n2 - 1.0) * (n2 - 1.0)));
}

double g2_width(const DoubleGaussian& dg) {
  const BirthZoneGeometry bz = birth_zone_number(dg);
  if (bz.n == 1.0) {
    throw DegenerateState("g2_width: undefined at N = 1 (g2 never exceeds 1)");
  }
  const double n2 = bz.n * bz.n;
  const double inner = 0.5 * (n2 + 1.0) / (n2 - 1.0) *
                       std::log((n2 + 1.0) / (2.0 * bz.n));
  return bz.delta_p / bz.n * std::sqrt(inner);
}

}  // namespace spdc
