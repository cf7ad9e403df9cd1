#ifndef SPDC_COHERENCE_HPP
#define SPDC_COHERENCE_HPP

// Entanglement and coherence measures: birth-zone geometry, the Schmidt
// spectrum of the Double-Gaussian, mutual information, and the symmetric
// g1/g2 coherence functions with their widths.
//
// Mutual information is reported in bits (base 2) so that the large-N
// approximation log2(K) ~ log2(N) - 1 holds; gaussfit::stats exposes the
// same quantity with a selectable base.

#include <vector>

#include "spdc/gaussfit.hpp"

namespace spdc {

struct SchmidtSpectrum {
  std::vector<double> eigenvalues;  // lambda_n, geometric
  double birth_zone_number = 0.0;   // N
  double schmidt_number = 0.0;      // K = (N + 1/N)/2
  double truncation_mass = 0.0;     // 1 - sum of the retained lambda_n
};

struct BirthZoneGeometry {
  double delta_p = 0.0;   // pump width 2 sigma_p = sqrt(2) sigma_+ [m]
  double delta_bz = 0.0;  // birth zone width sqrt(2) sigma_- [m]
  double n = 0.0;         // N = delta_p / delta_bz = sigma_+ / sigma_-
};

BirthZoneGeometry birth_zone_number(const DoubleGaussian& dg);

// N from a measured pump FWHM: N = fwhm_p / sqrt((8 ln2/(9 pi)) L_z lambda_p)
// (peak-matched birth zone width).
double birth_zone_number_from_fwhm(double fwhm_p, const SpdcConfig& config);

// Geometric Schmidt spectrum lambda_n = 4N/(N+1)^2 ((N-1)/(N+1))^(2n),
// truncated at n_max terms. n_max <= 0 selects the default truncation
// ceil(60/log((N+1)^2/(N-1)^2)), which keeps the truncation mass below
// 1e-12; the mass is reported, never silently renormalized.
// Throws DomainError if n < 1.
SchmidtSpectrum schmidt_eigenvalues(double n, int n_max = 0);

// K = (n + 1/n)/2. Throws DomainError if n < 1.
double schmidt_number(double n);

// log2(K); agrees with gaussfit stats (base-2) to machine precision.
double mutual_information_bits(const DoubleGaussian& dg);

// Symmetric coherence functions of the Double-Gaussian state.
double g1_symmetric(const DoubleGaussian& dg, double x);
double g2_symmetric(const DoubleGaussian& dg, double x);

// Coherence widths: x where g1 falls to 1/sqrt(e), and where g2 falls to
// unity. Throw DegenerateState at N = 1 (g1 never decays, g2 never exceeds
// one there).
double g1_width(const DoubleGaussian& dg);
double g2_width(const DoubleGaussian& dg);

}  // namespace spdc

#endif  // SPDC_COHERENCE_HPP
