#ifndef SPDC_TEMPORAL_HPP
#define SPDC_TEMPORAL_HPP

// Temporal correlation widths: Type-II top-hat walk-off, Type-I
// sinc-squared widths (same estimator algebra as the transverse module),
// and the frequency-filter-limited floor on measurable time correlations.
//
// Convention: filter_sigma_omega returns HALF the full angular width of the
// passband (sigma_omega = pi c d_lambda / lambda^2). Filter vendors quote
// the FWHM in wavelength; this is the convention that reproduces the
// 7.8e11 rad/s figure for a 2 nm filter at 1550 nm.
//
// Type-II widths are FULL widths of a top-hat distribution, not standard
// deviations; keep the two labeled distinctly downstream.

#include <iosfwd>
#include <string>
#include <vector>

namespace spdc {

inline constexpr double kSpeedOfLight = 299792458.0;  // [m/s]

struct MaterialDispersion {
  std::string name;
  double center_wavelength = 0.0;  // [m] (signal/idler wavelength)
  double n_g_signal = 0.0;         // group index at omega_p/2
  double n_g_idler = 0.0;
  double kappa1 = 0.0;  // group velocity dispersion d2k/domega2 [s^2/m]

  void validate() const;  // indices >= 1, kappa1 finite
};

struct SpectralFilter {
  double center_wavelength = 0.0;  // [m]
  double bandwidth_fwhm = 0.0;     // full width in wavelength [m]

  void validate() const;
};

enum class Type1Estimator { exact, peak_match };

// Type-II top-hat FULL width L_z |n_g1 - n_g2| / c. [s]
double type2_width(double L_z, const MaterialDispersion& disp);

// Type-I sigma: exact sqrt(9 L_z |kappa1| / 10), PM sqrt(4 L_z |kappa1|/9).
// Throws DomainError when kappa1 == 0.
double type1_sigma(double L_z, const MaterialDispersion& disp,
                   Type1Estimator estimator);

// Filter passband half angular width pi c d_lambda / lambda^2. [rad/s]
double filter_sigma_omega(const SpectralFilter& filter);

// Heisenberg floor 1/(2 sigma_omega) on the measurable sigma_(t1-t2). [s]
double time_correlation_floor(double sigma_omega);

// Material table: one record per line
//   name  center_wavelength_nm  n_g_signal  n_g_idler  kappa1_fs2_per_mm
// '#' starts a comment. kappa1 converts as 1 fs^2/mm = 1e-27 s^2/m.
std::vector<MaterialDispersion> load_material_table(std::istream& in);
std::vector<MaterialDispersion> load_material_table(const std::string& path);
const MaterialDispersion& find_material(const std::vector<MaterialDispersion>& table,
                                        const std::string& name);

}  // namespace spdc

#endif  // SPDC_TEMPORAL_HPP
