#include "spdc/temporal.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "spdc/errors.hpp"

namespace spdc {

void MaterialDispersion::validate() const {
  if (!(n_g_signal >= 1.0) || !(n_g_idler >= 1.0)) {
    throw DomainError("MaterialDispersion: group indices must be >= 1");
  }
  if (!std::isfinite(kappa1)) {
    throw DomainError("MaterialDispersion: kappa1 must be finite");
  }
}

void SpectralFilter::validate() const {
  if (!(center_wavelength > 0.0)) {
    throw DomainError("SpectralFilter: center_wavelength must be > 0");
  }
  if (!(bandwidth_fwhm > 0.0) || !(bandwidth_fwhm < center_wavelength)) {
    throw DomainError("SpectralFilter: need 0 < bandwidth_fwhm < center_wavelength");
  }
}

double type2_width(double L_z, const MaterialDispersion& disp) {
  if (!(L_z > 0.0)) throw DomainError("type2_width: L_z must be > 0");
  disp.validate();
  return L_z * std::fabs(disp.n_g_signal - disp.n_g_idler) / kSpeedOfLight;
}

double type1_sigma(double L_z, const MaterialDispersion& disp,
                   Type1Estimator estimator) {
  if (!(L_z > 0.0)) throw DomainError("type1_sigma: L_z must be > 0");
  disp.validate();
  const double kappa = std::fabs(disp.kappa1);
  if (kappa == 0.0) {
    throw DomainError("type1_sigma: kappa1 must be nonzero");
  }
  switch (estimator) {
    case Type1Estimator::exact:
      return std::sqrt(9.0 * L_z * kappa / 10.0);
    case Type1Estimator::peak_match:
      return std::sqrt(4.0 * L_z * kappa / 9.0);
  }
  throw DomainError("type1_sigma: unknown estimator");
}

double filter_sigma_omega(const SpectralFilter& filter) {
  filter.validate();
  const double lam = filter.center_wavelength;
  // full angular width 2 pi c d_lambda / lambda^2, halved
  return M_PI * kSpeedOfLight * filter.bandwidth_fwhm / (lam * lam);
}

double time_correlation_floor(double sigma_omega) {
  if (!(sigma_omega > 0.0)) {
    throw DomainError("time_correlation_floor: sigma_omega must be > 0");
  }
  return 1.0 / (2.0 * sigma_omega);
}

std::vector<MaterialDispersion> load_material_table(std::istream& in) {
  std::vector<MaterialDispersion> table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    MaterialDispersion m;
    double wavelength_nm = 0.0, kappa_fs2_mm = 0.0;
    if (!(fields >> m.name)) continue;  // blank line
    if (!(fields >> wavelength_nm >> m.n_g_signal >> m.n_g_idler >> kappa_fs2_mm)) {
      throw ConfigError("material table line " + std::to_string(line_no) +
                        ": expected name, wavelength_nm, n_g_signal, n_g_idler, "
                        "kappa1_fs2_per_mm");
    }
    m.center_wavelength = wavelength_nm * 1e-9;
    m.kappa1 = kappa_fs2_mm * 1e-27;  // fs^2/mm -> s^2/m
    m.validate();
    table.push_back(std::move(m));
  }
  return table;
}

std::vector<MaterialDispersion> load_material_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open material table: " + path);
  return load_material_table(in);
}

const MaterialDispersion& find_material(const std::vector<MaterialDispersion>& table,
                                        const std::string& name) {
  for (const auto& m : table) {
    if (m.name == name) return m;
  }
  throw ConfigError("material not found in table: " + name);
}

}  // namespace spdc
