#include "spdc/gaussfit.hpp"

#include <cmath>

#include "spdc/errors.hpp"

namespace spdc {

void DoubleGaussian::validate() const {
  if (!(sigma_plus > 0.0) || !(sigma_minus > 0.0)) {
    throw DomainError("DoubleGaussian: widths must be > 0");
  }
}

namespace {

DoubleGaussian make_fit(const SpdcConfig& config, double sigma_minus_sq) {
  config.validate();
  DoubleGaussian dg;
  dg.sigma_plus = std::sqrt(2.0) * config.sigma_p;
  dg.sigma_minus = std::sqrt(sigma_minus_sq);
  return dg;
}

}  // namespace

DoubleGaussian fit_moment_match(const SpdcConfig& config) {
  return make_fit(config, config.scale_a() / 3.0);
}

DoubleGaussian fit_peak_match(const SpdcConfig& config) {
  return make_fit(config, 8.0 * config.scale_a() / 9.0);
}

DoubleGaussian fit_exact_variance(const SpdcConfig& config) {
  return make_fit(config, 9.0 * config.scale_a() / 5.0);
}

double correlation_width(const DoubleGaussian& dg) {
  dg.validate();
  return std::sqrt(2.0) * dg.sigma_minus;
}

GaussianStats stats(const DoubleGaussian& dg, LogBase base) {
  dg.validate();
  const double sp2 = dg.sigma_plus * dg.sigma_plus;
  const double sm2 = dg.sigma_minus * dg.sigma_minus;
  GaussianStats st;
  st.base = base;
  st.marginal_variance = 0.5 * (sp2 + sm2);
  st.conditional_variance = 2.0 * sp2 * sm2 / (sp2 + sm2);
  st.covariance = 0.5 * (sp2 - sm2);
  st.pearson_r = (sp2 - sm2) / (sp2 + sm2);
  const double scale = (base == LogBase::two) ? 1.0 / std::log(2.0) : 1.0;
  st.joint_entropy =
      std::log(2.0 * M_PI * M_E * dg.sigma_plus * dg.sigma_minus) * scale;
  st.marginal_entropy = 0.5 * std::log(M_PI * M_E * (sp2 + sm2)) * scale;
  st.mutual_information =
      std::log((sp2 + sm2) / (2.0 * dg.sigma_plus * dg.sigma_minus)) * scale;
  return st;
}

double conditional_mean(const DoubleGaussian& dg, double x_given) {
  return stats(dg).pearson_r * x_given;
}

HeisenbergProducts heisenberg_products(const DoubleGaussian& dg) {
  dg.validate();
  const double sp = dg.sigma_plus;
  const double sm = dg.sigma_minus;
  const double sk_plus = 1.0 / (2.0 * sp);
  const double sk_minus = 1.0 / (2.0 * sm);
  const double sp2 = sp * sp, sm2 = sm * sm;
  const double skp2 = sk_plus * sk_plus, skm2 = sk_minus * sk_minus;
  const double sigma_x1 = std::sqrt(0.5 * (sp2 + sm2));
  const double sigma_k1 = std::sqrt(0.5 * (skp2 + skm2));
  const double sigma_x1_given_x2 = std::sqrt(2.0 * sp2 * sm2 / (sp2 + sm2));
  const double sigma_k1_given_k2 = std::sqrt(2.0 * skp2 * skm2 / (skp2 + skm2));
  HeisenbergProducts hp;
  hp.x_plus_k_plus = sp * sk_plus;
  hp.x_minus_k_minus = sm * sk_minus;
  hp.x1_k1_given_k2 = sigma_x1 * sigma_k1_given_k2;
  hp.k1_x1_given_x2 = sigma_k1 * sigma_x1_given_x2;
  return hp;
}

}  // namespace spdc
