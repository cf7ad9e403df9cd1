#include <cmath>

#include "doctest.h"
#include "spdc/errors.hpp"
#include "spdc/model.hpp"
#include "spdc/verify.hpp"

using namespace spdc;

namespace {
SpdcConfig config_390_2mm() {
  SpdcConfig c;
  c.lambda_p = 390e-9;
  c.L_z = 2e-3;
  c.sigma_p = 1e-3;
  return c;
}

// unphysical lengths that set the scale parameter directly
SpdcConfig config_with_a(double a) {
  SpdcConfig c;
  c.lambda_p = 1.0;
  c.L_z = 4.0 * M_PI * a;
  c.sigma_p = 1.0;
  return c;
}
}  // namespace

TEST_CASE("SpdcConfig derived quantities and validation") {
  const SpdcConfig c = config_390_2mm();
  CHECK(c.scale_a() == doctest::Approx(6.20704e-11).epsilon(1e-5));
  CHECK(c.pump_wavenumber() == doctest::Approx(2.0 * M_PI / 390e-9).epsilon(1e-15));
  SpdcConfig bad = c;
  bad.L_z = 0.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("delta_kz small-angle mismatch") {
  const SpdcConfig c = config_390_2mm();
  const double k_p = c.pump_wavenumber();
  SUBCASE("collinear degenerate pair gives zero") {
    TransverseMomentumPair pair;
    pair.q1 = {1234.0, -77.0};
    pair.q2 = {1234.0, -77.0};
    CHECK(delta_kz(pair, c) == 0.0);
  }
  SUBCASE("|q1-q2| = k_p/100 gives -k_p/20000") {
    TransverseMomentumPair pair;
    pair.q1 = {k_p / 200.0, 0.0};
    pair.q2 = {-k_p / 200.0, 0.0};
    CHECK(delta_kz(pair, c) == doctest::Approx(-k_p / 20000.0).epsilon(1e-12));
    CHECK(delta_kz(pair, c) == doctest::Approx(-805.54).epsilon(1e-4));
  }
  SUBCASE("never positive") {
    for (double qx = -3e5; qx <= 3e5; qx += 7.3e4) {
      for (double qy = -2e5; qy <= 2e5; qy += 5.1e4) {
        TransverseMomentumPair pair;
        pair.q1 = {qx, qy};
        pair.q2 = {0.3 * qy, -0.8 * qx};
        CHECK(delta_kz(pair, c) <= 0.0);
      }
    }
  }
  SUBCASE("paraxial flag") {
    TransverseMomentumPair pair;
    pair.q1 = {0.05 * k_p, 0.0};
    CHECK(pair.paraxial(k_p));
    pair.q1 = {0.2 * k_p, 0.0};
    CHECK_FALSE(pair.paraxial(k_p));
  }
  SUBCASE("small-angle formula tracks the exact geometry inside the flag") {
    // exact mismatch for degenerate photons at angle theta:
    // delta_kz = k_p (cos(theta) - 1) with sin(theta) = |q1-q2|/k_p;
    // the theta^4 error stays below 1% of delta_kz up to the 0.1 threshold
    for (double ratio : {0.01, 0.05, 0.1}) {
      const double diff = 2.0 * ratio * k_p;  // |q1-q2|, each photon at ratio
      TransverseMomentumPair pair;
      pair.q1 = {0.5 * diff, 0.0};
      pair.q2 = {-0.5 * diff, 0.0};
      const double theta = std::asin(diff / k_p);
      const double exact = k_p * (std::cos(theta) - 1.0);
      const double rel = std::fabs(delta_kz(pair, c) / exact - 1.0);
      CHECK(rel < 1.5 * theta * theta / 4.0 + 1e-12);
      if (ratio <= 0.05) CHECK(rel < 0.01);
    }
  }
}

TEST_CASE("sinc-Gaussian amplitude") {
  const SpdcConfig c = config_390_2mm();
  const SincGaussianAmplitude amp(c);
  SUBCASE("origin is the global maximum, equal to the cached normalization") {
    TransverseMomentumPair origin;
    CHECK(amp(origin) == doctest::Approx(amp.normalization()).epsilon(1e-15));
    // closed form of the normalization: J = pi/2 gives N = 2 s_p sqrt(2a/pi)/pi
    const double expected = 2.0 * c.sigma_p / M_PI *
                            std::sqrt(2.0 * c.scale_a() / M_PI);
    CHECK(amp.normalization() == doctest::Approx(expected).epsilon(1e-9));
  }
  SUBCASE("symmetric under signal-idler exchange") {
    for (double s = 0.1; s < 1.0; s += 0.17) {
      TransverseMomentumPair pair;
      pair.q1 = {s * 2e4, -s * 1e4};
      pair.q2 = {s * 0.5e4, s * 3e4};
      TransverseMomentumPair swapped;
      swapped.q1 = pair.q2;
      swapped.q2 = pair.q1;
      CHECK(amp(pair) == doctest::Approx(amp(swapped)).epsilon(1e-15));
    }
  }
  SUBCASE("first zero along the difference coordinate") {
    const double diff_sq = 8.0 * M_PI * M_PI / (c.L_z * c.lambda_p);
    TransverseMomentumPair pair;
    pair.q1 = {0.5 * std::sqrt(diff_sq), 0.0};
    pair.q2 = {-0.5 * std::sqrt(diff_sq), 0.0};
    CHECK(std::fabs(amp(pair)) < 1e-10 * amp.normalization());
  }
}

TEST_CASE("k_minus_density") {
  CHECK(k_minus_density(0.0, 2.0) ==
        doctest::Approx(0.59841342060214418).epsilon(1e-14));
  for (double k = 0.0; k < 8.0; k += 0.31) {
    CHECK(k_minus_density(k, 2.0) == k_minus_density(-k, 2.0));
    CHECK(k_minus_density(k, 2.0) >= 0.0);
  }
  SUBCASE("normalization and second moment by quadrature") {
    for (double a : {0.5, 2.0, 10.0}) {
      CHECK(k_minus_moment_quadrature(a, 0) == doctest::Approx(1.0).epsilon(1e-7));
      CHECK(k_minus_moment_quadrature(a, 2) ==
            doctest::Approx(3.0 / (4.0 * a)).epsilon(1e-6));
    }
  }
  SUBCASE("scaling family closure") {
    for (double k = 0.1; k < 4.0; k *= 1.9) {
      for (double s : {0.5, 2.0, 7.0}) {
        const double a = 1.7;
        CHECK(k_minus_density(k, a) ==
              doctest::Approx(std::sqrt(s) * k_minus_density(std::sqrt(s) * k, a / s))
                  .epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("x_minus_density closed form") {
  // frozen against mpmath evaluations of the Fresnel closed form
  CHECK(x_minus_density(0.0, 2.0) ==
        doctest::Approx(0.29920671030107451).epsilon(1e-13));
  CHECK(x_minus_density(1.0, 2.0) ==
        doctest::Approx(0.23047915315102808).epsilon(1e-12));
  CHECK(x_minus_density(3.5, 2.0) ==
        doctest::Approx(0.0010567911530639308).epsilon(1e-10));
  CHECK(x_minus_density(5.0, 0.5) ==
        doctest::Approx(0.0012596823917774112).epsilon(1e-10));
  for (double x = 0.0; x < 9.0; x += 0.37) {
    CHECK(x_minus_density(x, 2.0) == x_minus_density(-x, 2.0));
    CHECK(x_minus_density(x, 2.0) >= 0.0);
  }
  SUBCASE("normalization and second moment by quadrature") {
    for (double a : {0.5, 2.0, 10.0}) {
      CHECK(x_minus_moment_quadrature(a, 0) == doctest::Approx(1.0).epsilon(1e-7));
      CHECK(x_minus_moment_quadrature(a, 2) ==
            doctest::Approx(9.0 * a / 5.0).epsilon(1e-6));
    }
  }
  SUBCASE("uncertainty product of the exact densities") {
    const double a = 2.0;
    const double sk = std::sqrt(k_minus_moment_quadrature(a, 2));
    const double sx = std::sqrt(x_minus_moment_quadrature(a, 2));
    CHECK(sk * sx == doctest::Approx(std::sqrt(27.0 / 20.0)).epsilon(1e-6));
    CHECK(sk * sx >= 0.5);
  }
}

TEST_CASE("x_minus_density_oracle (DFT of the sinc amplitude)") {
  const double a = 2.0;
  SUBCASE("matches the Fresnel closed form within 1e-4 on +-5 sqrt(a)") {
    const Grid1D kgrid = oracle_momentum_grid(a, 4096);
    const Grid1D dens = x_minus_density_oracle(a, kgrid);
    double max_dev = 0.0, mass = 0.0;
    for (std::size_t i = 0; i < dens.size(); ++i) {
      const double x = dens.coord(i);
      mass += dens.values[i] * dens.step();
      if (std::fabs(x) <= 5.0 * std::sqrt(a)) {
        max_dev = std::max(max_dev,
                           std::fabs(dens.values[i] - x_minus_density(x, a)));
      }
    }
    CHECK(max_dev < 1e-4);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-4));
  }
  SUBCASE("output symmetric in x") {
    const Grid1D dens = x_minus_density_oracle(a, oracle_momentum_grid(a, 2048));
    const std::size_t n = dens.size();
    for (std::size_t j = 1; j < n / 4; j += 7) {
      CHECK(dens.values[j] == doctest::Approx(dens.values[n - j]).epsilon(1e-9));
    }
  }
  SUBCASE("sub-Nyquist chirp grids are rejected") {
    Grid1D wide;
    wide.min = -1000.0 / std::sqrt(a);
    wide.max = 1000.0 / std::sqrt(a);
    wide.values.assign(4096, 0.0);
    CHECK_THROWS_AS(x_minus_density_oracle(a, wide), BadGrid);
  }
  SUBCASE("non power of two rejected") {
    Grid1D odd;
    odd.min = -10.0;
    odd.max = 10.0;
    odd.values.assign(1000, 0.0);
    CHECK_THROWS_AS(x_minus_density_oracle(a, odd), BadGrid);
  }
  SUBCASE("insufficient momentum span rejected") {
    Grid1D narrow;
    narrow.min = -4.0 / std::sqrt(a);
    narrow.max = 4.0 / std::sqrt(a);
    narrow.values.assign(4096, 0.0);
    CHECK_THROWS_AS(x_minus_density_oracle(a, narrow), BadGrid);
  }
}

TEST_CASE("pair_rate_scaling") {
  SpdcConfig ref = config_390_2mm();
  ref.d_eff = 2e-12;
  ref.P_p = 0.25;
  SUBCASE("identity") {
    CHECK(pair_rate_scaling(ref, ref) == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("quadratic in L_z, linear in P_p, quadratic in d_eff") {
    SpdcConfig c = ref;
    c.L_z = 2.0 * ref.L_z;
    CHECK(pair_rate_scaling(c, ref) == doctest::Approx(4.0).epsilon(1e-14));
    c = ref;
    c.P_p = 2.0 * (*ref.P_p);
    CHECK(pair_rate_scaling(c, ref) == doctest::Approx(2.0).epsilon(1e-14));
    c = ref;
    c.d_eff = 3.0 * (*ref.d_eff);
    CHECK(pair_rate_scaling(c, ref) == doctest::Approx(9.0).epsilon(1e-14));
  }
  SUBCASE("missing fields are reported") {
    SpdcConfig no_power = ref;
    no_power.P_p.reset();
    CHECK_THROWS_AS(pair_rate_scaling(no_power, ref), MissingField);
    CHECK_THROWS_AS(pair_rate_scaling(ref, no_power), MissingField);
  }
}

TEST_CASE("scale parameter fixture") {
  // a = 2 is reachable with the unphysical-but-valid synthetic config
  CHECK(config_with_a(2.0).scale_a() == doctest::Approx(2.0).epsilon(1e-14));
}

namespace {
// deliberate-bug mutant: the closed form evaluated with plain-argument
// Fresnel integrals int cos(t^2), int sin(t^2) instead of the pi/2-argument
// convention; C_plain(x) = sqrt(pi/2) C(x sqrt(2/pi)) and likewise for S
double x_minus_density_wrong_convention(double x, double a) {
  const double u = x / std::sqrt(2.0 * M_PI * a);
  const double scale = std::sqrt(M_PI / 2.0);
  const double arg = u * std::sqrt(2.0 / M_PI);
  const double s_plain = scale * fresnel_s(arg);
  const double c_plain = scale * fresnel_c(arg);
  const double theta = x * x / (4.0 * a);
  const double amp = x * std::sqrt(2.0 * M_PI) * (s_plain - c_plain) +
                     2.0 * std::sqrt(a) * (std::cos(theta) + std::sin(theta));
  return 3.0 / (16.0 * std::sqrt(M_PI * a * a * a)) * amp * amp;
}
}  // namespace

TEST_CASE("mutation: a pi-argument Fresnel convention fails the Fourier check") {
  // guards against silently swapping Fresnel conventions, which rescales the
  // density: the DFT oracle must disagree with the mutated closed form by
  // far more than the 1e-4 consistency gate
  const double a = 2.0;
  const Grid1D dens = x_minus_density_oracle(a, oracle_momentum_grid(a, 4096));
  double max_dev_correct = 0.0, max_dev_mutant = 0.0;
  for (std::size_t i = 0; i < dens.size(); ++i) {
    const double x = dens.coord(i);
    if (std::fabs(x) <= 5.0 * std::sqrt(a)) {
      max_dev_correct = std::max(
          max_dev_correct, std::fabs(dens.values[i] - x_minus_density(x, a)));
      max_dev_mutant = std::max(
          max_dev_mutant,
          std::fabs(dens.values[i] - x_minus_density_wrong_convention(x, a)));
    }
  }
  CHECK(max_dev_correct < 1e-4);
  CHECK(max_dev_mutant > 1e-2);
}
