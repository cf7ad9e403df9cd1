#include <cmath>

#include "doctest.h"
#include "spdc/errors.hpp"
#include "spdc/propagation.hpp"
#include "spdc/rng.hpp"

using namespace spdc;

TEST_CASE("transfer_phase") {
  CHECK(transfer_phase(0.0, 123.0, 1e7) == std::complex<double>(1.0, 0.0));
  CHECK(transfer_phase(0.05, 0.0, 1e7) == std::complex<double>(1.0, 0.0));
  for (double z : {-0.3, 0.01, 2.0}) {
    for (double kx : {1e3, 5e4, 2e5}) {
      CHECK(std::abs(transfer_phase(z, kx, 1.6e7)) ==
            doctest::Approx(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("propagate_equal") {
  DoubleGaussian dg{1e-3, 1e-5};
  const double k_p = 2.0 * M_PI / 390e-9;
  SUBCASE("identity plane") {
    const DoubleGaussian out = propagate_equal(dg, 0.0, k_p);
    CHECK(out.sigma_plus == dg.sigma_plus);
    CHECK(out.sigma_minus == dg.sigma_minus);
  }
  SUBCASE("far-field asymptote") {
    const double z = 1e4;  // far field for both widths
    const DoubleGaussian out = propagate_equal(dg, z, k_p);
    CHECK(out.sigma_minus ==
          doctest::Approx(z / (dg.sigma_minus * k_p)).epsilon(1e-6));
    CHECK(out.sigma_plus ==
          doctest::Approx(z / (dg.sigma_plus * k_p)).epsilon(1e-3));
  }
  SUBCASE("50 mm example by direct substitution") {
    const double z = 50e-3;
    const DoubleGaussian out = propagate_equal(dg, z, k_p);
    const double far = z / (dg.sigma_minus * k_p);
    CHECK(out.sigma_minus ==
          doctest::Approx(std::sqrt(1e-10 + far * far)).epsilon(1e-12));
  }
  SUBCASE("50 mm example cross-checked against the FFT oracle") {
    // physical units: 1 mm / 10 um widths at the 390 nm pump wavenumber
    const double z = 50e-3;
    const Grid1D kgrid = propagation_momentum_grid(dg, 2048);
    const JointMoments m =
        joint_moments(fft_propagate_oracle(dg, {z, z, k_p}, kgrid));
    const DoubleGaussian eq = propagate_equal(dg, z, k_p);
    CHECK(m.sigma_minus == doctest::Approx(eq.sigma_minus).epsilon(5e-3));
    CHECK(m.sigma_plus == doctest::Approx(eq.sigma_plus).epsilon(5e-3));
    CHECK(m.mass == doctest::Approx(1.0).epsilon(1e-4));
  }
}

TEST_CASE("propagate_general") {
  DoubleGaussian dg{1.0, 0.1};
  const double k_p = 7.3;
  SUBCASE("z1 = z2 = 0 recovers the crystal-plane coefficients") {
    const BivariateGaussian bg = propagate_general(dg, {0.0, 0.0, k_p});
    const double sp2 = 1.0, sm2 = 0.01;
    CHECK(bg.coeff_a ==
          doctest::Approx((sp2 + sm2) / (4.0 * sp2 * sm2)).epsilon(1e-12));
    CHECK(bg.coeff_c == doctest::Approx(bg.coeff_a).epsilon(1e-14));
    CHECK(bg.coeff_b ==
          doctest::Approx((sm2 - sp2) / (4.0 * sp2 * sm2)).epsilon(1e-12));
  }
  SUBCASE("equal planes agree with propagate_equal marginals") {
    for (double z : {0.0, 0.03, 0.2, 1.0, -0.4}) {
      const BivariateGaussian bg = propagate_general(dg, {z, z, k_p});
      const DoubleGaussian eq = propagate_equal(dg, z, k_p);
      const double marginal =
          0.5 * (eq.sigma_plus * eq.sigma_plus + eq.sigma_minus * eq.sigma_minus);
      CHECK(bg.marginal_variance_x1() == doctest::Approx(marginal).epsilon(1e-10));
      CHECK(bg.marginal_variance_x2() == doctest::Approx(marginal).epsilon(1e-10));
    }
  }
  SUBCASE("normalizability for random parameters") {
    Rng rng = Rng::for_stream(2024, 0);
    for (int i = 0; i < 100; ++i) {
      DoubleGaussian d{0.1 + 3.0 * rng.uniform01(), 0.01 + 0.5 * rng.uniform01()};
      PropagationPlanes p{4.0 * (rng.uniform01() - 0.5),
                          4.0 * (rng.uniform01() - 0.5),
                          0.5 + 20.0 * rng.uniform01()};
      const BivariateGaussian bg = propagate_general(d, p);
      CHECK(bg.coeff_a > 0.0);
      CHECK(bg.coeff_c > 0.0);
      CHECK(bg.coeff_a * bg.coeff_c - bg.coeff_b * bg.coeff_b > 0.0);
    }
  }
}

TEST_CASE("pearson_propagated") {
  DoubleGaussian dg{1.0, 0.1};
  const double k_p = 5.0;
  const double r0 = (1.0 - 0.01) / (1.0 + 0.01);
  const double unit_z = k_p * dg.sigma_plus * dg.sigma_minus;  // zbar = 1
  SUBCASE("crystal plane gives r0") {
    CHECK(pearson_propagated(dg, {0.0, 0.0, k_p}) ==
          doctest::Approx(r0).epsilon(1e-14));
  }
  SUBCASE("mixed near/far field decorrelates: zbar1*zbar2 = 1") {
    CHECK(std::fabs(pearson_propagated(dg, {2.0 * unit_z, 0.5 * unit_z, k_p})) <
          1e-14);
  }
  SUBCASE("far field anticorrelates") {
    const double far = 1e3 * unit_z;
    CHECK(pearson_propagated(dg, {far, far, k_p}) ==
          doctest::Approx(-r0).epsilon(1e-5));
  }
  SUBCASE("matches -b/sqrt(ac) for 100 random tuples") {
    Rng rng = Rng::for_stream(77, 0);
    for (int i = 0; i < 100; ++i) {
      DoubleGaussian d{0.2 + 2.0 * rng.uniform01(), 0.01 + 0.3 * rng.uniform01()};
      PropagationPlanes p{3.0 * (rng.uniform01() - 0.5),
                          3.0 * (rng.uniform01() - 0.5),
                          0.3 + 10.0 * rng.uniform01()};
      const BivariateGaussian bg = propagate_general(d, p);
      CHECK(pearson_propagated(d, p) ==
            doctest::Approx(bg.pearson_r()).epsilon(1e-10));
    }
  }
  SUBCASE("monotone decorrelation along the diagonal") {
    double prev = 1.0;
    for (double zbar = 0.0; zbar < 50.0; zbar += 0.25) {
      const double r = pearson_propagated(dg, {zbar * unit_z, zbar * unit_z, k_p});
      CHECK(r <= prev + 1e-14);
      CHECK(r <= r0);
      CHECK(r >= -r0);
      prev = r;
    }
  }
}

TEST_CASE("fft_propagate_oracle") {
  DoubleGaussian dg{1.0, 0.1};
  const double k_p = 1.0;
  const Grid1D kgrid = propagation_momentum_grid(dg, 1024);
  SUBCASE("crystal plane: density matches the analytic Double-Gaussian") {
    const JointDensityGrid grid = fft_propagate_oracle(dg, {0.0, 0.0, k_p}, kgrid);
    const std::size_t n = grid.axis.size();
    double max_dev = 0.0;
    const double norm = 1.0 / (2.0 * M_PI * dg.sigma_plus * dg.sigma_minus);
    for (std::size_t i = 0; i < n; i += 13) {
      const double x1 = grid.axis.coord(i);
      for (std::size_t j = 0; j < n; j += 13) {
        const double x2 = grid.axis.coord(j);
        const double xm = (x1 - x2);
        const double xp = (x1 + x2);
        const double expect =
            norm *
            std::exp(-xm * xm / (4.0 * dg.sigma_minus * dg.sigma_minus) -
                     xp * xp / (4.0 * dg.sigma_plus * dg.sigma_plus));
        max_dev = std::max(max_dev, std::fabs(grid.density[i * n + j] - expect));
      }
    }
    CHECK(max_dev < 1e-6);
  }
  SUBCASE("moments track the analytic propagation") {
    for (double zbar : {0.0, 0.5, 1.0, 2.0}) {
      const double z = zbar * k_p * dg.sigma_plus * dg.sigma_minus;
      const PropagationPlanes planes{z, z, k_p};
      const JointMoments m = joint_moments(fft_propagate_oracle(dg, planes, kgrid));
      CHECK(m.mass == doctest::Approx(1.0).epsilon(1e-4));
      CHECK(m.pearson_r ==
            doctest::Approx(pearson_propagated(dg, planes)).epsilon(2e-3));
      const DoubleGaussian eq = propagate_equal(dg, z, k_p);
      CHECK(m.sigma_plus == doctest::Approx(eq.sigma_plus).epsilon(5e-3));
      CHECK(m.sigma_minus == doctest::Approx(eq.sigma_minus).epsilon(5e-3));
      // equal planes keep the rotated coordinates uncorrelated
      CHECK(std::fabs(m.cross_plus_minus) <
            1e-6 * eq.sigma_plus * eq.sigma_minus);
    }
  }
  SUBCASE("aliasing risk rejected") {
    const double huge_z = 50.0;
    CHECK_THROWS_AS(fft_propagate_oracle(dg, {huge_z, huge_z, k_p}, kgrid),
                    BadGrid);
  }
  SUBCASE("small grids rejected") {
    Grid1D tiny;
    tiny.min = -40.0;
    tiny.max = 40.0;
    tiny.values.assign(512, 0.0);
    CHECK_THROWS_AS(fft_propagate_oracle(dg, {0.0, 0.0, k_p}, tiny), BadGrid);
  }
}
