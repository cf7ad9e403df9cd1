#include <array>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "spdc/cli.hpp"
#include "spdc/errors.hpp"

using namespace spdc;

namespace {

const char* kFullConfig = R"cfg(
# sample configuration
[spdc]
lambda_p = 390e-9
L_z = 2e-3
sigma_p = 1e-3
d_eff = 2e-12
P_p = 0.25

[propagation]
z_list = 0,1e-3,5e-2

[filter]
center_wavelength = 1550e-9
bandwidth_fwhm = 2e-9

[temporal]
material = bbo_typeII_fixture

[slit_scan]
slit_width = 40e-6
fixed_slit_position = 0
scan_min = -100e-6
scan_max = 100e-6
scan_steps = 41
pairs_per_step = 2000
rng_seed = 42
model = double_gaussian

[density]
which = x_minus
grid_min = -8
grid_max = 8
grid_points = 17

[output]
log_base = 2
estimator = all
)cfg";

RunConfig parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse_run_config(in);
}

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig cfg = parse_text(kFullConfig);
  REQUIRE(cfg.spdc.has_value());
  CHECK(cfg.spdc->lambda_p == 390e-9);
  CHECK(cfg.spdc->L_z == 2e-3);
  CHECK(cfg.spdc->sigma_p == 1e-3);
  REQUIRE(cfg.spdc->d_eff.has_value());
  CHECK(*cfg.spdc->d_eff == 2e-12);
  REQUIRE(cfg.slit_scan.has_value());
  CHECK(cfg.slit_scan->scan_steps == 41);
  CHECK(cfg.slit_scan->rng_seed == 42);
  CHECK(cfg.slit_scan->model == PairModel::double_gaussian);
  CHECK(cfg.z_list.size() == 3);
  CHECK(cfg.z_list[2] == 5e-2);
  REQUIRE(cfg.filter.has_value());
  CHECK(cfg.filter->bandwidth_fwhm == 2e-9);
  CHECK(cfg.material == "bbo_typeII_fixture");
  CHECK(cfg.grid_points == 17);
  CHECK(cfg.log_base == LogBase::two);
  CHECK(cfg.estimator == EstimatorChoice::all);
}

TEST_CASE("config validation failures name the offender") {
  SUBCASE("unknown key") {
    CHECK_THROWS_WITH_AS(parse_text("[spdc]\nlambda = 390e-9\n"),
                         doctest::Contains("unknown key 'lambda'"), ConfigError);
  }
  SUBCASE("unknown section") {
    CHECK_THROWS_WITH_AS(parse_text("[oops]\nx = 1\n"),
                         doctest::Contains("unknown section [oops]"), ConfigError);
  }
  SUBCASE("unit suffixes are refused") {
    CHECK_THROWS_WITH_AS(parse_text("[spdc]\nlambda_p = 390nm\n"),
                         doctest::Contains("not a plain number"), ConfigError);
  }
  SUBCASE("key before any section") {
    CHECK_THROWS_AS(parse_text("lambda_p = 390e-9\n"), ConfigError);
  }
  SUBCASE("missing equals sign") {
    CHECK_THROWS_AS(parse_text("[spdc]\nlambda_p 390e-9\n"), ConfigError);
  }
  SUBCASE("bad enum values") {
    CHECK_THROWS_AS(parse_text("[output]\nestimator = fancy\n"), ConfigError);
    CHECK_THROWS_AS(parse_text("[output]\nlog_base = 10\n"), ConfigError);
    CHECK_THROWS_AS(parse_text("[slit_scan]\nmodel = gauss\n"), ConfigError);
  }
  SUBCASE("non-finite numbers rejected") {
    CHECK_THROWS_AS(parse_text("[spdc]\nlambda_p = inf\n"), ConfigError);
    CHECK_THROWS_AS(parse_text("[spdc]\nL_z = nan\n"), ConfigError);
  }
  SUBCASE("absurd integer keys rejected") {
    CHECK_THROWS_AS(parse_text("[slit_scan]\nscan_steps = 99999999999\n"),
                    ConfigError);
    CHECK_THROWS_AS(parse_text("[density]\ngrid_points = 99999999999\n"),
                    ConfigError);
  }
}

TEST_CASE("config echo round-trips") {
  const RunConfig cfg = parse_text(kFullConfig);
  const std::string echo1 = echo_run_config(cfg);
  const RunConfig reparsed = parse_text(echo1);
  const std::string echo2 = echo_run_config(reparsed);
  CHECK(echo1 == echo2);
}

TEST_CASE("estimator resolution") {
  const RunConfig cfg = parse_text(kFullConfig);
  CHECK_THROWS_AS(resolve_estimator(*cfg.spdc, EstimatorChoice::all), ConfigError);
  const DoubleGaussian dg = resolve_estimator(*cfg.spdc, EstimatorChoice::exact);
  CHECK(dg.sigma_minus ==
        doctest::Approx(std::sqrt(9.0 * cfg.spdc->scale_a() / 5.0)).epsilon(1e-14));
}

TEST_CASE("cmd_analyze") {
  const RunConfig cfg = parse_text(kFullConfig);
  std::ostringstream out1, out2;
  cmd_analyze(cfg, OutputFormat::report, out1);
  cmd_analyze(cfg, OutputFormat::report, out2);
  const std::string text = out1.str();
  SUBCASE("deterministic byte-identical output") {
    CHECK(text == out2.str());
  }
  SUBCASE("carries the three estimates and the published comparisons") {
    CHECK(text.find("moment_match") != std::string::npos);
    CHECK(text.find("peak_match") != std::string::npos);
    CHECK(text.find("exact_variance") != std::string::npos);
    CHECK(text.find("14.948") != std::string::npos);  // exact width in um
    CHECK(text.find("13.5 um") != std::string::npos);
    CHECK(text.find("17 +- 7 um") != std::string::npos);
    CHECK(text.find("10.9 +- 0.7 um") != std::string::npos);
  }
  SUBCASE("355 nm / 5 mm setup shows the published 15.8 and 22.5 um") {
    RunConfig other = cfg;
    other.spdc->lambda_p = 355e-9;
    other.spdc->L_z = 5e-3;
    std::ostringstream out;
    cmd_analyze(other, OutputFormat::report, out);
    CHECK(out.str().find("15.846") != std::string::npos);
    CHECK(out.str().find("22.549") != std::string::npos);
  }
  SUBCASE("missing spdc section rejected") {
    RunConfig empty;
    std::ostringstream out;
    CHECK_THROWS_AS(cmd_analyze(empty, OutputFormat::report, out), ConfigError);
  }
  SUBCASE("csv format carries the same widths machine-readably") {
    std::ostringstream out;
    cmd_analyze(cfg, OutputFormat::csv, out);
    const std::string text = out.str();
    CHECK(text.find("estimator,quantity,value,unit") != std::string::npos);
    CHECK(text.find("exact_variance,correlation_width,1.494836246e-05,m") !=
          std::string::npos);
  }
}

TEST_CASE("cmd_density emits the documented columns") {
  // synthetic config with a = 2 for direct comparison against the examples
  RunConfig cfg;
  SpdcConfig s;
  s.lambda_p = 1.0;
  s.L_z = 8.0 * M_PI;
  s.sigma_p = 1.0;
  cfg.spdc = s;
  cfg.grid_min = -1.0;
  cfg.grid_max = 1.0;
  cfg.grid_points = 3;
  SUBCASE("x axis") {
    cfg.density_which = "x_minus";
    std::ostringstream out;
    cmd_density(cfg, out);
    const std::string text = out.str();
    CHECK(text.find("x_minus_m,exact_density_per_m") != std::string::npos);
    // middle row is the origin: rho(0, a=2) = 0.299207
    CHECK(text.find("0.000000000e+00,2.992067103e-01") != std::string::npos);
  }
  SUBCASE("k axis") {
    cfg.density_which = "k_minus";
    std::ostringstream out;
    cmd_density(cfg, out);
    CHECK(out.str().find("0.000000000e+00,5.984134206e-01") != std::string::npos);
  }
  SUBCASE("grid validation") {
    cfg.grid_points = 1;
    std::ostringstream out;
    CHECK_THROWS_AS(cmd_density(cfg, out), ConfigError);
  }
  SUBCASE("Gaussian columns integrate to one by trapezoid") {
    cfg.density_which = "x_minus";
    cfg.grid_min = -20.0;
    cfg.grid_max = 20.0;
    cfg.grid_points = 4001;
    std::ostringstream out;
    cmd_density(cfg, out);
    std::istringstream in(out.str());
    std::string line;
    std::vector<std::array<double, 3>> gauss_cols;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
      std::array<double, 3> cols{};
      double coord = 0.0, exact = 0.0;
      std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf", &coord, &exact,
                  &cols[0], &cols[1], &cols[2]);
      gauss_cols.push_back(cols);
    }
    REQUIRE(gauss_cols.size() == 4001);
    const double h = 40.0 / 4000.0;
    for (int j = 0; j < 3; ++j) {
      double mass = 0.0;
      for (std::size_t i = 0; i + 1 < gauss_cols.size(); ++i) {
        mass += 0.5 * h * (gauss_cols[i][j] + gauss_cols[i + 1][j]);
      }
      CHECK(mass == doctest::Approx(1.0).epsilon(1e-4));
    }
  }
}

TEST_CASE("cmd_propagate") {
  RunConfig cfg = parse_text(kFullConfig);
  cfg.estimator = EstimatorChoice::exact;
  SUBCASE("diagonal rows carry widths, off-diagonal rows do not") {
    cfg.z1_list = {0.0, 1e-2};
    cfg.z2_list = {0.0, 2e-2};
    std::ostringstream out;
    cmd_propagate(cfg, out);
    const std::string text = out.str();
    CHECK(text.find("z1_m,z2_m,pearson_r,sigma_tilde_plus_m,sigma_tilde_minus_m") !=
          std::string::npos);
    CHECK(text.find(",,") != std::string::npos);  // blank width columns
  }
  SUBCASE("crystal plane row carries r0") {
    std::ostringstream out;
    cmd_propagate(cfg, out);
    const DoubleGaussian dg = resolve_estimator(*cfg.spdc, EstimatorChoice::exact);
    const double r0 = stats(dg).pearson_r;
    char expect[64];
    std::snprintf(expect, sizeof(expect), "%.9e", r0);
    CHECK(out.str().find(expect) != std::string::npos);
  }
  SUBCASE("estimator 'all' is rejected for propagation") {
    RunConfig all_cfg = parse_text(kFullConfig);
    std::ostringstream out;
    CHECK_THROWS_AS(cmd_propagate(all_cfg, out), ConfigError);
  }
}

TEST_CASE("cmd_schmidt at N = 1 prints the single eigenvalue") {
  RunConfig cfg;
  SpdcConfig s;
  // sigma_p chosen so the moment-matched sigma_minus equals sigma_plus
  s.lambda_p = 1.0;
  s.L_z = 12.0 * M_PI;  // a = 3 -> sigma_minus = 1
  s.sigma_p = 1.0 / std::sqrt(2.0);
  cfg.spdc = s;
  cfg.estimator = EstimatorChoice::moment;
  std::ostringstream out;
  cmd_schmidt(cfg, 0, out);
  const std::string text = out.str();
  CHECK(text.find("# schmidt_number = 1") != std::string::npos);
  CHECK(text.find("0,1.000000000e+00") != std::string::npos);
}

TEST_CASE("cmd_temporal with the shipped fixtures") {
  RunConfig cfg = parse_text(kFullConfig);
  cfg.spdc->L_z = 0.5e-3;
  const std::string materials = std::string(SPDC_DATA_DIR) + "/materials.txt";
  SUBCASE("report carries the 125 fs top-hat width") {
    std::ostringstream out;
    cmd_temporal(cfg, materials, OutputFormat::report, out);
    CHECK(out.str().find("125.00 fs") != std::string::npos);
    // floor for the 2 nm @ 1550 nm filter: 1/(2 sigma_omega) = 637.7 fs
    CHECK(out.str().find("637.7 fs") != std::string::npos);
  }
  SUBCASE("csv variant") {
    std::ostringstream out;
    cmd_temporal(cfg, materials, OutputFormat::csv, out);
    CHECK(out.str().find("type2_tophat_full_width,1.250000000e-13,s") !=
          std::string::npos);
  }
  SUBCASE("unknown material") {
    cfg.material = "unobtainium";
    std::ostringstream out;
    CHECK_THROWS_AS(cmd_temporal(cfg, materials, OutputFormat::report, out),
                    ConfigError);
  }
}

TEST_CASE("cmd_slit_scan is reproducible and annotated") {
  RunConfig cfg = parse_text(kFullConfig);
  cfg.estimator = EstimatorChoice::exact;
  std::ostringstream out1, out2;
  cmd_slit_scan(cfg, out1);
  cmd_slit_scan(cfg, out2);
  CHECK(out1.str() == out2.str());
  CHECK(out1.str().find("# analytic_conditional_width_m =") != std::string::npos);
  CHECK(out1.str().find("scan_position_m,counts") != std::string::npos);
  SUBCASE("pairs_per_step and total_pairs are mutually exclusive") {
    cfg.total_pairs = 100000;
    std::ostringstream out;
    CHECK_THROWS_AS(cmd_slit_scan(cfg, out), ConfigError);
  }
  SUBCASE("total_pairs alone divides across steps") {
    cfg.slit_scan->pairs_per_step = 0;
    cfg.total_pairs = 82000;
    std::ostringstream out;
    cmd_slit_scan(cfg, out);
    CHECK(out.str().find("# pairs_per_step = 2000") != std::string::npos);
  }
}
