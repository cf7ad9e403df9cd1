// biphoton: transverse and temporal correlation structure of photon pairs
// from degenerate collinear SPDC.
//
// Exit codes: 0 success, 1 validation error, 2 numerical failure,
// 3 verify-suite failure.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "spdc/cli.hpp"
#include "spdc/errors.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string output = "stdout";
  std::string format = "report";
  std::string estimator;
  std::string log_base;
  std::string materials = "data/materials.txt";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int n_max = 0;
};

void apply_overrides(spdc::RunConfig& cfg, const CommonFlags& flags) {
  if (!flags.estimator.empty()) {
    if (flags.estimator == "moment") cfg.estimator = spdc::EstimatorChoice::moment;
    else if (flags.estimator == "peak") cfg.estimator = spdc::EstimatorChoice::peak;
    else if (flags.estimator == "exact") cfg.estimator = spdc::EstimatorChoice::exact;
    else if (flags.estimator == "all") cfg.estimator = spdc::EstimatorChoice::all;
    else throw spdc::ConfigError("--estimator must be moment|peak|exact|all");
  }
  if (!flags.log_base.empty()) {
    if (flags.log_base == "2") cfg.log_base = spdc::LogBase::two;
    else if (flags.log_base == "e") cfg.log_base = spdc::LogBase::e;
    else throw spdc::ConfigError("--log-base must be 2 or e");
  }
  if (flags.seed_set) {
    if (!cfg.slit_scan) throw spdc::ConfigError("--seed needs a [slit_scan] section");
    cfg.slit_scan->rng_seed = flags.seed;
  }
}

class OutputSink {
 public:
  explicit OutputSink(const std::string& target) {
    if (target != "stdout" && target != "-") {
      file_.open(target);
      if (!file_) throw spdc::ConfigError("cannot open output file: " + target);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transverse/temporal biphoton correlations in degenerate "
               "collinear SPDC"};
  app.require_subcommand(1);
  CommonFlags flags;

  auto add_common = [&](CLI::App* sub, bool needs_config, const char* formats) {
    auto* opt = sub->add_option("--config", flags.config_path,
                                "key = value config file");
    if (needs_config) opt->required();
    sub->add_option("--output", flags.output, "output path or 'stdout'");
    sub->add_option("--estimator", flags.estimator,
                    "moment|peak|exact|all (overrides config)");
    sub->add_option("--log-base", flags.log_base, "2|e (overrides config)");
    sub->add_option("--format", flags.format, formats);
  };

  auto* analyze = app.add_subcommand("analyze", "summary table of widths and "
                                                "entanglement measures");
  add_common(analyze, true, "report|csv");
  auto* density = app.add_subcommand("density", "CSV of the exact difference "
                                                "density and its Gaussian fits");
  add_common(density, true, "csv");
  auto* propagate = app.add_subcommand("propagate", "CSV of r and widths over "
                                                    "propagation planes");
  add_common(propagate, true, "csv");
  auto* schmidt = app.add_subcommand("schmidt", "CSV of the Schmidt spectrum");
  add_common(schmidt, true, "csv");
  schmidt->add_option("--n-max", flags.n_max,
                      "eigenvalue truncation (0 = automatic)");
  auto* temporal = app.add_subcommand("temporal", "temporal correlation widths");
  add_common(temporal, true, "report|csv");
  temporal->add_option("--materials", flags.materials,
                       "material dispersion table path");
  auto* slit = app.add_subcommand("slit-scan", "Monte Carlo slit-scan "
                                               "coincidence histogram (CSV)");
  add_common(slit, true, "csv");
  slit->add_option("--seed", flags.seed, "RNG seed (overrides config)")
      ->each([&flags](const std::string&) { flags.seed_set = true; });
  auto* verify = app.add_subcommand("verify", "run the oracle cross-check suite");
  verify->add_option("--output", flags.output, "output path or 'stdout'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    OutputSink sink(flags.output);
    std::ostream& out = sink.stream();
    if (verify->parsed()) {
      return spdc::cmd_verify(out) == 0 ? 0 : 3;
    }
    spdc::OutputFormat fmt;
    if (flags.format == "report") fmt = spdc::OutputFormat::report;
    else if (flags.format == "csv") fmt = spdc::OutputFormat::csv;
    else throw spdc::ConfigError("--format must be report or csv");
    spdc::RunConfig cfg = spdc::parse_run_config_file(flags.config_path);
    apply_overrides(cfg, flags);
    const bool csv_only = density->parsed() || propagate->parsed() ||
                          schmidt->parsed() || slit->parsed();
    CLI::App* active = app.get_subcommands().front();
    if (csv_only && active->count("--format") > 0 &&
        fmt == spdc::OutputFormat::report) {
      throw spdc::ConfigError("this command emits CSV only");
    }
    if (analyze->parsed()) {
      spdc::cmd_analyze(cfg, fmt, out);
    } else if (density->parsed()) {
      spdc::cmd_density(cfg, out);
    } else if (propagate->parsed()) {
      spdc::cmd_propagate(cfg, out);
    } else if (schmidt->parsed()) {
      spdc::cmd_schmidt(cfg, flags.n_max, out);
    } else if (temporal->parsed()) {
      spdc::cmd_temporal(cfg, flags.materials, fmt, out);
    } else if (slit->parsed()) {
      spdc::cmd_slit_scan(cfg, out);
    }
    return 0;
  } catch (const spdc::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const spdc::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const spdc::MissingField& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const spdc::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}
