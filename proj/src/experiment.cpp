#include "spdc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include "spdc/errors.hpp"
#include "spdc/model.hpp"
#include "spdc/rng.hpp"

namespace spdc {

void SlitScanConfig::validate() const {
  if (!(slit_width > 0.0)) throw DomainError("SlitScanConfig: slit_width <= 0");
  if (!(scan_max > scan_min)) throw DomainError("SlitScanConfig: scan_max <= scan_min");
  if (scan_steps < 3) throw DomainError("SlitScanConfig: scan_steps < 3");
  if (pairs_per_step == 0) throw DomainError("SlitScanConfig: pairs_per_step == 0");
}

namespace {

constexpr double kEnvelopeSafety = 1.5;
constexpr double kGaussWeight = 0.6;
constexpr double kHeavyWeight = 0.4;

struct SincSampler {
  double a;
  double sigma_pm;  // peak-matched Gaussian width sqrt(8a/9)
  double s;         // heavy-tail scale 3 sqrt(a)

  explicit SincSampler(double a_in)
      : a(a_in), sigma_pm(std::sqrt(8.0 * a_in / 9.0)), s(3.0 * std::sqrt(a_in)) {}

  double envelope(double x) const {
    const double gauss = kGaussWeight / (std::sqrt(2.0 * M_PI) * sigma_pm) *
                         std::exp(-x * x / (2.0 * sigma_pm * sigma_pm));
    const double u = x / s;
    const double heavy = kHeavyWeight * (2.0 / (M_PI * s)) /
                         ((1.0 + u * u) * (1.0 + u * u));
    return gauss + heavy;
  }

  // inverse CDF of the heavy component: solve atan(u) + u/(1+u^2) = y
  // (monotone, f' = 2/(1+u^2)^2) by safeguarded Newton
  double heavy_inverse(double y) const {
    double lo = -2e5, hi = 2e5;
    // asymptotic start: f ~ 2u near 0, f ~ pi/2 - 2/(3u^3) near the edge
    double u = 0.5 * y;
    const double edge = std::max(M_PI / 2.0 - std::fabs(y), 1e-18);
    if (edge < 0.3) {
      u = std::cbrt(2.0 / (3.0 * edge));
      if (y < 0.0) u = -u;
    }
    for (int it = 0; it < 100; ++it) {
      const double one_u2 = 1.0 + u * u;
      const double f = std::atan(u) + u / one_u2 - y;
      if (f > 0.0) {
        hi = u;
      } else {
        lo = u;
      }
      const double step = f * one_u2 * one_u2 / 2.0;
      double next = u - step;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::fabs(next - u) < 1e-14 * (1.0 + std::fabs(u))) {
        u = next;
        break;
      }
      u = next;
    }
    return u * s;
  }

  double draw(Rng& rng) const {
    for (int attempt = 0; attempt < 10000; ++attempt) {
      double x;
      if (rng.uniform01() < kGaussWeight) {
        x = sigma_pm * rng.normal();
      } else {
        x = heavy_inverse(M_PI * (rng.uniform01() - 0.5));
      }
      const double bound = kEnvelopeSafety * envelope(x);
      const double target = x_minus_density(x, a);
      if (target > bound) {
        throw EnvelopeViolation(
            "sinc-mode rejection sampler: density exceeds envelope at x = " +
            std::to_string(x));
      }
      if (rng.uniform01() * bound < target) return x;
    }
    throw NonConvergence("sinc-mode rejection sampler: acceptance stalled");
  }
};

// draws one (x1, x2) pair per call; usable as a stream, no batch buffer
class PairDraw {
 public:
  PairDraw(PairModel model, const DoubleGaussian& dg, double a)
      : model_(model), dg_(dg), sinc_(a > 0.0 ? a : 1.0) {}

  SamplePair operator()(Rng& rng) const {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double xp = dg_.sigma_plus * rng.normal();
    const double xm = (model_ == PairModel::double_gaussian)
                          ? dg_.sigma_minus * rng.normal()
                          : sinc_.draw(rng);
    return {(xp + xm) * inv_sqrt2, (xp - xm) * inv_sqrt2};
  }

 private:
  PairModel model_;
  DoubleGaussian dg_;
  SincSampler sinc_;
};

}  // namespace

std::vector<SamplePair> sample_pairs(PairModel model, const DoubleGaussian& dg,
                                     double a, std::size_t n, std::uint64_t seed) {
  dg.validate();
  if (model == PairModel::sinc_exact && !(a > 0.0)) {
    throw DomainError("sample_pairs: sinc model needs a > 0");
  }
  if (n == 0) throw DomainError("sample_pairs: n must be >= 1");
  std::vector<SamplePair> pairs(n);
  const PairDraw draw(model, dg, a);
  Rng rng = Rng::for_stream(seed, 0);
  for (auto& p : pairs) p = draw(rng);
  return pairs;
}

CoincidenceHistogram simulate_slit_scan(const SlitScanConfig& cfg,
                                        const DoubleGaussian& dg, double a,
                                        unsigned n_threads) {
  cfg.validate();
  dg.validate();
  CoincidenceHistogram hist;
  hist.config_echo = cfg;
  hist.total_pairs = cfg.pairs_per_step * static_cast<std::uint64_t>(cfg.scan_steps);
  const int steps = cfg.scan_steps;
  hist.bin_centers.resize(steps);
  hist.counts.assign(steps, 0);
  for (int j = 0; j < steps; ++j) {
    hist.bin_centers[j] =
        cfg.scan_min + (cfg.scan_max - cfg.scan_min) * j / (steps - 1);
  }

  const double half_w = 0.5 * cfg.slit_width;
  const PairDraw draw(cfg.model, dg, a);
  auto run_step = [&](int j) {
    // stream j+1: stream 0 is reserved for direct sample_pairs calls
    Rng rng = Rng::for_stream(cfg.rng_seed, static_cast<std::uint64_t>(j) + 1);
    const double scan_pos = hist.bin_centers[j];
    std::uint64_t c = 0;
    for (std::uint64_t i = 0; i < cfg.pairs_per_step; ++i) {
      const SamplePair p = draw(rng);
      if (std::fabs(p.x1 - cfg.fixed_slit_position) <= half_w &&
          std::fabs(p.x2 - scan_pos) <= half_w) {
        ++c;
      }
    }
    hist.counts[j] = c;
  };

  if (n_threads == 0) n_threads = std::thread::hardware_concurrency();
  if (n_threads == 0) n_threads = 1;
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(steps));
  if (n_threads <= 1) {
    for (int j = 0; j < steps; ++j) run_step(j);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) {
      workers.emplace_back([&, t]() {
        for (int j = static_cast<int>(t); j < steps;
             j += static_cast<int>(n_threads)) {
          run_step(j);
        }
      });
    }
    for (auto& w : workers) w.join();
  }
  return hist;
}

namespace {

// weighted variance around the weighted mean, then subtract the two slit
// rectangles and the scan-step bin; < 0 reported through `ok`
double deconvolved_sigma(const std::vector<double>& centers,
                         const std::vector<std::uint64_t>& counts,
                         double slit_width, double bin_width, bool& ok) {
  double total = 0.0, mean = 0.0;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    total += static_cast<double>(counts[j]);
    mean += static_cast<double>(counts[j]) * centers[j];
  }
  mean /= total;
  double var = 0.0;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    const double d = centers[j] - mean;
    var += static_cast<double>(counts[j]) * d * d;
  }
  var /= total;
  var -= 2.0 * slit_width * slit_width / 12.0;
  var -= bin_width * bin_width / 12.0;
  ok = var > 0.0;
  return ok ? std::sqrt(var) : 0.0;
}

}  // namespace

WidthEstimate estimate_conditional_width(const CoincidenceHistogram& hist) {
  std::uint64_t total = 0;
  std::size_t nonempty = 0;
  for (auto c : hist.counts) {
    total += c;
    if (c > 0) ++nonempty;
  }
  if (total < 100 || nonempty < 5) {
    throw InsufficientData("estimate_conditional_width: need >= 100 counts in "
                           ">= 5 nonempty bins");
  }
  const double bin = hist.bin_centers.size() > 1
                         ? hist.bin_centers[1] - hist.bin_centers[0]
                         : 0.0;
  bool ok = false;
  const double sigma = deconvolved_sigma(hist.bin_centers, hist.counts,
                                         hist.config_echo.slit_width, bin, ok);
  if (!ok) {
    throw NegativeVariance("estimate_conditional_width: slit variance exceeds "
                           "histogram variance");
  }

  // bootstrap: multinomial resamples of the histogram
  const int n_resamples = 200;
  std::vector<double> cumulative(hist.counts.size());
  double acc = 0.0;
  for (std::size_t j = 0; j < hist.counts.size(); ++j) {
    acc += static_cast<double>(hist.counts[j]);
    cumulative[j] = acc;
  }
  // stream id far outside the per-step range 1..scan_steps
  Rng rng = Rng::for_stream(hist.config_echo.rng_seed, 0xB007B007B007B007ULL);
  std::vector<std::uint64_t> resampled(hist.counts.size());
  double sum = 0.0, sum_sq = 0.0;
  for (int r = 0; r < n_resamples; ++r) {
    std::fill(resampled.begin(), resampled.end(), 0ULL);
    for (std::uint64_t i = 0; i < total; ++i) {
      const double u = rng.uniform01() * acc;
      const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
      resampled[static_cast<std::size_t>(it - cumulative.begin())]++;
    }
    bool rok = false;
    const double s = deconvolved_sigma(hist.bin_centers, resampled,
                                       hist.config_echo.slit_width, bin, rok);
    sum += s;
    sum_sq += s * s;
  }
  WidthEstimate est;
  est.sigma = sigma;
  const double mean = sum / n_resamples;
  est.error_bar = std::sqrt(std::max(0.0, sum_sq / n_resamples - mean * mean));
  return est;
}

void write_histogram_csv(std::ostream& out, const CoincidenceHistogram& hist) {
  const auto& cfg = hist.config_echo;
  char line[128];
  auto emit = [&](const char* key, double v) {
    std::snprintf(line, sizeof(line), "# %s = %.17g\n", key, v);
    out << line;
  };
  emit("slit_width", cfg.slit_width);
  emit("fixed_slit_position", cfg.fixed_slit_position);
  emit("scan_min", cfg.scan_min);
  emit("scan_max", cfg.scan_max);
  out << "# scan_steps = " << cfg.scan_steps << "\n";
  out << "# pairs_per_step = " << cfg.pairs_per_step << "\n";
  out << "# rng_seed = " << cfg.rng_seed << "\n";
  out << "# model = "
      << (cfg.model == PairModel::double_gaussian ? "double_gaussian"
                                                  : "sinc_exact")
      << "\n";
  out << "scan_position_m,counts\n";
  for (std::size_t j = 0; j < hist.counts.size(); ++j) {
    std::snprintf(line, sizeof(line), "%.9e,%llu\n", hist.bin_centers[j],
                  static_cast<unsigned long long>(hist.counts[j]));
    out << line;
  }
}

}  // namespace spdc
