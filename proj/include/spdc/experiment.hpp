#ifndef SPDC_EXPERIMENT_HPP
#define SPDC_EXPERIMENT_HPP

// Monte Carlo simulation of the slit-scan coincidence measurement: pair
// sampling from either joint model, slit transmission, histogramming, and
// width recovery by variance-subtraction deconvolution.
//
// Determinism contract: identical (seed, config) produce bit-identical
// histograms. Each scan step draws from its own (seed, step) stream, so the
// result is independent of execution order and thread count.

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "spdc/gaussfit.hpp"

namespace spdc {

enum class PairModel { double_gaussian, sinc_exact };

struct SlitScanConfig {
  double slit_width = 0.0;           // [m]
  double fixed_slit_position = 0.0;  // signal arm [m]
  double scan_min = 0.0;             // idler arm [m]
  double scan_max = 0.0;
  int scan_steps = 0;
  std::uint64_t pairs_per_step = 0;
  std::uint64_t rng_seed = 0;
  PairModel model = PairModel::double_gaussian;

  void validate() const;
};

struct SamplePair {
  double x1 = 0.0;
  double x2 = 0.0;
};

// Draw n transverse position pairs at the crystal plane.
//   double_gaussian: x+ ~ N(0, sigma_plus), x- ~ N(0, sigma_minus)
//   sinc_exact:      x+ Gaussian as above; x- by rejection from
//                    x_minus_density(., a) under a mixture envelope
//                    (0.6 peak-matched Gaussian + 0.4 algebraic tail
//                    ~(1+(x/3 sqrt(a))^2)^-2, safety factor 1.5; the heavy
//                    component covers the density's x^-4 wings, which escape
//                    any pure Gaussian envelope)
// dg supplies sigma_plus (and sigma_minus for the DG model); a is the scale
// parameter, used only in sinc mode. Throws EnvelopeViolation if a proposal
// exceeds the envelope -- abort, never clip.
std::vector<SamplePair> sample_pairs(PairModel model, const DoubleGaussian& dg,
                                     double a, std::size_t n, std::uint64_t seed);

struct CoincidenceHistogram {
  std::vector<double> bin_centers;   // scan positions [m]
  std::vector<std::uint64_t> counts;
  std::uint64_t total_pairs = 0;     // pairs drawn across the whole scan
  SlitScanConfig config_echo;
};

// For each scan position, count pairs passing both slits:
// |x1 - fixed| <= w/2 and |x2 - scan| <= w/2. Steps run in parallel;
// n_threads = 0 picks the hardware concurrency. The result is identical for
// every thread count because each step owns its stream.
CoincidenceHistogram simulate_slit_scan(const SlitScanConfig& cfg,
                                        const DoubleGaussian& dg, double a,
                                        unsigned n_threads = 0);

struct WidthEstimate {
  double sigma = 0.0;      // recovered conditional width [m]
  double error_bar = 0.0;  // 1-sigma bootstrap spread (200 resamples) [m]
};

// Histogram standard deviation minus the two slit rectangle variances
// (2 w^2/12) and the scan-step variance (step^2/12), square-rooted.
// Throws InsufficientData (< 100 counts or < 5 nonempty bins) and
// NegativeVariance (slits too wide relative to the underlying width).
WidthEstimate estimate_conditional_width(const CoincidenceHistogram& hist);

// CSV export: '#'-prefixed config echo, then header scan_position_m,counts.
void write_histogram_csv(std::ostream& out, const CoincidenceHistogram& hist);

}  // namespace spdc

#endif  // SPDC_EXPERIMENT_HPP
