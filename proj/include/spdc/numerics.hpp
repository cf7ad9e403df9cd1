#ifndef SPDC_NUMERICS_HPP
#define SPDC_NUMERICS_HPP

// Special functions and generic numerical machinery shared by all modules.
//
// Fresnel convention: fresnel_c/fresnel_s use the pi/2-argument form
//   C(x) = int_0^x cos(pi t^2/2) dt,  S(x) = int_0^x sin(pi t^2/2) dt,
// i.e. the convention under which the position-difference density takes
// arguments x/sqrt(2*pi*a). Other conventions silently rescale the density.
//
// All functions here are pure; no shared mutable state.

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace spdc {

// Uniformly sampled 1D axis. values[i] sits at coord(i).
struct Grid1D {
  double min = 0.0;
  double max = 0.0;
  std::vector<double> values;

  static Grid1D linspace(double lo, double hi, std::size_t n_points);

  std::size_t size() const { return values.size(); }
  double step() const {
    return (max - min) / static_cast<double>(values.size() - 1);
  }
  double coord(std::size_t i) const {
    return min + static_cast<double>(i) * step();
  }
  void validate() const;  // throws BadGrid on a malformed grid
};

// sin(x)/x with the removable singularity handled; |sinc(x)| <= 1.
double sinc(double x);

// Fresnel integrals, pi/2-argument convention (both odd, -> 1/2 at +inf).
// Power series below |x| = 1.5, complex continued fraction above; accurate
// to ~1e-15.
double fresnel_c(double x);
double fresnel_s(double x);

// Adaptive Gauss-Kronrod (15-point) quadrature with interval bisection.
// lo/hi may be +-infinity; semi-infinite and doubly infinite ranges are
// mapped onto finite intervals via x = lo + t/(1-t) and x = t/(1-t^2).
// Suitable for smooth integrands with monotone-decaying tails (Gaussians,
// rational tails); NOT for integrands oscillating all the way to infinity.
// Throws NonConvergence when the refinement budget is exhausted.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double rel_tol = 1e-10);

enum class DftDirection { forward, inverse };

// Unitary discrete Fourier transform (1/sqrt(N) each way); N must be a
// power of two (throws BadGrid otherwise). forward uses e^{-2*pi*i*nk/N}.
std::vector<std::complex<double>> dft_1d(std::vector<std::complex<double>> samples,
                                         DftDirection direction);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Distance between the two points around the peak of f (unimodal near its
// peak inside bracket) where f equals fraction * max(f). Bisection to 1e-10
// relative precision. Throws NoCrossing if f never falls below the level on
// either side of the peak inside the bracket.
double full_width_at_fraction(const std::function<double(double)>& f,
                              double fraction, Interval bracket);

// Bisection root of f on [lo, hi]; f(lo) and f(hi) must differ in sign.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double x_tol = 1e-14);

}  // namespace spdc

#endif  // SPDC_NUMERICS_HPP
