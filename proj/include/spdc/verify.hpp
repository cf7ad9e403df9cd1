#ifndef SPDC_VERIFY_HPP
#define SPDC_VERIFY_HPP

// Self-verification: independent numerical oracles cross-checking the
// closed-form results (Fourier consistency, FFT propagation vs analytic
// coefficients, quadrature moments, Schmidt sums, g1/g2 defining integrals,
// and the width/CDF figures). Each check reports its measured deviation and
// the limit it must stay under.

#include <string>
#include <vector>

#include "spdc/gaussfit.hpp"

namespace spdc {

struct VerifyCheck {
  std::string name;
  double measured = 0.0;
  double limit = 0.0;
  bool pass = false;
  std::string note;
};

// The full cross-check suite; runs in a few seconds.
std::vector<VerifyCheck> run_verification();

// Moments of the exact densities by quadrature, independent of the closed
// moment formulas: finite-range adaptive Gauss-Kronrod out to 60 scaled
// widths plus analytic integration-by-parts tails. order is 0 (mass) or 2.
// The k-space tail split sin^2 = (1-cos)/2 is exact; the x-space tail uses
// the Fresnel asymptotic expansion of the density's amplitude.
double k_minus_moment_quadrature(double a, int order);
double x_minus_moment_quadrature(double a, int order);

// Defining-integral evaluations of the symmetric coherence functions over
// the Double-Gaussian wavefunction (adaptive quadrature, no closed forms).
double g1_symmetric_quadrature(const DoubleGaussian& dg, double x);
double g2_symmetric_quadrature(const DoubleGaussian& dg, double x);

}  // namespace spdc

#endif  // SPDC_VERIFY_HPP
