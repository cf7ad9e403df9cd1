#include "spdc/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "spdc/errors.hpp"

namespace spdc {

Grid1D Grid1D::linspace(double lo, double hi, std::size_t n_points) {
  Grid1D g;
  g.min = lo;
  g.max = hi;
  g.values.resize(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    g.values[i] = lo + static_cast<double>(i) * (hi - lo) /
                           static_cast<double>(n_points - 1);
  }
  return g;
}

void Grid1D::validate() const {
  if (values.size() < 2) throw BadGrid("Grid1D needs n_points >= 2");
  if (!(max > min)) throw BadGrid("Grid1D needs max > min");
}

double sinc(double x) {
  const double ax = std::fabs(x);
  if (ax < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

namespace {

// Power series of the Fresnel integrals, valid (and fast) for |x| <= 1.5.
void fresnel_series(double x, double& c, double& s) {
  const double pi_half = M_PI / 2.0;
  const double x4 = x * x * x * x;
  // C(x) = sum_k (-1)^k (pi/2)^{2k} x^{4k+1} / ((2k)! (4k+1))
  double term = x;
  double sum_c = term;
  for (int k = 0; k < 60; ++k) {
    const double tk = 2.0 * k;
    term *= -pi_half * pi_half * x4 * (4.0 * k + 1.0) /
            ((tk + 1.0) * (tk + 2.0) * (4.0 * k + 5.0));
    sum_c += term;
    if (std::fabs(term) < 1e-18 * std::fabs(sum_c)) break;
  }
  // S(x) = sum_k (-1)^k (pi/2)^{2k+1} x^{4k+3} / ((2k+1)! (4k+3))
  term = pi_half * x * x * x / 3.0;
  double sum_s = term;
  for (int k = 0; k < 60; ++k) {
    const double tk = 2.0 * k;
    term *= -pi_half * pi_half * x4 * (4.0 * k + 3.0) /
            ((tk + 2.0) * (tk + 3.0) * (4.0 * k + 7.0));
    sum_s += term;
    if (std::fabs(term) < 1e-18 * std::fabs(sum_s)) break;
  }
  c = sum_c;
  s = sum_s;
}

// Complex continued fraction for erfc-type evaluation of C + iS, |x| > 1.5
// (modified Lentz). Standard treatment of the Fresnel integrals' asymptotic
// region; converges in a handful of iterations there.
void fresnel_cf(double x, double& c, double& s) {
  const double eps = 1e-16;
  const int max_iter = 200;
  const double pix2 = M_PI * x * x;
  std::complex<double> b(1.0, -pix2);
  std::complex<double> cc(1.0 / 1e-300, 0.0);
  std::complex<double> d = 1.0 / b;
  std::complex<double> h = d;
  int n = -1;
  for (int k = 2; k <= max_iter; ++k) {
    n += 2;
    const double a = -static_cast<double>(n) * (n + 1);
    b += 4.0;
    d = 1.0 / (a * d + b);
    cc = b + a / cc;
    const std::complex<double> del = cc * d;
    h *= del;
    if (std::fabs(del.real() - 1.0) + std::fabs(del.imag()) < eps) break;
  }
  h *= std::complex<double>(x, -x);
  const std::complex<double> cs =
      std::complex<double>(0.5, 0.5) *
      (1.0 - std::complex<double>(std::cos(0.5 * pix2), std::sin(0.5 * pix2)) * h);
  c = cs.real();
  s = cs.imag();
}

void fresnel_cs(double x, double& c, double& s) {
  const double ax = std::fabs(x);
  if (ax < 1.5e-8) {
    c = ax;
    s = 0.0;
  } else if (ax <= 1.5) {
    fresnel_series(ax, c, s);
  } else {
    fresnel_cf(ax, c, s);
  }
  if (x < 0.0) {
    c = -c;
    s = -s;
  }
}

}  // namespace

double fresnel_c(double x) {
  double c, s;
  fresnel_cs(x, c, s);
  return c;
}

double fresnel_s(double x) {
  double c, s;
  fresnel_cs(x, c, s);
  return s;
}

namespace {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule
// (QUADPACK dqk15 constants).
constexpr double kKronrodNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kGaussWeights[4] = {0.129484966168870, 0.279705391489277,
                                     0.381830050505119, 0.417959183673469};

struct Panel {
  double lo, hi, integral, error;
};

struct PanelOrder {
  bool operator()(const Panel& a, const Panel& b) const {
    return a.error < b.error;
  }
};

Panel gauss_kronrod_15(const std::function<double(double)>& f, double lo,
                       double hi) {
  const double center = 0.5 * (lo + hi);
  const double halfw = 0.5 * (hi - lo);
  const double fc = f(center);
  double result_k = kKronrodWeights[7] * fc;
  double result_g = kGaussWeights[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = halfw * kKronrodNodes[i];
    const double pair = f(center - dx) + f(center + dx);
    result_k += kKronrodWeights[i] * pair;
    // odd-indexed Kronrod nodes are the embedded Gauss-7 nodes
    if (i % 2 == 1) result_g += kGaussWeights[i / 2] * pair;
  }
  Panel p;
  p.lo = lo;
  p.hi = hi;
  p.integral = result_k * halfw;
  p.error = std::fabs(result_k - result_g) * halfw;
  return p;
}

double integrate_finite(const std::function<double(double)>& f, double lo,
                        double hi, double rel_tol) {
  // seed with a few panels so narrow features away from the midpoint are seen
  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> heap;
  double total = 0.0;
  double total_err = 0.0;
  const int n_seed = 16;
  for (int i = 0; i < n_seed; ++i) {
    const double a = lo + (hi - lo) * i / n_seed;
    const double b = lo + (hi - lo) * (i + 1) / n_seed;
    Panel p = gauss_kronrod_15(f, a, b);
    total += p.integral;
    total_err += p.error;
    heap.push(p);
  }
  const int max_panels = 20000;
  int n_panels = n_seed;
  const double abs_floor = 1e-300;
  while (total_err > std::max(rel_tol * std::fabs(total), abs_floor)) {
    if (n_panels >= max_panels) {
      throw NonConvergence("integrate: refinement budget exhausted");
    }
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) {
      // interval at machine resolution, accept its estimate
      total_err -= worst.error;
      continue;
    }
    Panel left = gauss_kronrod_15(f, worst.lo, mid);
    Panel right = gauss_kronrod_15(f, mid, worst.hi);
    total += left.integral + right.integral - worst.integral;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++n_panels;
  }
  return total;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double rel_tol) {
  if (!(rel_tol > 0.0)) throw DomainError("integrate: rel_tol must be > 0");
  const bool lo_inf = std::isinf(lo);
  const bool hi_inf = std::isinf(hi);
  if (!lo_inf && !hi_inf) {
    if (lo == hi) return 0.0;
    return integrate_finite(f, lo, hi, rel_tol);
  }
  if (lo_inf && hi_inf) {
    // x = t/(1-t^2), dx = (1+t^2)/(1-t^2)^2 dt, t in (-1,1)
    auto g = [&f](double t) {
      const double om = 1.0 - t * t;
      const double x = t / om;
      return f(x) * (1.0 + t * t) / (om * om);
    };
    return integrate_finite(g, -1.0, 1.0, rel_tol);
  }
  if (!lo_inf && hi_inf) {
    // x = lo + t/(1-t), dx = dt/(1-t)^2, t in [0,1)
    auto g = [&f, lo](double t) {
      const double om = 1.0 - t;
      return f(lo + t / om) / (om * om);
    };
    return integrate_finite(g, 0.0, 1.0, rel_tol);
  }
  // (-inf, hi]: mirror of the previous case
  auto g = [&f, hi](double t) {
    const double om = 1.0 - t;
    return f(hi - t / om) / (om * om);
  };
  return integrate_finite(g, 0.0, 1.0, rel_tol);
}

std::vector<std::complex<double>> dft_1d(std::vector<std::complex<double>> samples,
                                         DftDirection direction) {
  const std::size_t n = samples.size();
  if (n < 2 || (n & (n - 1)) != 0) {
    throw BadGrid("dft_1d: n_points must be a power of two >= 2");
  }
  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(samples[i], samples[j]);
  }
  const double sign = (direction == DftDirection::forward) ? -1.0 : 1.0;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const std::complex<double> u = samples[i + j];
        const std::complex<double> v = samples[i + j + len / 2] * w;
        samples[i + j] = u + v;
        samples[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& z : samples) z *= scale;
  return samples;
}

double full_width_at_fraction(const std::function<double(double)>& f,
                              double fraction, Interval bracket) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw DomainError("full_width_at_fraction: fraction must be in (0,1)");
  }
  if (!(bracket.hi > bracket.lo)) {
    throw DomainError("full_width_at_fraction: empty bracket");
  }
  const int n_scan = 4096;
  const double h = (bracket.hi - bracket.lo) / n_scan;
  double best_x = bracket.lo;
  double best_f = f(bracket.lo);
  std::vector<double> samples(n_scan + 1);
  for (int i = 0; i <= n_scan; ++i) {
    const double x = bracket.lo + i * h;
    samples[i] = f(x);
    if (samples[i] > best_f) {
      best_f = samples[i];
      best_x = x;
    }
  }
  // refine the peak by ternary search around the best sample
  double a = std::max(bracket.lo, best_x - h);
  double b = std::min(bracket.hi, best_x + h);
  for (int it = 0; it < 100; ++it) {
    const double m1 = a + (b - a) / 3.0;
    const double m2 = b - (b - a) / 3.0;
    if (f(m1) < f(m2)) {
      a = m1;
    } else {
      b = m2;
    }
  }
  const double x_peak = 0.5 * (a + b);
  const double f_peak = f(x_peak);
  const double level = fraction * f_peak;

  auto crossing = [&](bool rightward) {
    const double dir = rightward ? 1.0 : -1.0;
    const double limit = rightward ? bracket.hi : bracket.lo;
    // march from the peak until the function falls below the level
    double x_in = x_peak;
    double x_out = x_peak;
    bool found = false;
    const int steps = 8192;
    const double dh = std::fabs(limit - x_peak) / steps;
    for (int i = 1; i <= steps; ++i) {
      const double x = x_peak + dir * i * dh;
      if (f(x) < level) {
        x_out = x;
        x_in = x_peak + dir * (i - 1) * dh;
        found = true;
        break;
      }
    }
    if (!found) {
      throw NoCrossing("full_width_at_fraction: no crossing inside bracket");
    }
    double lo = std::min(x_in, x_out);
    double hi = std::max(x_in, x_out);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const bool above = f(mid) >= level;
      if ((rightward && above) || (!rightward && !above)) {
        lo = mid;
      } else {
        hi = mid;
      }
      if (hi - lo < 1e-12 * std::max(1.0, std::fabs(mid))) break;
    }
    return 0.5 * (lo + hi);
  };

  const double right = crossing(true);
  const double left = crossing(false);
  return right - left;
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   double x_tol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw DomainError("bisect_root: f(lo) and f(hi) have the same sign");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo < x_tol * std::max(1.0, std::fabs(mid))) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace spdc
