#pragma once

// Test-only oracles, kept independent of the library's evaluation paths:
// a long-double Stirling ln-gamma, a hand-rolled adaptive Simpson
// integrator, extended-precision series summation, compensated sums and a
// small deterministic generator for property-test draws.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

// ln Gamma via argument shift + Stirling series in long double.
inline long double ln_gamma_ld(long double x) {
  long double shift = 0.0L;
  while (x < 32.0L) {
    shift -= std::log(x);
    x += 1.0L;
  }
  // even Bernoulli numbers B2..B16 over 2k(2k-1)
  static const long double coeff[8] = {
      1.0L / 12.0L,       -1.0L / 360.0L,      1.0L / 1260.0L,
      -1.0L / 1680.0L,    1.0L / 1188.0L,      -691.0L / 360360.0L,
      1.0L / 156.0L,      -3617.0L / 122400.0L};
  const long double half_log_2pi = 0.91893853320467274178L;
  long double s = (x - 0.5L) * std::log(x) - x + half_log_2pi;
  long double zinv = 1.0L / x;
  long double zpow = zinv;
  for (int k = 0; k < 8; ++k) {
    s += coeff[k] * zpow;
    zpow *= zinv * zinv;
  }
  return s + shift;
}

// Adaptive Simpson, recursion on the classical error estimate.
inline double simpson_step(const std::function<double(double)>& f, double a,
                           double b, double fa, double fm, double fb,
                           double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double err = left + right - whole;
  if (depth <= 0 || std::abs(err) < 15.0 * tol) {
    return left + right + err / 15.0;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double simpson(const std::function<double(double)>& f, double a,
                      double b, double tol = 1e-12, int depth = 48) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Panelized variant: narrow features cannot slip between the probe points
// of a single whole-interval estimate.
inline double simpson_panels(const std::function<double(double)>& f, double a,
                             double b, int panels = 256, double tol = 1e-13) {
  double total = 0.0;
  const double w = (b - a) / panels;
  for (int i = 0; i < panels; ++i) {
    total += simpson(f, a + i * w, a + (i + 1) * w, tol);
  }
  return total;
}

// Euler-type integral int_0^1 y^(p) (1-y)^(q) (1-z y)^(-b) dy; integrable
// singularities (negative exponents) are removed by power substitutions,
// smooth endpoints integrate directly.
inline double euler_integral(double p, double q, double b, double z,
                             double tol = 1e-12) {
  auto g = [=](double y) {
    return std::exp(p * std::log(y) + q * std::log1p(-y) -
                    b * std::log1p(-z * y));
  };
  double total = simpson(g, 0.25, 0.75, tol);
  if (p < 0.0) {
    // u = y^(p+1): y^p dy = du/(p+1)
    const double pa = p + 1.0;
    auto left = [=](double u) {
      const double y = std::pow(u, 1.0 / pa);
      return std::exp(q * std::log1p(-y) - b * std::log1p(-z * y)) / pa;
    };
    total += simpson(left, 1e-18, std::pow(0.25, pa), tol);
  } else {
    total += simpson(g, 1e-18, 0.25, tol);
  }
  if (q < 0.0) {
    // u = (1-y)^(q+1): (1-y)^q dy = du/(q+1)
    const double qa = q + 1.0;
    auto right = [=](double u) {
      const double y = 1.0 - std::pow(u, 1.0 / qa);
      return std::exp(p * std::log(y) - b * std::log1p(-z * y)) / qa;
    };
    total += simpson(right, 1e-18, std::pow(0.25, qa), tol);
  } else {
    total += simpson(g, 0.75, 1.0 - 1e-18, tol);
  }
  return total;
}

// Extended-precision term-by-term 2F1 series.
inline long double hyp2f1_ld(long double a, long double b, long double c,
                             long double z) {
  long double sum = 1.0L;
  long double term = 1.0L;
  for (int k = 0; k < 200000; ++k) {
    term *= (a + k) * (b + k) / (c + k) * z / (k + 1);
    sum += term;
    if (std::abs(term) < 1e-22L * std::abs(sum) && k > 4) break;
  }
  return sum;
}

// Neumaier compensated summation.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

// Deterministic uniform draws for property tests.
struct Draw {
  std::uint64_t state;
  explicit Draw(std::uint64_t seed) : state(seed) {}
  std::uint64_t next_u64() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double uniform(double lo, double hi) {
    const double u = (next_u64() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  }
  int uniform_int(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(next_u64() %
                                 static_cast<std::uint64_t>(hi - lo + 1));
  }
};

// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x,
                        const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracle
