#include "lineagedist/special_functions.hpp"

#include <cmath>
#include <string>

namespace lineagedist {

void HypergeometricArgs::validate() const {
  if (!(std::abs(z) < 1.0)) {
    throw std::domain_error("gauss_2f1: series requires |z| < 1, got z=" +
                            std::to_string(z));
  }
  if (c <= 0.0 && c == std::floor(c)) {
    throw std::domain_error("gauss_2f1: c must not be zero or a negative "
                            "integer, got c=" + std::to_string(c));
  }
}

double ln_gamma(double x) {
  if (!(x > 0.0)) {
    throw std::domain_error("ln_gamma: requires x > 0, got x=" +
                            std::to_string(x));
  }
  return std::lgamma(x);
}

double pochhammer(double a, int k) {
  if (k < 0) throw std::domain_error("pochhammer: k must be >= 0");
  // extended-precision running product; the rounded result stays within an
  // ulp or two even for k in the hundreds
  long double p = 1.0L;
  for (int i = 0; i < k; ++i) p *= static_cast<long double>(a) + i;
  return static_cast<double>(p);
}

Gauss2F1Result gauss_2f1(const HypergeometricArgs& args,
                         const SeriesControl& ctrl) {
  args.validate();
  double sum = 1.0;
  double term = 1.0;
  int consecutive_small = 0;
  for (int k = 0; k < ctrl.max_terms; ++k) {
    term *= (args.a + k) * (args.b + k) / (args.c + k) * args.z / (k + 1);
    sum += term;
    if (std::abs(term) < ctrl.rel_tol * std::abs(sum)) {
      if (++consecutive_small >= 3) return {sum, k + 2};
    } else {
      consecutive_small = 0;
    }
  }
  throw ConvergenceError("gauss_2f1: no convergence after " +
                             std::to_string(ctrl.max_terms) + " terms",
                         ctrl.max_terms);
}

double ln_beta(double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) {
    throw std::domain_error("ln_beta: requires p, q > 0");
  }
  return ln_gamma(p) + ln_gamma(q) - ln_gamma(p + q);
}

double gamma_ratio_expansion(double shift, double n, int order) {
  if (order < 0 || order > 2) {
    throw std::domain_error("gamma_ratio_expansion: order must be 0, 1 or 2");
  }
  const double s = shift;
  double v = 1.0;
  if (order >= 1) v -= s * (s - 1.0) / (2.0 * n);
  if (order >= 2) v += s * (s - 1.0) * (s + 1.0) * (3.0 * s - 2.0) / (24.0 * n * n);
  return v;
}

}  // namespace lineagedist
