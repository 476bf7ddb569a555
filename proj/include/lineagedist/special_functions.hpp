#pragma once

#include "lineagedist/errors.hpp"

namespace lineagedist {

// Termination control for the power series in this header.
struct SeriesControl {
  double rel_tol = 1e-12;
  int max_terms = 100000;
};

// Parameters of 2F1(a, b; c; z).  Only the real series domain |z| < 1 is
// supported; c must not be zero or a negative integer.
struct HypergeometricArgs {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double z = 0.0;
  void validate() const;
};

struct Gauss2F1Result {
  double value = 0.0;
  int terms = 0;  // series terms consumed, including the leading 1
};

// ln Gamma(x) for x > 0.
double ln_gamma(double x);

// Rising factorial (a)_k = a (a+1) ... (a+k-1), computed as a running
// product.  (a)_0 = 1.
double pochhammer(double a, int k);

// Gauss hypergeometric series sum_k (a)_k (b)_k / (c)_k z^k / k!.
// Stops once the term magnitude drops below rel_tol * |partial sum| for
// three consecutive terms; throws ConvergenceError when max_terms is hit
// first.
Gauss2F1Result gauss_2f1(const HypergeometricArgs& args,
                         const SeriesControl& ctrl = {});

// ln B(p, q) for p, q > 0.
double ln_beta(double p, double q);

// Truncated 1/n expansion of Gamma(n)/Gamma(n+shift) * n^shift:
//   order 0:  1
//   order 1:  1 - s(s-1)/(2n)
//   order 2:  1 - s(s-1)/(2n) + s(s-1)(s+1)(3s-2)/(24 n^2)
// The remainder is O(n^-3).
double gamma_ratio_expansion(double shift, double n, int order);

}  // namespace lineagedist
