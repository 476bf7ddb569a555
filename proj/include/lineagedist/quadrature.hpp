#pragma once

#include <cmath>
#include <utility>

#include "lineagedist/errors.hpp"

namespace lineagedist {

// Controls for the adaptive Gauss-Kronrod integrator and for the
// Beta-type integrals built on top of it.  endpoint_substitution enables
// the u = (1-y)^r change of variables that removes the integrable
// (1-y)^(r-1) singularity when r < 1.
struct QuadratureConfig {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_depth = 60;
  bool endpoint_substitution = true;
};

namespace detail {

// 15-point Kronrod nodes/weights with embedded 7-point Gauss rule.
inline constexpr double kGk15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kGk15Weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kG7Weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
std::pair<double, double> gk15(F& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  const double fc = f(mid);
  double kronrod = fc * kGk15Weights[7];
  double gauss = fc * kG7Weights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kGk15Nodes[i];
    const double fsum = f(mid - dx) + f(mid + dx);
    kronrod += fsum * kGk15Weights[i];
    if (i % 2 == 1) gauss += fsum * kG7Weights[i / 2];
  }
  kronrod *= half;
  gauss *= half;
  return {kronrod, std::abs(kronrod - gauss)};
}

// Contributions this small cannot move any double-precision result; they
// are accepted outright so underflow transitions do not burn depth.
inline constexpr double kNegligible = 1e-280;

template <class F>
double adapt(F& f, double a, double b, double tol, int depth,
             const QuadratureConfig& cfg, double& achieved) {
  auto [integral, err] = gk15(f, a, b);
  if (err <= tol || err <= cfg.rel_tol * std::abs(integral) ||
      err < kNegligible) {
    achieved += err;
    return integral;
  }
  if (depth >= cfg.max_depth) {
    throw QuadratureError("adaptive quadrature: max depth exceeded", err);
  }
  const double mid = 0.5 * (a + b);
  return adapt(f, a, mid, 0.5 * tol, depth + 1, cfg, achieved) +
         adapt(f, mid, b, 0.5 * tol, depth + 1, cfg, achieved);
}

}  // namespace detail

// Adaptive integral of f over [a, b].  Deterministic; throws
// QuadratureError when the subdivision budget is exhausted above
// tolerance.  The root estimate anchors an absolute error budget so that
// scale-invariant integrand stretches (pure powers) cannot recurse
// without bound under the relative test alone.
template <class F>
double integrate(F&& f, double a, double b, const QuadratureConfig& cfg = {}) {
  if (!(b > a)) return 0.0;
  auto [root, root_err] = detail::gk15(f, a, b);
  (void)root_err;
  const double budget =
      std::max(cfg.abs_tol, cfg.rel_tol * std::abs(root));
  double achieved = 0.0;
  return detail::adapt(f, a, b, budget, 0, cfg, achieved);
}

}  // namespace lineagedist
