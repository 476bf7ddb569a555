#pragma once

#include <cstdint>

#include "lineagedist/model_params.hpp"
#include "lineagedist/quadrature.hpp"
#include "lineagedist/special_functions.hpp"

namespace lineagedist {

// Evaluation routes for the age-averaged size distribution.  The two
// exact routes must agree to quadrature tolerance; the second-order and
// asymptotic routes are approximations whose error is reported, never
// hidden.
enum class MethodKind { ExactSeries, ExactQuadrature, SecondOrder, Asymptotic };

// Pieces of the order-n^-2 approximant: the truncated gamma-ratio
// prefactor bracket (1 + a1/n + a2/n^2) and the k-weighted series sums
// over w_k = (poch_base)_k series_arg^k / k!.
struct SecondOrderCoefficients {
  double r = 0.0;           // rho/omega, sign carried
  double series_arg = 0.0;  // theta (supercritical) or 1/theta (subcritical)
  double poch_base = 0.0;   // 1+r (supercritical) or -r (subcritical)
  double T0 = 0.0;          // sum w_k
  double B_linear = 0.0;    // sum k w_k
  double B_quadratic = 0.0; // sum k^2 w_k
  double a1 = 0.0, a2 = 0.0;
  double lin_k = 0.0;       // coefficient of k/n inside the series bracket
  double phi_k2 = 0.0, phi_k1 = 0.0;

  double phi(double k) const { return phi_k2 * k * k + phi_k1 * k; }
  double prefactor_bracket(double n) const {
    return 1.0 + a1 / n + a2 / (n * n);
  }
  double weighted_series(double n) const {
    return T0 + lin_k * B_linear / n +
           (phi_k2 * B_quadratic + phi_k1 * B_linear) / (n * n);
  }

  static SecondOrderCoefficients build(const ModelParams& params,
                                       const SeriesControl& ctrl = {});
};

// ---- exact routes -------------------------------------------------------

// Normalized (sums to 1 over n >= 1) truncated age-averaged pmf by the
// hypergeometric series route.
double q_series_exact(const ModelParams& params, std::int64_t n,
                      const SeriesControl& ctrl = {});
double log_q_series_exact(const ModelParams& params, std::int64_t n,
                          const SeriesControl& ctrl = {});

// Same object by adaptive quadrature of the Beta-type integral; the
// untruncated variant integrates p_n instead of P_n.
double q_integral_exact(const ModelParams& params, std::int64_t n,
                        const QuadratureConfig& cfg = {}, bool truncated = true);

// ---- approximations -----------------------------------------------------

double q_second_order(const ModelParams& params, std::int64_t n,
                      const SeriesControl& ctrl = {});

double q_asymptotic(const ModelParams& params, std::int64_t n);
double log_q_asymptotic(const ModelParams& params, std::int64_t n);

// ---- finite clade age ---------------------------------------------------

// Age-averaged truncated pmf when sublineage ages are bounded by tau
// (time-domain quadrature against the normalized age density).
double q_finite_tau(const ModelParams& params, std::int64_t n, double tau,
                    const QuadratureConfig& cfg = {});

// ---- pure birth ---------------------------------------------------------

// Weighted pure-birth pmf (mu == 0): exact (rho/lambda) Beta(rho/lambda+1, n),
// its n^-2 expansion, or the power-law limit, all normalized identically.
double pure_birth_weighted_pmf(const ModelParams& params, std::int64_t n,
                               MethodKind method,
                               const QuadratureConfig& cfg = {});

// ---- scale accessor -----------------------------------------------------

// The supercritical integral at the scale the source tables use (the
// normalized pmf times omega); sums to omega over n >= 1.
double q_paper_scale(const ModelParams& params, std::int64_t n,
                     const SeriesControl& ctrl = {});

// Method dispatch used by the CDF/reporting layers.
double q_pmf(const ModelParams& params, std::int64_t n, MethodKind method,
             const QuadratureConfig& quad = {}, const SeriesControl& series = {});

// Termwise series evaluation is wasteful past this point; tail work
// switches to the one-quadrature identity.
std::int64_t series_switch_point(const ModelParams& params);

}  // namespace lineagedist
