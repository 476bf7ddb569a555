#include "lineagedist/lineage_distributions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lineagedist/birth_death.hpp"

namespace lineagedist {

namespace {

void require_size(std::int64_t n, const char* who) {
  if (n < 1) throw std::domain_error(std::string(who) + ": n must be >= 1");
}

// ln of the positive prefactor rho (1-theta) / omega = r (1-theta),
// shared by both noncritical regimes.
double log_prefactor(const ModelParams& p) {
  return std::log(p.r() * (1.0 - p.theta()));
}

}  // namespace

std::int64_t series_switch_point(const ModelParams& params) {
  const double r = std::abs(params.r());
  const double by_r = r > 0.0 ? std::ceil(50.0 / r) : 1000.0;
  return std::max<std::int64_t>(1000, static_cast<std::int64_t>(by_r));
}

SecondOrderCoefficients SecondOrderCoefficients::build(
    const ModelParams& params, const SeriesControl& ctrl) {
  params.require_noncritical("q_second_order");
  SecondOrderCoefficients c;
  c.r = params.r();
  const double r = c.r;
  if (params.regime() == Regime::Supercritical) {
    c.series_arg = params.theta();
    c.poch_base = 1.0 + r;
    c.a1 = -r * (1.0 + r) / 2.0;
    c.a2 = r * (1.0 + r) * (2.0 + r) * (3.0 * r + 1.0) / 24.0;
    c.lin_k = -(1.0 + r);
    c.phi_k2 = r * r / 2.0 + 1.5 * r + 1.0;
    c.phi_k1 = -(r * r / 2.0 + r / 2.0);
  } else {
    c.series_arg = 1.0 / params.theta();
    c.poch_base = -r;
    c.a1 = -r * (r + 1.0) / 2.0;
    c.a2 = r * (r + 1.0) * (3.0 * r + 2.0) * (r - 1.0) / 24.0;
    c.lin_k = r;
    c.phi_k2 = r * (r - 1.0) / 2.0;
    c.phi_k1 = r * (r + 1.0) / 2.0;
  }
  // the three k-series, summed together term by term
  double w = 1.0;
  int consecutive_small = 0;
  for (int k = 0; k < ctrl.max_terms; ++k) {
    c.T0 += w;
    c.B_linear += k * w;
    c.B_quadratic += static_cast<double>(k) * k * w;
    const double wn = w * (c.poch_base + k) * c.series_arg / (k + 1);
    if (std::abs(wn) * (1.0 + static_cast<double>(k + 1) * (k + 1)) <
        ctrl.rel_tol * std::abs(c.T0)) {
      if (++consecutive_small >= 3) return c;
    } else {
      consecutive_small = 0;
    }
    w = wn;
  }
  throw ConvergenceError("second-order k-series did not converge",
                         ctrl.max_terms);
}

double log_q_series_exact(const ModelParams& params, std::int64_t n,
                          const SeriesControl& ctrl) {
  require_size(n, "q_series_exact");
  params.require_noncritical("q_series_exact");
  const double r = params.r();
  const double theta = params.theta();
  const double nn = static_cast<double>(n);
  if (params.regime() == Regime::Supercritical) {
    const Gauss2F1Result f =
        gauss_2f1({nn, 1.0 + r, nn + r + 1.0, theta}, ctrl);
    return log_prefactor(params) + ln_gamma(1.0 + r) + ln_gamma(nn) -
           ln_gamma(nn + r + 1.0) + std::log(f.value);
  }
  // subcritical: Euler-integral parameters of the z-substituted integral,
  // series argument 1/theta
  const Gauss2F1Result f = gauss_2f1({nn, -r, nn - r, 1.0 / theta}, ctrl);
  return log_prefactor(params) + ln_gamma(-r) + ln_gamma(nn) -
         ln_gamma(nn - r) - nn * std::log(theta) + std::log(f.value);
}

double q_series_exact(const ModelParams& params, std::int64_t n,
                      const SeriesControl& ctrl) {
  return std::exp(log_q_series_exact(params, n, ctrl));
}

double q_integral_exact(const ModelParams& params, std::int64_t n,
                        const QuadratureConfig& cfg, bool truncated) {
  require_size(n, "q_integral_exact");
  params.require_noncritical("q_integral_exact");
  QuadratureConfig qc = cfg;
  qc.abs_tol = 0.0;  // positive integrands; pure relative control
  const double r = params.r();
  const double theta = params.theta();
  const double nn = static_cast<double>(n);
  if (params.regime() == Regime::Supercritical) {
    const double b = truncated ? -r - 1.0 : -r;
    auto f = [&](double y) {
      return std::exp((nn - 1.0) * std::log(y) + r * std::log1p(-y) +
                      b * std::log1p(-theta * y));
    };
    return r * (1.0 - theta) * integrate(f, 0.0, 1.0, qc);
  }
  // subcritical, z = theta * y substitution maps [0, 1/theta] to [0, 1]
  const double s = -r;  // > 0
  double integral;
  if (truncated) {
    // (1-z)^(s-1) is singular-integrable for s < 1
    if (s < 1.0 && qc.endpoint_substitution) {
      auto f = [&](double u) {
        const double z = 1.0 - std::exp(std::log(u) / s);
        return std::exp((nn - 1.0) * std::log(z) + r * std::log1p(-z / theta));
      };
      integral = integrate(f, 0.0, 1.0, qc) / s;
    } else {
      auto f = [&](double z) {
        return std::exp((nn - 1.0) * std::log(z) + (s - 1.0) * std::log1p(-z) +
                        r * std::log1p(-z / theta));
      };
      integral = integrate(f, 0.0, 1.0, qc);
    }
  } else {
    auto f = [&](double z) {
      return std::exp((nn - 1.0) * std::log(z) + s * std::log1p(-z) +
                      r * std::log1p(-z / theta));
    };
    integral = integrate(f, 0.0, 1.0, qc);
  }
  return std::exp(log_prefactor(params) - nn * std::log(theta) +
                  std::log(integral));
}

double q_second_order(const ModelParams& params, std::int64_t n,
                      const SeriesControl& ctrl) {
  require_size(n, "q_second_order");
  const SecondOrderCoefficients c = SecondOrderCoefficients::build(params, ctrl);
  const double r = c.r;
  const double nn = static_cast<double>(n);
  double log_pref;
  if (params.regime() == Regime::Supercritical) {
    log_pref = log_prefactor(params) + ln_gamma(1.0 + r) -
               (1.0 + r) * std::log(nn);
  } else {
    log_pref = log_prefactor(params) + ln_gamma(-r) + r * std::log(nn) -
               nn * std::log(params.theta());
  }
  return std::exp(log_pref) * c.prefactor_bracket(nn) * c.weighted_series(nn);
}

double log_q_asymptotic(const ModelParams& params, std::int64_t n) {
  require_size(n, "q_asymptotic");
  params.require_noncritical("q_asymptotic");
  const double r = params.r();
  const double theta = params.theta();
  const double nn = static_cast<double>(n);
  if (params.regime() == Regime::Supercritical) {
    // n -> inf limit of the truncated series: r (1-theta)^(-r) Gamma(1+r)
    // n^(-r-1)
    return std::log(r) - r * std::log1p(-theta) + ln_gamma(1.0 + r) -
           (r + 1.0) * std::log(nn);
  }
  // subcritical limit: r(1-theta) Gamma(-r) (1 - 1/theta)^r theta^(-n) n^r
  return log_prefactor(params) + ln_gamma(-r) +
         r * std::log1p(-1.0 / theta) - nn * std::log(theta) +
         r * std::log(nn);
}

double q_asymptotic(const ModelParams& params, std::int64_t n) {
  return std::exp(log_q_asymptotic(params, n));
}

double q_finite_tau(const ModelParams& params, std::int64_t n, double tau,
                    const QuadratureConfig& cfg) {
  require_size(n, "q_finite_tau");
  if (!(tau > 0.0)) throw std::domain_error("q_finite_tau: tau must be > 0");
  QuadratureConfig qc = cfg;
  qc.abs_tol = 0.0;
  const double rho = params.rho();
  auto f = [&](double t) {
    return rho * std::exp(-rho * t + bd_truncated_log_pmf(params, t, n));
  };
  const double norm = -std::expm1(-rho * tau);
  return integrate(f, 0.0, tau, qc) / norm;
}

double pure_birth_weighted_pmf(const ModelParams& params, std::int64_t n,
                               MethodKind method, const QuadratureConfig& cfg) {
  require_size(n, "pure_birth_weighted_pmf");
  if (params.mu() != 0.0) {
    throw std::domain_error("pure_birth_weighted_pmf: requires mu == 0");
  }
  const double s = params.rho() / params.lambda();
  const double nn = static_cast<double>(n);
  switch (method) {
    case MethodKind::ExactSeries: {
      // small integer s reduces to a finite rational, exact to rounding
      if (s == std::floor(s) && s <= 18.0) {
        const int si = static_cast<int>(s);
        double denom = 1.0;
        for (int j = 0; j <= si; ++j) denom *= nn + j;
        double fact = 1.0;
        for (int j = 2; j <= si; ++j) fact *= j;
        return s * fact / denom;
      }
      return std::exp(std::log(s) + ln_beta(s + 1.0, nn));
    }
    case MethodKind::ExactQuadrature:
      return q_integral_exact(params, n, cfg, true);
    case MethodKind::SecondOrder:
      return std::exp(std::log(s) + ln_gamma(s + 1.0) -
                      (s + 1.0) * std::log(nn)) *
             gamma_ratio_expansion(s + 1.0, nn, 2);
    case MethodKind::Asymptotic:
      return std::exp(std::log(s) + ln_gamma(s + 1.0) -
                      (s + 1.0) * std::log(nn));
  }
  throw std::logic_error("pure_birth_weighted_pmf: unknown method");
}

double q_paper_scale(const ModelParams& params, std::int64_t n,
                     const SeriesControl& ctrl) {
  if (params.regime() != Regime::Supercritical) {
    throw RegimeError("q_paper_scale: defined for the supercritical tables");
  }
  return params.omega() * q_series_exact(params, n, ctrl);
}

double q_pmf(const ModelParams& params, std::int64_t n, MethodKind method,
             const QuadratureConfig& quad, const SeriesControl& series) {
  switch (method) {
    case MethodKind::ExactSeries:
      return q_series_exact(params, n, series);
    case MethodKind::ExactQuadrature:
      return q_integral_exact(params, n, quad, true);
    case MethodKind::SecondOrder:
      return q_second_order(params, n, series);
    case MethodKind::Asymptotic:
      return q_asymptotic(params, n);
  }
  throw std::logic_error("q_pmf: unknown method");
}

}  // namespace lineagedist
