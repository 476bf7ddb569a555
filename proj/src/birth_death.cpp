#include "lineagedist/birth_death.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace lineagedist {

namespace {

// Geometric parameters of p_n(t): p_0 = alpha, p_n = (1-alpha)(1-beta)
// beta^(n-1).  one_minus_beta is carried separately because beta -> 1 in
// the supercritical large-t limit.
struct GeometricForm {
  double beta;
  double one_minus_beta;
  double alpha;
  double one_minus_alpha;
};

GeometricForm geometric_form(const ModelParams& p, double t) {
  if (!(t >= 0.0)) throw std::domain_error("birth_death: t must be >= 0");
  const double omega = p.omega();
  if (omega == 0.0) {
    // lambda == mu closed form; the general expression is 0/0 here
    const double mt = 0.5 * (p.lambda() + p.mu()) * t;
    const double beta = mt / (1.0 + mt);
    const double omb = 1.0 / (1.0 + mt);
    return {beta, omb, beta, omb};
  }
  if (omega > 0.0) {
    // expm1 keeps the omega t -> 0 limit exact; exp keeps beta -> 1 exact
    const double e = std::expm1(-omega * t);     // e^{-omega t} - 1
    const double den = omega - p.mu() * e;       // lambda - mu e^{-omega t}
    const double beta = -p.lambda() * e / den;
    const double one_minus_beta = omega * std::exp(-omega * t) / den;
    const double alpha = p.theta() * beta;
    return {beta, one_minus_beta, alpha, 1.0 - alpha};
  }
  // subcritical: scale by e^{omega t} so nothing grows; q = theta - 1
  // computed from the rates directly to survive the near-critical limit
  const double q = -omega / p.lambda();
  const double ev = std::expm1(omega * t);       // e^{omega t} - 1, in (-1, 0]
  const double beta = ev / (ev - q);
  const double one_minus_beta = -q / (ev - q);
  const double alpha = (1.0 + q) * beta;
  return {beta, one_minus_beta, alpha, 1.0 - alpha};
}

double log_geometric_tail(const GeometricForm& g, std::int64_t n) {
  // ln beta^(n-1), with beta near 1 handled through one_minus_beta
  if (n == 1) return 0.0;
  if (g.beta <= 0.0) return -std::numeric_limits<double>::infinity();
  return static_cast<double>(n - 1) * std::log1p(-g.one_minus_beta);
}

}  // namespace

double bd_extinction_prob(const ModelParams& params, double t) {
  return geometric_form(params, t).alpha;
}

double bd_log_pmf(const ModelParams& params, double t, std::int64_t n) {
  if (n < 1) throw std::domain_error("bd_log_pmf: n must be >= 1");
  const GeometricForm g = geometric_form(params, t);
  if (g.one_minus_beta <= 0.0 || g.one_minus_alpha <= 0.0) {
    return -std::numeric_limits<double>::infinity();
  }
  return std::log(g.one_minus_alpha) + std::log(g.one_minus_beta) +
         log_geometric_tail(g, n);
}

double bd_pmf(const ModelParams& params, double t, std::int64_t n) {
  if (n < 0) throw std::domain_error("bd_pmf: n must be >= 0");
  if (n == 0) return bd_extinction_prob(params, t);
  if (t == 0.0) return n == 1 ? 1.0 : 0.0;
  // p_n = (1 - p_0) P_n, sharing the truncated evaluation so the identity
  // holds to rounding
  const GeometricForm g = geometric_form(params, t);
  return g.one_minus_alpha * bd_truncated_pmf(params, t, n);
}

double bd_truncated_log_pmf(const ModelParams& params, double t,
                            std::int64_t n) {
  if (n < 1) throw std::domain_error("bd_truncated_pmf: n must be >= 1");
  const GeometricForm g = geometric_form(params, t);
  if (g.one_minus_beta <= 0.0) {
    return -std::numeric_limits<double>::infinity();
  }
  return std::log(g.one_minus_beta) + log_geometric_tail(g, n);
}

double bd_truncated_pmf(const ModelParams& params, double t, std::int64_t n) {
  if (n < 1) throw std::domain_error("bd_truncated_pmf: n must be >= 1");
  if (t == 0.0) return n == 1 ? 1.0 : 0.0;
  return std::exp(bd_truncated_log_pmf(params, t, n));
}

double pure_birth_pmf(const ModelParams& params, double t, std::int64_t n) {
  if (params.mu() != 0.0) {
    throw std::domain_error("pure_birth_pmf: requires mu == 0, got mu=" +
                            std::to_string(params.mu()));
  }
  if (n < 1) throw std::domain_error("pure_birth_pmf: n must be >= 1");
  return bd_pmf(params, t, n);  // same code path; alpha vanishes at mu=0
}

double age_density(const ModelParams& params, double t,
                   std::optional<double> tau) {
  TimePoint tp{t, tau};
  tp.validate();
  const double rho = params.rho();
  const double kernel = rho * std::exp(-rho * t);
  if (!tau) return kernel;
  return kernel / (-std::expm1(-rho * *tau));
}

}  // namespace lineagedist
