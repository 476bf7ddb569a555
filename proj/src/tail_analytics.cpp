#include "lineagedist/tail_analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

namespace lineagedist {

namespace {

constexpr std::int64_t kInt64Max = std::numeric_limits<std::int64_t>::max();
constexpr std::int64_t kApproxPrefixLimit = 4096;
constexpr std::int64_t kSubcriticalPrefixLimit = 1 << 20;

}  // namespace

double zeta_tail(double s, double n) {
  if (!(s > 1.0)) throw std::domain_error("zeta_tail: requires s > 1");
  const double a = n + 1.0;
  const double f = std::pow(a, -s);
  return std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * f +
         s * f / a / 12.0 -
         s * (s + 1.0) * (s + 2.0) * f / (a * a * a) / 720.0 +
         s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * f /
             (a * a * a * a * a) / 30240.0;
}

double exact_tail(const ModelParams& params, double n,
                  const QuadratureConfig& cfg) {
  params.require_noncritical("exact_tail");
  if (!(n >= 0.0)) throw std::domain_error("exact_tail: n must be >= 0");
  QuadratureConfig qc = cfg;
  qc.abs_tol = 0.0;
  const double theta = params.theta();
  const double r = params.r();
  if (params.regime() == Regime::Supercritical) {
    // sum_{m>n} Q_m = r(1-theta) int y^n (1-y)^(r-1) (1-theta y)^(-r-1) dy
    if (r < 1.0 && qc.endpoint_substitution) {
      // u = (1-y)^r removes the endpoint singularity
      auto f = [&](double u) {
        const double u1r = std::exp(std::log(u) / r);
        return std::exp(n * std::log1p(-u1r) -
                        (r + 1.0) * std::log1p(-theta * (1.0 - u1r)));
      };
      return (1.0 - theta) * integrate(f, 0.0, 1.0, qc);
    }
    auto f = [&](double y) {
      return std::exp(n * std::log(y) + (r - 1.0) * std::log1p(-y) -
                      (r + 1.0) * std::log1p(-theta * y));
    };
    return r * (1.0 - theta) * integrate(f, 0.0, 1.0, qc);
  }
  // subcritical: sum_{m>n} Q_m =
  //   r(1-theta) theta^(-n-1) int z^n (1-z)^(-r-1) (1-z/theta)^(r-1) dz
  const double s = -r;  // > 0
  double integral;
  if (s < 1.0 && qc.endpoint_substitution) {
    auto f = [&](double u) {
      const double z = 1.0 - std::exp(std::log(u) / s);
      return std::exp(n * std::log(z) + (r - 1.0) * std::log1p(-z / theta));
    };
    integral = integrate(f, 0.0, 1.0, qc) / s;
  } else {
    auto f = [&](double z) {
      return std::exp(n * std::log(z) + (s - 1.0) * std::log1p(-z) +
                      (r - 1.0) * std::log1p(-z / theta));
    };
    integral = integrate(f, 0.0, 1.0, qc);
  }
  const double log_tail = std::log(r * (1.0 - theta)) -
                          (n + 1.0) * std::log(theta) + std::log(integral);
  return std::exp(log_tail);
}

DistributionEvaluator::DistributionEvaluator(const ModelParams& params,
                                             MethodKind method,
                                             QuadratureConfig quad,
                                             SeriesControl series)
    : params_(params), method_(method), quad_(quad), series_(series) {
  params_.require_noncritical("DistributionEvaluator");
  const bool exact = method_ == MethodKind::ExactSeries ||
                     method_ == MethodKind::ExactQuadrature;
  if (params_.regime() == Regime::Subcritical) {
    prefix_limit_ = exact ? series_switch_point(params_)
                          : kSubcriticalPrefixLimit;
  } else {
    prefix_limit_ = exact ? series_switch_point(params_) : kApproxPrefixLimit;
  }
  prefix_.reserve(1024);
  prefix_.push_back(0.0);  // prefix_[0]
}

double DistributionEvaluator::pmf(std::int64_t n) {
  switch (method_) {
    case MethodKind::ExactSeries:
      return q_series_exact(params_, n, series_);
    case MethodKind::ExactQuadrature:
      return q_integral_exact(params_, n, quad_, true);
    case MethodKind::SecondOrder:
      if (!so_) so_ = SecondOrderCoefficients::build(params_, series_);
      return q_second_order(params_, n, series_);
    case MethodKind::Asymptotic:
      return q_asymptotic(params_, n);
  }
  throw std::logic_error("DistributionEvaluator: unknown method");
}

double DistributionEvaluator::approx_tail(double n) {
  // analytic tail of the approximants, valid in the supercritical regime
  const double r = params_.r();
  const double theta = params_.theta();
  if (method_ == MethodKind::Asymptotic) {
    const double c = r * std::exp(-r * std::log1p(-theta)) *
                     std::exp(ln_gamma(1.0 + r));
    return c * zeta_tail(1.0 + r, n);
  }
  if (!so_) so_ = SecondOrderCoefficients::build(params_, series_);
  const SecondOrderCoefficients& c = *so_;
  const double L = c.lin_k * c.B_linear;
  const double Q = c.phi_k2 * c.B_quadratic + c.phi_k1 * c.B_linear;
  const double c0 = c.T0;
  const double c1 = L + c.a1 * c.T0;
  const double c2 = Q + c.a1 * L + c.a2 * c.T0;
  const double c3 = c.a1 * Q + c.a2 * L;
  const double c4 = c.a2 * Q;
  const double pref =
      r * (1.0 - theta) * std::exp(ln_gamma(1.0 + r));
  return pref * (c0 * zeta_tail(1.0 + r, n) + c1 * zeta_tail(2.0 + r, n) +
                 c2 * zeta_tail(3.0 + r, n) + c3 * zeta_tail(4.0 + r, n) +
                 c4 * zeta_tail(5.0 + r, n));
}

double DistributionEvaluator::cdf_absolute(std::int64_t n) {
  if (n <= 0) return 0.0;
  if (n <= prefix_limit_) {
    while (static_cast<std::int64_t>(prefix_.size()) <= n) {
      const std::int64_t m = static_cast<std::int64_t>(prefix_.size());
      prefix_.push_back(prefix_.back() + pmf(m));
    }
    return prefix_[static_cast<std::size_t>(n)];
  }
  const bool exact = method_ == MethodKind::ExactSeries ||
                     method_ == MethodKind::ExactQuadrature;
  if (exact) {
    return total_mass() - exact_tail(params_, static_cast<double>(n), quad_);
  }
  if (params_.regime() == Regime::Subcritical) {
    // geometric decay: everything representable is inside the prefix range
    return total_mass();
  }
  return total_mass() - approx_tail(static_cast<double>(n));
}

double DistributionEvaluator::total_mass() {
  if (total_) return *total_;
  const bool exact = method_ == MethodKind::ExactSeries ||
                     method_ == MethodKind::ExactQuadrature;
  if (exact) {
    total_ = exact_tail(params_, 0.0, quad_);
  } else if (params_.regime() == Regime::Subcritical) {
    // sum until the geometric terms stop contributing
    double total = 0.0;
    for (std::int64_t m = 1; m <= kSubcriticalPrefixLimit; ++m) {
      const double v = pmf(m);
      total += v;
      if (m > 8 && v < 1e-18 * total) break;
    }
    total_ = total;
  } else {
    total_ = cdf_absolute(kApproxPrefixLimit) +
             approx_tail(static_cast<double>(kApproxPrefixLimit));
  }
  return *total_;
}

double DistributionEvaluator::cdf(std::int64_t n) {
  if (n <= 0) return 0.0;
  const double v = cdf_absolute(n) / total_mass();
  return std::min(v, 1.0);
}

std::vector<std::pair<std::int64_t, double>> cdf(const CdfRequest& req) {
  if (req.n_points.empty()) {
    throw std::domain_error("cdf: n_points must be non-empty");
  }
  for (std::size_t i = 0; i < req.n_points.size(); ++i) {
    if (req.n_points[i] < 1 ||
        (i > 0 && req.n_points[i] <= req.n_points[i - 1])) {
      throw std::domain_error("cdf: n_points must be strictly increasing "
                              "positive integers");
    }
  }
  DistributionEvaluator ev(req.params, req.method, req.quad, req.series);
  std::vector<std::pair<std::int64_t, double>> out;
  out.reserve(req.n_points.size());
  for (std::int64_t n : req.n_points) {
    const double v = req.normalization == CdfNormalization::SelfNormalized
                         ? ev.cdf(n)
                         : std::min(ev.cdf_absolute(n), 1.0);
    out.emplace_back(n, v);
  }
  return out;
}

std::int64_t quantile(const QuantileRequest& req) {
  if (!(req.tail_prob > 0.0) || !(req.tail_prob < 1.0)) {
    throw std::domain_error("quantile: p must be in (0,1)");
  }
  DistributionEvaluator ev(req.params, req.method, req.quad, req.series);
  const double target = 1.0 - req.tail_prob;
  std::map<std::int64_t, double> cache;
  auto cdf_at = [&](std::int64_t n) {
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    const double v = ev.cdf(n);
    cache.emplace(n, v);
    return v;
  };
  if (cdf_at(1) >= target) return 1;
  std::int64_t lo = 1;  // invariant: cdf(lo) < target
  std::int64_t hi = 1;
  for (;;) {
    if (hi > kInt64Max / 2) {
      hi = kInt64Max;
      if (cdf_at(hi) < target) {
        throw QuantileOverflowError(
            "quantile: n* exceeds 2^63-1 (CDF at the cap is " +
            std::to_string(cdf_at(hi)) + " < " + std::to_string(target) + ")");
      }
      break;
    }
    hi *= 2;
    if (cdf_at(hi) >= target) break;
    lo = hi;
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (cdf_at(mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

ApproximationErrorReport approximation_error_report(
    const ModelParams& params, const std::vector<std::int64_t>& n_grid,
    const SeriesControl& ctrl) {
  params.require_noncritical("approximation_error_report");
  DistributionEvaluator exact(params, MethodKind::ExactSeries, {}, ctrl);
  DistributionEvaluator second(params, MethodKind::SecondOrder, {}, ctrl);
  DistributionEvaluator asym(params, MethodKind::Asymptotic, {}, ctrl);
  ApproximationErrorReport report;
  report.rows.reserve(n_grid.size());
  std::optional<bool> first_second_order_better;
  for (std::int64_t n : n_grid) {
    ApproximationErrorRow row;
    row.n = n;
    const double ce = exact.cdf(n);
    row.second_order = (second.cdf(n) - ce) / ce;
    row.asymptotic = (asym.cdf(n) - ce) / ce;
    const double pe = q_series_exact(params, n, ctrl);
    row.second_order_pmf = (q_second_order(params, n, ctrl) - pe) / pe;
    row.asymptotic_pmf = (q_asymptotic(params, n) - pe) / pe;
    report.rows.push_back(row);
    const bool so_better =
        std::abs(row.second_order) <= std::abs(row.asymptotic);
    if (!first_second_order_better) {
      first_second_order_better = so_better;
    } else if (!report.crossover_n &&
               so_better != *first_second_order_better) {
      report.crossover_n = n;
    }
  }
  return report;
}

}  // namespace lineagedist
