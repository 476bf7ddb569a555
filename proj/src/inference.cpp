#include "lineagedist/inference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include "lineagedist/lineage_distributions.hpp"
#include "lineagedist/tail_analytics.hpp"

namespace lineagedist {

namespace {

constexpr double kRMin = 1e-8;
constexpr double kRMax = 1e3;
constexpr double kThetaMax = 1.0 - 1e-6;

double log_likelihood_hist(const std::map<std::int64_t, std::int64_t>& hist,
                           double r, double theta) {
  if (!(r > 0.0)) throw std::domain_error("log_likelihood: r must be > 0");
  if (!(theta >= 0.0) || !(theta < 1.0)) {
    throw std::domain_error("log_likelihood: theta must be in [0,1)");
  }
  const ModelParams params = ModelParams::from_ratios(r, theta);
  const std::int64_t n_switch = series_switch_point(params);
  double ll = 0.0;
  for (const auto& [n, count] : hist) {
    double log_q;
    if (n <= n_switch) {
      log_q = log_q_series_exact(params, n);
    } else {
      const double q = q_integral_exact(params, n);
      if (!(q > 0.0) || !std::isfinite(q)) {
        throw EvaluationError("log_likelihood: pmf evaluation failed", n);
      }
      log_q = std::log(q);
    }
    if (!std::isfinite(log_q)) {
      throw EvaluationError("log_likelihood: pmf evaluation failed", n);
    }
    ll += static_cast<double>(count) * log_q;
  }
  return ll;
}

std::map<std::int64_t, std::int64_t> to_hist(const ObservedCounts& data) {
  std::map<std::int64_t, std::int64_t> hist;
  for (std::int64_t n : data.sizes) ++hist[n];
  return hist;
}

struct Objective {
  const std::map<std::int64_t, std::int64_t>& hist;
  // coordinates: u = ln r, v = logit(theta)
  double operator()(double u, double v) const {
    const double r = std::clamp(std::exp(u), kRMin, kRMax);
    const double theta = std::clamp(1.0 / (1.0 + std::exp(-v)), 0.0, kThetaMax);
    try {
      return -log_likelihood_hist(hist, r, theta);
    } catch (const EvaluationError&) {
      return std::numeric_limits<double>::infinity();
    }
  }
};

struct SimplexPoint {
  double u, v, f;
};

}  // namespace

void ObservedCounts::validate() const {
  if (sizes.empty()) {
    throw std::domain_error("ObservedCounts: at least one lineage required");
  }
  for (std::int64_t n : sizes) {
    if (n < 1) throw std::domain_error("ObservedCounts: sizes must be >= 1");
  }
}

ObservedCounts ObservedCounts::from_csv(std::istream& is) {
  ObservedCounts data;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find_last_of(',');
    const std::string field =
        comma == std::string::npos ? line : line.substr(comma + 1);
    try {
      std::size_t pos = 0;
      const long long v = std::stoll(field, &pos);
      if (pos != field.size()) throw std::invalid_argument(field);
      data.sizes.push_back(v);
    } catch (const std::exception&) {
      if (first) {
        first = false;  // header row
        continue;
      }
      throw std::domain_error("ObservedCounts: unparsable row '" + line + "'");
    }
    first = false;
  }
  data.validate();
  return data;
}

double log_likelihood(const ObservedCounts& data, double r, double theta) {
  data.validate();
  return log_likelihood_hist(to_hist(data), r, theta);
}

FitResult fit_mle(const ObservedCounts& data,
                  std::optional<std::pair<double, double>> init) {
  data.validate();
  const auto hist = to_hist(data);
  const Objective obj{hist};

  // coarse 8x8 seeding grid: log-spaced r, theta spread over [0, 1)
  static constexpr std::array<double, 8> kThetaGrid = {
      0.0, 1e-3, 5e-3, 0.02, 0.08, 0.2, 0.5, 0.8};
  double best_u = 0.0, best_v = 0.0;
  double best_f = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 8; ++i) {
    const double r = 1e-2 * std::pow(10.0, 5.0 * i / 7.0);
    for (int j = 0; j < 8; ++j) {
      const double theta = kThetaGrid[static_cast<std::size_t>(j)];
      const double u = std::log(r);
      const double v = std::log((std::max(theta, 1e-9)) /
                                (1.0 - std::max(theta, 1e-9)));
      const double f = obj(u, v);
      if (f < best_f) {
        best_f = f;
        best_u = u;
        best_v = v;
      }
    }
  }
  if (init) {
    const double u = std::log(std::clamp(init->first, kRMin, kRMax));
    const double t = std::clamp(init->second, 1e-9, kThetaMax);
    const double v = std::log(t / (1.0 - t));
    const double f = obj(u, v);
    if (f < best_f) {
      best_f = f;
      best_u = u;
      best_v = v;
    }
  }

  // Nelder-Mead on (u, v)
  std::array<SimplexPoint, 3> s = {
      SimplexPoint{best_u, best_v, best_f},
      SimplexPoint{best_u + 0.5, best_v, 0.0},
      SimplexPoint{best_u, best_v + 0.7, 0.0}};
  s[1].f = obj(s[1].u, s[1].v);
  s[2].f = obj(s[2].u, s[2].v);

  const int max_iter = 400;
  const double ftol = 1e-10;
  int iter = 0;
  bool converged = false;
  for (; iter < max_iter; ++iter) {
    std::sort(s.begin(), s.end(),
              [](const SimplexPoint& a, const SimplexPoint& b) {
                return a.f < b.f;
              });
    const double spread = std::abs(s[2].f - s[0].f);
    if (spread <= ftol * (std::abs(s[0].f) + ftol)) {
      converged = true;
      break;
    }
    const double cu = 0.5 * (s[0].u + s[1].u);
    const double cv = 0.5 * (s[0].v + s[1].v);
    auto try_point = [&](double alpha) {
      SimplexPoint p{cu + alpha * (cu - s[2].u), cv + alpha * (cv - s[2].v),
                     0.0};
      p.f = obj(p.u, p.v);
      return p;
    };
    SimplexPoint refl = try_point(1.0);
    if (refl.f < s[0].f) {
      SimplexPoint exp_p = try_point(2.0);
      s[2] = exp_p.f < refl.f ? exp_p : refl;
    } else if (refl.f < s[1].f) {
      s[2] = refl;
    } else {
      SimplexPoint contr = try_point(refl.f < s[2].f ? 0.5 : -0.5);
      if (contr.f < std::min(refl.f, s[2].f)) {
        s[2] = contr;
      } else {
        // shrink toward the best vertex
        for (int i = 1; i < 3; ++i) {
          s[static_cast<std::size_t>(i)].u =
              s[0].u + 0.5 * (s[static_cast<std::size_t>(i)].u - s[0].u);
          s[static_cast<std::size_t>(i)].v =
              s[0].v + 0.5 * (s[static_cast<std::size_t>(i)].v - s[0].v);
          s[static_cast<std::size_t>(i)].f =
              obj(s[static_cast<std::size_t>(i)].u,
                  s[static_cast<std::size_t>(i)].v);
        }
      }
    }
  }
  std::sort(s.begin(), s.end(),
            [](const SimplexPoint& a, const SimplexPoint& b) {
              return a.f < b.f;
            });

  FitResult res;
  res.r_hat = std::clamp(std::exp(s[0].u), kRMin, kRMax);
  res.theta_hat = std::clamp(1.0 / (1.0 + std::exp(-s[0].v)), 0.0, kThetaMax);
  res.log_likelihood = -s[0].f;
  res.converged = converged;
  res.iterations = iter;
  res.boundary_hit_r = res.r_hat >= kRMax * 0.999 || res.r_hat <= kRMin * 1.001;
  res.boundary_hit_theta = res.theta_hat >= kThetaMax - 1e-9;
  return res;
}

TailFlagResult tail_flag(const ModelParams& params, std::int64_t n_obs,
                         double alpha) {
  if (n_obs < 1) throw std::domain_error("tail_flag: n_obs must be >= 1");
  if (!(alpha > 0.0) || !(alpha < 1.0)) {
    throw std::domain_error("tail_flag: alpha must be in (0,1)");
  }
  if (params.regime() != Regime::Supercritical) {
    throw RegimeError("tail_flag: supercritical parameters required");
  }
  DistributionEvaluator ev(params, MethodKind::ExactSeries);
  const double tail = 1.0 - ev.cdf(n_obs - 1);
  return {tail < alpha, tail};
}

TailFlagResult tail_flag(const FitResult& fit, std::int64_t n_obs,
                         double alpha) {
  return tail_flag(ModelParams::from_ratios(fit.r_hat, fit.theta_hat), n_obs,
                   alpha);
}

}  // namespace lineagedist
