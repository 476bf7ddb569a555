#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "lineagedist/lineage_distributions.hpp"
#include "lineagedist/model_params.hpp"

namespace lineagedist {

enum class CdfNormalization { SelfNormalized, SharedExactTotal };

struct CdfRequest {
  ModelParams params;
  MethodKind method = MethodKind::ExactSeries;
  std::vector<std::int64_t> n_points;  // strictly increasing
  CdfNormalization normalization = CdfNormalization::SelfNormalized;
  QuadratureConfig quad;
  SeriesControl series;
};

struct QuantileRequest {
  ModelParams params;
  MethodKind method = MethodKind::ExactSeries;
  double tail_prob = 0.05;  // p in (0,1); returns minimal n with CDF >= 1-p
  QuadratureConfig quad;
  SeriesControl series;
};

// Tail of the normalized exact distribution, sum_{m>n} Q_m, evaluated as a
// single quadrature with the geometric partial sum folded into the kernel.
// n may be 0 (total mass) and need not be small.
double exact_tail(const ModelParams& params, double n,
                  const QuadratureConfig& cfg = {});

// Sum_{m>N} m^-s by Euler-Maclaurin; needs s > 1 and N >= 1.
double zeta_tail(double s, double n);

// Cumulative distribution access for one (params, method) pair with cached
// prefix sums; wired so that quantile() and cdf() read the same numbers.
class DistributionEvaluator {
 public:
  DistributionEvaluator(const ModelParams& params, MethodKind method,
                        QuadratureConfig quad = {}, SeriesControl series = {});

  double pmf(std::int64_t n);
  // Absolute scale: cumulative method mass up to n (0 for n <= 0).
  double cdf_absolute(std::int64_t n);
  // Self-normalized over the method's own total mass.
  double cdf(std::int64_t n);
  double total_mass();

 private:
  double approx_tail(double n);  // SecondOrder/Asymptotic analytic tail

  ModelParams params_;
  MethodKind method_;
  QuadratureConfig quad_;
  SeriesControl series_;
  std::int64_t prefix_limit_;
  std::vector<double> prefix_;  // prefix_[i] = sum_{m=1}^{i} pmf(m)
  std::optional<SecondOrderCoefficients> so_;
  std::optional<double> total_;
};

std::vector<std::pair<std::int64_t, double>> cdf(const CdfRequest& req);

// Minimal n with CDF(n) >= 1 - p, by exponential doubling and bisection on
// the method's own (deterministic) CDF.  Throws QuantileOverflowError when
// that n would exceed 2^63 - 1.
std::int64_t quantile(const QuantileRequest& req);

// Signed relative errors against the exact series, on the two scales the
// approximations are consumed at: self-normalized CDF values (what the
// reference figures and tables compare) and raw pmf values.
struct ApproximationErrorRow {
  std::int64_t n = 0;
  double second_order = 0.0;  // CDF scale
  double asymptotic = 0.0;
  double second_order_pmf = 0.0;
  double asymptotic_pmf = 0.0;
};

struct ApproximationErrorReport {
  std::vector<ApproximationErrorRow> rows;
  // First grid point where the better approximation (CDF scale) changes
  // identity.
  std::optional<std::int64_t> crossover_n;
};

ApproximationErrorReport approximation_error_report(
    const ModelParams& params, const std::vector<std::int64_t>& n_grid,
    const SeriesControl& ctrl = {});

}  // namespace lineagedist
