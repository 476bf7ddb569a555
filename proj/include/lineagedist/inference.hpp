#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <utility>
#include <vector>

#include "lineagedist/model_params.hpp"

namespace lineagedist {

// One entry per lineage; the value is the lineage's size.
struct ObservedCounts {
  std::vector<std::int64_t> sizes;
  void validate() const;
  // One positive integer per line, or name,count rows (count column used);
  // a non-numeric first line is treated as a header.
  static ObservedCounts from_csv(std::istream& is);
};

struct FitResult {
  double r_hat = 0.0;
  double theta_hat = 0.0;
  double log_likelihood = 0.0;
  bool converged = false;
  int iterations = 0;
  bool boundary_hit_r = false;
  bool boundary_hit_theta = false;
};

// Sum of ln q_n over the observations at the supercritical point
// (r, theta).  Sizes alone identify (rho/omega, theta) only, so the rates
// never appear here.
double log_likelihood(const ObservedCounts& data, double r, double theta);

// Joint maximum-likelihood fit of (r, theta) over (0, 1e3] x [0, 1-1e-6):
// coarse log-spaced grid seeding followed by Nelder-Mead descent in
// transformed coordinates.  Never throws on non-convergence; returns the
// best point found with converged = false.
FitResult fit_mle(const ObservedCounts& data,
                  std::optional<std::pair<double, double>> init = {});

struct TailFlagResult {
  bool flagged = false;
  double tail_probability = 1.0;
};

// Null-model tail probability of seeing a lineage of size >= n_obs;
// flagged when it falls below alpha.
TailFlagResult tail_flag(const ModelParams& params, std::int64_t n_obs,
                         double alpha);
TailFlagResult tail_flag(const FitResult& fit, std::int64_t n_obs,
                         double alpha);

}  // namespace lineagedist
