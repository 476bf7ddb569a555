#pragma once

#include <optional>

#include "lineagedist/errors.hpp"

namespace lineagedist {

enum class Regime { Supercritical, Subcritical, Critical };

// Per-capita birth rate lambda, death rate mu, and sublineage origination
// rate rho, with the derived quantities omega = lambda - mu,
// theta = mu / lambda and r = rho / omega.  The normalized age-averaged
// size distributions depend on (r, theta) only.
class ModelParams {
 public:
  ModelParams(double lambda, double mu, double rho);

  // Builds a unit-birth-rate process realizing the given ratios:
  // lambda = 1, mu = theta, rho = r * (1 - theta).  Supercritical inputs
  // need r > 0 and 0 <= theta < 1; subcritical need r < 0 and theta > 1.
  static ModelParams from_ratios(double r, double theta);

  double lambda() const { return lambda_; }
  double mu() const { return mu_; }
  double rho() const { return rho_; }

  double omega() const { return lambda_ - mu_; }
  double theta() const { return mu_ / lambda_; }
  double r() const { return rho_ / omega(); }

  Regime regime() const {
    const double om = omega();
    if (om > 0.0) return Regime::Supercritical;
    if (om < 0.0) return Regime::Subcritical;
    return Regime::Critical;
  }

  // Throws RegimeError unless the regime is super- or subcritical.
  void require_noncritical(const char* who) const;

 private:
  double lambda_;
  double mu_;
  double rho_;
};

// Elapsed time since lineage origin, with an optional clade-age bound.
struct TimePoint {
  double t = 0.0;
  std::optional<double> tau;
  void validate() const;
};

}  // namespace lineagedist
