#include "lineagedist/model_params.hpp"

#include <cmath>
#include <string>

namespace lineagedist {

ModelParams::ModelParams(double lambda, double mu, double rho)
    : lambda_(lambda), mu_(mu), rho_(rho) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::domain_error("ModelParams: lambda must be positive");
  }
  if (!(mu >= 0.0) || !std::isfinite(mu)) {
    throw std::domain_error("ModelParams: mu must be nonnegative");
  }
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw std::domain_error("ModelParams: rho must be positive");
  }
}

ModelParams ModelParams::from_ratios(double r, double theta) {
  if (!(theta >= 0.0) || theta == 1.0) {
    throw std::domain_error("ModelParams::from_ratios: theta must be in "
                            "[0,1) or (1,inf)");
  }
  const double omega = 1.0 - theta;
  const double rho = r * omega;
  if (!(rho > 0.0)) {
    throw std::domain_error(
        "ModelParams::from_ratios: r * (1 - theta) must be positive "
        "(supercritical needs r > 0, subcritical r < 0); got r=" +
        std::to_string(r) + " theta=" + std::to_string(theta));
  }
  return ModelParams(1.0, theta, rho);
}

void ModelParams::require_noncritical(const char* who) const {
  if (regime() == Regime::Critical) {
    throw RegimeError(std::string(who) +
                      ": critical regime (lambda == mu) is not supported; "
                      "use |omega| >= 1e-6 * lambda and the documented "
                      "limit consistency");
  }
}

void TimePoint::validate() const {
  if (!(t >= 0.0)) throw std::domain_error("TimePoint: t must be >= 0");
  if (tau) {
    if (!(*tau > 0.0)) throw std::domain_error("TimePoint: tau must be > 0");
    if (t > *tau) throw std::domain_error("TimePoint: t must be <= tau");
  }
}

}  // namespace lineagedist
