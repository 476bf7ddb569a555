#pragma once

#include <cstdint>
#include <optional>

#include "lineagedist/model_params.hpp"

namespace lineagedist {

// Transient solutions of the linear birth-death process started from a
// single individual.  All probabilities are evaluated through the
// geometric representation p_n(t) = (1-alpha)(1-beta) beta^(n-1),
// p_0(t) = alpha, with alpha and beta computed in cancellation-free form;
// large n goes through log space.

// p_n(t) for n >= 0.
double bd_pmf(const ModelParams& params, double t, std::int64_t n);

// ln p_n(t) for n >= 1 (may be -inf).
double bd_log_pmf(const ModelParams& params, double t, std::int64_t n);

// p_0(t).
double bd_extinction_prob(const ModelParams& params, double t);

// P_n(t) = p_n(t) / (1 - p_0(t)) for n >= 1.  At t = 0 all mass is at
// n = 1.
double bd_truncated_pmf(const ModelParams& params, double t, std::int64_t n);
double bd_truncated_log_pmf(const ModelParams& params, double t,
                            std::int64_t n);

// Yule solution e^(-lambda t) (1 - e^(-lambda t))^(n-1); requires mu == 0.
double pure_birth_pmf(const ModelParams& params, double t, std::int64_t n);

// Sublineage age density rho e^(-rho t), normalized to [0, tau] when a
// finite clade age is given.
double age_density(const ModelParams& params, double t,
                   std::optional<double> tau = std::nullopt);

}  // namespace lineagedist
