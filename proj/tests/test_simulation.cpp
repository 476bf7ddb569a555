#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "lineagedist/birth_death.hpp"
#include "lineagedist/lineage_distributions.hpp"
#include "lineagedist/simulation.hpp"
#include "oracles.hpp"

using namespace lineagedist;

TEST_CASE("no events before time zero") {
  const ModelParams p(1.0, 0.5, 0.1);
  for (std::uint64_t seed : {1ull, 2ull, 99ull}) {
    const auto out = simulate_bd_at_time(p, 0.0, seed);
    CHECK(out.n == 1);
    CHECK(out.events == 0);
    CHECK(!out.capped);
  }
}

TEST_CASE("deterministic and thread-count independent") {
  SimulationConfig cfg{ModelParams::from_ratios(0.4, 0.1), 20000,
                       std::nullopt, 77, true, 100000};
  setenv("LINEAGEDIST_THREADS", "1", 1);
  const SizeSample a = sample_lineage_size(cfg);
  setenv("LINEAGEDIST_THREADS", "4", 1);
  const SizeSample b = sample_lineage_size(cfg);
  unsetenv("LINEAGEDIST_THREADS");
  CHECK(a.histogram == b.histogram);
  CHECK(a.capped_sizes == b.capped_sizes);
  CHECK(a.n_replicates_used == b.n_replicates_used);
  CHECK(a.truncation_rejections == b.truncation_rejections);
  CHECK(a.capped_replicates == b.capped_replicates);
  std::int64_t total = 0;
  for (const auto& [n, c] : a.histogram) total += c;
  CHECK(total == a.n_replicates_used);
}

TEST_CASE("Yule mean at t = ln 2") {
  const ModelParams p(1.0, 0.0, 0.1);
  const double t = std::log(2.0);
  const std::int64_t reps = 1000000;
  double sum = 0.0;
  for (std::int64_t i = 0; i < reps; ++i) {
    sum += static_cast<double>(
        simulate_bd_at_time(p, t, 0x100000 + static_cast<std::uint64_t>(i)).n);
  }
  const double mean = sum / static_cast<double>(reps);
  // E[n] = e^{lambda t} = 2, Var = e^{lambda t}(e^{lambda t} - 1) = 2
  const double se = std::sqrt(2.0 / static_cast<double>(reps));
  CHECK(std::abs(mean - 2.0) < 3.0 * se);
}

TEST_CASE("per-size frequencies match the transient solution") {
  const ModelParams p(0.05, 0.005, 0.01);
  const double t = 20.0;
  const std::int64_t reps = 2000000;
  std::map<std::int64_t, std::int64_t> hist;
  for (std::int64_t i = 0; i < reps; ++i) {
    ++hist[simulate_bd_at_time(p, t, 0x200000 + static_cast<std::uint64_t>(i))
               .n];
  }
  // ~30 cells are compared, so allow a Bonferroni-style margin on the
  // per-cell binomial z scores and bound their aggregate too
  double sum_z2 = 0.0;
  int cells = 0;
  for (const auto& [n, count] : hist) {
    const double q = bd_pmf(p, t, n);
    const double expected = q * static_cast<double>(reps);
    if (expected < 25.0) continue;
    const double se = std::sqrt(expected * (1.0 - q));
    const double z = std::abs(static_cast<double>(count) - expected) / se;
    CHECK(z < 4.0);
    sum_z2 += z * z;
    ++cells;
  }
  REQUIRE(cells > 10);
  CHECK(sum_z2 / cells < 2.0);
}

TEST_CASE("pure-birth frequencies at lambda 0.3 and t 5") {
  const ModelParams p(0.3, 0.0, 0.01);
  const std::int64_t reps = 2000000;
  std::map<std::int64_t, std::int64_t> hist;
  for (std::int64_t i = 0; i < reps; ++i) {
    ++hist[simulate_bd_at_time(p, 5.0, 0x300000 + static_cast<std::uint64_t>(i))
               .n];
  }
  const double q4 = pure_birth_pmf(p, 5.0, 4);
  const double expected = q4 * static_cast<double>(reps);
  const double se = std::sqrt(expected * (1.0 - q4));
  CHECK(std::abs(static_cast<double>(hist[4]) - expected) < 3.0 * se);
}

TEST_CASE("conditioned frequencies match the truncated solution") {
  const ModelParams p(0.05, 0.02, 0.01);
  const double t = 30.0;
  const std::int64_t reps = 1000000;
  std::map<std::int64_t, std::int64_t> hist;
  std::int64_t kept = 0;
  std::uint64_t seed = 0x400000;
  while (kept < reps) {
    const auto out = simulate_bd_at_time(p, t, seed++);
    if (out.n == 0) continue;  // resample until n >= 1
    ++hist[out.n];
    ++kept;
  }
  const double q5 = bd_truncated_pmf(p, t, 5);
  const double expected = q5 * static_cast<double>(reps);
  const double se = std::sqrt(expected * (1.0 - q5));
  CHECK(std::abs(static_cast<double>(hist[5]) - expected) < 3.5 * se);
}

TEST_CASE("fast origination concentrates mass at n = 1") {
  SimulationConfig cfg{ModelParams(1.0, 0.2, 1000.0), 100000, std::nullopt,
                       123, true, 100000};
  const SizeSample s = sample_lineage_size(cfg);
  CHECK(static_cast<double>(s.histogram.at(1)) /
            static_cast<double>(s.n_replicates_used) >
        0.99);
}

TEST_CASE("untruncated extinction frequency matches the age average") {
  SimulationConfig cfg{ModelParams::from_ratios(0.4, 0.1), 1000000,
                       std::nullopt, 321, false, 100000};
  const SizeSample s = sample_lineage_size(cfg);
  const ModelParams& p = cfg.params;
  const double q0 = oracle::simpson_panels(
      [&](double t) {
        return p.rho() * std::exp(-p.rho() * t) * bd_extinction_prob(p, t);
      },
      0.0, 42.0 / p.rho());
  const double total = static_cast<double>(s.n_replicates_used +
                                           s.capped_replicates);
  const double freq = static_cast<double>(s.histogram.at(0)) / total;
  const double se = std::sqrt(q0 * (1.0 - q0) / total);
  CHECK(std::abs(freq - q0) < 3.0 * se);
  CHECK(s.truncation_rejections == 0);
}

TEST_CASE("pure-birth histogram agrees with the weighted pmf") {
  SimulationConfig cfg{ModelParams(1.0, 0.0, 0.4), 1000000, std::nullopt,
                       555, true, 20000};
  const SizeSample s = sample_lineage_size(cfg);
  const auto tvd = compare_histogram_to_exact(s, cfg.params);
  INFO("pooled TVD = ", tvd.pooled, " raw = ", tvd.raw_restricted);
  CHECK(tvd.pooled < 0.01);
}

TEST_CASE("truncated histogram agrees with the exact pmf") {
  SimulationConfig cfg{ModelParams::from_ratios(0.4, 0.1), 1000000,
                       std::nullopt, 777, true, 2000};
  const SizeSample s = sample_lineage_size(cfg);
  const auto tvd = compare_histogram_to_exact(s, cfg.params);
  INFO("pooled TVD = ", tvd.pooled, " raw = ", tvd.raw_restricted);
  CHECK(tvd.pooled < 0.01);
}

TEST_CASE("subcritical tail ratio approaches 1/theta") {
  // Truncation resamples at a fixed age, and subcritical survival decays
  // like e^{omega t}, so large-age replicates exhaust any budget; a small
  // cap keeps the run fast and censors only ages where beta is already
  // within 0.1% of its limit.
  SimulationConfig cfg{ModelParams(1.0, 2.0, 0.1), 300000, std::nullopt,
                       888, true, 2000};
  const SizeSample s = sample_lineage_size(cfg);
  // pooled regression of log counts over a mid-tail window
  std::vector<double> ns, logs;
  for (std::int64_t n = 3; n <= 9; ++n) {
    const auto it = s.histogram.find(n);
    REQUIRE(it != s.histogram.end());
    REQUIRE(it->second > 100);
    ns.push_back(static_cast<double>(n));
    logs.push_back(std::log(static_cast<double>(it->second)));
  }
  const double slope = oracle::fit_slope(ns, logs);
  CHECK(std::exp(slope) == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("finite clade age: histogram matches q_finite_tau") {
  const ModelParams p = ModelParams::from_ratios(0.4, 0.1);
  const double tau = 2.0 / p.rho();
  SimulationConfig cfg{p, 200000, tau, 999, true, 100000};
  const SizeSample s = sample_lineage_size(cfg);
  const double total = static_cast<double>(s.n_replicates_used);
  for (std::int64_t n : {1, 2, 3, 5}) {
    const double q = q_finite_tau(p, n, tau);
    const double freq = static_cast<double>(s.histogram.at(n)) / total;
    const double se = std::sqrt(q * (1.0 - q) / total);
    CHECK(std::abs(freq - q) < 4.0 * se);
  }
}

TEST_CASE("histogram CSV shape") {
  SimulationConfig cfg{ModelParams::from_ratios(0.4, 0.1), 1000, std::nullopt,
                       42, true, 10000};
  const SizeSample s = sample_lineage_size(cfg);
  std::ostringstream os;
  write_histogram_csv(s, os);
  const std::string text = os.str();
  CHECK(text.rfind("n,count\n", 0) == 0);
  CHECK(text.back() == '\n');
}
