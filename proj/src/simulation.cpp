#include "lineagedist/simulation.hpp"

#include <cmath>
#include <limits>
#include <thread>
#include <vector>

#include "lineagedist/tail_analytics.hpp"
#include "lineagedist/util.hpp"

namespace lineagedist {

namespace {

struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  // uniform on (0, 1]; safe under std::log
  double u01() { return ((next() >> 11) + 1) * 0x1.0p-53; }
};

SplitMix64 replicate_stream(std::uint64_t seed, std::int64_t replicate) {
  SplitMix64 rng{seed ^ (0x9E3779B97F4A7C15ull *
                         (static_cast<std::uint64_t>(replicate) + 1))};
  rng.next();
  return rng;
}

struct RunOutcome {
  std::int64_t n;
  bool capped;
  std::int64_t events;
};

RunOutcome run_bd(const ModelParams& p, double t, SplitMix64& rng,
                  std::int64_t max_events) {
  const double total_rate = p.lambda() + p.mu();
  const double birth_prob = p.lambda() / total_rate;
  // birth_prob == 1 would overflow the u64 scale; every event is a birth
  const std::uint64_t birth_threshold =
      p.mu() == 0.0 ? std::numeric_limits<std::uint64_t>::max()
                    : static_cast<std::uint64_t>(
                          birth_prob * 18446744073709551616.0);
  std::int64_t n = 1;
  std::int64_t events = 0;
  double clock = 0.0;
  for (;;) {
    clock += -std::log(rng.u01()) / (total_rate * static_cast<double>(n));
    if (clock > t) return {n, false, events};
    if (rng.next() <= birth_threshold) {
      ++n;
    } else {
      --n;
      if (n == 0) return {0, false, events + 1};
    }
    if (++events >= max_events) return {n, true, events};
  }
}

struct Accumulator {
  std::map<std::int64_t, std::int64_t> histogram;
  std::map<std::int64_t, std::int64_t> capped_sizes;
  std::int64_t used = 0;
  std::int64_t rejections = 0;
  std::int64_t capped = 0;
};

void run_replicates(const SimulationConfig& cfg, std::int64_t first,
                    std::int64_t last, Accumulator& acc) {
  const double rho = cfg.params.rho();
  for (std::int64_t rep = first; rep < last; ++rep) {
    SplitMix64 rng = replicate_stream(cfg.seed, rep);
    double age = -std::log(rng.u01()) / rho;
    if (cfg.tau) {
      while (age > *cfg.tau) age = -std::log(rng.u01()) / rho;
    }
    std::int64_t budget = cfg.max_population;
    for (;;) {
      const RunOutcome out = run_bd(cfg.params, age, rng, budget);
      if (out.capped) {
        ++acc.capped;
        ++acc.capped_sizes[out.n];
        break;
      }
      if (cfg.truncated && out.n == 0) {
        // per-age truncation: rerun the birth-death process at the same age
        ++acc.rejections;
        budget -= out.events;
        if (budget <= 0) {
          ++acc.capped;
          ++acc.capped_sizes[0];
          break;
        }
        continue;
      }
      ++acc.used;
      ++acc.histogram[out.n];
      break;
    }
  }
}

}  // namespace

BdRealization simulate_bd_at_time(const ModelParams& params, double t,
                                  std::uint64_t seed,
                                  std::int64_t max_events) {
  if (!(t >= 0.0)) throw std::domain_error("simulate_bd_at_time: t >= 0");
  SplitMix64 rng{seed};
  rng.next();
  const RunOutcome out = run_bd(params, t, rng, max_events);
  return {out.n, out.capped, out.events};
}

SizeSample sample_lineage_size(const SimulationConfig& cfg) {
  if (cfg.n_replicates < 1) {
    throw std::domain_error("sample_lineage_size: n_replicates must be >= 1");
  }
  if (cfg.max_population < 1) {
    throw std::domain_error("sample_lineage_size: cap must be positive");
  }
  if (cfg.tau && !(*cfg.tau > 0.0)) {
    throw std::domain_error("sample_lineage_size: tau must be > 0");
  }
  const int workers =
      static_cast<int>(std::min<std::int64_t>(thread_budget(),
                                              cfg.n_replicates));
  std::vector<Accumulator> parts(static_cast<std::size_t>(workers));
  if (workers == 1) {
    run_replicates(cfg, 0, cfg.n_replicates, parts[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const std::int64_t chunk = (cfg.n_replicates + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const std::int64_t first = w * chunk;
      const std::int64_t last =
          std::min<std::int64_t>(first + chunk, cfg.n_replicates);
      pool.emplace_back([&cfg, first, last, &parts, w]() {
        run_replicates(cfg, first, last, parts[static_cast<std::size_t>(w)]);
      });
    }
    for (auto& th : pool) th.join();
  }
  SizeSample sample;
  for (const Accumulator& acc : parts) {
    sample.n_replicates_used += acc.used;
    sample.truncation_rejections += acc.rejections;
    sample.capped_replicates += acc.capped;
    for (const auto& [n, c] : acc.histogram) sample.histogram[n] += c;
    for (const auto& [n, c] : acc.capped_sizes) sample.capped_sizes[n] += c;
  }
  return sample;
}

void write_histogram_csv(const SizeSample& sample, std::ostream& os) {
  os << "n,count\n";
  for (const auto& [n, count] : sample.histogram) {
    os << n << ',' << count << '\n';
  }
}

TvdComparison compare_histogram_to_exact(const SizeSample& sample,
                                         const ModelParams& params,
                                         std::int64_t singleton_max,
                                         std::int64_t overflow_start) {
  TvdComparison out;
  out.singleton_max = singleton_max;
  out.overflow_start = overflow_start;
  DistributionEvaluator exact(params, MethodKind::ExactSeries);

  const double m_total = static_cast<double>(sample.n_replicates_used +
                                             sample.capped_replicates);
  // empirical counts per pooled cell
  std::vector<double> emp(static_cast<std::size_t>(singleton_max) + 2, 0.0);
  auto cell_of = [&](std::int64_t n) -> std::size_t {
    if (n <= singleton_max) return static_cast<std::size_t>(n - 1);
    if (n < overflow_start) return static_cast<std::size_t>(singleton_max);
    return static_cast<std::size_t>(singleton_max) + 1;
  };
  for (const auto& [n, c] : sample.histogram) {
    emp[cell_of(n)] += static_cast<double>(c);
  }
  // capped replicates were still growing past the overflow boundary
  emp.back() += static_cast<double>(sample.capped_replicates);

  double tvd = 0.0;
  for (std::int64_t n = 1; n <= singleton_max; ++n) {
    tvd += std::abs(emp[static_cast<std::size_t>(n - 1)] / m_total -
                    exact.pmf(n));
  }
  const double mid_mass = exact.cdf_absolute(overflow_start - 1) -
                          exact.cdf_absolute(singleton_max);
  const double overflow_mass = 1.0 - exact.cdf_absolute(overflow_start - 1);
  tvd += std::abs(emp[static_cast<std::size_t>(singleton_max)] / m_total -
                  mid_mass);
  tvd += std::abs(emp.back() / m_total - overflow_mass);
  out.pooled = 0.5 * tvd;

  double raw = 0.0;
  const double m_used = static_cast<double>(sample.n_replicates_used);
  for (const auto& [n, c] : sample.histogram) {
    raw += std::abs(static_cast<double>(c) / m_used - exact.pmf(n));
  }
  out.raw_restricted = 0.5 * raw;
  return out;
}

}  // namespace lineagedist
