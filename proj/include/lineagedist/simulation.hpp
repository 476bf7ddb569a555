#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>

#include "lineagedist/model_params.hpp"

namespace lineagedist {

// Monte Carlo ground truth: exact event-driven birth-death realizations
// with exponentially distributed sublineage ages.  Replicates run on
// independent counter-based streams derived from (seed, replicate index),
// so results are bit-identical for a given config regardless of the
// thread count.
struct SimulationConfig {
  ModelParams params;
  std::int64_t n_replicates = 1;
  std::optional<double> tau;       // finite clade age; ages resampled above it
  std::uint64_t seed = 0;
  bool truncated = true;           // condition each run on n >= 1 at its age
  // Event budget per replicate; a replicate that exhausts it is reported
  // as capped, never silently dropped.
  std::int64_t max_population = 100000000;
};

struct SizeSample {
  std::map<std::int64_t, std::int64_t> histogram;     // finished replicates
  std::map<std::int64_t, std::int64_t> capped_sizes;  // population when capped
  std::int64_t n_replicates_used = 0;
  std::int64_t truncation_rejections = 0;
  std::int64_t capped_replicates = 0;
};

struct BdRealization {
  std::int64_t n = 0;
  bool capped = false;
  std::int64_t events = 0;
};

// One birth-death run from a single ancestor to time t.  Waiting times are
// exponential with rate (lambda+mu)n; each event is a birth with
// probability lambda/(lambda+mu).
BdRealization simulate_bd_at_time(const ModelParams& params, double t,
                                  std::uint64_t seed,
                                  std::int64_t max_events = 100000000);

SizeSample sample_lineage_size(const SimulationConfig& cfg);

// CSV export: header "n,count", one row per size, newline terminated.
void write_histogram_csv(const SizeSample& sample, std::ostream& os);

// Agreement metrics against the normalized exact pmf.  pooled compares
// singleton cells 1..singleton_max, one bin up to overflow_start-1 and an
// overflow cell [overflow_start, inf) that also absorbs capped replicates;
// raw_restricted is the glossary TVD over the sampled support of finished
// replicates.
struct TvdComparison {
  double pooled = 0.0;
  double raw_restricted = 0.0;
  std::int64_t singleton_max = 0;
  std::int64_t overflow_start = 0;
};

TvdComparison compare_histogram_to_exact(const SizeSample& sample,
                                         const ModelParams& params,
                                         std::int64_t singleton_max = 511,
                                         std::int64_t overflow_start = 1024);

}  // namespace lineagedist
