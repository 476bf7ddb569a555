#pragma once

#include <array>
#include <cstdint>

namespace lineagedist {

// Printed values from the source tables, embedded with their coordinates
// so reports can show computed-vs-printed diffs.  They are reference data
// for comparison, never asserted equalities: recomputing the exact column
// from the defining integral gives systematically different values (see
// the regression baselines under tests/data).

struct Table1Cell {
  double r;
  double theta;
  std::int64_t n;
  char dist;  // 'E' exact, 'S' second order, 'A' asymptotic
  double value;
};

struct Table2Cell {
  double r;
  double theta;
  double p;
  char dist;
  std::int64_t n_star;
};

inline constexpr std::array<std::int64_t, 7> kTable1Sizes = {
    10, 50, 100, 500, 1000, 2000, 10000};
inline constexpr std::array<double, 2> kTableRatios = {0.4, 0.1};
inline constexpr std::array<double, 3> kTableThetas = {0.01, 0.1, 0.4};
inline constexpr std::array<double, 2> kTable2TailProbs = {0.05, 0.01};

extern const std::array<Table1Cell, 126> kTable1;
extern const std::array<Table2Cell, 36> kTable2;

}  // namespace lineagedist
