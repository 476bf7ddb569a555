#include "lineagedist/paper_tables.hpp"

namespace lineagedist {

namespace {

constexpr std::array<Table1Cell, 126> make_table1() {
  // per (r, theta, dist): values at n = 10, 50, 100, 500, 1000, 2000, 10000
  struct Row {
    double r, theta;
    char dist;
    double v[7];
  };
  constexpr Row rows[18] = {
      {0.4, 0.01, 'E', {0.580, 0.780, 0.834, 0.915, 0.937, 0.953, 0.977}},
      {0.4, 0.01, 'S', {0.575, 0.777, 0.832, 0.914, 0.936, 0.956, 0.977}},
      {0.4, 0.01, 'A', {0.604, 0.794, 0.845, 0.920, 0.941, 0.956, 0.979}},
      {0.4, 0.1, 'E', {0.577, 0.778, 0.833, 0.914, 0.936, 0.953, 0.978}},
      {0.4, 0.1, 'S', {0.576, 0.777, 0.832, 0.914, 0.936, 0.952, 0.977}},
      {0.4, 0.1, 'A', {0.604, 0.794, 0.844, 0.920, 0.941, 0.956, 0.979}},
      {0.4, 0.4, 'E', {0.563, 0.770, 0.826, 0.911, 0.933, 0.951, 0.976}},
      {0.4, 0.4, 'S', {0.682, 0.829, 0.871, 0.934, 0.950, 0.963, 0.982}},
      {0.4, 0.4, 'A', {0.604, 0.794, 0.845, 0.920, 0.941, 0.956, 0.979}},
      {0.1, 0.01, 'E', {0.271, 0.429, 0.490, 0.616, 0.664, 0.709, 0.803}},
      {0.1, 0.01, 'S', {0.270, 0.428, 0.489, 0.615, 0.664, 0.709, 0.802}},
      {0.1, 0.01, 'A', {0.275, 0.432, 0.493, 0.618, 0.666, 0.711, 0.804}},
      {0.1, 0.1, 'E', {0.270, 0.429, 0.489, 0.615, 0.664, 0.709, 0.802}},
      {0.1, 0.1, 'S', {0.268, 0.425, 0.487, 0.614, 0.662, 0.708, 0.801}},
      {0.1, 0.1, 'A', {0.275, 0.432, 0.493, 0.618, 0.666, 0.711, 0.804}},
      {0.1, 0.4, 'E', {0.268, 0.426, 0.487, 0.614, 0.662, 0.708, 0.802}},
      {0.1, 0.4, 'S', {0.300, 0.448, 0.506, 0.628, 0.674, 0.718, 0.810}},
      {0.1, 0.4, 'A', {0.275, 0.432, 0.493, 0.618, 0.666, 0.711, 0.804}},
  };
  std::array<Table1Cell, 126> cells{};
  std::size_t idx = 0;
  for (const Row& row : rows) {
    for (std::size_t j = 0; j < 7; ++j) {
      cells[idx++] = Table1Cell{row.r, row.theta, kTable1Sizes[j], row.dist,
                                row.v[j]};
    }
  }
  return cells;
}

constexpr std::array<Table2Cell, 36> make_table2() {
  struct Row {
    double r, theta;
    char dist;
    std::int64_t p05, p01;
  };
  constexpr Row rows[18] = {
      {0.4, 0.01, 'E', 1743, 49111},   {0.4, 0.01, 'S', 1798, 50276},
      {0.4, 0.01, 'A', 1491, 43576},   {0.4, 0.1, 'E', 1778, 49853},
      {0.4, 0.1, 'S', 1801, 50358},    {0.4, 0.1, 'A', 1491, 43576},
      {0.4, 0.4, 'E', 1949, 53439},    {0.4, 0.4, 'S', 980, 31356},
      {0.4, 0.4, 'A', 1491, 43576},    {0.1, 0.01, 'E', 251193, 746770},
      {0.1, 0.01, 'S', 251582, 747932},{0.1, 0.01, 'A', 249229, 745463},
      {0.1, 0.1, 'E', 251470, 746954}, {0.1, 0.1, 'S', 252951, 747932},
      {0.1, 0.1, 'A', 249229, 745463}, {0.1, 0.4, 'E', 252810, 747839},
      {0.1, 0.4, 'S', 241228, 740048}, {0.1, 0.4, 'A', 249229, 745463},
  };
  std::array<Table2Cell, 36> cells{};
  std::size_t idx = 0;
  for (const Row& row : rows) {
    cells[idx++] = Table2Cell{row.r, row.theta, 0.05, row.dist, row.p05};
    cells[idx++] = Table2Cell{row.r, row.theta, 0.01, row.dist, row.p01};
  }
  return cells;
}

}  // namespace

const std::array<Table1Cell, 126> kTable1 = make_table1();
const std::array<Table2Cell, 36> kTable2 = make_table2();

}  // namespace lineagedist
