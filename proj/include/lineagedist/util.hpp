#pragma once

#include <string>

namespace lineagedist {

// Worker count for replicate-parallel work: LINEAGEDIST_THREADS when set,
// otherwise hardware concurrency.
int thread_budget();

// Shortest round-trip style formatting used by every CSV writer:
// 12 significant digits.
std::string format_value(double v);

}  // namespace lineagedist
