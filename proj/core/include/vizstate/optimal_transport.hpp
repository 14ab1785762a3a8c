#pragma once

#include <cstddef>
#include <vector>

namespace vizstate {

/// Exact earth mover's distance between two uniform-mass point sets with
/// pairwise ground costs `cost[i][j]` (|a| rows, |b| columns). Solved as an
/// integer min-cost flow after scaling masses to a common denominator, so the
/// result is the exact optimum of the transportation LP.
double emd_uniform(const std::vector<std::vector<double>>& cost);

}  // namespace vizstate
