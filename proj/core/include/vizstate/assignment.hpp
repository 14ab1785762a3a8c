#pragma once

#include <cstddef>
#include <vector>

namespace vizstate {

/// Dense cost matrix, row-major. rows() <= cols() is not required.
struct CostMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> cost;  // rows * cols

  double at(std::size_t r, std::size_t c) const { return cost[r * cols + c]; }
  double& at(std::size_t r, std::size_t c) { return cost[r * cols + c]; }
};

/// Minimum-cost linear assignment (Hungarian, shortest augmenting path).
/// Returns for each row the assigned column, or -1 for rows left unassigned
/// when rows > cols. Exactly min(rows, cols) rows are assigned.
std::vector<int> solve_assignment(const CostMatrix& m);

/// Total cost of the assignment returned by solve_assignment.
double assignment_cost(const CostMatrix& m, const std::vector<int>& assignment);

}  // namespace vizstate
