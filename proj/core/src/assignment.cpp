#include "vizstate/assignment.hpp"

#include <limits>

namespace vizstate {
namespace {

// Shortest-augmenting-path Hungarian with dual potentials, O(n^2 m).
// Requires rows <= cols; returns column index per row.
std::vector<int> solve_rect(const CostMatrix& m) {
  const int n = static_cast<int>(m.rows);
  const int w = static_cast<int>(m.cols);
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<double> u(n + 1, 0.0), v(w + 1, 0.0);
  std::vector<int> p(w + 1, 0), way(w + 1, 0);

  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(w + 1, kInf);
    std::vector<bool> used(w + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      int j1 = 0;
      double delta = kInf;
      for (int j = 1; j <= w; ++j) {
        if (used[j]) continue;
        const double cur = m.at(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= w; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= w; ++j)
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

}  // namespace

std::vector<int> solve_assignment(const CostMatrix& m) {
  if (m.rows == 0 || m.cols == 0) return std::vector<int>(m.rows, -1);
  if (m.rows <= m.cols) return solve_rect(m);

  CostMatrix t;
  t.rows = m.cols;
  t.cols = m.rows;
  t.cost.resize(m.rows * m.cols);
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t c = 0; c < m.cols; ++c) t.at(c, r) = m.at(r, c);

  const auto col_to_row = solve_rect(t);
  std::vector<int> row_to_col(m.rows, -1);
  for (std::size_t c = 0; c < m.cols; ++c)
    if (col_to_row[c] >= 0) row_to_col[col_to_row[c]] = static_cast<int>(c);
  return row_to_col;
}

double assignment_cost(const CostMatrix& m, const std::vector<int>& assignment) {
  double total = 0;
  for (std::size_t r = 0; r < assignment.size(); ++r)
    if (assignment[r] >= 0) total += m.at(r, static_cast<std::size_t>(assignment[r]));
  return total;
}

}  // namespace vizstate
