#include "vizstate/optimal_transport.hpp"

#include <limits>

#include "vizstate/errors.hpp"

namespace vizstate {
namespace {

// Small dense min-cost max-flow (SPFA-based successive shortest paths).
class MinCostFlow {
 public:
  explicit MinCostFlow(int n) : head_(n, -1) {}

  void add_edge(int from, int to, long long cap, double cost) {
    edges_.push_back({to, head_[from], cap, cost});
    head_[from] = static_cast<int>(edges_.size()) - 1;
    edges_.push_back({from, head_[to], 0, -cost});
    head_[to] = static_cast<int>(edges_.size()) - 1;
  }

  double run(int source, int sink) {
    double total_cost = 0;
    const int n = static_cast<int>(head_.size());
    while (true) {
      // Bellman-Ford with a fixed pass count: immune to the float-noise
      // cycling a queue-based relaxation can fall into on residual graphs.
      std::vector<double> dist(n, std::numeric_limits<double>::infinity());
      std::vector<int> in_edge(n, -1);
      dist[source] = 0;
      for (int pass = 0; pass < n; ++pass) {
        bool changed = false;
        for (int u = 0; u < n; ++u) {
          if (dist[u] == std::numeric_limits<double>::infinity()) continue;
          for (int e = head_[u]; e != -1; e = edges_[e].next) {
            if (edges_[e].cap <= 0) continue;
            const int v = edges_[e].to;
            const double nd = dist[u] + edges_[e].cost;
            if (nd < dist[v] - 1e-12) {
              dist[v] = nd;
              in_edge[v] = e;
              changed = true;
            }
          }
        }
        if (!changed) break;
      }
      if (in_edge[sink] == -1) break;
      long long push = std::numeric_limits<long long>::max();
      int steps = 0;
      for (int v = sink; v != source; v = edges_[in_edge[v] ^ 1].to) {
        push = std::min(push, edges_[in_edge[v]].cap);
        if (++steps > n) throw Error(ErrorCode::IoError, "transport path degenerated");
      }
      for (int v = sink; v != source; v = edges_[in_edge[v] ^ 1].to) {
        edges_[in_edge[v]].cap -= push;
        edges_[in_edge[v] ^ 1].cap += push;
        total_cost += static_cast<double>(push) * edges_[in_edge[v]].cost;
      }
    }
    return total_cost;
  }

 private:
  struct Edge {
    int to;
    int next;
    long long cap;
    double cost;
  };
  std::vector<int> head_;
  std::vector<Edge> edges_;
};

}  // namespace

double emd_uniform(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  if (n == 0 || cost[0].empty())
    throw Error(ErrorCode::EmptyCloud, "EMD needs non-empty point sets");
  const std::size_t m = cost[0].size();

  // Uniform masses 1/n and 1/m scaled by n*m give integer supplies:
  // each left node supplies m units, each right node absorbs n units.
  const int source = 0;
  const int sink = static_cast<int>(n + m) + 1;
  MinCostFlow flow(static_cast<int>(n + m) + 2);
  for (std::size_t i = 0; i < n; ++i)
    flow.add_edge(source, static_cast<int>(i) + 1, static_cast<long long>(m), 0.0);
  for (std::size_t j = 0; j < m; ++j)
    flow.add_edge(static_cast<int>(n + j) + 1, sink, static_cast<long long>(n), 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      flow.add_edge(static_cast<int>(i) + 1, static_cast<int>(n + j) + 1,
                    static_cast<long long>(n) * static_cast<long long>(m), cost[i][j]);

  const double total = flow.run(source, sink);
  return total / (static_cast<double>(n) * static_cast<double>(m));
}

}  // namespace vizstate
