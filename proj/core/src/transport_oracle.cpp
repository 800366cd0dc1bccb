#include "skewlab/transport_oracle.hpp"

#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace skewlab {
namespace {

// minimal successive-shortest-path min cost flow with real capacities
struct Edge {
  int to;
  double cap;
  double cost;
  int rev;
};

class McmfGraph {
 public:
  explicit McmfGraph(int n) : g_(n) {}

  void add_edge(int from, int to, double cap, double cost) {
    g_[from].push_back({to, cap, cost, static_cast<int>(g_[to].size())});
    g_[to].push_back({from, 0.0, -cost, static_cast<int>(g_[from].size()) - 1});
  }

  double min_cost_flow(int s, int t, double flow) {
    const int n = static_cast<int>(g_.size());
    double total_cost = 0.0;
    while (flow > 1e-15) {
      // Bellman-Ford (costs can be negative on residual edges)
      std::vector<double> dist(n, std::numeric_limits<double>::infinity());
      std::vector<int> pv(n, -1), pe(n, -1);
      std::vector<bool> inq(n, false);
      std::queue<int> q;
      dist[s] = 0.0;
      q.push(s);
      inq[s] = true;
      while (!q.empty()) {
        int u = q.front();
        q.pop();
        inq[u] = false;
        for (int i = 0; i < static_cast<int>(g_[u].size()); ++i) {
          const Edge& e = g_[u][i];
          if (e.cap > 1e-15 && dist[u] + e.cost < dist[e.to] - 1e-15) {
            dist[e.to] = dist[u] + e.cost;
            pv[e.to] = u;
            pe[e.to] = i;
            if (!inq[e.to]) {
              q.push(e.to);
              inq[e.to] = true;
            }
          }
        }
      }
      if (pv[t] < 0) break;  // no augmenting path
      double push = flow;
      for (int v = t; v != s; v = pv[v])
        push = std::min(push, g_[pv[v]][pe[v]].cap);
      for (int v = t; v != s; v = pv[v]) {
        Edge& e = g_[pv[v]][pe[v]];
        e.cap -= push;
        g_[v][e.rev].cap += push;
      }
      total_cost += push * dist[t];
      flow -= push;
    }
    return total_cost;
  }

 private:
  std::vector<std::vector<Edge>> g_;
};

}  // namespace

double transport_cost_oracle(const EmpiricalMeasure& mu,
                             const EmpiricalMeasure& nu) {
  const auto& a = mu.atoms();
  const auto& b = nu.atoms();
  const int n = static_cast<int>(a.size());
  const int m = static_cast<int>(b.size());
  McmfGraph g(n + m + 2);
  const int src = n + m, snk = n + m + 1;
  for (int i = 0; i < n; ++i) g.add_edge(src, i, a[i].weight, 0.0);
  for (int j = 0; j < m; ++j) g.add_edge(n + j, snk, b[j].weight, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      g.add_edge(i, n + j, 2.0, circle_dist(a[i].position, b[j].position));
  return g.min_cost_flow(src, snk, 1.0);
}

}  // namespace skewlab
