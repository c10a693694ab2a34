#include "misinfo/kg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "misinfo/errors.hpp"

namespace misinfo::kg {

namespace {

constexpr double kFlowEps = 1e-12;

std::vector<std::vector<int>> neighbor_lists(const graph::KnowledgeGraph& kg, bool directed) {
  std::vector<std::set<int>> adj(kg.entities);
  for (const auto& t : kg.triples) {
    adj[t.subject].insert(t.object);
    if (!directed) adj[t.object].insert(t.subject);
  }
  std::vector<std::vector<int>> out(kg.entities);
  for (std::size_t i = 0; i < kg.entities; ++i) out[i].assign(adj[i].begin(), adj[i].end());
  return out;
}

void check_entity(const graph::KnowledgeGraph& kg, int e, const char* what) {
  if (e < 0 || e >= static_cast<int>(kg.entities))
    throw ValidationError(std::string("unknown ") + what + " entity " + std::to_string(e));
}

struct Arc {
  int to;
  double cap;
  double cost;
  int rev;  // index of the reverse arc in adj[to]
};

struct FlowGraph {
  std::vector<std::vector<Arc>> adj;

  explicit FlowGraph(int n) : adj(n) {}

  void add(int u, int v, double cap, double cost) {
    adj[u].push_back({v, cap, cost, static_cast<int>(adj[v].size())});
    adj[v].push_back({u, 0.0, -cost, static_cast<int>(adj[u].size()) - 1});
  }
};

// Bellman-Ford over residual arcs; returns predecessor (node, arc index) or
// an empty path when the sink is unreachable.
bool shortest_residual_path(const FlowGraph& g, int s, int t,
                            std::vector<std::pair<int, int>>& pred) {
  const int n = static_cast<int>(g.adj.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, inf);
  pred.assign(n, {-1, -1});
  dist[s] = 0.0;
  for (int round = 0; round < n; ++round) {
    bool changed = false;
    for (int u = 0; u < n; ++u) {
      if (dist[u] == inf) continue;
      for (std::size_t a = 0; a < g.adj[u].size(); ++a) {
        const Arc& arc = g.adj[u][a];
        if (arc.cap <= kFlowEps) continue;
        if (dist[u] + arc.cost < dist[arc.to] - 1e-15) {
          dist[arc.to] = dist[u] + arc.cost;
          pred[arc.to] = {u, static_cast<int>(a)};
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return dist[t] < inf;
}

}  // namespace

double specificity(const KnowledgePath& path, const graph::KnowledgeGraph& kg) {
  if (path.entities.size() < 2) throw ValidationError("path needs at least two entities");
  const auto degrees = kg.degrees();
  double sum = 0.0;
  for (std::size_t i = 1; i + 1 < path.entities.size(); ++i) {
    const int e = path.entities[i];
    check_entity(kg, e, "path");
    sum += std::log(static_cast<double>(std::max(degrees[e], 1)));
  }
  return 1.0 / (1.0 + sum);
}

std::vector<KnowledgePath> find_paths(const graph::KnowledgeGraph& kg, int s, int o,
                                      int max_len, int max_paths, bool directed) {
  check_entity(kg, s, "subject");
  check_entity(kg, o, "object");
  if (s == o) throw ValidationError("subject equals object");
  if (max_len < 1 || max_paths < 0) throw ValidationError("invalid path limits");

  const auto adj = neighbor_lists(kg, directed);
  std::vector<KnowledgePath> out;
  std::vector<int> stack = {s};
  std::vector<char> on_path(kg.entities, 0);
  on_path[s] = 1;

  // iterative DFS over simple paths
  std::vector<std::size_t> next(kg.entities, 0);
  std::vector<std::size_t> frame = {0};
  while (!stack.empty()) {
    const int u = stack.back();
    if (u == o) {
      out.push_back({stack});
      on_path[u] = 0;
      stack.pop_back();
      frame.pop_back();
      continue;
    }
    bool advanced = false;
    for (std::size_t& i = frame.back(); i < adj[u].size();) {
      const int v = adj[u][i++];
      if (on_path[v]) continue;
      if (static_cast<int>(stack.size()) > max_len) continue;  // would exceed edge budget
      stack.push_back(v);
      on_path[v] = 1;
      frame.push_back(0);
      advanced = true;
      break;
    }
    if (!advanced && stack.back() == u) {
      on_path[u] = 0;
      stack.pop_back();
      frame.pop_back();
    }
  }

  std::stable_sort(out.begin(), out.end(), [&](const KnowledgePath& a, const KnowledgePath& b) {
    const double sa = specificity(a, kg), sb = specificity(b, kg);
    if (sa != sb) return sa > sb;
    return a.entities < b.entities;
  });
  if (static_cast<int>(out.size()) > max_paths) out.resize(max_paths);
  return out;
}

PathCheck truth_value_path(const graph::KnowledgeGraph& kg, const Claim& claim, int max_len,
                           int max_paths, bool directed) {
  PathCheck result;
  if (claim.subject == claim.object) throw ValidationError("claim subject equals object");
  if (claim.subject < 0 || claim.subject >= static_cast<int>(kg.entities) ||
      claim.object < 0 || claim.object >= static_cast<int>(kg.entities)) {
    result.unknown_entity = true;
    return result;
  }
  for (const auto& t : kg.triples) {
    const bool forward = t.subject == claim.subject && t.object == claim.object;
    const bool backward =
        !directed && t.subject == claim.object && t.object == claim.subject;
    if ((forward || backward) && t.predicate == claim.predicate) {
      result.tau = 1.0;
      result.n_paths = 1;
      return result;
    }
  }
  const auto paths = find_paths(kg, claim.subject, claim.object, max_len, max_paths, directed);
  result.n_paths = static_cast<int>(paths.size());
  if (!paths.empty()) result.tau = specificity(paths.front(), kg);
  return result;
}

FlowResult knowledge_flow(const graph::KnowledgeGraph& kg, const Claim& claim,
                          const FlowOptions& options) {
  FlowResult result;
  if (claim.subject == claim.object) throw ValidationError("claim subject equals object");
  if (claim.subject < 0 || claim.subject >= static_cast<int>(kg.entities) ||
      claim.object < 0 || claim.object >= static_cast<int>(kg.entities)) {
    result.unknown_entity = true;
    return result;
  }
  const int s = claim.subject, t = claim.object;
  const int n = static_cast<int>(kg.entities);
  const auto degrees = kg.degrees();
  const auto adj = neighbor_lists(kg, options.directed);

  auto capacity = [&](int head) {
    if (options.uniform_capacity >= 0.0) return options.uniform_capacity;
    if (head == t) return 1.0;
    return 1.0 / (1.0 + std::log(static_cast<double>(std::max(degrees[head], 1))));
  };
  auto cost = [&](int head) {
    if (head == t) return 0.0;
    return std::log(static_cast<double>(std::max(degrees[head], 1)));
  };

  FlowGraph g(n);
  std::vector<std::vector<int>> arc_index(n);  // forward arc positions
  for (int u = 0; u < n; ++u)
    for (int v : adj[u]) {
      if (v == s || u == t) continue;  // nothing enters the source or leaves the sink
      arc_index[u].push_back(static_cast<int>(g.adj[u].size()));
      g.add(u, v, capacity(v), cost(v));
    }

  // successive shortest augmenting paths
  std::vector<std::pair<int, int>> pred;
  while (shortest_residual_path(g, s, t, pred)) {
    double bottleneck = std::numeric_limits<double>::infinity();
    for (int v = t; v != s;) {
      const auto [u, a] = pred[v];
      bottleneck = std::min(bottleneck, g.adj[u][a].cap);
      v = u;
    }
    if (bottleneck <= kFlowEps) break;
    for (int v = t; v != s;) {
      const auto [u, a] = pred[v];
      Arc& arc = g.adj[u][a];
      arc.cap -= bottleneck;
      g.adj[arc.to][arc.rev].cap += bottleneck;
      v = u;
    }
    result.max_flow += bottleneck;
  }

  // flow on each forward arc = initial capacity - residual capacity
  std::vector<std::vector<std::pair<int, double>>> flow(n);  // (head, amount)
  for (int u = 0; u < n; ++u) {
    std::size_t k = 0;
    for (int v : adj[u]) {
      if (v == s || u == t) continue;
      const Arc& arc = g.adj[u][arc_index[u][k++]];
      const double f = capacity(v) - arc.cap;
      if (f > kFlowEps) flow[u].emplace_back(v, f);
    }
  }

  // shortest-cost-first path decomposition of the flow
  const double inf = std::numeric_limits<double>::infinity();
  for (int guard = 0; guard < 4 * n * n + 16; ++guard) {
    std::vector<double> dist(n, inf);
    std::vector<int> from(n, -1);
    dist[s] = 0.0;
    for (int round = 0; round < n; ++round) {
      bool changed = false;
      for (int u = 0; u < n; ++u) {
        if (dist[u] == inf) continue;
        for (const auto& [v, f] : flow[u]) {
          if (f <= kFlowEps) continue;
          if (dist[u] + cost(v) < dist[v] - 1e-15) {
            dist[v] = dist[u] + cost(v);
            from[v] = u;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    if (dist[t] == inf) break;
    FlowPath path;
    for (int v = t; v != -1; v = from[v]) path.entities.push_back(v);
    std::reverse(path.entities.begin(), path.entities.end());
    path.bottleneck = inf;
    for (std::size_t i = 0; i + 1 < path.entities.size(); ++i)
      for (auto& [v, f] : flow[path.entities[i]])
        if (v == path.entities[i + 1]) path.bottleneck = std::min(path.bottleneck, f);
    if (path.bottleneck <= kFlowEps) break;
    for (std::size_t i = 0; i + 1 < path.entities.size(); ++i)
      for (auto& [v, f] : flow[path.entities[i]])
        if (v == path.entities[i + 1]) f -= path.bottleneck;
    KnowledgePath kp{path.entities};
    path.spec = specificity(kp, kg);
    result.tau += path.bottleneck * path.spec;
    result.paths.push_back(std::move(path));
  }
  return result;
}

}  // namespace misinfo::kg
