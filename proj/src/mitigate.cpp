#include "misinfo/mitigate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <queue>

#include "misinfo/errors.hpp"
#include "misinfo/rng.hpp"

namespace misinfo::mitigate {

namespace {

constexpr int kUnreachable = -1;

std::vector<std::vector<int>> out_lists(const graph::DiffusionNetwork& d) {
  std::vector<std::vector<int>> adj(d.users);
  for (const auto& e : d.edges) adj[e.src].push_back(e.dst);
  for (auto& v : adj) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return adj;
}

std::vector<int> bfs_distances(const std::vector<std::vector<int>>& adj, int src) {
  std::vector<int> dist(adj.size(), kUnreachable);
  std::deque<int> queue = {src};
  dist[src] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : adj[u])
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
  }
  return dist;
}

void check_recipients(const graph::DiffusionNetwork& d, const std::vector<int>& recipients) {
  if (recipients.empty()) throw ValidationError("recipient set is empty");
  for (int p : recipients)
    if (p < 0 || p >= static_cast<int>(d.users))
      throw ValidationError("recipient out of range: " + std::to_string(p));
}

}  // namespace

std::vector<int> estimate_transmitters(const graph::DiffusionNetwork& diffusion,
                                       const std::vector<int>& recipients, int m) {
  check_recipients(diffusion, recipients);
  const auto adj = out_lists(diffusion);
  const int n = static_cast<int>(diffusion.users);

  std::vector<std::vector<int>> dist(n);
  int diameter = 0;
  for (int u = 0; u < n; ++u) {
    dist[u] = bfs_distances(adj, u);
    for (int d : dist[u]) diameter = std::max(diameter, d);
  }

  std::vector<std::pair<double, int>> scored;
  for (int u = 0; u < n; ++u) {
    double total = 0.0;
    for (int p : recipients)
      total += dist[u][p] == kUnreachable ? diameter + 1 : dist[u][p];
    const double score =
        static_cast<double>(adj[u].size()) / (1.0 + total / recipients.size());
    scored.emplace_back(-score, u);  // ties by id via the pair's second member
  }
  std::sort(scored.begin(), scored.end());
  std::vector<int> out;
  for (int i = 0; i < std::min(m, n); ++i) out.push_back(scored[i].second);
  return out;
}

namespace {

// Shortest path src -> dst; hop count with smallest-id tie-break, or maximum
// probability (minimum sum of -log p) when weighted. Empty if unreachable.
std::vector<int> dst_path(const graph::DiffusionNetwork& d,
                          const std::vector<std::vector<int>>& adj, int src, int dst,
                          bool weighted) {
  const int n = static_cast<int>(d.users);
  std::vector<int> pred(n, -1);
  if (!weighted) {
    std::vector<int> depth(n, kUnreachable);
    std::deque<int> queue = {src};
    depth[src] = 0;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : adj[u])  // ascending ids: first predecessor is the smallest
        if (depth[v] == kUnreachable) {
          depth[v] = depth[u] + 1;
          pred[v] = u;
          queue.push_back(v);
        }
    }
    if (depth[dst] == kUnreachable && dst != src) return {};
  } else {
    std::map<std::pair<int, int>, double> weight;
    for (const auto& e : d.edges) {
      const double w = e.prob > 0.0 ? -std::log(e.prob)
                                    : std::numeric_limits<double>::infinity();
      auto key = std::make_pair(e.src, e.dst);
      auto it = weight.find(key);
      if (it == weight.end() || w < it->second) weight[key] = w;
    }
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> cost(n, inf);
    cost[src] = 0.0;
    std::priority_queue<std::pair<double, int>, std::vector<std::pair<double, int>>,
                        std::greater<>>
        heap;
    heap.push({0.0, src});
    while (!heap.empty()) {
      const auto [c, u] = heap.top();
      heap.pop();
      if (c > cost[u]) continue;
      for (int v : adj[u]) {
        const double w = weight.at({u, v});
        if (cost[u] + w < cost[v]) {
          cost[v] = cost[u] + w;
          pred[v] = u;
          heap.push({cost[v], v});
        }
      }
    }
    if (cost[dst] == inf && dst != src) return {};
  }
  std::vector<int> path;
  for (int v = dst; v != -1; v = pred[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  if (path.front() != src) return {};
  return path;
}

std::vector<int> find_sources(const std::set<std::pair<int, int>>& edges,
                              const std::vector<int>& recipients) {
  std::set<int> nodes(recipients.begin(), recipients.end());
  std::set<int> with_in;
  for (const auto& [u, v] : edges) {
    nodes.insert(u);
    nodes.insert(v);
    with_in.insert(v);
  }
  std::vector<int> sources;
  for (int u : nodes)
    if (!with_in.count(u)) sources.push_back(u);
  return sources;
}

}  // namespace

ProvenanceResult find_provenance_paths(const ProvenanceInstance& instance) {
  const auto& d = instance.diffusion;
  check_recipients(d, instance.recipients);
  if (instance.k < 1) throw ValidationError("source budget k must be >= 1");
  const auto adj = out_lists(d);

  const auto transmitters =
      estimate_transmitters(d, instance.recipients, instance.transmitters);

  ProvenanceResult result;
  std::set<int> covered;
  for (int c : transmitters)
    for (int p : instance.recipients) {
      const auto path = dst_path(d, adj, c, p, instance.weight_by_probability);
      if (path.empty()) continue;
      covered.insert(p);
      for (std::size_t i = 0; i + 1 < path.size(); ++i)
        result.edges.insert({path[i], path[i + 1]});
    }
  // a recipient nobody reaches is orphaned, unless it has no in-edges at all
  // and is therefore a root (its own source)
  std::vector<int> orphaned;
  for (int p : instance.recipients) {
    bool has_in = false;
    for (const auto& e : d.edges)
      if (e.dst == p) has_in = true;
    if (!covered.count(p) && has_in) orphaned.push_back(p);
  }
  if (!orphaned.empty()) {
    std::string msg = "recipients unreachable from all candidates:";
    for (int p : orphaned) msg += " " + std::to_string(p);
    throw ValidationError(msg);
  }

  result.sources = find_sources(result.edges, instance.recipients);

  // merge sources through common ancestors until the budget is met
  std::vector<std::vector<int>> dist_from(d.users);
  for (int c = 0; c < static_cast<int>(d.users); ++c) dist_from[c] = bfs_distances(adj, c);
  while (static_cast<int>(result.sources.size()) > instance.k) {
    const std::size_t before = result.sources.size();
    // MinComAnc: node minimizing the mean distance to a pair of sources
    int best_c = -1, best_u = -1, best_v = -1;
    double best_score = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < result.sources.size(); ++a)
      for (std::size_t b = a + 1; b < result.sources.size(); ++b) {
        const int u = result.sources[a], v = result.sources[b];
        for (int c = 0; c < static_cast<int>(d.users); ++c) {
          if (c == u || c == v) continue;
          if (dist_from[c][u] == kUnreachable || dist_from[c][v] == kUnreachable) continue;
          const double score = 0.5 * (dist_from[c][u] + dist_from[c][v]);
          if (score < best_score) {
            best_score = score;
            best_c = c;
            best_u = u;
            best_v = v;
          }
        }
      }
    if (best_c != -1) {
      for (int s : {best_u, best_v}) {
        const auto path = dst_path(d, adj, best_c, s, instance.weight_by_probability);
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
          result.edges.insert({path[i], path[i + 1]});
      }
      result.sources = find_sources(result.edges, instance.recipients);
    }
    if (result.sources.size() >= before) {
      // GreedSel: greedily keep the k sources covering the most recipients
      std::map<int, std::set<int>> reach;  // source -> recipients it covers in G_k
      std::vector<std::vector<int>> sub(d.users);
      for (const auto& [u, v] : result.edges) sub[u].push_back(v);
      for (auto& v : sub) std::sort(v.begin(), v.end());
      for (int s : result.sources) {
        const auto dist = bfs_distances(sub, s);
        for (int p : instance.recipients)
          if (dist[p] != kUnreachable) reach[s].insert(p);
      }
      std::set<int> still_uncovered(instance.recipients.begin(), instance.recipients.end());
      std::vector<int> picked;
      while (static_cast<int>(picked.size()) < instance.k) {
        int best = -1;
        std::size_t best_gain = 0;
        for (int s : result.sources) {
          if (std::find(picked.begin(), picked.end(), s) != picked.end()) continue;
          std::size_t gain = 0;
          for (int p : reach[s])
            if (still_uncovered.count(p)) ++gain;
          if (best == -1 || gain > best_gain) {
            best = s;
            best_gain = gain;
          }
        }
        if (best == -1) break;
        picked.push_back(best);
        for (int p : reach[best]) still_uncovered.erase(p);
      }
      std::sort(picked.begin(), picked.end());
      result.sources = picked;
      break;
    }
  }

  // prune the subgraph to edges reachable from the final sources
  {
    std::vector<std::vector<int>> sub(d.users);
    for (const auto& [u, v] : result.edges) sub[u].push_back(v);
    std::vector<char> reach(d.users, 0);
    std::deque<int> queue;
    for (int s : result.sources) {
      reach[s] = 1;
      queue.push_back(s);
    }
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : sub[u])
        if (!reach[v]) {
          reach[v] = 1;
          queue.push_back(v);
        }
    }
    std::set<std::pair<int, int>> pruned;
    for (const auto& e : result.edges)
      if (reach[e.first]) pruned.insert(e);
    result.edges = std::move(pruned);
  }

  std::map<std::pair<int, int>, double> prob;
  for (const auto& e : d.edges) prob[{e.src, e.dst}] = e.prob;
  result.utility = 1.0;
  for (const auto& e : result.edges) result.utility *= prob.at(e);
  return result;
}

std::vector<int> identify_leaders(const std::vector<std::pair<int, int>>& user_post_edges,
                                  std::size_t users, int K) {
  if (K < 1) throw ValidationError("K must be >= 1");
  std::vector<std::set<int>> acted(users);
  for (const auto& [u, s] : user_post_edges) {
    if (u < 0 || u >= static_cast<int>(users)) throw ValidationError("user out of range");
    acted[u].insert(s);
  }
  std::set<int> covered;
  std::vector<int> leaders;
  while (static_cast<int>(leaders.size()) < K) {
    int best = -1;
    std::size_t best_gain = 0;
    for (std::size_t u = 0; u < users; ++u) {
      if (std::find(leaders.begin(), leaders.end(), static_cast<int>(u)) != leaders.end())
        continue;
      std::size_t gain = 0;
      for (int s : acted[u])
        if (!covered.count(s)) ++gain;
      if (gain > best_gain) {
        best = static_cast<int>(u);
        best_gain = gain;
      }
    }
    if (best == -1) break;  // nothing left to cover
    leaders.push_back(best);
    for (int s : acted[best]) covered.insert(s);
  }
  return leaders;
}

double scale_up_estimate(const std::set<int>& r_a, const std::set<int>& r_b) {
  std::vector<int> overlap;
  std::set_intersection(r_a.begin(), r_a.end(), r_b.begin(), r_b.end(),
                        std::back_inserter(overlap));
  if (overlap.empty())
    throw ValidationError("independence assumption unmeasurable: empty overlap");
  return static_cast<double>(r_a.size()) * static_cast<double>(r_b.size()) /
         static_cast<double>(overlap.size());
}

namespace {

struct IcmGraph {
  int n = 0;
  std::vector<std::vector<std::pair<int, double>>> out;  // (dst, prob)
  std::vector<char> blocked;
  std::vector<int> seeds;
};

IcmGraph prepare(const IcmInstance& instance) {
  IcmGraph g;
  g.n = static_cast<int>(instance.diffusion.users);
  g.out.resize(g.n);
  for (const auto& e : instance.diffusion.edges) {
    if (e.prob < 0.0 || e.prob > 1.0) throw ValidationError("activation probability out of [0,1]");
    g.out[e.src].emplace_back(e.dst, e.prob);
  }
  for (auto& v : g.out) std::sort(v.begin(), v.end());
  g.blocked.assign(g.n, 0);
  for (int b : instance.blocked) {
    if (b < 0 || b >= g.n) throw ValidationError("blocked node out of range");
    g.blocked[b] = 1;
  }
  std::set<int> seeds(instance.seeds.begin(), instance.seeds.end());
  for (int s : seeds) {
    if (s < 0 || s >= g.n) throw ValidationError("seed out of range");
    if (g.blocked[s]) throw ValidationError("seed node is blocked");
  }
  g.seeds.assign(seeds.begin(), seeds.end());
  return g;
}

std::vector<int> run_cascade(const IcmGraph& g, Rng& rng) {
  std::vector<char> active(g.n, 0);
  std::deque<int> frontier;
  for (int s : g.seeds) {
    active[s] = 1;
    frontier.push_back(s);
  }
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop_front();
    for (const auto& [v, p] : g.out[u]) {
      if (active[v] || g.blocked[v]) continue;
      if (rng.bernoulli(p)) {
        active[v] = 1;
        frontier.push_back(v);
      }
    }
  }
  std::vector<int> out;
  for (int i = 0; i < g.n; ++i)
    if (active[i]) out.push_back(i);
  return out;
}

// exact expected size by branching over each pending activation attempt;
// pending holds (node, index of its next untried out-edge)
double exact_influence_rec(const IcmGraph& g, std::vector<char> active,
                           std::vector<std::pair<int, std::size_t>> pending) {
  while (!pending.empty()) {
    auto& [u, i] = pending.back();
    if (i >= g.out[u].size()) {
      pending.pop_back();
      continue;
    }
    const auto [v, p] = g.out[u][i++];
    if (active[v] || g.blocked[v] || p == 0.0) continue;
    if (p == 1.0) {
      active[v] = 1;
      pending.emplace_back(v, 0);
      continue;
    }
    std::vector<char> active_yes = active;
    std::vector<std::pair<int, std::size_t>> pending_yes = pending;
    active_yes[v] = 1;
    pending_yes.emplace_back(v, 0);
    return p * exact_influence_rec(g, std::move(active_yes), std::move(pending_yes)) +
           (1.0 - p) * exact_influence_rec(g, std::move(active), std::move(pending));
  }
  double count = 0;
  for (char a : active) count += a;
  return count;
}

}  // namespace

IcmTrace icm_simulate(const IcmInstance& instance) {
  const IcmGraph g = prepare(instance);
  if (instance.replications < 1) throw ValidationError("replications must be >= 1");
  IcmTrace trace;
  for (int rep = 0; rep < instance.replications; ++rep) {
    Rng rng(Rng::derive(instance.seed, static_cast<std::uint64_t>(rep)));
    const auto active = run_cascade(g, rng);
    if (rep == 0) trace.first_active_set = active;
    trace.final_counts.push_back(static_cast<int>(active.size()));
  }
  return trace;
}

double influence_exact(const IcmInstance& instance) {
  const IcmGraph g = prepare(instance);
  std::vector<char> active(g.n, 0);
  std::vector<std::pair<int, std::size_t>> pending;
  for (int s : g.seeds) {
    active[s] = 1;
    pending.emplace_back(s, 0);
  }
  return exact_influence_rec(g, std::move(active), std::move(pending));
}

double influence_monte_carlo(const IcmInstance& instance) {
  const auto trace = icm_simulate(instance);
  double total = 0;
  for (int c : trace.final_counts) total += c;
  return total / trace.final_counts.size();
}

double influence(const IcmInstance& instance) {
  if (instance.diffusion.users <= 15) return influence_exact(instance);
  return influence_monte_carlo(instance);
}

std::vector<int> greedy_block(const IcmInstance& instance, int k) {
  const int n = static_cast<int>(instance.diffusion.users);
  if (k > n - static_cast<int>(instance.seeds.size()))
    throw ValidationError("cannot block more nodes than non-seeds");
  std::vector<double> out_links(n, 0), in_links(n, 0), prob_mass(n, 0);
  for (const auto& e : instance.diffusion.edges) {
    out_links[e.src] += 1;
    in_links[e.dst] += 1;
    prob_mass[e.src] += e.prob;
  }
  std::set<int> seeds(instance.seeds.begin(), instance.seeds.end());

  IcmInstance work = instance;
  std::vector<int> blocked = instance.blocked;
  for (int round = 0; round < k; ++round) {
    // candidates ordered by out-links, in-links, probability mass, then id
    std::vector<int> candidates;
    for (int u = 0; u < n; ++u) {
      if (seeds.count(u)) continue;
      if (std::find(blocked.begin(), blocked.end(), u) != blocked.end()) continue;
      candidates.push_back(u);
    }
    std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
      if (out_links[a] != out_links[b]) return out_links[a] > out_links[b];
      if (in_links[a] != in_links[b]) return in_links[a] > in_links[b];
      if (prob_mass[a] != prob_mass[b]) return prob_mass[a] > prob_mass[b];
      return a < b;
    });
    int best = -1;
    double best_influence = std::numeric_limits<double>::infinity();
    for (int u : candidates) {
      work.blocked = blocked;
      work.blocked.push_back(u);
      const double inf = influence(work);
      if (inf < best_influence - 1e-12) {
        best_influence = inf;
        best = u;
      }
    }
    if (best == -1) break;
    blocked.push_back(best);
  }
  std::vector<int> added(blocked.begin() + instance.blocked.size(), blocked.end());
  return added;
}

Eigen::VectorXd HawkesTrace::fake_counts(int users, double t) const {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(users);
  for (const auto& e : fake)
    if (e.time <= t) c[e.user] += 1;
  return c;
}

Eigen::VectorXd HawkesTrace::mitigation_counts(int users, double t) const {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(users);
  for (const auto& e : mitigation)
    if (e.time <= t) c[e.user] += 1;
  return c;
}

namespace {

void check_campaign(const HawkesCampaign& c) {
  const Eigen::Index m = c.base_fake.size();
  if (m == 0) throw ValidationError("campaign has no users");
  if (c.base_mitigation.size() != m || c.adjacency.rows() != m || c.adjacency.cols() != m ||
      c.excitation.rows() != m || c.excitation.cols() != m)
    throw ValidationError("campaign dimension mismatch");
  if (c.base_fake.minCoeff() < 0.0 || c.base_mitigation.minCoeff() < 0.0 ||
      c.excitation.minCoeff() < 0.0)
    throw ValidationError("intensities must be nonnegative");
  if (!(c.omega > 0.0) || !(c.horizon > 0.0))
    throw ValidationError("omega and horizon must be positive");
  const Eigen::VectorXcd ev = c.excitation.eigenvalues();
  double rho = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) rho = std::max(rho, std::abs(ev[i]));
  if (rho / c.omega >= 1.0)
    throw ValidationError("unstable excitation: spectral radius / omega >= 1");
}

}  // namespace

HawkesTrace hawkes_simulate(const HawkesCampaign& campaign, const Eigen::MatrixXd& stage_boost,
                            std::uint64_t seed_override, bool use_override) {
  check_campaign(campaign);
  const int m = static_cast<int>(campaign.base_fake.size());
  const int stages = static_cast<int>(stage_boost.rows());
  if (stages > 0 && stage_boost.cols() != m)
    throw ValidationError("stage boost shape mismatch");
  const double stage_len = stages > 0 ? campaign.horizon / stages : campaign.horizon;

  Rng rng(use_override ? seed_override : campaign.seed);
  HawkesTrace trace;

  // excitation state: s[j] = sum over past events of user j of exp(-omega dt)
  Eigen::VectorXd s_fake = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd s_mit = Eigen::VectorXd::Zero(m);
  double t = 0.0;

  auto mitigation_base = [&](double at) -> Eigen::VectorXd {
    Eigen::VectorXd base = campaign.base_mitigation;
    if (stages > 0) {
      int stage = static_cast<int>(at / stage_len);
      stage = std::clamp(stage, 0, stages - 1);
      base += stage_boost.row(stage).transpose();
    }
    return base;
  };

  while (t < campaign.horizon) {
    const Eigen::VectorXd lam_f = campaign.base_fake + campaign.excitation * s_fake;
    const Eigen::VectorXd lam_m = mitigation_base(t) + campaign.excitation * s_mit;
    // intensities only decay until the next event or stage boundary
    const double next_boundary =
        stages > 0 ? (std::floor(t / stage_len) + 1.0) * stage_len : campaign.horizon;
    const double bound = lam_f.sum() + lam_m.sum();
    if (bound <= 0.0) {
      t = std::min(next_boundary, campaign.horizon);
      if (t >= campaign.horizon) break;
      continue;
    }
    const double wait = rng.exponential(bound);
    if (t + wait > std::min(next_boundary, campaign.horizon)) {
      const double target = std::min(next_boundary, campaign.horizon);
      const double decay = std::exp(-campaign.omega * (target - t));
      s_fake *= decay;
      s_mit *= decay;
      t = target;
      continue;
    }
    const double decay = std::exp(-campaign.omega * wait);
    s_fake *= decay;
    s_mit *= decay;
    t += wait;
    const Eigen::VectorXd cur_f = campaign.base_fake + campaign.excitation * s_fake;
    const Eigen::VectorXd cur_m = mitigation_base(t) + campaign.excitation * s_mit;
    const double total = cur_f.sum() + cur_m.sum();
    const double u = rng.uniform() * bound;
    if (u >= total) continue;  // thinned
    // pick the component
    double acc = 0.0;
    int user = -1;
    bool fake_process = true;
    for (int i = 0; i < m && user == -1; ++i) {
      acc += cur_f[i];
      if (u < acc) user = i;
    }
    if (user == -1) {
      fake_process = false;
      for (int i = 0; i < m && user == -1; ++i) {
        acc += cur_m[i];
        if (u < acc) user = i;
      }
    }
    if (user == -1) continue;  // numerical edge
    if (fake_process) {
      trace.fake.push_back({t, user});
      s_fake[user] += 1.0;
    } else {
      trace.mitigation.push_back({t, user});
      s_mit[user] += 1.0;
    }
  }
  return trace;
}

double campaign_reward(const HawkesCampaign& campaign, const HawkesTrace& trace, double t) {
  if (t > campaign.horizon + 1e-12) throw ValidationError("stage beyond the horizon");
  const int m = static_cast<int>(campaign.base_fake.size());
  const Eigen::VectorXd f = campaign.adjacency * trace.fake_counts(m, t);
  const Eigen::VectorXd g = campaign.adjacency * trace.mitigation_counts(m, t);
  return f.dot(g) / m;
}

CampaignPlan greedy_campaign(const HawkesCampaign& campaign, const std::vector<int>& candidates,
                             double budget, int stages, int rollouts) {
  check_campaign(campaign);
  if (budget < 0.0) throw ValidationError("budget must be >= 0");
  if (stages < 1 || rollouts < 1) throw ValidationError("stages and rollouts must be >= 1");
  const int m = static_cast<int>(campaign.base_fake.size());
  for (int c : candidates)
    if (c < 0 || c >= m) throw ValidationError("candidate out of range");

  auto mean_reward = [&](const Eigen::MatrixXd& alloc) {
    double total = 0.0;
    for (int r = 0; r < rollouts; ++r) {
      const auto trace = hawkes_simulate(
          campaign, alloc, Rng::derive(campaign.seed, 7000 + static_cast<std::uint64_t>(r)),
          true);
      total += campaign_reward(campaign, trace, campaign.horizon);
    }
    return total / rollouts;
  };

  CampaignPlan plan;
  plan.allocation = Eigen::MatrixXd::Zero(stages, m);
  plan.baseline = mean_reward(plan.allocation);
  if (budget == 0.0 || candidates.empty()) {
    plan.reward = plan.baseline;
    return plan;
  }
  for (int stage = 0; stage < stages; ++stage) {
    int best = -1;
    double best_reward = -std::numeric_limits<double>::infinity();
    for (int c : candidates) {
      Eigen::MatrixXd trial = plan.allocation;
      trial(stage, c) += budget;
      const double r = mean_reward(trial);
      if (r > best_reward + 1e-15) {
        best_reward = r;
        best = c;
      }
    }
    if (best != -1) plan.allocation(stage, best) += budget;
  }
  plan.reward = mean_reward(plan.allocation);
  return plan;
}

}  // namespace misinfo::mitigate
