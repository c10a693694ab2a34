#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <vector>

#include "misinfo/errors.hpp"
#include "misinfo/mitigate.hpp"
#include "misinfo/rng.hpp"

using namespace misinfo;
using namespace misinfo::mitigate;

namespace {

graph::DiffusionNetwork make_net(std::size_t users,
                                 std::vector<std::tuple<int, int, double>> edges) {
  graph::DiffusionNetwork d;
  d.users = users;
  for (const auto& [s, t, p] : edges) d.edges.push_back({s, t, p});
  return d;
}

graph::DiffusionNetwork random_dag(int n, double edge_prob, Rng& rng) {
  graph::DiffusionNetwork d;
  d.users = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.bernoulli(edge_prob)) d.edges.push_back({i, j, rng.uniform(0.2, 1.0)});
  return d;
}

std::set<int> reachable_in(const std::set<std::pair<int, int>>& edges, int src) {
  std::set<int> seen = {src};
  std::queue<int> q;
  q.push(src);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (const auto& [a, b] : edges)
      if (a == u && !seen.count(b)) {
        seen.insert(b);
        q.push(b);
      }
  }
  return seen;
}

// maximum-probability path src -> dst, empty if unreachable
std::vector<int> best_prob_path(const graph::DiffusionNetwork& d, int src, int dst) {
  const int n = static_cast<int>(d.users);
  std::vector<double> cost(n, 1e300);
  std::vector<int> pred(n, -1);
  cost[src] = 0.0;
  std::priority_queue<std::pair<double, int>, std::vector<std::pair<double, int>>,
                      std::greater<>>
      heap;
  heap.push({0.0, src});
  while (!heap.empty()) {
    const auto [c, u] = heap.top();
    heap.pop();
    if (c > cost[u]) continue;
    for (const auto& e : d.edges) {
      if (e.src != u || e.prob <= 0.0) continue;
      const double w = -std::log(e.prob);
      if (cost[u] + w < cost[e.dst]) {
        cost[e.dst] = cost[u] + w;
        pred[e.dst] = u;
        heap.push({cost[e.dst], e.dst});
      }
    }
  }
  if (cost[dst] >= 1e300 && dst != src) return {};
  std::vector<int> path;
  for (int v = dst; v != -1; v = pred[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

std::size_t coverage(const std::vector<std::pair<int, int>>& edges,
                     const std::vector<int>& chosen) {
  std::set<int> posts;
  for (const auto& [u, s] : edges)
    if (std::find(chosen.begin(), chosen.end(), u) != chosen.end()) posts.insert(s);
  return posts.size();
}

}  // namespace

TEST_CASE("transmitter ranking") {
  SUBCASE("star center outranks the leaves") {
    const auto d = make_net(5, {{0, 1, 0.5}, {0, 2, 0.5}, {0, 3, 0.5}, {0, 4, 0.5}});
    const auto ranked = estimate_transmitters(d, {1, 2, 3, 4}, 3);
    CHECK(ranked[0] == 0);
  }
  SUBCASE("on a cycle the nearest nodes rank first") {
    const auto d = make_net(6, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1},
                                {4, 5, 1}, {5, 0, 1}});
    const auto ranked = estimate_transmitters(d, {0}, 3);
    CHECK(ranked == std::vector<int>{0, 5, 4});
  }
  SUBCASE("budget at least the user count returns everyone") {
    const auto d = make_net(4, {{0, 1, 1}});
    CHECK(estimate_transmitters(d, {1}, 10).size() == 4);
  }
  SUBCASE("empty recipient set rejected") {
    const auto d = make_net(3, {});
    CHECK_THROWS_AS(estimate_transmitters(d, {}, 2), ValidationError);
  }
}

TEST_CASE("provenance on a directed tree finds the root") {
  //        0
  //      /   \
  //     1     2
  //    / \     \
  //   3   4     5
  const auto d = make_net(6, {{0, 1, 0.9}, {0, 2, 0.8}, {1, 3, 0.7}, {1, 4, 0.6},
                              {2, 5, 0.5}});
  ProvenanceInstance inst;
  inst.diffusion = d;
  inst.recipients = {3, 4, 5};
  inst.k = 1;
  inst.transmitters = 6;
  const auto result = find_provenance_paths(inst);
  CHECK(result.sources == std::vector<int>{0});
  CHECK(result.edges.size() == 5);
  CHECK(result.utility == doctest::Approx(0.9 * 0.8 * 0.7 * 0.6 * 0.5));

  // exhaustive single-source check: only the root covers every recipient
  for (int s = 1; s < 6; ++s) {
    std::set<std::pair<int, int>> all;
    for (const auto& e : d.edges) all.insert({e.src, e.dst});
    const auto reach = reachable_in(all, s);
    bool covers = true;
    for (int p : inst.recipients)
      if (!reach.count(p)) covers = false;
    CHECK(!covers);
  }
}

TEST_CASE("provenance of a single recipient with a unique in-path") {
  const auto d = make_net(3, {{0, 1, 0.5}, {1, 2, 0.5}});
  ProvenanceInstance inst;
  inst.diffusion = d;
  inst.recipients = {2};
  inst.k = 1;
  const auto result = find_provenance_paths(inst);
  CHECK(result.sources == std::vector<int>{0});
  CHECK(result.edges == std::set<std::pair<int, int>>{{0, 1}, {1, 2}});
  CHECK(result.utility == doctest::Approx(0.25));
}

TEST_CASE("provenance sources always cover the recipients") {
  for (int s = 0; s < 20; ++s) {
    Rng rng(100 + s);
    const auto d = random_dag(9, 0.35, rng);
    // recipients: the largest-id nodes that have at least one in-edge
    std::vector<int> recipients;
    for (int v = 8; v >= 5 && recipients.size() < 3; --v)
      for (const auto& e : d.edges)
        if (e.dst == v) {
          recipients.push_back(v);
          break;
        }
    if (recipients.empty()) continue;
    ProvenanceInstance inst;
    inst.diffusion = d;
    inst.recipients = recipients;
    inst.k = 2;
    inst.transmitters = 9;
    ProvenanceResult result;
    try {
      result = find_provenance_paths(inst);
    } catch (const ValidationError&) {
      continue;  // recipients orphaned from every candidate
    }
    CHECK(static_cast<int>(result.sources.size()) <= inst.k);
    for (int p : recipients) {
      bool covered = false;
      for (int src : result.sources)
        if (reachable_in(result.edges, src).count(p)) covered = true;
      CHECK(covered);
    }
  }
}

TEST_CASE("probability-weighted provenance matches the max-probability-path union") {
  for (int s = 0; s < 20; ++s) {
    Rng rng(300 + s);
    const auto d = random_dag(8, 0.4, rng);
    std::vector<int> recipients;
    for (const auto& e : d.edges)
      if (e.dst == 7) recipients = {7};
    if (recipients.empty()) continue;
    ProvenanceInstance inst;
    inst.diffusion = d;
    inst.recipients = recipients;
    inst.k = 8;
    inst.transmitters = 8;
    inst.weight_by_probability = true;
    const auto result = find_provenance_paths(inst);

    std::set<std::pair<int, int>> baseline;
    for (int c = 0; c < 8; ++c)
      for (int p : recipients) {
        const auto path = best_prob_path(d, c, p);
        for (std::size_t i = 0; i + 1 < path.size(); ++i)
          baseline.insert({path[i], path[i + 1]});
      }
    std::map<std::pair<int, int>, double> prob;
    for (const auto& e : d.edges) prob[{e.src, e.dst}] = e.prob;
    double baseline_utility = 1.0;
    for (const auto& e : baseline) baseline_utility *= prob.at(e);
    CHECK(result.utility >= baseline_utility - 1e-12);
  }
}

TEST_CASE("orphaned recipients are reported") {
  ProvenanceInstance inst;
  inst.diffusion = make_net(5, {{0, 1, 0.5}, {2, 3, 0.5}});
  inst.recipients = {1, 3};
  inst.k = 2;
  inst.transmitters = 5;
  CHECK_NOTHROW(find_provenance_paths(inst));

  // with a candidate budget of 1 only node 0 survives the ranking, so
  // recipient 3 (which has an in-edge) is unreachable from every candidate
  inst.transmitters = 1;
  CHECK_THROWS_WITH_AS(find_provenance_paths(inst),
                       doctest::Contains("unreachable"), ValidationError);
}

TEST_CASE("leader selection") {
  SUBCASE("one user acting on every post wins K=1") {
    const std::vector<std::pair<int, int>> edges = {{2, 0}, {2, 1}, {2, 2}, {0, 0}, {1, 1}};
    CHECK(identify_leaders(edges, 3, 1) == std::vector<int>{2});
  }
  SUBCASE("disjoint coverage picks the two largest") {
    // user 0 covers 3 posts, user 1 covers 2, user 2 covers 2 overlapping user 1
    const std::vector<std::pair<int, int>> edges = {{0, 0}, {0, 1}, {0, 2},
                                                    {1, 3}, {1, 4}, {2, 4}, {2, 5}};
    const auto leaders = identify_leaders(edges, 3, 2);
    CHECK(leaders == std::vector<int>{0, 1});
    // brute force over all 2-subsets confirms {0,2} maximizes coverage
    std::size_t best = 0;
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) best = std::max(best, coverage(edges, {a, b}));
    CHECK(coverage(edges, leaders) == best);
  }
  SUBCASE("greedy coverage within 1 - 1/e of the optimum") {
    for (int s = 0; s < 10; ++s) {
      Rng rng(700 + s);
      std::vector<std::pair<int, int>> edges;
      const int users = 10, posts = 12;
      for (int u = 0; u < users; ++u)
        for (int p = 0; p < posts; ++p)
          if (rng.bernoulli(0.2)) edges.emplace_back(u, p);
      const int K = 3;
      const auto greedy = identify_leaders(edges, users, K);
      std::size_t opt = 0;
      for (int a = 0; a < users; ++a)
        for (int b = a + 1; b < users; ++b)
          for (int c = b + 1; c < users; ++c)
            opt = std::max(opt, coverage(edges, {a, b, c}));
      CHECK(static_cast<double>(coverage(edges, greedy)) >= (1.0 - std::exp(-1.0)) * opt);
    }
  }
  SUBCASE("selection stops once everything is covered") {
    const std::vector<std::pair<int, int>> edges = {{0, 0}, {1, 0}};
    CHECK(identify_leaders(edges, 2, 2) == std::vector<int>{0});
  }
}

TEST_CASE("audience scale-up") {
  SUBCASE("identical samples return the sample size exactly") {
    std::set<int> r = {3, 5, 9, 12};
    CHECK(scale_up_estimate(r, r) == 4.0);
  }
  SUBCASE("hand arithmetic") {
    std::set<int> a, b;
    for (int i = 0; i < 50; ++i) a.insert(i);
    for (int i = 30; i < 70; ++i) b.insert(i);  // |b| = 40, overlap = 20
    CHECK(scale_up_estimate(a, b) == doctest::Approx(100.0));
  }
  SUBCASE("empty overlap rejected") {
    CHECK_THROWS_WITH_AS(scale_up_estimate({1}, {2}),
                         doctest::Contains("independence assumption unmeasurable"),
                         ValidationError);
  }
  SUBCASE("capture-recapture recovers a synthetic population size") {
    const int population = 1000, sample = 200;
    int good = 0;
    for (int s = 0; s < 100; ++s) {
      Rng rng(900 + s);
      auto draw = [&]() {
        std::vector<int> pool(population);
        std::iota(pool.begin(), pool.end(), 0);
        std::set<int> out;
        for (int i = 0; i < sample; ++i) {
          const std::size_t j = i + rng.index(population - i);
          std::swap(pool[i], pool[j]);
          out.insert(pool[i]);
        }
        return out;
      };
      const auto a = draw(), b = draw();
      try {
        const double est = scale_up_estimate(a, b);
        if (std::abs(est - population) <= 0.2 * population) ++good;
      } catch (const ValidationError&) {
      }
    }
    CHECK(good >= 90);
  }
}

TEST_CASE("independent cascade influence") {
  SUBCASE("zero probabilities leave only the seeds") {
    const auto d = make_net(5, {{0, 1, 0}, {1, 2, 0}, {2, 3, 0}});
    IcmInstance inst;
    inst.diffusion = d;
    inst.seeds = {0, 3};
    CHECK(influence(inst) == doctest::Approx(2.0));
  }
  SUBCASE("unit probabilities activate the whole reachable set") {
    const auto d = make_net(5, {{0, 1, 1}, {0, 2, 1}, {2, 3, 1}});
    IcmInstance inst;
    inst.diffusion = d;
    inst.seeds = {0};
    CHECK(influence(inst) == doctest::Approx(4.0));  // node 4 unreachable
  }
  SUBCASE("3-node chain at p = 0.5") {
    const auto d = make_net(3, {{0, 1, 0.5}, {1, 2, 0.5}});
    IcmInstance inst;
    inst.diffusion = d;
    inst.seeds = {0};
    CHECK(influence(inst) == doctest::Approx(1.75));
  }
  SUBCASE("blocked nodes never activate") {
    const auto d = make_net(3, {{0, 1, 1}, {1, 2, 1}});
    IcmInstance inst;
    inst.diffusion = d;
    inst.seeds = {0};
    inst.blocked = {1};
    CHECK(influence(inst) == doctest::Approx(1.0));
  }
  SUBCASE("blocked seed rejected") {
    IcmInstance inst;
    inst.diffusion = make_net(2, {});
    inst.seeds = {0};
    inst.blocked = {0};
    CHECK_THROWS_AS(influence(inst), ValidationError);
  }
}

TEST_CASE("influence is monotone in seeds and antitone in blocks") {
  for (int s = 0; s < 10; ++s) {
    Rng rng(1500 + s);
    graph::DiffusionNetwork d;
    d.users = 5;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        if (i != j && rng.bernoulli(0.25)) d.edges.push_back({i, j, rng.uniform()});
    IcmInstance inst;
    inst.diffusion = d;
    for (int a = 0; a < 5; ++a) {
      inst.seeds = {a};
      inst.blocked = {};
      const double base = influence_exact(inst);
      for (int b = 0; b < 5; ++b) {
        if (b == a) continue;
        inst.seeds = {a, b};
        inst.blocked = {};
        CHECK(influence_exact(inst) >= base - 1e-9);
        inst.seeds = {a};
        inst.blocked = {b};
        const double blocked_one = influence_exact(inst);
        CHECK(blocked_one <= base + 1e-9);
        for (int c = 0; c < 5; ++c) {
          if (c == a || c == b) continue;
          inst.blocked = {b, c};
          CHECK(influence_exact(inst) <= blocked_one + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("monte carlo influence agrees with exact enumeration") {
  for (int s = 0; s < 5; ++s) {
    Rng rng(2100 + s);
    graph::DiffusionNetwork d;
    d.users = 10;
    for (int i = 0; i < 10; ++i)
      for (int j = i + 1; j < 10; ++j)
        if (rng.bernoulli(0.15)) d.edges.push_back({i, j, rng.uniform()});
    IcmInstance inst;
    inst.diffusion = d;
    inst.seeds = {0, 1};
    inst.replications = 4000;
    inst.seed = 77 + s;
    const double exact = influence_exact(inst);
    const auto trace = icm_simulate(inst);
    double mean = 0.0;
    for (int c : trace.final_counts) mean += c;
    mean /= trace.final_counts.size();
    double var = 0.0;
    for (int c : trace.final_counts) var += (c - mean) * (c - mean);
    const double se = std::sqrt(var / trace.final_counts.size()) /
                      std::sqrt(static_cast<double>(trace.final_counts.size()));
    CHECK(std::abs(mean - exact) <= 3.0 * se + 1e-9);
  }
}

TEST_CASE("simulation is deterministic in the seed") {
  graph::DiffusionNetwork d = make_net(6, {{0, 1, 0.4}, {1, 2, 0.6}, {0, 3, 0.5},
                                           {3, 4, 0.7}, {4, 5, 0.2}});
  IcmInstance inst;
  inst.diffusion = d;
  inst.seeds = {0};
  inst.replications = 50;
  inst.seed = 31;
  const auto a = icm_simulate(inst), b = icm_simulate(inst);
  CHECK(a.final_counts == b.final_counts);
  CHECK(a.first_active_set == b.first_active_set);
}

TEST_CASE("greedy blocking") {
  SUBCASE("star with the center seeded drops influence by one") {
    const auto d = make_net(5, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}});
    IcmInstance inst;
    inst.diffusion = d;
    inst.seeds = {0};
    const auto blocked = greedy_block(inst, 1);
    REQUIRE(blocked.size() == 1);
    CHECK(blocked[0] >= 1);
    inst.blocked = blocked;
    CHECK(influence(inst) == doctest::Approx(4.0));
  }
  SUBCASE("chain blocks the middle node") {
    const auto d = make_net(3, {{0, 1, 1}, {1, 2, 1}});
    IcmInstance inst;
    inst.diffusion = d;
    inst.seeds = {0};
    CHECK(greedy_block(inst, 1) == std::vector<int>{1});
    inst.blocked = {1};
    CHECK(influence(inst) == doctest::Approx(1.0));
  }
  SUBCASE("never worse than the out-degree heuristic") {
    for (int s = 0; s < 20; ++s) {
      Rng rng(2600 + s);
      graph::DiffusionNetwork d;
      d.users = 12;
      std::vector<int> outdeg(12, 0);
      for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j)
          if (i != j && rng.bernoulli(0.2)) {
            d.edges.push_back({i, j, 1.0});
            ++outdeg[i];
          }
      IcmInstance inst;
      inst.diffusion = d;
      inst.seeds = {0};
      const auto blocked = greedy_block(inst, 1);
      if (blocked.empty()) continue;
      int heuristic = -1;
      for (int u = 1; u < 12; ++u)
        if (heuristic == -1 || outdeg[u] > outdeg[heuristic]) heuristic = u;
      IcmInstance a = inst, b = inst;
      a.blocked = blocked;
      b.blocked = {heuristic};
      CHECK(influence(a) <= influence(b) + 1e-9);
    }
  }
  SUBCASE("blocking more nodes than non-seeds rejected") {
    IcmInstance inst;
    inst.diffusion = make_net(3, {});
    inst.seeds = {0, 1};
    CHECK_THROWS_AS(greedy_block(inst, 2), ValidationError);
  }
}

namespace {

HawkesCampaign basic_campaign(int m) {
  HawkesCampaign c;
  c.adjacency = Eigen::MatrixXd::Zero(m, m);
  c.base_fake = Eigen::VectorXd::Zero(m);
  c.base_mitigation = Eigen::VectorXd::Zero(m);
  c.excitation = Eigen::MatrixXd::Zero(m, m);
  return c;
}

}  // namespace

TEST_CASE("hawkes simulation") {
  SUBCASE("zero excitation reduces to a poisson process") {
    auto c = basic_campaign(2);
    c.base_fake << 0.6, 0.4;
    c.horizon = 10.0;
    const int runs = 1000;
    double total = 0.0;
    for (int r = 0; r < runs; ++r) {
      const auto trace = hawkes_simulate(c, {}, 5000 + r, true);
      total += trace.fake.size();
      CHECK(trace.mitigation.empty());
    }
    const double expected = 10.0;  // (0.6 + 0.4) * horizon
    const double sigma = std::sqrt(expected / runs);
    CHECK(std::abs(total / runs - expected) <= 3.0 * sigma);
  }
  SUBCASE("zero intensity gives an empty trace") {
    auto c = basic_campaign(3);
    const auto trace = hawkes_simulate(c);
    CHECK(trace.fake.empty());
    CHECK(trace.mitigation.empty());
  }
  SUBCASE("event times are ordered and inside the horizon") {
    auto c = basic_campaign(2);
    c.base_fake << 0.5, 0.5;
    c.base_mitigation << 0.3, 0.0;
    c.excitation << 0.2, 0.1, 0.1, 0.2;
    c.omega = 1.0;
    c.horizon = 20.0;
    c.seed = 12;
    const auto trace = hawkes_simulate(c);
    for (std::size_t i = 1; i < trace.fake.size(); ++i)
      CHECK(trace.fake[i].time >= trace.fake[i - 1].time);
    for (const auto& e : trace.fake) CHECK(e.time <= c.horizon);
    CHECK(!trace.fake.empty());
  }
  SUBCASE("unstable excitation rejected") {
    auto c = basic_campaign(1);
    c.base_fake << 0.5;
    c.excitation << 2.0;
    c.omega = 1.0;
    CHECK_THROWS_WITH_AS(hawkes_simulate(c), doctest::Contains("unstable"),
                         ValidationError);
  }
  SUBCASE("time-rescaled inter-event gaps look exponential") {
    auto c = basic_campaign(1);
    c.base_fake << 2.0;
    c.horizon = 600.0;
    c.seed = 42;
    const auto trace = hawkes_simulate(c);
    REQUIRE(trace.fake.size() > 1000);
    std::vector<double> u;
    double prev = 0.0;
    for (const auto& e : trace.fake) {
      u.push_back(1.0 - std::exp(-2.0 * (e.time - prev)));
      prev = e.time;
    }
    std::sort(u.begin(), u.end());
    double ks = 0.0;
    const double n = static_cast<double>(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      ks = std::max(ks, std::abs(u[i] - i / n));
      ks = std::max(ks, std::abs(u[i] - (i + 1) / n));
    }
    CHECK(ks <= 0.1);
  }
}

TEST_CASE("campaign reward") {
  auto c = basic_campaign(2);
  c.adjacency << 0, 1, 1, 0;
  c.base_fake << 0.1, 0.1;
  c.horizon = 10.0;

  SUBCASE("no mitigation events means zero reward") {
    HawkesTrace trace;
    trace.fake = {{1.0, 0}, {2.0, 1}};
    CHECK(campaign_reward(c, trace, 5.0) == 0.0);
  }
  SUBCASE("single user without followers earns nothing") {
    auto solo = basic_campaign(1);
    solo.base_fake << 0.1;
    HawkesTrace trace;
    trace.fake = {{1.0, 0}};
    trace.mitigation = {{2.0, 0}};
    CHECK(campaign_reward(solo, trace, 5.0) == 0.0);
  }
  SUBCASE("hand matrix-vector evaluation on a mutual follow pair") {
    HawkesTrace trace;
    trace.fake = {{0.5, 0}, {1.0, 0}};  // F = (2, 0)
    trace.mitigation = {{1.5, 1}, {2.0, 1}, {2.5, 1}};  // M = (0, 3)
    CHECK(campaign_reward(c, trace, 5.0) == doctest::Approx(0.0));
    trace.mitigation = {{1.5, 0}, {2.0, 0}, {2.5, 0}};  // M = (3, 0)
    CHECK(campaign_reward(c, trace, 5.0) == doctest::Approx(3.0));
  }
  SUBCASE("stage beyond the horizon rejected") {
    HawkesTrace trace;
    CHECK_THROWS_AS(campaign_reward(c, trace, 11.0), ValidationError);
  }
}

TEST_CASE("greedy campaign allocation") {
  SUBCASE("zero budget reproduces the uncontrolled baseline exactly") {
    auto c = basic_campaign(2);
    c.adjacency << 0, 1, 1, 0;
    c.base_fake << 0.5, 0.5;
    c.base_mitigation << 0.2, 0.2;
    c.horizon = 5.0;
    c.seed = 3;
    const auto plan = greedy_campaign(c, {0, 1}, 0.0, 2, 10);
    CHECK(plan.allocation.cwiseAbs().maxCoeff() == 0.0);
    CHECK(plan.reward == plan.baseline);
  }
  SUBCASE("budget goes to the candidate with followers") {
    auto c = basic_campaign(2);
    c.adjacency << 0, 1, 0, 0;  // user 1's events expose user 0; user 0 has none
    c.base_fake << 0.3, 0.8;
    c.base_mitigation << 0.1, 0.1;
    c.horizon = 6.0;
    c.seed = 8;
    const auto plan = greedy_campaign(c, {0, 1}, 3.0, 1, 40);
    CHECK(plan.allocation(0, 1) == doctest::Approx(3.0));
    CHECK(plan.allocation(0, 0) == 0.0);
  }
  SUBCASE("mean reward is nondecreasing in the budget") {
    auto c = basic_campaign(2);
    c.adjacency << 0, 1, 1, 0;
    c.base_fake << 0.6, 0.6;
    c.base_mitigation << 0.1, 0.1;
    c.horizon = 4.0;
    double low = 0.0, high = 0.0;
    for (int s = 0; s < 50; ++s) {
      c.seed = 6000 + s;
      low += greedy_campaign(c, {0, 1}, 0.5, 1, 5).reward;
      high += greedy_campaign(c, {0, 1}, 3.0, 1, 5).reward;
    }
    CHECK(high >= low);
  }
  SUBCASE("negative budget rejected") {
    auto c = basic_campaign(1);
    c.base_fake << 0.1;
    CHECK_THROWS_AS(greedy_campaign(c, {0}, -1.0, 1), ValidationError);
  }
}
