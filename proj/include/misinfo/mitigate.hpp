#ifndef MISINFO_MITIGATE_HPP
#define MISINFO_MITIGATE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "misinfo/graph.hpp"

namespace misinfo::mitigate {

// Ranked transmitter estimate: score(u) = out-degree(u) / (1 + mean shortest
// hop distance from u to the recipient set); unreachable recipients count as
// diameter + 1. Ties by id.
std::vector<int> estimate_transmitters(const graph::DiffusionNetwork& diffusion,
                                       const std::vector<int>& recipients, int m);

struct ProvenanceInstance {
  graph::DiffusionNetwork diffusion;
  std::vector<int> recipients;      // observed P
  int k = 1;                        // max sources
  int transmitters = 5;             // candidate budget m
  bool weight_by_probability = false;  // dst maximizes path probability instead of hops
};

struct ProvenanceResult {
  std::set<std::pair<int, int>> edges;  // provenance subgraph G_k
  std::vector<int> sources;
  double utility = 1.0;  // product of edge probabilities in G_k
};

ProvenanceResult find_provenance_paths(const ProvenanceInstance& instance);

// Greedy maximum coverage of posts by users; ties by id. Stops early once
// every coverable post is covered.
std::vector<int> identify_leaders(const std::vector<std::pair<int, int>>& user_post_edges,
                                  std::size_t users, int K);

// Capture-recapture audience size: |R_A| * |R_B| / |R_A intersect R_B|.
double scale_up_estimate(const std::set<int>& r_a, const std::set<int>& r_b);

struct IcmInstance {
  graph::DiffusionNetwork diffusion;
  std::vector<int> seeds;
  std::vector<int> blocked;
  int replications = 10000;
  std::uint64_t seed = 0;
};

struct IcmTrace {
  std::vector<int> final_counts;       // per replication
  std::vector<int> first_active_set;   // final active nodes of the first replication
};

IcmTrace icm_simulate(const IcmInstance& instance);

// Expected final active count; exact outcome enumeration for <= 15 users,
// Monte Carlo otherwise.
double influence(const IcmInstance& instance);
double influence_exact(const IcmInstance& instance);
double influence_monte_carlo(const IcmInstance& instance);

// Greedily blocks k nodes by largest marginal influence reduction; candidate
// order ranks out-links, in-links, then activation probability mass.
std::vector<int> greedy_block(const IcmInstance& instance, int k);

struct HawkesCampaign {
  Eigen::MatrixXd adjacency;        // A, exposure = A * counts
  Eigen::VectorXd base_fake;        // exogenous intensity of the fake process
  Eigen::VectorXd base_mitigation;  // exogenous intensity of the mitigation process
  Eigen::MatrixXd excitation;       // alpha(i,j): effect of user j's events on user i
  double omega = 1.0;               // exponential decay rate
  double horizon = 10.0;
  std::uint64_t seed = 0;
};

struct HawkesEvent {
  double time = 0.0;
  int user = 0;
};

struct HawkesTrace {
  std::vector<HawkesEvent> fake;
  std::vector<HawkesEvent> mitigation;

  Eigen::VectorXd fake_counts(int users, double t) const;
  Eigen::VectorXd mitigation_counts(int users, double t) const;
};

// Ogata thinning; the optional stage_boost (stages x users) adds exogenous
// mitigation intensity on equal subdivisions of the horizon.
HawkesTrace hawkes_simulate(const HawkesCampaign& campaign,
                            const Eigen::MatrixXd& stage_boost = Eigen::MatrixXd(),
                            std::uint64_t seed_override = 0, bool use_override = false);

// (1/m) * sum_i (A F(t))_i (A M(t))_i.
double campaign_reward(const HawkesCampaign& campaign, const HawkesTrace& trace, double t);

struct CampaignPlan {
  Eigen::MatrixXd allocation;  // stages x users
  double reward = 0.0;         // mean final reward under the plan
  double baseline = 0.0;       // mean final reward with zero allocation
};

// Greedy per-stage budget allocation over candidate campaigners, estimated by
// Monte Carlo rollouts with a fixed seed schedule.
CampaignPlan greedy_campaign(const HawkesCampaign& campaign, const std::vector<int>& candidates,
                             double budget, int stages, int rollouts = 20);

}  // namespace misinfo::mitigate

#endif
