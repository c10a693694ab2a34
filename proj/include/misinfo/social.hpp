#ifndef MISINFO_SOCIAL_HPP
#define MISINFO_SOCIAL_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "misinfo/graph.hpp"

namespace misinfo::social {

enum class LineOrder { First, Second };

// Node embeddings; context vectors are used by the second-order model only.
struct LineModel {
  Eigen::MatrixXd nodes;    // |V| x d
  Eigen::MatrixXd context;  // |V| x d
  LineOrder order = LineOrder::First;
};

// Probability that nodes i and j are direct neighbors: sigmoid(u_i . u_j).
double line_p1(const Eigen::VectorXd& u_i, const Eigen::VectorXd& u_j);

// Probability of context j given node i: softmax over all context vectors.
double line_p2(const LineModel& model, int i, int j);

double line_loss(const LineModel& model, const std::vector<std::pair<int, int>>& edges);

struct LineGradients {
  Eigen::MatrixXd nodes;
  Eigen::MatrixXd context;
};

LineGradients line_gradients(const LineModel& model,
                             const std::vector<std::pair<int, int>>& edges);

struct LineFit {
  LineModel model;
  std::vector<double> loss_trace;
};

LineFit line_fit(const graph::FriendshipNetwork& friendship, int d, LineOrder order,
                 int epochs, double lr, std::uint64_t seed);

// Symmetrized binary adjacency (an edge in either direction counts once).
Eigen::MatrixXd symmetrized_adjacency(const graph::FriendshipNetwork& friendship);

// Newman modularity matrix of the symmetrized graph.
Eigen::MatrixXd modularity_matrix(const graph::FriendshipNetwork& friendship);

struct MnmfConfig {
  int k = 8;             // representation dimension
  int l = 2;             // number of communities
  double alpha = 1.0;    // community-mapping weight
  double beta = 1.0;     // modularity weight
  double sim_ratio = 1.0;  // weight of neighborhood similarity inside S
  int iters = 200;
  int restarts = 5;  // independent inits; the lowest final objective wins
  std::uint64_t seed = 0;
};

struct MnmfModel {
  Eigen::MatrixXd S;  // m x m node similarity
  Eigen::MatrixXd M;  // m x k basis
  Eigen::MatrixXd U;  // m x k node representations
  Eigen::MatrixXd H;  // m x l community indicator
  Eigen::MatrixXd C;  // l x k community latent
  Eigen::MatrixXd B_mod;
  double alpha = 1.0;
  double beta = 1.0;
};

struct MnmfTraceRow {
  int iter = 0;
  double proximity = 0.0;
  double community = 0.0;
  double modularity = 0.0;
  double total = 0.0;
};

struct MnmfFit {
  MnmfModel model;
  std::vector<MnmfTraceRow> trace;
};

MnmfFit mnmf_fit(const graph::FriendshipNetwork& friendship, const MnmfConfig& cfg);

double mnmf_objective(const MnmfModel& model);

// Per-node community assignment: argmax of each row of H, ties to the
// smallest community id.
std::vector<int> communities(const MnmfModel& model);

void save_embeddings(const Eigen::MatrixXd& vectors, const std::string& path);
void save_communities(const std::vector<int>& assignment, const std::string& path);

}  // namespace misinfo::social

#endif
