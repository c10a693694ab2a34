#ifndef MISINFO_GRAPH_HPP
#define MISINFO_GRAPH_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "misinfo/errors.hpp"

namespace misinfo::graph {

enum class EntityKind { User, News, Post, Publisher, KnowledgeEntity };

// Directed follower graph over users.
struct FriendshipNetwork {
  std::size_t users = 0;
  std::vector<std::pair<int, int>> edges;  // (src, dst), no self-loops
};

struct DiffusionEdge {
  int src = 0;
  int dst = 0;
  double prob = 0.0;  // propagation probability in [0,1]
};

struct Engagement {
  int user = 0;
  double time = 0.0;
  int post = 0;
};

struct DiffusionNetwork {
  std::size_t users = 0;
  std::vector<DiffusionEdge> edges;
  std::vector<Engagement> engagements;  // sorted nondecreasing by time
};

// Undirected signed post-post network with viewpoint distributions.
struct CredibilityNetwork {
  std::size_t posts = 0;
  std::vector<double> credibility;                  // in [-1,1]
  Eigen::MatrixXd weights;                          // symmetric signed, |w| <= 1
  std::vector<Eigen::VectorXd> viewpoint_dists;     // each sums to 1
  std::vector<int> major_component;
};

struct Triple {
  int subject = 0;
  std::string predicate;
  int object = 0;
};

struct KnowledgeGraph {
  std::size_t entities = 0;
  std::vector<Triple> triples;

  // Undirected degree in the triple graph (parallel edges counted once).
  std::vector<int> degrees() const;
};

struct StanceEdge {
  int post = 0;
  int news = 0;
  int sign = 1;  // +1 support, -1 deny
};

struct StanceNetwork {
  std::size_t users = 0;
  std::size_t posts = 0;
  std::size_t news = 0;
  std::vector<std::pair<int, int>> posting;  // user -> post
  std::vector<StanceEdge> stances;           // post -> news
  std::vector<std::pair<int, int>> likes;    // user -> news
};

struct InteractionNetwork {
  std::size_t publishers = 0;
  std::size_t news = 0;
  std::size_t users = 0;
  std::size_t vocab = 0;
  std::vector<std::pair<int, int>> publish;  // publisher -> news
  std::vector<std::pair<int, int>> spread;   // news -> user
  Eigen::MatrixXd word_counts;               // X, n x t, nonnegative
  Eigen::MatrixXd engaging;                  // W, m x n, binary
  Eigen::MatrixXd publishing;                // B, l x n, binary
  Eigen::VectorXd credibility;               // c, m, in [0,1]
  Eigen::VectorXd partisan;                  // o, l
  Eigen::VectorXi labels;                    // y_L, n, in {-1,0,+1}; +1 = fake
};

struct NetworkBundle {
  std::size_t users = 0;
  std::size_t news = 0;
  std::size_t posts = 0;
  std::size_t publishers = 0;
  FriendshipNetwork friendship;
  DiffusionNetwork diffusion;
  CredibilityNetwork credibility;
  KnowledgeGraph knowledge;
  StanceNetwork stance;
  InteractionNetwork interaction;

  void validate() const;  // throws ValidationError naming the invariant
};

struct SyntheticSpec {
  std::uint64_t seed = 0;
  std::size_t users = 20;
  std::size_t news = 10;
  std::size_t publishers = 3;
  std::size_t vocab = 16;
  std::size_t communities = 2;
  double intra_prob = 0.5;
  double inter_prob = 0.05;
  double fake_ratio = 0.5;
  double cred_noise = 0.1;

  void validate() const;
};

enum class FileFormat { Json, EdgeTsv };

NetworkBundle load_networks(const std::string& path, FileFormat format);
void save_networks(const NetworkBundle& bundle, const std::string& path, FileFormat format);

std::string to_json_string(const NetworkBundle& bundle);
NetworkBundle from_json_string(const std::string& text);

// Planted-partition friendship graph; fake news preferentially engaged by
// low-credibility users. Pure function of the spec.
NetworkBundle generate_synthetic(const SyntheticSpec& spec);

// Binary m x m adjacency, A[i][j] = 1 iff edge (i -> j) exists.
Eigen::MatrixXd adjacency(const FriendshipNetwork& net);

}  // namespace misinfo::graph

#endif
