#ifndef MISINFO_NMF_HPP
#define MISINFO_NMF_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "misinfo/graph.hpp"

namespace misinfo::nmf {

struct EmbedConfig {
  int d = 8;                // latent dimension
  double alpha_news = 1.0;  // news-word reconstruction weight
  double alpha_user = 1.0;  // user-user reconstruction weight
  double alpha_eng = 1.0;   // user-news engagement weight
  double alpha_pub = 1.0;   // publisher partisan weight
  double lambda = 0.01;     // ridge on all factors
  int max_iters = 200;
  double rel_tol = 1e-7;
  std::uint64_t seed = 0;

  void validate() const;
};

// Latent factors of the joint embedding. D, V, U, T are entrywise >= 0.
struct FactorBundle {
  Eigen::MatrixXd D;  // n x d, news
  Eigen::MatrixXd V;  // t x d, words
  Eigen::MatrixXd U;  // m x d, users
  Eigen::MatrixXd T;  // d x d, user-user correlation
  Eigen::VectorXd Q;  // d, partisan weighting (unconstrained)
  Eigen::MatrixXd Y;  // m x m binary weight mask for the user term
};

struct TraceRow {
  int iter = 0;
  double news = 0.0;
  double user = 0.0;
  double eng = 0.0;
  double pub = 0.0;
  double ridge = 0.0;
  double total = 0.0;
};

struct FitResult {
  FactorBundle factors;
  std::vector<TraceRow> trace;
  bool converged = false;
};

// ||X - D V^T||_F^2
double eval_news_term(const Eigen::MatrixXd& X, const Eigen::MatrixXd& D,
                      const Eigen::MatrixXd& V);

// ||Y .* (A - U T U^T)||_F^2
double eval_user_term(const Eigen::MatrixXd& A, const Eigen::MatrixXd& U,
                      const Eigen::MatrixXd& T, const Eigen::MatrixXd& Y);

// Credibility-weighted user-news distances; unlabeled news contribute nothing.
double eval_engagement_term(const Eigen::MatrixXd& W, const Eigen::VectorXd& c,
                            const Eigen::VectorXi& y, const Eigen::MatrixXd& U,
                            const Eigen::MatrixXd& D);

// ||Bbar D Q - o||^2 with Bbar the row-normalized publisher matrix.
double eval_publisher_term(const Eigen::MatrixXd& B, const Eigen::MatrixXd& D,
                           const Eigen::VectorXd& Q, const Eigen::VectorXd& o);

// A fully materialized joint-embedding instance; used by the optimizer and by
// the finite-difference tests.
struct JointProblem {
  Eigen::MatrixXd X;
  Eigen::MatrixXd A;
  Eigen::MatrixXd Y;
  Eigen::MatrixXd W;
  Eigen::VectorXd c;
  Eigen::VectorXi y;
  Eigen::MatrixXd B;  // raw publisher matrix (normalized internally)
  Eigen::VectorXd o;
  EmbedConfig cfg;
};

struct Gradients {
  Eigen::MatrixXd D;
  Eigen::MatrixXd V;
  Eigen::MatrixXd U;
  Eigen::MatrixXd T;
  Eigen::VectorXd Q;
};

double joint_objective(const JointProblem& p, const FactorBundle& f);
Gradients joint_gradients(const JointProblem& p, const FactorBundle& f);

FitResult fit_joint(const graph::InteractionNetwork& interaction,
                    const graph::FriendshipNetwork& friendship, const EmbedConfig& cfg);

// Plain NMF of X with the same initialization, stepping, and stopping rules
// as the joint fit restricted to the news term.
struct NmfResult {
  Eigen::MatrixXd D;
  Eigen::MatrixXd V;
  std::vector<TraceRow> trace;
  bool converged = false;
};
NmfResult nmf_fit(const Eigen::MatrixXd& X, int d, double lambda, int max_iters,
                  double rel_tol, std::uint64_t seed);

// Ridge least-squares separator on labeled news rows. Returned vector has an
// intercept in its last entry.
Eigen::VectorXd train_classifier(const Eigen::MatrixXd& D, const Eigen::VectorXi& y,
                                 double lambda);
int predict(const Eigen::VectorXd& news_row, const Eigen::VectorXd& weights);

void save_factors(const FactorBundle& f, const std::string& dir);
void save_trace(const std::vector<TraceRow>& trace, const std::string& path);

}  // namespace misinfo::nmf

#endif
