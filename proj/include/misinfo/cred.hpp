#ifndef MISINFO_CRED_HPP
#define MISINFO_CRED_HPP

#include <Eigen/Dense>
#include <vector>

namespace misinfo::cred {

// Signed link weight between two posts from their viewpoint distributions:
// (-1)^a / (D_JS + 1) with a = 0 for same viewpoint, 1 for opposing; D_JS is
// the Jensen-Shannon divergence with natural log.
double link_weight(const Eigen::VectorXd& p_i, const Eigen::VectorXd& p_j,
                   bool same_viewpoint);

double js_divergence(const Eigen::VectorXd& p, const Eigen::VectorXd& q);

struct LinkSpec {
  int i = 0;
  int j = 0;
  bool same_viewpoint = true;
};

struct PropagationProblem {
  Eigen::VectorXd T0;     // initial post credibilities in [-1,1]
  Eigen::MatrixXd W;      // signed symmetric link weights
  double mu = 0.5;        // smoothness/fitting trade-off in (0,1)
  Eigen::VectorXd d_bar;  // absolute degree: sum_k |W_ik|
  Eigen::MatrixXd H;      // D^{-1/2} W D^{-1/2}, zero rows for isolated posts
};

PropagationProblem make_problem(const Eigen::VectorXd& t0, const Eigen::MatrixXd& weights,
                                double mu);

// Convenience constructor from per-post viewpoint distributions and a link
// list; weights come from link_weight().
PropagationProblem make_problem(const Eigen::VectorXd& t0,
                                const std::vector<Eigen::VectorXd>& viewpoints,
                                const std::vector<LinkSpec>& links, double mu);

// mu * (1/2) sum_ij |W_ij| (T_i/sqrt(d_i) - b_ij T_j/sqrt(d_j))^2
//   + (1-mu) ||T - T0||^2,  b_ij = 1 if W_ij >= 0 else 0.
// Isolated posts contribute only the fitting term.
double objective(const PropagationProblem& problem, const Eigen::VectorXd& T);

struct PropagationResult {
  Eigen::VectorXd T;
  int iters = 0;
  bool converged = false;
};

// Fixed-point iteration T(t) = mu H T(t-1) + (1-mu) T0.
PropagationResult propagate(const PropagationProblem& problem, double tol = 1e-10,
                            int max_iters = 10000);

// Direct solve of (I - mu H) T = (1-mu) T0.
Eigen::VectorXd closed_form(const PropagationProblem& problem);

// Mean of the post credibilities; negative means fake.
double news_verdict(const Eigen::VectorXd& T);

}  // namespace misinfo::cred

#endif
