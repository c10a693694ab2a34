#include "misinfo/cred.hpp"

#include <cmath>

#include "misinfo/errors.hpp"

namespace misinfo::cred {

namespace {

void check_distribution(const Eigen::VectorXd& p, const char* name) {
  if (p.size() == 0) throw ValidationError(std::string(name) + " is empty");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!(p[i] >= 0.0)) throw ValidationError(std::string(name) + " has a negative entry");
    sum += p[i];
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw ValidationError(std::string(name) + " does not sum to 1");
}

double kl(const Eigen::VectorXd& p, const Eigen::VectorXd& m) {
  double out = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) out += p[i] * std::log(p[i] / m[i]);
  return out;
}

}  // namespace

double js_divergence(const Eigen::VectorXd& p, const Eigen::VectorXd& q) {
  check_distribution(p, "p");
  check_distribution(q, "q");
  if (p.size() != q.size()) throw ValidationError("distributions differ in length");
  const Eigen::VectorXd m = 0.5 * (p + q);
  return 0.5 * kl(p, m) + 0.5 * kl(q, m);
}

double link_weight(const Eigen::VectorXd& p_i, const Eigen::VectorXd& p_j,
                   bool same_viewpoint) {
  const double d = js_divergence(p_i, p_j);
  const double f = 1.0 / (d + 1.0);
  return same_viewpoint ? f : -f;
}

PropagationProblem make_problem(const Eigen::VectorXd& t0, const Eigen::MatrixXd& weights,
                                double mu) {
  const Eigen::Index n = t0.size();
  if (n == 0) throw ValidationError("empty post set");
  if (weights.rows() != n || weights.cols() != n)
    throw ValidationError("weight matrix shape mismatch");
  if ((weights - weights.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw ValidationError("link weights not symmetric");
  if (!(mu > 0.0 && mu < 1.0)) throw ValidationError("mu must be in (0,1)");
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(t0[i]) > 1.0 + 1e-12)
      throw ValidationError("initial credibility out of [-1,1]");

  PropagationProblem problem;
  problem.T0 = t0;
  problem.W = weights;
  problem.mu = mu;
  problem.d_bar = weights.cwiseAbs().rowwise().sum();
  problem.H = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (problem.d_bar[i] > 0.0 && problem.d_bar[j] > 0.0)
        problem.H(i, j) =
            weights(i, j) / std::sqrt(problem.d_bar[i] * problem.d_bar[j]);
  // normalization bounds the spectrum by 1; assert numerically
  const double rho =
      problem.H.cwiseAbs().rowwise().sum().maxCoeff();  // bound via row sums
  if (rho > 1.0 + 1e-9) {
    const Eigen::VectorXcd ev = problem.H.eigenvalues();
    double mx = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) mx = std::max(mx, std::abs(ev[i]));
    if (mx > 1.0 + 1e-9) throw ValidationError("normalized link matrix has spectral radius > 1");
  }
  return problem;
}

PropagationProblem make_problem(const Eigen::VectorXd& t0,
                                const std::vector<Eigen::VectorXd>& viewpoints,
                                const std::vector<LinkSpec>& links, double mu) {
  const Eigen::Index n = t0.size();
  if (static_cast<Eigen::Index>(viewpoints.size()) != n)
    throw ValidationError("viewpoint list shape mismatch");
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (const auto& link : links) {
    if (link.i < 0 || link.i >= n || link.j < 0 || link.j >= n || link.i == link.j)
      throw ValidationError("invalid link endpoint");
    const double f = link_weight(viewpoints[link.i], viewpoints[link.j], link.same_viewpoint);
    w(link.i, link.j) = f;
    w(link.j, link.i) = f;
  }
  return make_problem(t0, w, mu);
}

double objective(const PropagationProblem& problem, const Eigen::VectorXd& T) {
  if (T.size() != problem.T0.size()) throw ValidationError("dimension mismatch");
  const Eigen::Index n = T.size();
  double smooth = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (problem.d_bar[i] == 0.0) continue;  // isolated: fitting term only
    for (Eigen::Index j = 0; j < n; ++j) {
      const double w = problem.W(i, j);
      if (w == 0.0) continue;
      const double b = w >= 0.0 ? 1.0 : 0.0;
      const double diff = T[i] / std::sqrt(problem.d_bar[i]) -
                          b * T[j] / std::sqrt(problem.d_bar[j]);
      smooth += std::abs(w) * diff * diff;
    }
  }
  return problem.mu * 0.5 * smooth + (1.0 - problem.mu) * (T - problem.T0).squaredNorm();
}

PropagationResult propagate(const PropagationProblem& problem, double tol, int max_iters) {
  PropagationResult result;
  result.T = problem.T0;
  for (int it = 1; it <= max_iters; ++it) {
    Eigen::VectorXd next =
        problem.mu * (problem.H * result.T) + (1.0 - problem.mu) * problem.T0;
    for (Eigen::Index i = 0; i < next.size(); ++i)
      if (problem.d_bar[i] == 0.0) next[i] = problem.T0[i];  // isolated posts keep T0
    const double delta = (next - result.T).lpNorm<Eigen::Infinity>();
    result.T = next;
    result.iters = it;
    if (delta < tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

Eigen::VectorXd closed_form(const PropagationProblem& problem) {
  const Eigen::Index n = problem.T0.size();
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - problem.mu * problem.H;
  Eigen::VectorXd t = a.partialPivLu().solve((1.0 - problem.mu) * problem.T0);
  for (Eigen::Index i = 0; i < n; ++i)
    if (problem.d_bar[i] == 0.0) t[i] = problem.T0[i];  // isolated posts keep T0
  return t;
}

double news_verdict(const Eigen::VectorXd& T) {
  if (T.size() == 0) throw ValidationError("verdict of an empty post set");
  return T.mean();
}

}  // namespace misinfo::cred
