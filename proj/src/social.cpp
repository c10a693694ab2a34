#include "misinfo/social.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "misinfo/errors.hpp"
#include "misinfo/rng.hpp"

namespace misinfo::social {

namespace {

Eigen::MatrixXd init_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed,
                            std::uint64_t stream, double lo, double hi) {
  Rng rng(Rng::derive(seed, stream));
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.uniform(lo, hi);
  return m;
}

double log_sigmoid(double x) {
  // log(1/(1+exp(-x))), stably
  return x > 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

}  // namespace

double line_p1(const Eigen::VectorXd& u_i, const Eigen::VectorXd& u_j) {
  if (u_i.size() != u_j.size()) throw ValidationError("line_p1: dimension mismatch");
  return 1.0 / (1.0 + std::exp(-u_i.dot(u_j)));
}

double line_p2(const LineModel& model, int i, int j) {
  if (model.context.rows() == 0) throw ValidationError("line_p2: no context vectors");
  const Eigen::VectorXd scores = model.context * model.nodes.row(i).transpose();
  const double mx = scores.maxCoeff();
  const double z = (scores.array() - mx).exp().sum();
  return std::exp(scores[j] - mx) / z;
}

double line_loss(const LineModel& model, const std::vector<std::pair<int, int>>& edges) {
  if (edges.empty()) throw ValidationError("line_loss: no edges");
  double total = 0.0;
  if (model.order == LineOrder::First) {
    for (const auto& [i, j] : edges)
      total -= log_sigmoid(model.nodes.row(i).dot(model.nodes.row(j)));
  } else {
    for (const auto& [i, j] : edges) {
      const Eigen::VectorXd scores = model.context * model.nodes.row(i).transpose();
      const double mx = scores.maxCoeff();
      const double lse = mx + std::log((scores.array() - mx).exp().sum());
      total -= scores[j] - lse;
    }
  }
  return total;
}

LineGradients line_gradients(const LineModel& model,
                             const std::vector<std::pair<int, int>>& edges) {
  LineGradients g;
  g.nodes = Eigen::MatrixXd::Zero(model.nodes.rows(), model.nodes.cols());
  g.context = Eigen::MatrixXd::Zero(model.context.rows(), model.context.cols());
  if (model.order == LineOrder::First) {
    for (const auto& [i, j] : edges) {
      const double s = 1.0 / (1.0 + std::exp(-model.nodes.row(i).dot(model.nodes.row(j))));
      g.nodes.row(i) -= (1.0 - s) * model.nodes.row(j);
      g.nodes.row(j) -= (1.0 - s) * model.nodes.row(i);
    }
  } else {
    for (const auto& [i, j] : edges) {
      const Eigen::VectorXd scores = model.context * model.nodes.row(i).transpose();
      const double mx = scores.maxCoeff();
      Eigen::VectorXd p = (scores.array() - mx).exp();
      p /= p.sum();
      g.nodes.row(i) += (p.transpose() * model.context) - model.context.row(j);
      g.context += p * model.nodes.row(i);
      g.context.row(j) -= model.nodes.row(i);
    }
  }
  return g;
}

LineFit line_fit(const graph::FriendshipNetwork& friendship, int d, LineOrder order,
                 int epochs, double lr, std::uint64_t seed) {
  if (friendship.edges.empty()) throw ValidationError("line_fit: graph has no edges");
  if (d < 1) throw ValidationError("line_fit: d must be >= 1");
  LineFit fit;
  fit.model.order = order;
  fit.model.nodes = init_matrix(friendship.users, d, seed, 0, -0.5, 0.5);
  fit.model.context = init_matrix(friendship.users, d, seed, 1, -0.5, 0.5);
  for (int epoch = 0; epoch < epochs; ++epoch) {
    const LineGradients g = line_gradients(fit.model, friendship.edges);
    fit.model.nodes -= lr * g.nodes;
    if (order == LineOrder::Second) fit.model.context -= lr * g.context;
    const double l = line_loss(fit.model, friendship.edges);
    if (!std::isfinite(l))
      throw ConvergenceError("line_fit: non-finite loss at epoch " + std::to_string(epoch));
    fit.loss_trace.push_back(l);
  }
  return fit;
}

Eigen::MatrixXd symmetrized_adjacency(const graph::FriendshipNetwork& friendship) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(friendship.users, friendship.users);
  for (const auto& [i, j] : friendship.edges) {
    a(i, j) = 1.0;
    a(j, i) = 1.0;
  }
  return a;
}

Eigen::MatrixXd modularity_matrix(const graph::FriendshipNetwork& friendship) {
  if (friendship.edges.empty()) throw ValidationError("modularity_matrix: graph has no edges");
  const Eigen::MatrixXd a = symmetrized_adjacency(friendship);
  const Eigen::VectorXd deg = a.rowwise().sum();
  const double two_e = deg.sum();
  return a - (deg * deg.transpose()) / two_e;
}

double mnmf_objective(const MnmfModel& m) {
  const double prox = (m.S - m.M * m.U.transpose()).squaredNorm();
  const double comm = (m.H - m.U * m.C.transpose()).squaredNorm();
  const double mod = (m.H.transpose() * m.B_mod * m.H).trace();
  return prox + m.alpha * comm - m.beta * mod;
}

namespace {

MnmfFit mnmf_fit_once(const graph::FriendshipNetwork& friendship, const MnmfConfig& cfg) {
  const int m = friendship.users;
  const double eps = 1e-12;

  MnmfFit fit;
  MnmfModel& model = fit.model;
  model.alpha = cfg.alpha;
  model.beta = cfg.beta;
  model.B_mod = modularity_matrix(friendship);

  // S: first-order adjacency plus cosine similarity of neighborhoods.
  const Eigen::MatrixXd a = symmetrized_adjacency(friendship);
  Eigen::MatrixXd s2 = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      const double ni = a.row(i).norm(), nj = a.row(j).norm();
      if (ni > 0 && nj > 0) s2(i, j) = a.row(i).dot(a.row(j)) / (ni * nj);
    }
  model.S = a + cfg.sim_ratio * s2;

  model.M = init_matrix(m, cfg.k, cfg.seed, 0, 0.0, 1.0);
  model.U = init_matrix(m, cfg.k, cfg.seed, 1, 0.0, 1.0);
  model.H = init_matrix(m, cfg.l, cfg.seed, 2, 0.0, 1.0);
  model.C = init_matrix(cfg.l, cfg.k, cfg.seed, 3, 0.0, 1.0);
  model.H *= std::sqrt(static_cast<double>(m) / model.H.squaredNorm());

  const Eigen::MatrixXd b_pos = model.B_mod.cwiseMax(0.0);
  const Eigen::MatrixXd b_neg = (-model.B_mod).cwiseMax(0.0);

  for (int it = 0; it < cfg.iters; ++it) {
    // M <- M .* (S U) ./ (M U'U)
    {
      const Eigen::MatrixXd num = model.S * model.U;
      const Eigen::MatrixXd den = model.M * (model.U.transpose() * model.U);
      model.M = model.M.cwiseProduct(num.cwiseQuotient(den.array().max(eps).matrix()));
    }
    // U <- U .* (S'M + a H C) ./ (U (M'M + a C'C))
    {
      const Eigen::MatrixXd num = model.S.transpose() * model.M + cfg.alpha * model.H * model.C;
      const Eigen::MatrixXd den =
          model.U * (model.M.transpose() * model.M + cfg.alpha * model.C.transpose() * model.C);
      model.U = model.U.cwiseProduct(num.cwiseQuotient(den.array().max(eps).matrix()));
    }
    if (cfg.alpha > 0.0 || cfg.beta > 0.0) {
      // C <- C .* (H'U) ./ (C U'U)
      if (cfg.alpha > 0.0) {
        const Eigen::MatrixXd num = model.H.transpose() * model.U;
        const Eigen::MatrixXd den = model.C * (model.U.transpose() * model.U);
        model.C = model.C.cwiseProduct(num.cwiseQuotient(den.array().max(eps).matrix()));
      }
      // H <- H .* (a U C' + b B+ H) ./ (a H + b B- H)
      {
        const Eigen::MatrixXd num =
            cfg.alpha * model.U * model.C.transpose() + cfg.beta * b_pos * model.H;
        const Eigen::MatrixXd den = cfg.alpha * model.H + cfg.beta * b_neg * model.H;
        model.H = model.H.cwiseProduct(num.cwiseQuotient(den.array().max(eps).matrix()));
        model.H *= std::sqrt(static_cast<double>(m) / std::max(model.H.squaredNorm(), eps));
      }
    }
    MnmfTraceRow row;
    row.iter = it;
    row.proximity = (model.S - model.M * model.U.transpose()).squaredNorm();
    row.community = cfg.alpha * (model.H - model.U * model.C.transpose()).squaredNorm();
    row.modularity = -cfg.beta * (model.H.transpose() * model.B_mod * model.H).trace();
    row.total = row.proximity + row.community + row.modularity;
    if (!std::isfinite(row.total))
      throw ConvergenceError("mnmf_fit: non-finite objective at iteration " +
                             std::to_string(it));
    fit.trace.push_back(row);
  }
  return fit;
}

}  // namespace

MnmfFit mnmf_fit(const graph::FriendshipNetwork& friendship, const MnmfConfig& cfg) {
  if (cfg.k < 1 || cfg.l < 1) throw ValidationError("mnmf_fit: k and l must be >= 1");
  if (cfg.restarts < 1) throw ValidationError("mnmf_fit: restarts must be >= 1");
  if (friendship.edges.empty()) throw ValidationError("mnmf_fit: graph has no edges");
  MnmfFit best;
  for (int r = 0; r < cfg.restarts; ++r) {
    MnmfConfig local = cfg;
    local.seed = Rng::derive(cfg.seed, 1000 + static_cast<std::uint64_t>(r));
    MnmfFit fit = mnmf_fit_once(friendship, local);
    if (r == 0) {
      best = std::move(fit);
      continue;
    }
    const double cur = fit.trace.back().total, ref = best.trace.back().total;
    const double tol = 1e-9 * (1.0 + std::abs(ref));
    // ties between equivalent optima: prefer the indicator that assigns
    // every node (largest minimum row norm of H)
    const bool better =
        cur < ref - tol ||
        (cur < ref + tol && fit.model.H.rowwise().norm().minCoeff() >
                                best.model.H.rowwise().norm().minCoeff());
    if (better) best = std::move(fit);
  }
  return best;
}

std::vector<int> communities(const MnmfModel& model) {
  std::vector<int> out(model.H.rows());
  for (Eigen::Index i = 0; i < model.H.rows(); ++i) {
    int best = 0;
    for (Eigen::Index c = 1; c < model.H.cols(); ++c)
      if (model.H(i, c) > model.H(i, best)) best = static_cast<int>(c);
    out[i] = best;
  }
  return out;
}

void save_embeddings(const Eigen::MatrixXd& vectors, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out.precision(17);
  for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
    out << i;
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) out << "," << vectors(i, j);
    out << "\n";
  }
}

void save_communities(const std::vector<int>& assignment, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  for (std::size_t i = 0; i < assignment.size(); ++i) out << i << "," << assignment[i] << "\n";
}

}  // namespace misinfo::social
