#include "misinfo/nmf.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <utility>

#include "misinfo/csvio.hpp"
#include "misinfo/errors.hpp"
#include "misinfo/rng.hpp"
#include "json.hpp"

namespace misinfo::nmf {

void EmbedConfig::validate() const {
  if (d < 1) throw ValidationError("embed config: d < 1");
  if (rel_tol <= 0.0) throw ValidationError("embed config: tolerance must be positive");
  if (alpha_news < 0 || alpha_user < 0 || alpha_eng < 0 || alpha_pub < 0 || lambda < 0)
    throw ValidationError("embed config: negative weight");
}

double eval_news_term(const Eigen::MatrixXd& X, const Eigen::MatrixXd& D,
                      const Eigen::MatrixXd& V) {
  if (D.rows() != X.rows() || V.rows() != X.cols() || D.cols() != V.cols())
    throw ValidationError("news term: dimension mismatch");
  return (X - D * V.transpose()).squaredNorm();
}

double eval_user_term(const Eigen::MatrixXd& A, const Eigen::MatrixXd& U,
                      const Eigen::MatrixXd& T, const Eigen::MatrixXd& Y) {
  if (U.rows() != A.rows() || A.rows() != A.cols() || T.rows() != U.cols() ||
      T.cols() != U.cols() || Y.rows() != A.rows() || Y.cols() != A.cols())
    throw ValidationError("user term: dimension mismatch");
  return (Y.array() * (A - U * T * U.transpose()).array()).matrix().squaredNorm();
}

namespace {

// Engagement weight of (user i, news j): c_i for true news, 1-c_i for fake.
inline double eng_weight(double ci, int yj) { return yj == -1 ? ci : 1.0 - ci; }

}  // namespace

double eval_engagement_term(const Eigen::MatrixXd& W, const Eigen::VectorXd& c,
                            const Eigen::VectorXi& y, const Eigen::MatrixXd& U,
                            const Eigen::MatrixXd& D) {
  if (W.rows() != U.rows() || W.cols() != D.rows() || c.size() != W.rows() ||
      y.size() != W.cols() || U.cols() != D.cols())
    throw ValidationError("engagement term: dimension mismatch");
  double v = 0.0;
  for (Eigen::Index i = 0; i < W.rows(); ++i)
    for (Eigen::Index j = 0; j < W.cols(); ++j) {
      if (W(i, j) == 0.0 || y[j] == 0) continue;
      if (y[j] != -1 && y[j] != 1) throw ValidationError("engagement term: label not in {-1,0,+1}");
      v += W(i, j) * eng_weight(c[i], y[j]) * (U.row(i) - D.row(j)).squaredNorm();
    }
  return v;
}

namespace {

Eigen::MatrixXd row_normalize(const Eigen::MatrixXd& B) {
  Eigen::MatrixXd Bbar = B;
  for (Eigen::Index k = 0; k < B.rows(); ++k) {
    const double s = B.row(k).sum();
    if (s <= 0.0)
      throw ValidationError("publisher " + std::to_string(k) + " has zero publications");
    Bbar.row(k) /= s;
  }
  return Bbar;
}

}  // namespace

double eval_publisher_term(const Eigen::MatrixXd& B, const Eigen::MatrixXd& D,
                           const Eigen::VectorXd& Q, const Eigen::VectorXd& o) {
  if (B.cols() != D.rows() || Q.size() != D.cols() || o.size() != B.rows())
    throw ValidationError("publisher term: dimension mismatch");
  return (row_normalize(B) * D * Q - o).squaredNorm();
}

// ---------------------------------------------------------------------------
// Gradients

namespace {

Eigen::MatrixXd grad_news_D(const Eigen::MatrixXd& X, const Eigen::MatrixXd& D,
                            const Eigen::MatrixXd& V) {
  return 2.0 * (D * V.transpose() - X) * V;
}

Eigen::MatrixXd grad_news_V(const Eigen::MatrixXd& X, const Eigen::MatrixXd& D,
                            const Eigen::MatrixXd& V) {
  return 2.0 * (D * V.transpose() - X).transpose() * D;
}

Eigen::MatrixXd user_residual(const Eigen::MatrixXd& A, const Eigen::MatrixXd& U,
                              const Eigen::MatrixXd& T, const Eigen::MatrixXd& Y) {
  return (Y.array() * (A - U * T * U.transpose()).array()).matrix();
}

Eigen::MatrixXd grad_user_U(const Eigen::MatrixXd& A, const Eigen::MatrixXd& U,
                            const Eigen::MatrixXd& T, const Eigen::MatrixXd& Y) {
  // Y is binary, so d/dU of sum Y.*(A-UTU')^2 uses the masked residual twice.
  const Eigen::MatrixXd R = user_residual(A, U, T, Y);
  return -2.0 * (R * U * T.transpose() + R.transpose() * U * T);
}

Eigen::MatrixXd grad_user_T(const Eigen::MatrixXd& A, const Eigen::MatrixXd& U,
                            const Eigen::MatrixXd& T, const Eigen::MatrixXd& Y) {
  const Eigen::MatrixXd R = user_residual(A, U, T, Y);
  return -2.0 * U.transpose() * R * U;
}

Eigen::MatrixXd grad_eng_U(const Eigen::MatrixXd& W, const Eigen::VectorXd& c,
                           const Eigen::VectorXi& y, const Eigen::MatrixXd& U,
                           const Eigen::MatrixXd& D) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(U.rows(), U.cols());
  for (Eigen::Index i = 0; i < W.rows(); ++i)
    for (Eigen::Index j = 0; j < W.cols(); ++j) {
      if (W(i, j) == 0.0 || y[j] == 0) continue;
      g.row(i) += 2.0 * W(i, j) * eng_weight(c[i], y[j]) * (U.row(i) - D.row(j));
    }
  return g;
}

Eigen::MatrixXd grad_eng_D(const Eigen::MatrixXd& W, const Eigen::VectorXd& c,
                           const Eigen::VectorXi& y, const Eigen::MatrixXd& U,
                           const Eigen::MatrixXd& D) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(D.rows(), D.cols());
  for (Eigen::Index i = 0; i < W.rows(); ++i)
    for (Eigen::Index j = 0; j < W.cols(); ++j) {
      if (W(i, j) == 0.0 || y[j] == 0) continue;
      g.row(j) -= 2.0 * W(i, j) * eng_weight(c[i], y[j]) * (U.row(i) - D.row(j));
    }
  return g;
}

Eigen::MatrixXd grad_pub_D(const Eigen::MatrixXd& Bbar, const Eigen::MatrixXd& D,
                           const Eigen::VectorXd& Q, const Eigen::VectorXd& o) {
  const Eigen::VectorXd r = Bbar * D * Q - o;
  return 2.0 * Bbar.transpose() * r * Q.transpose();
}

Eigen::VectorXd grad_pub_Q(const Eigen::MatrixXd& Bbar, const Eigen::MatrixXd& D,
                           const Eigen::VectorXd& Q, const Eigen::VectorXd& o) {
  const Eigen::VectorXd r = Bbar * D * Q - o;
  return 2.0 * D.transpose() * Bbar.transpose() * r;
}

struct ActiveSet {
  bool D, V, U, T, Q;
};

ActiveSet active_factors(const EmbedConfig& cfg) {
  ActiveSet a;
  a.D = cfg.alpha_news > 0 || cfg.alpha_eng > 0 || cfg.alpha_pub > 0;
  a.V = cfg.alpha_news > 0;
  a.U = cfg.alpha_user > 0 || cfg.alpha_eng > 0;
  a.T = cfg.alpha_user > 0;
  a.Q = cfg.alpha_pub > 0;
  return a;
}

Eigen::MatrixXd init_factor(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed,
                            std::uint64_t stream) {
  Rng rng(Rng::derive(seed, stream));
  Eigen::MatrixXd f(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) f(i, j) = rng.uniform(0.0, 0.1);
  return f;
}

// One projected-gradient step with backtracking halving; accepts only strict
// decrease of the factor-local objective.
template <typename Mat, typename Obj>
bool pg_step(Mat& F, const Mat& G, bool nonneg, double& step, Obj&& local) {
  const double f0 = local(F);
  double s = step;
  for (int h = 0; h < 60; ++h) {
    Mat cand = F - s * G;
    if (nonneg) cand = cand.cwiseMax(0.0);
    if (local(cand) < f0) {
      F = std::move(cand);
      step = std::min(s * 2.0, 1e8);
      return true;
    }
    s *= 0.5;
  }
  step = std::max(s, 1e-16);
  return false;
}

}  // namespace

double joint_objective(const JointProblem& p, const FactorBundle& f) {
  const EmbedConfig& cfg = p.cfg;
  double tot = 0.0;
  if (cfg.alpha_news > 0) tot += cfg.alpha_news * eval_news_term(p.X, f.D, f.V);
  if (cfg.alpha_user > 0) tot += cfg.alpha_user * eval_user_term(p.A, f.U, f.T, f.Y);
  if (cfg.alpha_eng > 0) tot += cfg.alpha_eng * eval_engagement_term(p.W, p.c, p.y, f.U, f.D);
  if (cfg.alpha_pub > 0) tot += cfg.alpha_pub * eval_publisher_term(p.B, f.D, f.Q, p.o);
  const ActiveSet act = active_factors(cfg);
  double ridge = 0.0;
  if (act.D) ridge += f.D.squaredNorm();
  if (act.V) ridge += f.V.squaredNorm();
  if (act.U) ridge += f.U.squaredNorm();
  if (act.T) ridge += f.T.squaredNorm();
  if (act.Q) ridge += f.Q.squaredNorm();
  tot += cfg.lambda * ridge;
  return tot;
}

Gradients joint_gradients(const JointProblem& p, const FactorBundle& f) {
  const EmbedConfig& cfg = p.cfg;
  Gradients g;
  g.D = 2.0 * cfg.lambda * f.D;
  g.V = 2.0 * cfg.lambda * f.V;
  g.U = 2.0 * cfg.lambda * f.U;
  g.T = 2.0 * cfg.lambda * f.T;
  g.Q = 2.0 * cfg.lambda * f.Q;
  if (cfg.alpha_news > 0) {
    g.D += cfg.alpha_news * grad_news_D(p.X, f.D, f.V);
    g.V += cfg.alpha_news * grad_news_V(p.X, f.D, f.V);
  }
  if (cfg.alpha_user > 0) {
    g.U += cfg.alpha_user * grad_user_U(p.A, f.U, f.T, f.Y);
    g.T += cfg.alpha_user * grad_user_T(p.A, f.U, f.T, f.Y);
  }
  if (cfg.alpha_eng > 0) {
    g.U += cfg.alpha_eng * grad_eng_U(p.W, p.c, p.y, f.U, f.D);
    g.D += cfg.alpha_eng * grad_eng_D(p.W, p.c, p.y, f.U, f.D);
  }
  if (cfg.alpha_pub > 0) {
    const Eigen::MatrixXd Bbar = row_normalize(p.B);
    g.D += cfg.alpha_pub * grad_pub_D(Bbar, f.D, f.Q, p.o);
    g.Q += cfg.alpha_pub * grad_pub_Q(Bbar, f.D, f.Q, p.o);
  }
  return g;
}

namespace {

Eigen::MatrixXd build_weight_mask(const Eigen::MatrixXd& A, std::uint64_t seed) {
  Eigen::MatrixXd Y = (A.array() != 0.0).cast<double>();
  const auto m = A.rows();
  const auto positives = static_cast<long>(Y.sum());
  const long zero_cells = static_cast<long>(m) * (m - 1) - positives;
  long wanted = std::min<long>(positives, zero_cells);
  Rng rng(Rng::derive(seed, 5));
  long attempts = 0;
  while (wanted > 0 && attempts < 1000 * (positives + 1)) {
    ++attempts;
    const auto i = static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(m)));
    const auto j = static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(m)));
    if (i == j || Y(i, j) != 0.0) continue;
    Y(i, j) = 1.0;  // sampled negative: weight 1, target A(i,j) = 0
    --wanted;
  }
  return Y;
}

}  // namespace

FitResult fit_joint(const graph::InteractionNetwork& interaction,
                    const graph::FriendshipNetwork& friendship, const EmbedConfig& cfg) {
  cfg.validate();
  JointProblem p;
  p.cfg = cfg;
  p.X = interaction.word_counts;
  p.A = graph::adjacency(friendship);
  p.W = interaction.engaging;
  p.c = interaction.credibility;
  p.y = interaction.labels;
  p.B = interaction.publishing;
  p.o = interaction.partisan;
  p.Y = build_weight_mask(p.A, cfg.seed);

  const auto n = p.X.rows(), t = p.X.cols(), m = p.A.rows(), l = p.B.rows();
  const auto d = static_cast<Eigen::Index>(cfg.d);
  const ActiveSet act = active_factors(cfg);

  FactorBundle f;
  f.D = act.D ? init_factor(n, d, cfg.seed, 0) : Eigen::MatrixXd::Zero(n, d);
  f.V = act.V ? init_factor(t, d, cfg.seed, 1) : Eigen::MatrixXd::Zero(t, d);
  f.U = act.U ? init_factor(m, d, cfg.seed, 2) : Eigen::MatrixXd::Zero(m, d);
  f.T = act.T ? init_factor(d, d, cfg.seed, 3) : Eigen::MatrixXd::Zero(d, d);
  f.Q = act.Q ? Eigen::VectorXd(init_factor(d, 1, cfg.seed, 4)) : Eigen::VectorXd::Zero(d);
  f.Y = p.Y;

  Eigen::MatrixXd Bbar;
  if (cfg.alpha_pub > 0) Bbar = row_normalize(p.B);
  (void)l;

  const double lambda = cfg.lambda;
  auto local_D = [&](const Eigen::MatrixXd& D) {
    double v = 0.0;
    if (cfg.alpha_news > 0) v += cfg.alpha_news * eval_news_term(p.X, D, f.V);
    if (cfg.alpha_eng > 0) v += cfg.alpha_eng * eval_engagement_term(p.W, p.c, p.y, f.U, D);
    if (cfg.alpha_pub > 0) v += cfg.alpha_pub * (Bbar * D * f.Q - p.o).squaredNorm();
    v += lambda * D.squaredNorm();
    return v;
  };
  auto local_V = [&](const Eigen::MatrixXd& V) {
    double v = 0.0;
    if (cfg.alpha_news > 0) v += cfg.alpha_news * eval_news_term(p.X, f.D, V);
    v += lambda * V.squaredNorm();
    return v;
  };
  auto local_U = [&](const Eigen::MatrixXd& U) {
    double v = 0.0;
    if (cfg.alpha_user > 0) v += cfg.alpha_user * eval_user_term(p.A, U, f.T, f.Y);
    if (cfg.alpha_eng > 0) v += cfg.alpha_eng * eval_engagement_term(p.W, p.c, p.y, U, f.D);
    v += lambda * U.squaredNorm();
    return v;
  };
  auto local_T = [&](const Eigen::MatrixXd& T) {
    double v = 0.0;
    if (cfg.alpha_user > 0) v += cfg.alpha_user * eval_user_term(p.A, f.U, T, f.Y);
    v += lambda * T.squaredNorm();
    return v;
  };
  auto local_Q = [&](const Eigen::VectorXd& Q) {
    double v = 0.0;
    if (cfg.alpha_pub > 0) v += cfg.alpha_pub * (Bbar * f.D * Q - p.o).squaredNorm();
    v += lambda * Q.squaredNorm();
    return v;
  };

  FitResult result;
  double step_D = 1.0, step_V = 1.0, step_U = 1.0, step_T = 1.0, step_Q = 1.0;
  double prev_total = 0.0;
  for (int it = 0; it < cfg.max_iters; ++it) {
    if (act.D) {
      Eigen::MatrixXd g = 2.0 * lambda * f.D;
      if (cfg.alpha_news > 0) g += cfg.alpha_news * grad_news_D(p.X, f.D, f.V);
      if (cfg.alpha_eng > 0) g += cfg.alpha_eng * grad_eng_D(p.W, p.c, p.y, f.U, f.D);
      if (cfg.alpha_pub > 0) g += cfg.alpha_pub * grad_pub_D(Bbar, f.D, f.Q, p.o);
      pg_step(f.D, g, true, step_D, local_D);
    }
    if (act.V) {
      Eigen::MatrixXd g = 2.0 * lambda * f.V;
      if (cfg.alpha_news > 0) g += cfg.alpha_news * grad_news_V(p.X, f.D, f.V);
      pg_step(f.V, g, true, step_V, local_V);
    }
    if (act.U) {
      Eigen::MatrixXd g = 2.0 * lambda * f.U;
      if (cfg.alpha_user > 0) g += cfg.alpha_user * grad_user_U(p.A, f.U, f.T, f.Y);
      if (cfg.alpha_eng > 0) g += cfg.alpha_eng * grad_eng_U(p.W, p.c, p.y, f.U, f.D);
      pg_step(f.U, g, true, step_U, local_U);
    }
    if (act.T) {
      Eigen::MatrixXd g = 2.0 * lambda * f.T;
      if (cfg.alpha_user > 0) g += cfg.alpha_user * grad_user_T(p.A, f.U, f.T, f.Y);
      pg_step(f.T, g, true, step_T, local_T);
    }
    if (act.Q) {
      Eigen::VectorXd g = 2.0 * lambda * f.Q;
      if (cfg.alpha_pub > 0) g += cfg.alpha_pub * grad_pub_Q(Bbar, f.D, f.Q, p.o);
      pg_step(f.Q, g, false, step_Q, local_Q);
    }

    TraceRow row;
    row.iter = it;
    row.news = cfg.alpha_news > 0 ? eval_news_term(p.X, f.D, f.V) : 0.0;
    row.user = cfg.alpha_user > 0 ? eval_user_term(p.A, f.U, f.T, f.Y) : 0.0;
    row.eng = cfg.alpha_eng > 0 ? eval_engagement_term(p.W, p.c, p.y, f.U, f.D) : 0.0;
    row.pub = cfg.alpha_pub > 0 ? eval_publisher_term(p.B, f.D, f.Q, p.o) : 0.0;
    {
      double ridge = 0.0;
      if (act.D) ridge += f.D.squaredNorm();
      if (act.V) ridge += f.V.squaredNorm();
      if (act.U) ridge += f.U.squaredNorm();
      if (act.T) ridge += f.T.squaredNorm();
      if (act.Q) ridge += f.Q.squaredNorm();
      row.ridge = ridge;
    }
    double tot = 0.0;
    if (cfg.alpha_news > 0) tot += cfg.alpha_news * row.news;
    if (cfg.alpha_user > 0) tot += cfg.alpha_user * row.user;
    if (cfg.alpha_eng > 0) tot += cfg.alpha_eng * row.eng;
    if (cfg.alpha_pub > 0) tot += cfg.alpha_pub * row.pub;
    tot += lambda * row.ridge;
    row.total = tot;
    result.trace.push_back(row);

    if (it > 0 && std::abs(prev_total - tot) <= cfg.rel_tol * std::max(std::abs(prev_total), 1e-12)) {
      result.converged = true;
      break;
    }
    prev_total = tot;
  }
  result.factors = std::move(f);
  return result;
}

NmfResult nmf_fit(const Eigen::MatrixXd& X, int d, double lambda, int max_iters,
                  double rel_tol, std::uint64_t seed) {
  if (d < 1) throw ValidationError("nmf: d < 1");
  NmfResult result;
  const auto dd = static_cast<Eigen::Index>(d);
  Eigen::MatrixXd D = init_factor(X.rows(), dd, seed, 0);
  Eigen::MatrixXd V = init_factor(X.cols(), dd, seed, 1);

  auto local_D = [&](const Eigen::MatrixXd& cand) {
    double v = eval_news_term(X, cand, V);
    v += lambda * cand.squaredNorm();
    return v;
  };
  auto local_V = [&](const Eigen::MatrixXd& cand) {
    double v = eval_news_term(X, D, cand);
    v += lambda * cand.squaredNorm();
    return v;
  };

  double step_D = 1.0, step_V = 1.0;
  double prev_total = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    {
      Eigen::MatrixXd g = 2.0 * lambda * D;
      g += grad_news_D(X, D, V);
      pg_step(D, g, true, step_D, local_D);
    }
    {
      Eigen::MatrixXd g = 2.0 * lambda * V;
      g += grad_news_V(X, D, V);
      pg_step(V, g, true, step_V, local_V);
    }
    TraceRow row;
    row.iter = it;
    row.news = eval_news_term(X, D, V);
    double ridge = 0.0;
    ridge += D.squaredNorm();
    ridge += V.squaredNorm();
    row.ridge = ridge;
    double tot = row.news;
    tot += lambda * ridge;
    row.total = tot;
    result.trace.push_back(row);
    if (it > 0 && std::abs(prev_total - tot) <= rel_tol * std::max(std::abs(prev_total), 1e-12)) {
      result.converged = true;
      break;
    }
    prev_total = tot;
  }
  result.D = std::move(D);
  result.V = std::move(V);
  return result;
}

Eigen::VectorXd train_classifier(const Eigen::MatrixXd& D, const Eigen::VectorXi& y,
                                 double lambda) {
  std::vector<Eigen::Index> labeled;
  int n_pos = 0, n_neg = 0;
  for (Eigen::Index j = 0; j < y.size(); ++j) {
    if (y[j] == 0) continue;
    labeled.push_back(j);
    (y[j] > 0 ? n_pos : n_neg)++;
  }
  if (n_pos == 0 || n_neg == 0)
    throw ValidationError("classifier: need at least one labeled example per class");
  const auto d = D.cols();
  Eigen::MatrixXd Z(static_cast<Eigen::Index>(labeled.size()), d + 1);
  Eigen::VectorXd target(static_cast<Eigen::Index>(labeled.size()));
  for (std::size_t r = 0; r < labeled.size(); ++r) {
    Z.row(static_cast<Eigen::Index>(r)).head(d) = D.row(labeled[r]);
    Z(static_cast<Eigen::Index>(r), d) = 1.0;
    target[static_cast<Eigen::Index>(r)] = static_cast<double>(y[labeled[r]]);
  }
  const Eigen::MatrixXd G =
      Z.transpose() * Z + lambda * Eigen::MatrixXd::Identity(d + 1, d + 1);
  return G.ldlt().solve(Z.transpose() * target);
}

int predict(const Eigen::VectorXd& news_row, const Eigen::VectorXd& weights) {
  if (news_row.size() + 1 != weights.size())
    throw ValidationError("predict: dimension mismatch");
  const double score =
      news_row.dot(weights.head(news_row.size())) + weights[weights.size() - 1];
  return score >= 0.0 ? 1 : -1;
}

void save_factors(const FactorBundle& f, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  csvio::write_matrix(f.D, dir + "/D.csv");
  csvio::write_matrix(f.V, dir + "/V.csv");
  csvio::write_matrix(f.U, dir + "/U.csv");
  csvio::write_matrix(f.T, dir + "/T.csv");
  csvio::write_matrix(f.Q, dir + "/Q.csv");
  csvio::write_matrix(f.Y, dir + "/Y.csv");
  nlohmann::json manifest = {
      {"d", f.D.cols()},          {"news", f.D.rows()},   {"words", f.V.rows()},
      {"users", f.U.rows()},      {"files", {"D.csv", "V.csv", "U.csv", "T.csv", "Q.csv", "Y.csv"}}};
  std::ofstream out(dir + "/manifest.json");
  if (!out) throw IoError("cannot write manifest in " + dir);
  out << manifest.dump(1) << "\n";
}

void save_trace(const std::vector<TraceRow>& trace, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << std::setprecision(17);
  out << "iter,news,user,eng,pub,ridge,total\n";
  for (const auto& r : trace)
    out << r.iter << "," << r.news << "," << r.user << "," << r.eng << "," << r.pub << ","
        << r.ridge << "," << r.total << "\n";
}

}  // namespace misinfo::nmf
