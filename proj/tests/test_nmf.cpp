#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "misinfo/graph.hpp"
#include "misinfo/nmf.hpp"
#include "misinfo/rng.hpp"

using namespace misinfo;
using namespace misinfo::nmf;

namespace {

Eigen::MatrixXd random_nonneg(Eigen::Index r, Eigen::Index c, Rng& rng, double lo = 0.0,
                              double hi = 1.0) {
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rng.uniform(lo, hi);
  return m;
}

JointProblem random_problem(Eigen::Index n, Eigen::Index m, Eigen::Index t, Eigen::Index l,
                            int d, Rng& rng) {
  JointProblem p;
  p.cfg.d = d;
  p.X = random_nonneg(n, t, rng);
  p.A = (random_nonneg(m, m, rng).array() > 0.6).cast<double>();
  p.A.diagonal().setZero();
  p.Y = (random_nonneg(m, m, rng).array() > 0.4).cast<double>();
  p.W = (random_nonneg(m, n, rng).array() > 0.5).cast<double>();
  p.c = random_nonneg(m, 1, rng);
  p.y = Eigen::VectorXi(n);
  for (Eigen::Index j = 0; j < n; ++j) p.y[j] = static_cast<int>(rng.index(3)) - 1;
  p.B = Eigen::MatrixXd::Zero(l, n);
  for (Eigen::Index j = 0; j < n; ++j) p.B(static_cast<Eigen::Index>(j % l), j) = 1.0;
  p.o = random_nonneg(l, 1, rng, -1.0, 1.0);
  return p;
}

FactorBundle random_factors(const JointProblem& p, Rng& rng) {
  FactorBundle f;
  const int d = p.cfg.d;
  f.D = random_nonneg(p.X.rows(), d, rng, 0.1, 1.0);
  f.V = random_nonneg(p.X.cols(), d, rng, 0.1, 1.0);
  f.U = random_nonneg(p.A.rows(), d, rng, 0.1, 1.0);
  f.T = random_nonneg(d, d, rng, 0.1, 1.0);
  f.Q = random_nonneg(d, 1, rng, -1.0, 1.0);
  f.Y = p.Y;
  return f;
}

// Central finite differences of the combined objective over every factor entry.
double max_gradient_rel_error(const JointProblem& p, const FactorBundle& f) {
  const Gradients g = joint_gradients(p, f);
  const double h = 1e-5;
  double num = 0.0, den = 0.0;
  auto accumulate = [&](auto member, const Eigen::MatrixXd& analytic) {
    for (Eigen::Index i = 0; i < analytic.rows(); ++i)
      for (Eigen::Index j = 0; j < analytic.cols(); ++j) {
        FactorBundle fp = f, fm = f;
        member(fp)(i, j) += h;
        member(fm)(i, j) -= h;
        const double fd = (joint_objective(p, fp) - joint_objective(p, fm)) / (2.0 * h);
        num += (fd - analytic(i, j)) * (fd - analytic(i, j));
        den += fd * fd;
      }
  };
  accumulate([](FactorBundle& b) -> Eigen::MatrixXd& { return b.D; }, g.D);
  accumulate([](FactorBundle& b) -> Eigen::MatrixXd& { return b.V; }, g.V);
  accumulate([](FactorBundle& b) -> Eigen::MatrixXd& { return b.U; }, g.U);
  accumulate([](FactorBundle& b) -> Eigen::MatrixXd& { return b.T; }, g.T);
  for (Eigen::Index i = 0; i < g.Q.size(); ++i) {
    FactorBundle fp = f, fm = f;
    fp.Q[i] += h;
    fm.Q[i] -= h;
    const double fd = (joint_objective(p, fp) - joint_objective(p, fm)) / (2.0 * h);
    num += (fd - g.Q[i]) * (fd - g.Q[i]);
    den += fd * fd;
  }
  return std::sqrt(num / std::max(den, 1e-300));
}

}  // namespace

TEST_CASE("news term") {
  Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(3, 4);
  CHECK(eval_news_term(Z, Eigen::MatrixXd::Zero(3, 2), Eigen::MatrixXd::Zero(4, 2)) == 0.0);

  Rng rng(1);
  auto D = random_nonneg(5, 3, rng);
  auto V = random_nonneg(4, 3, rng);
  Eigen::MatrixXd X = D * V.transpose();
  CHECK(eval_news_term(X, D, V) == doctest::Approx(0.0).epsilon(1e-10));

  Eigen::MatrixXd I2 = Eigen::MatrixXd::Identity(2, 2);
  CHECK(eval_news_term(I2, I2, I2) == 0.0);
  CHECK(eval_news_term(I2, I2, Eigen::MatrixXd::Zero(2, 2)) == 2.0);

  CHECK_THROWS_AS(eval_news_term(X, D, Eigen::MatrixXd::Zero(7, 3)), ValidationError);
}

TEST_CASE("user term") {
  Rng rng(2);
  auto A = random_nonneg(4, 4, rng);
  auto U = random_nonneg(4, 2, rng);
  auto T = random_nonneg(2, 2, rng);
  CHECK(eval_user_term(A, U, T, Eigen::MatrixXd::Zero(4, 4)) == 0.0);

  Eigen::MatrixXd exact = U * T * U.transpose();
  CHECK(eval_user_term(exact, U, T, Eigen::MatrixXd::Ones(4, 4)) == 0.0);

  Eigen::MatrixXd A2(2, 2);
  A2 << 0, 1, 1, 0;
  CHECK(eval_user_term(A2, Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Zero(2, 2),
                       Eigen::MatrixXd::Ones(2, 2)) == 2.0);
}

TEST_CASE("engagement term") {
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(2, 2);
  Eigen::VectorXd c = Eigen::VectorXd::Constant(2, 0.5);
  Eigen::VectorXi y(2);
  y << 1, -1;
  Eigen::MatrixXd U = Eigen::MatrixXd::Ones(2, 2), D = Eigen::MatrixXd::Ones(2, 2);
  CHECK(eval_engagement_term(W, c, y, U, D) == 0.0);

  // single engagement on true news with matching latents
  W(0, 1) = 1.0;
  c[0] = 1.0;
  CHECK(eval_engagement_term(W, c, y, U, D) == 0.0);
  c[0] = 0.0;
  D.row(1) << 3.0, 1.0;
  CHECK(eval_engagement_term(W, c, y, U, D) == 0.0);  // true-news coefficient is c_i

  // y=+1, c=0.25, squared distance 4 -> 0.75 * 4
  Eigen::MatrixXd W2 = Eigen::MatrixXd::Zero(1, 1);
  W2(0, 0) = 1.0;
  Eigen::VectorXd c2(1);
  c2 << 0.25;
  Eigen::VectorXi y2(1);
  y2 << 1;
  Eigen::MatrixXd U2(1, 1), D2(1, 1);
  U2 << 0.0;
  D2 << 2.0;
  CHECK(eval_engagement_term(W2, c2, y2, U2, D2) == doctest::Approx(3.0));
}

TEST_CASE("publisher term") {
  Eigen::MatrixXd B(1, 2);
  B << 1, 1;
  Eigen::MatrixXd D(2, 1);
  D << 1, 3;
  Eigen::VectorXd Q(1);
  Q << 1;
  Eigen::VectorXd o(1);
  o << 2;
  CHECK(eval_publisher_term(B, D, Q, o) == 0.0);
  o << 0;
  CHECK(eval_publisher_term(B, D, Q, o) == 4.0);

  Q << 0;
  CHECK(eval_publisher_term(B, D, Q, o) == 0.0);

  Eigen::MatrixXd Bbad(2, 2);
  Bbad << 1, 1, 0, 0;
  CHECK_THROWS_WITH_AS(eval_publisher_term(Bbad, D, Q, Eigen::VectorXd::Zero(2)),
                       doctest::Contains("zero publications"), ValidationError);
}

TEST_CASE("evaluators are nonnegative") {
  Rng rng(77);
  for (int rep = 0; rep < 20; ++rep) {
    auto p = random_problem(5, 6, 4, 2, 3, rng);
    auto f = random_factors(p, rng);
    CHECK(eval_news_term(p.X, f.D, f.V) >= 0.0);
    CHECK(eval_user_term(p.A, f.U, f.T, f.Y) >= 0.0);
    CHECK(eval_engagement_term(p.W, p.c, p.y, f.U, f.D) >= 0.0);
    CHECK(eval_publisher_term(p.B, f.D, f.Q, p.o) >= 0.0);
  }
}

TEST_CASE("combined gradient matches finite differences") {
  Rng rng(42);
  const Eigen::Index shapes[5][4] = {
      {4, 5, 3, 2}, {6, 4, 5, 2}, {3, 7, 4, 3}, {5, 5, 5, 2}, {8, 3, 6, 2}};
  for (const auto& s : shapes) {
    auto p = random_problem(s[0], s[1], s[2], s[3], 3, rng);
    p.cfg.lambda = 0.01;
    for (int pt = 0; pt < 10; ++pt) {
      auto f = random_factors(p, rng);
      CHECK(max_gradient_rel_error(p, f) < 1e-4);
    }
  }
}

TEST_CASE("fit_joint on all-zero data shrinks factors to zero") {
  graph::InteractionNetwork ia;
  ia.users = 4;
  ia.news = 3;
  ia.publishers = 1;
  ia.vocab = 5;
  ia.word_counts = Eigen::MatrixXd::Zero(3, 5);
  ia.engaging = Eigen::MatrixXd::Zero(4, 3);
  ia.publishing = Eigen::MatrixXd::Ones(1, 3);
  ia.credibility = Eigen::VectorXd::Constant(4, 0.5);
  ia.partisan = Eigen::VectorXd::Zero(1);
  ia.labels = Eigen::VectorXi::Zero(3);
  graph::FriendshipNetwork fr;
  fr.users = 4;
  EmbedConfig cfg;
  cfg.d = 2;
  cfg.lambda = 0.1;
  cfg.max_iters = 300;
  const auto res = fit_joint(ia, fr, cfg);
  CHECK(res.trace.back().total < 1e-6);
  CHECK(res.factors.D.norm() < 1e-3);
}

TEST_CASE("planted factors are recovered") {
  Rng rng(5);
  Eigen::MatrixXd D0 = random_nonneg(20, 3, rng);
  Eigen::MatrixXd V0 = random_nonneg(15, 3, rng);
  graph::InteractionNetwork ia;
  ia.users = 30;
  ia.news = 20;
  ia.publishers = 2;
  ia.vocab = 15;
  ia.word_counts = D0 * V0.transpose();
  ia.engaging = Eigen::MatrixXd::Zero(30, 20);
  ia.publishing = Eigen::MatrixXd::Zero(2, 20);
  for (int j = 0; j < 20; ++j) ia.publishing(j % 2, j) = 1.0;
  ia.credibility = Eigen::VectorXd::Constant(30, 0.5);
  ia.partisan = Eigen::VectorXd::Zero(2);
  ia.labels = Eigen::VectorXi::Zero(20);
  graph::FriendshipNetwork fr;
  fr.users = 30;
  EmbedConfig cfg;
  cfg.d = 3;
  cfg.alpha_user = 0.0;
  cfg.alpha_eng = 0.0;
  cfg.alpha_pub = 0.0;
  cfg.lambda = 1e-6;
  cfg.max_iters = 2000;
  cfg.rel_tol = 1e-12;
  const auto res = fit_joint(ia, fr, cfg);
  CHECK(res.trace.back().total <= 1e-3 * res.trace.front().total);
}

TEST_CASE("objective trace nonincreasing on 10 seeds") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    graph::SyntheticSpec spec;
    spec.seed = 100 + seed;
    spec.users = 12;
    spec.news = 8;
    spec.vocab = 10;
    const auto b = graph::generate_synthetic(spec);
    EmbedConfig cfg;
    cfg.d = 3;
    cfg.seed = seed;
    cfg.max_iters = 60;
    const auto res = fit_joint(b.interaction, b.friendship, cfg);
    for (std::size_t i = 1; i < res.trace.size(); ++i)
      CHECK(res.trace[i].total <= res.trace[i - 1].total + 1e-9);
    // nonnegativity preserved
    CHECK((res.factors.D.array() >= 0.0).all());
    CHECK((res.factors.V.array() >= 0.0).all());
    CHECK((res.factors.U.array() >= 0.0).all());
    CHECK((res.factors.T.array() >= 0.0).all());
  }
}

TEST_CASE("degenerate joint fit equals standalone NMF bit-for-bit") {
  graph::SyntheticSpec spec;
  spec.seed = 21;
  spec.users = 10;
  spec.news = 8;
  spec.vocab = 12;
  const auto b = graph::generate_synthetic(spec);
  EmbedConfig cfg;
  cfg.d = 4;
  cfg.seed = 17;
  cfg.alpha_user = 0.0;
  cfg.alpha_eng = 0.0;
  cfg.alpha_pub = 0.0;
  cfg.max_iters = 120;
  const auto joint = fit_joint(b.interaction, b.friendship, cfg);
  const auto plain = nmf_fit(b.interaction.word_counts, cfg.d, cfg.lambda, cfg.max_iters,
                             cfg.rel_tol, cfg.seed);
  REQUIRE(joint.factors.D.rows() == plain.D.rows());
  CHECK(joint.factors.D == plain.D);
  CHECK(joint.factors.V == plain.V);
  REQUIRE(joint.trace.size() == plain.trace.size());
  for (std::size_t i = 0; i < joint.trace.size(); ++i)
    CHECK(joint.trace[i].total == plain.trace[i].total);
}

TEST_CASE("classifier") {
  SUBCASE("separable two points") {
    Eigen::MatrixXd D(2, 2);
    D << 0, 0, 1, 1;
    Eigen::VectorXi y(2);
    y << -1, 1;
    const auto w = train_classifier(D, y, 1e-6);
    CHECK(predict(D.row(0), w) == -1);
    CHECK(predict(D.row(1), w) == 1);
  }
  SUBCASE("conflicting duplicates give chance accuracy") {
    Eigen::MatrixXd D(4, 1);
    D << 1, 1, 1, 1;
    Eigen::VectorXi y(4);
    y << 1, -1, 1, -1;
    const auto w = train_classifier(D, y, 1e-6);
    int correct = 0;
    for (int i = 0; i < 4; ++i) correct += predict(D.row(i), w) == y[i];
    CHECK(correct == 2);
  }
  SUBCASE("single class rejected") {
    Eigen::MatrixXd D(2, 1);
    D << 1, 2;
    Eigen::VectorXi y(2);
    y << 1, 1;
    CHECK_THROWS_AS(train_classifier(D, y, 0.1), ValidationError);
  }
}

TEST_CASE("planted synthetic detection accuracy") {
  double total_acc = 0.0;
  const int n_seeds = 20;
  for (int s = 0; s < n_seeds; ++s) {
    graph::SyntheticSpec spec;
    spec.seed = 500 + s;
    spec.users = 30;
    spec.news = 24;
    spec.vocab = 16;
    auto b = graph::generate_synthetic(spec);
    const Eigen::VectorXi truth = b.interaction.labels;
    // hold out half of the labels
    Rng rng(900 + s);
    std::vector<int> held;
    for (Eigen::Index j = 0; j < truth.size(); ++j)
      if (rng.bernoulli(0.5)) {
        b.interaction.labels[j] = 0;
        held.push_back(static_cast<int>(j));
      }
    EmbedConfig cfg;
    cfg.d = 8;
    cfg.seed = s;
    cfg.max_iters = 150;
    const auto res = fit_joint(b.interaction, b.friendship, cfg);
    Eigen::VectorXi train_labels = b.interaction.labels;
    const auto w = train_classifier(res.factors.D, train_labels, 0.1);
    int correct = 0;
    for (int j : held) correct += predict(res.factors.D.row(j), w) == truth[j];
    total_acc += held.empty() ? 1.0 : static_cast<double>(correct) / held.size();
  }
  CHECK(total_acc / n_seeds > 0.8);
}
