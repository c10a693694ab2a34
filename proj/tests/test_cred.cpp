#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "misinfo/cred.hpp"
#include "misinfo/errors.hpp"
#include "misinfo/rng.hpp"

using namespace misinfo;
using namespace misinfo::cred;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

// Random supporting-only instance (all link weights positive).
PropagationProblem random_supporting(int n, std::uint64_t seed, double mu) {
  Rng rng(seed);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.bernoulli(0.6)) w(i, j) = w(j, i) = rng.uniform(0.2, 1.0);
  Eigen::VectorXd t0(n);
  for (int i = 0; i < n; ++i) t0[i] = rng.uniform(-1, 1);
  return make_problem(t0, w, mu);
}

PropagationProblem random_signed(int n, std::uint64_t seed, double mu) {
  Rng rng(seed);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.bernoulli(0.6)) {
        const double v = rng.uniform(0.2, 1.0) * (rng.bernoulli(0.5) ? 1.0 : -1.0);
        w(i, j) = w(j, i) = v;
      }
  Eigen::VectorXd t0(n);
  for (int i = 0; i < n; ++i) t0[i] = rng.uniform(-1, 1);
  return make_problem(t0, w, mu);
}

}  // namespace

TEST_CASE("link weight hand values") {
  const auto p = vec({0.5, 0.5});
  CHECK(link_weight(p, p, true) == doctest::Approx(1.0));
  CHECK(link_weight(p, p, false) == doctest::Approx(-1.0));
  const auto a = vec({1.0, 0.0}), b = vec({0.0, 1.0});
  CHECK(link_weight(a, b, true) == doctest::Approx(1.0 / (std::log(2.0) + 1.0)));
  CHECK(link_weight(a, b, true) == doctest::Approx(0.5906).epsilon(1e-3));
}

TEST_CASE("link weight magnitude is 1 exactly at zero divergence") {
  Rng rng(1);
  for (int rep = 0; rep < 30; ++rep) {
    Eigen::VectorXd p(4), q(4);
    for (int i = 0; i < 4; ++i) {
      p[i] = rng.uniform(0.01, 1);
      q[i] = rng.uniform(0.01, 1);
    }
    p /= p.sum();
    q /= q.sum();
    const double f = link_weight(p, q, true);
    CHECK(f <= 1.0);
    CHECK(f > 0.0);
    if ((p - q).norm() > 1e-9) CHECK(f < 1.0);
  }
}

TEST_CASE("invalid distributions rejected") {
  CHECK_THROWS_AS(link_weight(vec({0.5, 0.6}), vec({0.5, 0.5}), true), ValidationError);
  CHECK_THROWS_AS(link_weight(vec({1.5, -0.5}), vec({0.5, 0.5}), true), ValidationError);
  CHECK_THROWS_AS(link_weight(vec({1.0}), vec({0.5, 0.5}), true), ValidationError);
}

TEST_CASE("objective with no links is the fitting term") {
  const auto problem = make_problem(vec({0.5, -0.5}), Eigen::MatrixXd::Zero(2, 2), 0.3);
  const auto t = vec({0.1, 0.2});
  CHECK(objective(problem, t) ==
        doctest::Approx(0.7 * ((0.1 - 0.5) * (0.1 - 0.5) + (0.2 + 0.5) * (0.2 + 0.5))));
}

TEST_CASE("supporting pair with equal values has zero smoothness") {
  Eigen::MatrixXd w(2, 2);
  w << 0, 1, 1, 0;
  const auto problem = make_problem(vec({0.4, 0.4}), w, 0.5);
  const auto t = vec({0.4, 0.4});
  CHECK(objective(problem, t) == doctest::Approx(0.0));
}

TEST_CASE("closed form minimizes the objective on supporting instances") {
  Rng rng(7);
  for (int rep = 0; rep < 5; ++rep) {
    const auto problem = random_supporting(5, 100 + rep, 0.4);
    const Eigen::VectorXd star = closed_form(problem);
    const double base = objective(problem, star);
    for (int probe = 0; probe < 100; ++probe) {
      Eigen::VectorXd t = star;
      for (Eigen::Index i = 0; i < t.size(); ++i) t[i] += rng.uniform(-0.2, 0.2);
      CHECK(objective(problem, t) >= base - 1e-12);
    }
  }
}

TEST_CASE("single isolated post keeps its initial value") {
  const auto problem = make_problem(vec({0.8}), Eigen::MatrixXd::Zero(1, 1), 0.5);
  const auto result = propagate(problem);
  CHECK(result.converged);
  CHECK(result.T[0] == doctest::Approx(0.8));
  CHECK(closed_form(problem)[0] == doctest::Approx(0.8));
}

TEST_CASE("two supporting posts solve the 2x2 system") {
  Eigen::MatrixXd w(2, 2);
  w << 0, 1, 1, 0;
  const auto problem = make_problem(vec({1.0, 0.0}), w, 0.5);
  // direct 2x2 linear solve of (I - 0.5 H) T = 0.5 T0 with H = [[0,1],[1,0]]
  Eigen::MatrixXd a(2, 2);
  a << 1, -0.5, -0.5, 1;
  const Eigen::VectorXd expected = a.partialPivLu().solve(vec({0.5, 0.0}));
  const auto result = propagate(problem, 1e-12, 10000);
  CHECK(result.converged);
  CHECK((result.T - expected).lpNorm<Eigen::Infinity>() < 1e-10);
  CHECK(result.T[0] == doctest::Approx(2.0 / 3.0));
  CHECK(result.T[1] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("iteration matches the closed form on random signed instances") {
  for (int rep = 0; rep < 20; ++rep) {
    const auto problem = random_signed(6, 500 + rep, 0.5);
    const auto result = propagate(problem, 1e-13, 20000);
    CHECK(result.converged);
    CHECK((result.T - closed_form(problem)).lpNorm<Eigen::Infinity>() < 1e-8);
  }
}

TEST_CASE("propagation error contracts at rate mu") {
  const auto problem = random_signed(6, 42, 0.6);
  const Eigen::VectorXd star = closed_form(problem);
  Eigen::VectorXd t = problem.T0;
  double prev = (t - star).norm();
  for (int it = 0; it < 30; ++it) {
    t = problem.mu * (problem.H * t) + (1.0 - problem.mu) * problem.T0;
    const double cur = (t - star).norm();
    if (prev > 1e-14) CHECK(cur <= problem.mu * prev + 1e-12);
    prev = cur;
  }
}

TEST_CASE("non-convergence is flagged") {
  const auto problem = random_signed(6, 11, 0.9);
  const auto result = propagate(problem, 1e-15, 2);
  CHECK(!result.converged);
  CHECK(result.iters == 2);
}

TEST_CASE("opposing link behaves as a gauge flip of a supporting link") {
  Eigen::MatrixXd w_support(2, 2), w_oppose(2, 2);
  w_support << 0, 0.7, 0.7, 0;
  w_oppose << 0, -0.7, -0.7, 0;
  const auto t0 = vec({0.9, 0.3});
  const auto flipped = vec({0.9, -0.3});
  const Eigen::VectorXd a = closed_form(make_problem(t0, w_oppose, 0.5));
  const Eigen::VectorXd b = closed_form(make_problem(flipped, w_support, 0.5));
  CHECK(a[0] == doctest::Approx(b[0]));
  CHECK(a[1] == doctest::Approx(-b[1]));
}

TEST_CASE("verdict") {
  CHECK(news_verdict(vec({1, 1, 1})) == doctest::Approx(1.0));
  CHECK(news_verdict(vec({1, -1})) == doctest::Approx(0.0));
  CHECK_THROWS_AS(news_verdict(Eigen::VectorXd()), ValidationError);
}

TEST_CASE("mostly-supported true news gets a positive verdict") {
  int positive = 0;
  for (int s = 0; s < 100; ++s) {
    Rng rng(3000 + s);
    const int n = 10;
    Eigen::VectorXd t0(n);
    std::vector<int> group(n);
    for (int i = 0; i < n; ++i) {
      group[i] = i < 8 ? 0 : 1;  // 80% supporting posts
      t0[i] = group[i] == 0 ? rng.uniform(0.2, 1.0) : rng.uniform(-1.0, -0.2);
    }
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.bernoulli(0.5)) {
          const double mag = rng.uniform(0.3, 1.0);
          w(i, j) = w(j, i) = group[i] == group[j] ? mag : -mag;
        }
    const auto problem = make_problem(t0, w, 0.5);
    if (news_verdict(propagate(problem).T) > 0.0) ++positive;
  }
  CHECK(positive >= 95);
}

TEST_CASE("problem construction from viewpoints and links") {
  std::vector<Eigen::VectorXd> vps = {vec({0.5, 0.5}), vec({0.5, 0.5}), vec({1.0, 0.0})};
  std::vector<LinkSpec> links = {{0, 1, true}, {1, 2, false}};
  const auto problem = make_problem(vec({0.5, 0.1, -0.4}), vps, links, 0.5);
  CHECK(problem.W(0, 1) == doctest::Approx(1.0));
  CHECK(problem.W(1, 2) == doctest::Approx(-1.0 / (js_divergence(vps[1], vps[2]) + 1.0)));
  CHECK(problem.W(0, 2) == 0.0);
  CHECK(problem.W == problem.W.transpose().eval());
}

TEST_CASE("validation errors") {
  CHECK_THROWS_AS(make_problem(vec({0.5}), Eigen::MatrixXd::Zero(2, 2), 0.5),
                  ValidationError);
  CHECK_THROWS_AS(make_problem(vec({0.5, 0.5}), Eigen::MatrixXd::Zero(2, 2), 1.5),
                  ValidationError);
  CHECK_THROWS_AS(make_problem(vec({1.5, 0.5}), Eigen::MatrixXd::Zero(2, 2), 0.5),
                  ValidationError);
  Eigen::MatrixXd asym(2, 2);
  asym << 0, 1, 0.5, 0;
  CHECK_THROWS_AS(make_problem(vec({0.5, 0.5}), asym, 0.5), ValidationError);
}
