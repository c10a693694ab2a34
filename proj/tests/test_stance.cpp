#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <set>

#include "misinfo/errors.hpp"
#include "misinfo/rng.hpp"
#include "misinfo/stance.hpp"

using namespace misinfo;
using namespace misinfo::stance;

namespace {

graph::StanceNetwork likes_only(std::size_t users, std::size_t news,
                                std::vector<std::pair<int, int>> likes) {
  graph::StanceNetwork s;
  s.users = users;
  s.news = news;
  s.likes = std::move(likes);
  return s;
}

}  // namespace

TEST_CASE("initialization") {
  const auto net = likes_only(3, 4, {{0, 0}, {1, 1}});

  SUBCASE("no labels means all scores zero") {
    const auto t = init(net, {}, {});
    for (double q : t.news_q) CHECK(q == 0.0);
    for (double q : t.user_q) CHECK(q == 0.0);
  }
  SUBCASE("fake label pins -1, true label pins +1") {
    const auto t = init(net, {2}, {3});
    CHECK(t.news_q[2] == -1.0);
    CHECK(t.news_q[3] == 1.0);
    CHECK(t.news_q[0] == 0.0);
  }
  SUBCASE("user without likes sits at the prior mean") {
    Priors p;
    p.user_alpha = 3.0;
    p.user_beta = 1.5;
    auto t = init(net, {}, {}, p);
    iterate(t, 5);
    CHECK(t.user_alpha[2] / (t.user_alpha[2] + t.user_beta[2]) ==
          doctest::Approx(3.0 / 4.5));
  }
  SUBCASE("overlapping label sets rejected") {
    CHECK_THROWS_AS(init(net, {1}, {1}), ValidationError);
  }
  SUBCASE("out-of-range label rejected") {
    CHECK_THROWS_AS(init(net, {9}, {}), ValidationError);
  }
}

TEST_CASE("single update hand example") {
  // one user liking one true-labeled news, unit priors
  const auto net = likes_only(1, 1, {{0, 0}});
  Priors p;
  p.user_alpha = p.user_beta = p.news_alpha = p.news_beta = 1.0;
  auto t = init(net, {}, {0}, p);
  iterate(t, 1);
  CHECK(t.user_alpha[0] == doctest::Approx(2.0));
  CHECK(t.user_beta[0] == doctest::Approx(1.0));
  CHECK(t.user_q[0] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("symmetric likes balance to zero") {
  // every user likes one fake and one true labeled news
  const auto net = likes_only(4, 2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 0}, {2, 1},
                                     {3, 0}, {3, 1}});
  auto t = init(net, {0}, {1});
  const auto r = iterate(t, 500, 1e-12);
  CHECK(r.converged);
  for (double q : t.user_q) CHECK(q == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("pinned labels never move") {
  const auto net = likes_only(2, 2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  auto t = init(net, {0}, {});
  iterate(t, 100);
  CHECK(t.news_q[0] == -1.0);
  CHECK(predict_fake(t, 0));
}

TEST_CASE("prediction boundary and errors") {
  const auto net = likes_only(1, 2, {});
  auto t = init(net, {}, {});
  iterate(t, 3);
  CHECK(!predict_fake(t, 0));  // q = 0 counts as true
  t.news_q[1] = -0.1;
  CHECK(predict_fake(t, 1));
  t.news_q[1] = 0.4;
  CHECK(!predict_fake(t, 1));
  CHECK_THROWS_AS(predict_fake(t, 5), ValidationError);
}

TEST_CASE("scores of unlabeled entities stay inside (-1,1) and parameters positive") {
  Rng rng(5);
  graph::StanceNetwork net;
  net.users = 12;
  net.news = 8;
  for (int u = 0; u < 12; ++u)
    for (int j = 0; j < 8; ++j)
      if (rng.bernoulli(0.4)) net.likes.emplace_back(u, j);
  auto t = init(net, {0}, {1});
  iterate(t, 50);
  for (std::size_t j = 0; j < t.news_q.size(); ++j) {
    CHECK(t.news_alpha[j] > 0.0);
    CHECK(t.news_beta[j] > 0.0);
    if (!t.pinned[j]) {
      CHECK(t.news_q[j] > -1.0);
      CHECK(t.news_q[j] < 1.0);
    }
  }
  for (std::size_t i = 0; i < t.user_q.size(); ++i) {
    CHECK(t.user_alpha[i] > 0.0);
    CHECK(t.user_beta[i] > 0.0);
    CHECK(t.user_q[i] > -1.0);
    CHECK(t.user_q[i] < 1.0);
  }
}

TEST_CASE("non-convergence is reported") {
  const auto net = likes_only(2, 2, {{0, 0}, {1, 1}});
  auto t = init(net, {0}, {1});
  const auto r = iterate(t, 1, 0.0);
  CHECK(!r.converged);
  CHECK(r.rounds == 1);
}

TEST_CASE("user relabeling leaves predictions unchanged") {
  Rng rng(9);
  graph::StanceNetwork net;
  net.users = 10;
  net.news = 6;
  for (int u = 0; u < 10; ++u)
    for (int j = 0; j < 6; ++j)
      if (rng.bernoulli(0.5)) net.likes.emplace_back(u, j);
  auto t1 = init(net, {0}, {1});
  iterate(t1, 100);

  std::vector<int> perm(10);
  std::iota(perm.begin(), perm.end(), 0);
  Rng shuffle_rng(17);
  for (int i = 9; i > 0; --i) std::swap(perm[i], perm[shuffle_rng.index(i + 1)]);
  graph::StanceNetwork permuted = net;
  permuted.likes.clear();
  for (const auto& [u, j] : net.likes) permuted.likes.emplace_back(perm[u], j);
  auto t2 = init(permuted, {0}, {1});
  iterate(t2, 100);
  for (std::size_t j = 0; j < t1.news_q.size(); ++j)
    CHECK(t1.news_q[j] == doctest::Approx(t2.news_q[j]).epsilon(1e-12));
}

TEST_CASE("planted gullible and reliable users recover unlabeled signs") {
  int total = 0, correct = 0;
  for (int s = 0; s < 50; ++s) {
    Rng rng(4000 + s);
    graph::StanceNetwork net;
    net.users = 20;
    net.news = 10;
    // news 0-4 fake (liked by gullible users 0-9), news 5-9 true
    for (int u = 0; u < 10; ++u)
      for (int j = 0; j < 5; ++j)
        if (rng.bernoulli(0.7)) net.likes.emplace_back(u, j);
    for (int u = 10; u < 20; ++u)
      for (int j = 5; j < 10; ++j)
        if (rng.bernoulli(0.7)) net.likes.emplace_back(u, j);
    // 20% labels: one fake, one true
    auto t = init(net, {0}, {5});
    iterate(t, 200);
    for (int j = 1; j < 5; ++j) {
      ++total;
      if (predict_fake(t, j)) ++correct;
    }
    for (int j = 6; j < 10; ++j) {
      ++total;
      if (!predict_fake(t, j)) ++correct;
    }
  }
  CHECK(static_cast<double>(correct) / total >= 0.9);
}
