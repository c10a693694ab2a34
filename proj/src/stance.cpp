#include "misinfo/stance.hpp"

#include <algorithm>
#include <cmath>

#include "misinfo/errors.hpp"

namespace misinfo::stance {

BetaTable init(const graph::StanceNetwork& stance, const std::set<int>& labeled_fake,
               const std::set<int>& labeled_true, const Priors& priors) {
  if (priors.user_alpha <= 0.0 || priors.user_beta <= 0.0 || priors.news_alpha <= 0.0 ||
      priors.news_beta <= 0.0)
    throw ValidationError("priors must be positive");
  for (int j : labeled_fake)
    if (labeled_true.count(j)) throw ValidationError("label sets overlap");
  for (int j : labeled_fake)
    if (j < 0 || j >= static_cast<int>(stance.news))
      throw ValidationError("labeled news out of range");
  for (int j : labeled_true)
    if (j < 0 || j >= static_cast<int>(stance.news))
      throw ValidationError("labeled news out of range");

  BetaTable t;
  t.priors = priors;
  t.user_alpha.assign(stance.users, priors.user_alpha);
  t.user_beta.assign(stance.users, priors.user_beta);
  t.user_q.assign(stance.users, 0.0);
  t.news_alpha.assign(stance.news, priors.news_alpha);
  t.news_beta.assign(stance.news, priors.news_beta);
  t.news_q.assign(stance.news, 0.0);
  t.pinned.assign(stance.news, 0);
  for (int j : labeled_fake) {
    t.news_q[j] = -1.0;
    t.pinned[j] = 1;
  }
  for (int j : labeled_true) {
    t.news_q[j] = 1.0;
    t.pinned[j] = 1;
  }
  // users start at the prior ratio
  const double q0 = (priors.user_alpha - priors.user_beta) /
                    (priors.user_alpha + priors.user_beta);
  std::fill(t.user_q.begin(), t.user_q.end(), q0);

  t.user_likes.resize(stance.users);
  t.news_likes.resize(stance.news);
  for (const auto& [u, j] : stance.likes) {
    if (u < 0 || u >= static_cast<int>(stance.users) || j < 0 ||
        j >= static_cast<int>(stance.news))
      throw ValidationError("like edge out of range");
    t.user_likes[u].push_back(j);
    t.news_likes[j].push_back(u);
  }
  return t;
}

IterateResult iterate(BetaTable& table, int max_rounds, double tol) {
  IterateResult result;
  for (int round = 1; round <= max_rounds; ++round) {
    double max_delta = 0.0;
    // users update from the scores of the news they like
    for (std::size_t i = 0; i < table.user_q.size(); ++i) {
      double a = table.priors.user_alpha, b = table.priors.user_beta;
      for (int j : table.user_likes[i]) {
        const double q = table.news_q[j];
        if (q > 0.0) a += q;
        if (q < 0.0) b -= q;
      }
      table.user_alpha[i] = a;
      table.user_beta[i] = b;
      const double q = (a - b) / (a + b);
      max_delta = std::max(max_delta, std::abs(q - table.user_q[i]));
      table.user_q[i] = q;
    }
    // news update from the scores of the users liking them
    for (std::size_t j = 0; j < table.news_q.size(); ++j) {
      if (table.pinned[j]) continue;
      double a = table.priors.news_alpha, b = table.priors.news_beta;
      for (int u : table.news_likes[j]) {
        const double q = table.user_q[u];
        if (q > 0.0) a += q;
        if (q < 0.0) b -= q;
      }
      table.news_alpha[j] = a;
      table.news_beta[j] = b;
      const double q = (a - b) / (a + b);
      max_delta = std::max(max_delta, std::abs(q - table.news_q[j]));
      table.news_q[j] = q;
    }
    result.rounds = round;
    if (max_delta < tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

bool predict_fake(const BetaTable& table, int news_id) {
  if (news_id < 0 || news_id >= static_cast<int>(table.news_q.size()))
    throw ValidationError("unknown news " + std::to_string(news_id));
  return table.news_q[news_id] < 0.0;
}

}  // namespace misinfo::stance
