#ifndef MISINFO_STANCE_HPP
#define MISINFO_STANCE_HPP

#include <set>
#include <vector>

#include "misinfo/graph.hpp"

namespace misinfo::stance {

struct Priors {
  double user_alpha = 2.0;
  double user_beta = 2.0;
  double news_alpha = 2.0;
  double news_beta = 2.0;
};

struct BetaTable {
  std::vector<double> user_alpha, user_beta, user_q;
  std::vector<double> news_alpha, news_beta, news_q;
  std::vector<char> pinned;                  // labeled news, q fixed at +/-1
  std::vector<std::vector<int>> user_likes;  // news liked by each user
  std::vector<std::vector<int>> news_likes;  // users liking each news
  Priors priors;
};

BetaTable init(const graph::StanceNetwork& stance, const std::set<int>& labeled_fake,
               const std::set<int>& labeled_true, const Priors& priors = {});

struct IterateResult {
  int rounds = 0;
  bool converged = false;
};

// Synchronous rounds: every user updates from its liked news' q, then every
// news updates from its liking users' q; labeled news stay pinned. Stops when
// the largest |change in q| drops below tol.
IterateResult iterate(BetaTable& table, int max_rounds = 200, double tol = 1e-10);

// true/fake verdict from the sign of q; q = 0 counts as true.
bool predict_fake(const BetaTable& table, int news_id);

}  // namespace misinfo::stance

#endif
