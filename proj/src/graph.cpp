#include "misinfo/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "misinfo/rng.hpp"
#include "json.hpp"

namespace misinfo::graph {

using nlohmann::json;

std::vector<int> KnowledgeGraph::degrees() const {
  std::vector<std::set<int>> nbr(entities);
  for (const auto& t : triples) {
    if (t.subject == t.object) continue;
    nbr[t.subject].insert(t.object);
    nbr[t.object].insert(t.subject);
  }
  std::vector<int> deg(entities, 0);
  for (std::size_t i = 0; i < entities; ++i) deg[i] = static_cast<int>(nbr[i].size());
  return deg;
}

namespace {

void require(bool ok, const std::string& invariant) {
  if (!ok) throw ValidationError("invariant violation: " + invariant);
}

}  // namespace

void NetworkBundle::validate() const {
  const int m = static_cast<int>(users);
  for (const auto& [s, d] : friendship.edges) {
    require(s != d, "self-loop in friendship edge (" + std::to_string(s) + "," + std::to_string(d) + ")");
    require(s >= 0 && d >= 0 && s < m && d < m, "friendship edge endpoint out of range");
  }
  require(friendship.users == users, "friendship user count mismatch");

  std::set<std::pair<int, int>> fedges(friendship.edges.begin(), friendship.edges.end());
  for (const auto& e : diffusion.edges) {
    require(e.src >= 0 && e.dst >= 0 && e.src < m && e.dst < m, "diffusion edge endpoint out of range");
    require(e.prob >= 0.0 && e.prob <= 1.0, "diffusion probability out of [0,1]");
    require(e.src != e.dst, "self-loop in diffusion edge");
    if (!fedges.empty())
      require(fedges.count({e.dst, e.src}) > 0,
              "diffusion edge (" + std::to_string(e.src) + "->" + std::to_string(e.dst) +
                  ") without follower relation");
  }
  for (std::size_t i = 1; i < diffusion.engagements.size(); ++i)
    require(diffusion.engagements[i - 1].time <= diffusion.engagements[i].time,
            "engagements not sorted by time");
  for (const auto& e : diffusion.engagements) {
    require(e.user >= 0 && e.user < m, "engagement user out of range");
    require(e.time >= 0.0, "negative engagement time");
  }

  const auto n_posts = credibility.posts;
  require(credibility.credibility.size() == n_posts, "credibility vector size mismatch");
  for (double c : credibility.credibility)
    require(c >= -1.0 && c <= 1.0, "post credibility out of [-1,1]");
  if (n_posts > 0) {
    require(static_cast<std::size_t>(credibility.weights.rows()) == n_posts &&
                static_cast<std::size_t>(credibility.weights.cols()) == n_posts,
            "W_link dimension mismatch");
    for (std::size_t i = 0; i < n_posts; ++i)
      for (std::size_t j = 0; j < n_posts; ++j) {
        require(std::abs(credibility.weights(i, j) - credibility.weights(j, i)) < 1e-12,
                "W_link not symmetric");
        require(std::abs(credibility.weights(i, j)) <= 1.0 + 1e-12, "|W_link| > 1");
      }
  }
  for (const auto& p : credibility.viewpoint_dists) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < p.size(); ++k) {
      require(p[k] >= -1e-12, "viewpoint distribution has negative entry");
      s += p[k];
    }
    require(std::abs(s - 1.0) <= 1e-9, "viewpoint distribution does not sum to 1");
  }

  for (const auto& t : knowledge.triples) {
    require(t.subject >= 0 && t.object >= 0 &&
                t.subject < static_cast<int>(knowledge.entities) &&
                t.object < static_cast<int>(knowledge.entities),
            "knowledge triple entity out of range");
  }

  for (const auto& e : stance.stances)
    require(e.sign == 1 || e.sign == -1, "stance sign not in {+1,-1}");
  for (const auto& [u, p] : stance.posting)
    require(u >= 0 && u < static_cast<int>(stance.users) && p >= 0 &&
                p < static_cast<int>(stance.posts),
            "posting edge endpoint out of range");
  for (const auto& [u, v] : stance.likes)
    require(u >= 0 && u < static_cast<int>(stance.users) && v >= 0 &&
                v < static_cast<int>(stance.news),
            "like edge endpoint out of range");

  const auto& ia = interaction;
  if (ia.news > 0 || ia.users > 0) {
    require((ia.word_counts.array() >= 0.0).all(), "X has negative entry");
    for (Eigen::Index i = 0; i < ia.engaging.rows(); ++i)
      for (Eigen::Index j = 0; j < ia.engaging.cols(); ++j)
        require(ia.engaging(i, j) == 0.0 || ia.engaging(i, j) == 1.0, "W_eng not binary");
    for (Eigen::Index i = 0; i < ia.publishing.rows(); ++i)
      for (Eigen::Index j = 0; j < ia.publishing.cols(); ++j)
        require(ia.publishing(i, j) == 0.0 || ia.publishing(i, j) == 1.0, "B_pub not binary");
    for (Eigen::Index i = 0; i < ia.credibility.size(); ++i)
      require(ia.credibility[i] >= 0.0 && ia.credibility[i] <= 1.0,
              "user credibility out of [0,1]");
    for (Eigen::Index j = 0; j < ia.labels.size(); ++j)
      require(ia.labels[j] >= -1 && ia.labels[j] <= 1, "label not in {-1,0,+1}");
  }
}

void SyntheticSpec::validate() const {
  require(users >= 1, "synthetic spec: zero users");
  require(news >= 1, "synthetic spec: zero news");
  require(publishers >= 1, "synthetic spec: zero publishers");
  require(communities >= 1, "synthetic spec: zero communities");
  require(intra_prob >= 0.0 && intra_prob <= 1.0, "synthetic spec: intra_prob out of [0,1]");
  require(inter_prob >= 0.0 && inter_prob <= 1.0, "synthetic spec: inter_prob out of [0,1]");
  require(fake_ratio >= 0.0 && fake_ratio <= 1.0, "synthetic spec: fake_ratio out of [0,1]");
}

// ---------------------------------------------------------------------------
// JSON serialization

namespace {

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
  if (j.is_null()) return m;
  if (static_cast<Eigen::Index>(j.size()) != rows)
    throw ValidationError("matrix row count mismatch");
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j.at(i);
    if (static_cast<Eigen::Index>(row.size()) != cols)
      throw ValidationError("matrix column count mismatch");
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = row.at(c).get<double>();
  }
  return m;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Eigen::VectorXd vector_from_json(const json& j) {
  Eigen::VectorXd v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j.at(i).get<double>();
  return v;
}

}  // namespace

std::string to_json_string(const NetworkBundle& b) {
  json j;
  j["users"] = {{"count", b.users}};
  j["news"] = {{"count", b.news}};
  j["posts"] = {{"count", b.posts}};
  j["publishers"] = {{"count", b.publishers}};

  json fe = json::array();
  for (const auto& [s, d] : b.friendship.edges) fe.push_back({s, d});
  j["friendship"] = {{"users", b.friendship.users}, {"edges", std::move(fe)}};

  json de = json::array();
  for (const auto& e : b.diffusion.edges) de.push_back({e.src, e.dst, e.prob});
  json eng = json::array();
  for (const auto& e : b.diffusion.engagements) eng.push_back({e.user, e.time, e.post});
  j["diffusion"] = {{"users", b.diffusion.users},
                    {"edges", std::move(de)},
                    {"engagements", std::move(eng)}};

  json vps = json::array();
  for (const auto& p : b.credibility.viewpoint_dists) vps.push_back(vector_to_json(p));
  j["credibility"] = {{"posts", b.credibility.posts},
                      {"credibility", b.credibility.credibility},
                      {"weights", matrix_to_json(b.credibility.weights)},
                      {"viewpoint_dists", std::move(vps)},
                      {"major_component", b.credibility.major_component}};

  json tr = json::array();
  for (const auto& t : b.knowledge.triples) tr.push_back({t.subject, t.predicate, t.object});
  j["knowledge"] = {{"entities", b.knowledge.entities}, {"triples", std::move(tr)}};

  json posting = json::array();
  for (const auto& [u, p] : b.stance.posting) posting.push_back({u, p});
  json stances = json::array();
  for (const auto& e : b.stance.stances) stances.push_back({e.post, e.news, e.sign});
  json likes = json::array();
  for (const auto& [u, v] : b.stance.likes) likes.push_back({u, v});
  j["stance"] = {{"users", b.stance.users},     {"posts", b.stance.posts},
                 {"news", b.stance.news},       {"posting", std::move(posting)},
                 {"stance", std::move(stances)}, {"likes", std::move(likes)}};

  json pub = json::array();
  for (const auto& [p, v] : b.interaction.publish) pub.push_back({p, v});
  json spr = json::array();
  for (const auto& [v, u] : b.interaction.spread) spr.push_back({v, u});
  std::vector<int> labels(b.interaction.labels.data(),
                          b.interaction.labels.data() + b.interaction.labels.size());
  j["interaction"] = {{"publishers", b.interaction.publishers},
                      {"news", b.interaction.news},
                      {"users", b.interaction.users},
                      {"vocab", b.interaction.vocab},
                      {"publish", std::move(pub)},
                      {"spread", std::move(spr)},
                      {"X", matrix_to_json(b.interaction.word_counts)},
                      {"W_eng", matrix_to_json(b.interaction.engaging)},
                      {"B_pub", matrix_to_json(b.interaction.publishing)},
                      {"c", vector_to_json(b.interaction.credibility)},
                      {"o_part", vector_to_json(b.interaction.partisan)},
                      {"y_L", labels}};
  return j.dump(1);
}

NetworkBundle from_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("parse error: ") + e.what());
  }
  NetworkBundle b;
  try {
    b.users = j.at("users").at("count").get<std::size_t>();
    b.news = j.at("news").at("count").get<std::size_t>();
    b.posts = j.at("posts").at("count").get<std::size_t>();
    b.publishers = j.at("publishers").at("count").get<std::size_t>();

    const auto& f = j.at("friendship");
    b.friendship.users = f.at("users").get<std::size_t>();
    for (const auto& e : f.at("edges"))
      b.friendship.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());

    const auto& d = j.at("diffusion");
    b.diffusion.users = d.at("users").get<std::size_t>();
    for (const auto& e : d.at("edges"))
      b.diffusion.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<double>()});
    for (const auto& e : d.at("engagements"))
      b.diffusion.engagements.push_back(
          {e.at(0).get<int>(), e.at(1).get<double>(), e.at(2).get<int>()});

    const auto& c = j.at("credibility");
    b.credibility.posts = c.at("posts").get<std::size_t>();
    b.credibility.credibility = c.at("credibility").get<std::vector<double>>();
    b.credibility.weights = matrix_from_json(
        c.at("weights"), static_cast<Eigen::Index>(b.credibility.posts),
        static_cast<Eigen::Index>(b.credibility.posts));
    for (const auto& p : c.at("viewpoint_dists"))
      b.credibility.viewpoint_dists.push_back(vector_from_json(p));
    b.credibility.major_component = c.at("major_component").get<std::vector<int>>();

    const auto& k = j.at("knowledge");
    b.knowledge.entities = k.at("entities").get<std::size_t>();
    for (const auto& t : k.at("triples"))
      b.knowledge.triples.push_back(
          {t.at(0).get<int>(), t.at(1).get<std::string>(), t.at(2).get<int>()});

    const auto& s = j.at("stance");
    b.stance.users = s.at("users").get<std::size_t>();
    b.stance.posts = s.at("posts").get<std::size_t>();
    b.stance.news = s.at("news").get<std::size_t>();
    for (const auto& e : s.at("posting"))
      b.stance.posting.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    for (const auto& e : s.at("stance"))
      b.stance.stances.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()});
    for (const auto& e : s.at("likes"))
      b.stance.likes.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());

    const auto& ia = j.at("interaction");
    b.interaction.publishers = ia.at("publishers").get<std::size_t>();
    b.interaction.news = ia.at("news").get<std::size_t>();
    b.interaction.users = ia.at("users").get<std::size_t>();
    b.interaction.vocab = ia.at("vocab").get<std::size_t>();
    for (const auto& e : ia.at("publish"))
      b.interaction.publish.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    for (const auto& e : ia.at("spread"))
      b.interaction.spread.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    const auto n = static_cast<Eigen::Index>(b.interaction.news);
    const auto m = static_cast<Eigen::Index>(b.interaction.users);
    const auto l = static_cast<Eigen::Index>(b.interaction.publishers);
    const auto t = static_cast<Eigen::Index>(b.interaction.vocab);
    b.interaction.word_counts = matrix_from_json(ia.at("X"), n, t);
    b.interaction.engaging = matrix_from_json(ia.at("W_eng"), m, n);
    b.interaction.publishing = matrix_from_json(ia.at("B_pub"), l, n);
    b.interaction.credibility = vector_from_json(ia.at("c"));
    b.interaction.partisan = vector_from_json(ia.at("o_part"));
    auto labels = ia.at("y_L").get<std::vector<int>>();
    b.interaction.labels = Eigen::Map<Eigen::VectorXi>(labels.data(),
                                                       static_cast<Eigen::Index>(labels.size()));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("parse error: missing or ill-typed field: ") + e.what());
  }
  b.validate();
  return b;
}

// ---------------------------------------------------------------------------
// Edge TSV: `src<TAB>dst[<TAB>weight]`, `#` comments, optional `# users=N`.

namespace {

NetworkBundle load_tsv(std::istream& in) {
  NetworkBundle b;
  std::size_t declared = 0;
  int max_id = -1;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto pos = line.find("users=");
      if (pos != std::string::npos) declared = std::stoul(line.substr(pos + 6));
      continue;
    }
    std::istringstream ls(line);
    int s, d;
    if (!(ls >> s >> d))
      throw ValidationError("parse error at line " + std::to_string(lineno) + ": expected src dst");
    double w;
    if (ls >> w) {
      b.diffusion.edges.push_back({s, d, w});
      b.friendship.edges.emplace_back(d, s);  // dst follows src
    } else {
      b.friendship.edges.emplace_back(s, d);
    }
    max_id = std::max({max_id, s, d});
  }
  b.users = std::max(declared, static_cast<std::size_t>(max_id + 1));
  b.friendship.users = b.users;
  b.diffusion.users = b.users;
  b.validate();
  return b;
}

void save_tsv(const NetworkBundle& b, std::ostream& out) {
  out << "# users=" << b.users << "\n";
  if (!b.diffusion.edges.empty()) {
    for (const auto& e : b.diffusion.edges) out << e.src << "\t" << e.dst << "\t" << e.prob << "\n";
  } else {
    for (const auto& [s, d] : b.friendship.edges) out << s << "\t" << d << "\n";
  }
}

}  // namespace

NetworkBundle load_networks(const std::string& path, FileFormat format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  if (format == FileFormat::EdgeTsv) return load_tsv(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_string(ss.str());
}

void save_networks(const NetworkBundle& bundle, const std::string& path, FileFormat format) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  if (format == FileFormat::EdgeTsv) {
    save_tsv(bundle, out);
  } else {
    out << to_json_string(bundle) << "\n";
  }
  if (!out) throw IoError("write failure on " + path);
}

// ---------------------------------------------------------------------------
// Synthetic generator

NetworkBundle generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  NetworkBundle b;
  const std::size_t m = spec.users, n = spec.news, l = spec.publishers, t = spec.vocab;
  b.users = m;
  b.news = n;
  b.publishers = l;

  auto community = [&](std::size_t i) { return (i * spec.communities) / m; };

  // Planted-partition friendship graph (edge (i,j): i follows j).
  b.friendship.users = m;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      const double p = community(i) == community(j) ? spec.intra_prob : spec.inter_prob;
      if (rng.bernoulli(p)) b.friendship.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }

  // User credibilities: half the population leans low, half leans high.
  Eigen::VectorXd cred(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double base = (i % 2 == 0) ? 0.8 : 0.2;
    cred[static_cast<Eigen::Index>(i)] =
        std::clamp(base + spec.cred_noise * rng.normal(), 0.0, 1.0);
  }

  // News labels: fake_ratio of news marked fake (+1), rest true (-1).
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);
  const std::size_t n_fake = static_cast<std::size_t>(std::lround(spec.fake_ratio * n));
  Eigen::VectorXi labels = Eigen::VectorXi::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t r = 0; r < n; ++r) labels[order[r]] = r < n_fake ? 1 : -1;

  // Word counts: fake and true news draw from different vocabulary halves.
  Eigen::MatrixXd X(n, t);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t w = 0; w < t; ++w) {
      const bool fake_block = w >= t / 2;
      const bool match = (labels[static_cast<Eigen::Index>(j)] == 1) == fake_block;
      X(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(w)) =
          0.3 * rng.uniform() + (match ? rng.uniform() : 0.0);
    }

  // Engagements: low-credibility users preferentially engage fake news.
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double c = cred[static_cast<Eigen::Index>(i)];
      const double p = 0.7 * (labels[static_cast<Eigen::Index>(j)] == 1 ? 1.0 - c : c);
      if (rng.bernoulli(p)) W(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
    }

  // Publishers round-robin; partisan score tracks the fake share of output.
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(l, n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t k = j % l;
    B(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) = 1.0;
    b.interaction.publish.emplace_back(static_cast<int>(k), static_cast<int>(j));
  }
  Eigen::VectorXd partisan(l);
  for (std::size_t k = 0; k < l; ++k) {
    double fake = 0.0, total = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (B(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) > 0.0) {
        total += 1.0;
        if (labels[static_cast<Eigen::Index>(j)] == 1) fake += 1.0;
      }
    partisan[static_cast<Eigen::Index>(k)] =
        (total > 0.0 ? 2.0 * fake / total - 1.0 : 0.0) + 0.05 * rng.normal();
  }

  b.interaction.publishers = l;
  b.interaction.news = n;
  b.interaction.users = m;
  b.interaction.vocab = t;
  b.interaction.word_counts = X;
  b.interaction.engaging = W;
  b.interaction.publishing = B;
  b.interaction.credibility = cred;
  b.interaction.partisan = partisan;
  b.interaction.labels = labels;

  // Engagement events: fake news spreads in an early burst, true news evenly.
  b.diffusion.users = m;
  struct Ev { int user; double time; int news; };
  std::vector<Ev> events;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (W(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) > 0.0) {
        const double time = labels[static_cast<Eigen::Index>(j)] == 1
                                ? rng.exponential(0.8)
                                : rng.uniform(0.0, 10.0);
        events.push_back({static_cast<int>(i), time, static_cast<int>(j)});
        b.interaction.spread.emplace_back(static_cast<int>(j), static_cast<int>(i));
      }
  std::stable_sort(events.begin(), events.end(),
                   [](const Ev& a, const Ev& c) { return a.time < c.time; });

  // One post per engagement; it carries the engaging user's leaning.
  const std::size_t n_post = events.size();
  b.posts = n_post;
  b.stance.users = m;
  b.stance.posts = n_post;
  b.stance.news = n;
  b.credibility.posts = n_post;
  b.credibility.weights = Eigen::MatrixXd::Zero(n_post, n_post);
  std::vector<int> post_news(n_post);
  for (std::size_t p = 0; p < n_post; ++p) {
    const auto& ev = events[p];
    b.diffusion.engagements.push_back({ev.user, ev.time, static_cast<int>(p)});
    b.stance.posting.emplace_back(ev.user, static_cast<int>(p));
    post_news[p] = ev.news;
    const double c = cred[ev.user];
    const bool fake = labels[ev.news] == 1;
    // High-credibility users deny fake news and support true news.
    const int sign = (fake == (c < 0.5)) ? 1 : -1;
    b.stance.stances.push_back({static_cast<int>(p), ev.news, sign});
    b.credibility.credibility.push_back(std::clamp(
        (fake ? -1.0 : 1.0) * (2.0 * c - 1.0) + spec.cred_noise * rng.normal(), -1.0, 1.0));
    // Viewpoint distribution over 4 topic-viewpoint components.
    Eigen::VectorXd vp(4);
    const int major = sign > 0 ? (fake ? 0 : 1) : (fake ? 2 : 3);
    for (int kk = 0; kk < 4; ++kk) vp[kk] = 0.05 + 0.2 * rng.uniform() + (kk == major ? 1.0 : 0.0);
    vp /= vp.sum();
    b.credibility.viewpoint_dists.push_back(vp);
    int argmax = 0;
    vp.maxCoeff(&argmax);
    b.credibility.major_component.push_back(argmax);
  }
  for (std::size_t p = 0; p < n_post; ++p)
    for (std::size_t q = p + 1; q < n_post; ++q) {
      if (post_news[p] != post_news[q]) continue;
      const bool same = b.credibility.major_component[p] == b.credibility.major_component[q];
      const double w = same ? 0.8 : -0.8;
      b.credibility.weights(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) = w;
      b.credibility.weights(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(p)) = w;
    }

  // Likes: gullible users like fake news, reliable users like true news.
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double c = cred[static_cast<Eigen::Index>(i)];
      const bool fake = labels[static_cast<Eigen::Index>(j)] == 1;
      if (rng.bernoulli(0.4 * (fake ? 1.0 - c : c)))
        b.stance.likes.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }

  // Diffusion edges along reversed follower links.
  for (const auto& [i, j] : b.friendship.edges)
    b.diffusion.edges.push_back({j, i, rng.uniform(0.05, 0.4)});

  // Small random knowledge graph.
  b.knowledge.entities = std::max<std::size_t>(6, m / 2);
  const std::size_t n_triples = 2 * b.knowledge.entities;
  for (std::size_t i = 0; i < n_triples; ++i) {
    int s = static_cast<int>(rng.index(b.knowledge.entities));
    int o = static_cast<int>(rng.index(b.knowledge.entities));
    if (s == o) o = (o + 1) % static_cast<int>(b.knowledge.entities);
    b.knowledge.triples.push_back({s, "related_to", o});
  }

  b.validate();
  return b;
}

Eigen::MatrixXd adjacency(const FriendshipNetwork& net) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(net.users, net.users);
  for (const auto& [s, d] : net.edges) a(s, d) = 1.0;
  return a;
}

}  // namespace misinfo::graph
