#include "misinfo/harness.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "misinfo/cred.hpp"
#include "misinfo/csvio.hpp"
#include "misinfo/errors.hpp"
#include "misinfo/graph.hpp"
#include "misinfo/kg.hpp"
#include "misinfo/mitigate.hpp"
#include "misinfo/nmf.hpp"
#include "misinfo/seqrep.hpp"
#include "misinfo/social.hpp"
#include "misinfo/stance.hpp"

namespace misinfo::harness {

using nlohmann::json;
namespace fs = std::filesystem;

Metrics evaluate(const std::vector<int>& predictions, const std::vector<int>& labels) {
  if (predictions.size() != labels.size())
    throw ValidationError("predictions and labels differ in length");
  if (predictions.empty()) throw ValidationError("no labeled examples to score");
  double tp = 0, fp = 0, fn = 0, tn = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 1 && labels[i] != -1)
      throw ValidationError("label not in {-1,+1}");
    if (predictions[i] == 1 && labels[i] == 1) ++tp;
    if (predictions[i] == 1 && labels[i] == -1) ++fp;
    if (predictions[i] == -1 && labels[i] == 1) ++fn;
    if (predictions[i] == -1 && labels[i] == -1) ++tn;
  }
  Metrics m;
  m.accuracy = (tp + tn) / static_cast<double>(labels.size());
  m.precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
  m.recall = tp + fn > 0 ? tp / (tp + fn) : 0.0;
  m.f1 = m.precision + m.recall > 0
             ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
             : 0.0;
  return m;
}

int thread_cap() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("MISINFO_NETKIT_THREADS");
  if (!env) return static_cast<int>(hw);
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1)
    throw ValidationError("MISINFO_NETKIT_THREADS must be a positive integer");
  return static_cast<int>(std::min<long>(v, hw));
}

std::string version() { return "0.1.0"; }

namespace {

const std::set<std::string> kStochasticTasks = {
    "generate", "detect-embed", "detect-seq", "embed-social", "block", "campaign"};

json parse_config(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config parse error: ") + e.what());
  }
}

template <typename T>
T field(const json& cfg, const std::string& key, const T& fallback) {
  if (!cfg.contains(key)) return fallback;
  try {
    return cfg.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError("invalid config field: " + key);
  }
}

std::string required_path(const json& cfg, const std::string& key) {
  if (!cfg.contains(key)) throw ValidationError("missing config field: " + key);
  const auto path = cfg.at(key).get<std::string>();
  if (!fs::exists(path)) throw ValidationError("file not found: " + path);
  return path;
}

graph::NetworkBundle load_bundle(const json& cfg) {
  const auto path = required_path(cfg, "bundle");
  return graph::load_networks(path, graph::FileFormat::Json);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  if (!out) throw IoError("write failure on " + path);
}

// ---------------------------------------------------------------------------
// task implementations; each fills report["metrics"] and writes artifacts

void task_generate(const json& cfg, const std::string& out, json& metrics) {
  graph::SyntheticSpec spec;
  spec.seed = cfg.at("seed").get<std::uint64_t>();
  spec.users = field<std::size_t>(cfg, "users", spec.users);
  spec.news = field<std::size_t>(cfg, "news", spec.news);
  spec.publishers = field<std::size_t>(cfg, "publishers", spec.publishers);
  spec.vocab = field<std::size_t>(cfg, "vocab", spec.vocab);
  spec.communities = field<std::size_t>(cfg, "communities", spec.communities);
  spec.intra_prob = field<double>(cfg, "intra_prob", spec.intra_prob);
  spec.inter_prob = field<double>(cfg, "inter_prob", spec.inter_prob);
  spec.fake_ratio = field<double>(cfg, "fake_ratio", spec.fake_ratio);
  spec.cred_noise = field<double>(cfg, "cred_noise", spec.cred_noise);
  const auto bundle = graph::generate_synthetic(spec);
  graph::save_networks(bundle, out + "/bundle.json", graph::FileFormat::Json);
  metrics["users"] = bundle.users;
  metrics["news"] = bundle.news;
  metrics["posts"] = bundle.posts;
  metrics["friendship_edges"] = bundle.friendship.edges.size();
  metrics["engagements"] = bundle.diffusion.engagements.size();
}

void fill_metrics(json& metrics, const Metrics& m) {
  metrics["accuracy"] = m.accuracy;
  metrics["precision"] = m.precision;
  metrics["recall"] = m.recall;
  metrics["f1"] = m.f1;
}

void task_detect_embed(const json& cfg, const std::string& out, json& metrics) {
  const auto bundle = load_bundle(cfg);
  nmf::EmbedConfig ec;
  ec.seed = cfg.at("seed").get<std::uint64_t>();
  ec.d = field<int>(cfg, "d", ec.d);
  ec.alpha_news = field<double>(cfg, "alpha_news", ec.alpha_news);
  ec.alpha_user = field<double>(cfg, "alpha_user", ec.alpha_user);
  ec.alpha_eng = field<double>(cfg, "alpha_eng", ec.alpha_eng);
  ec.alpha_pub = field<double>(cfg, "alpha_pub", ec.alpha_pub);
  ec.lambda = field<double>(cfg, "lambda", ec.lambda);
  ec.max_iters = field<int>(cfg, "max_iters", ec.max_iters);
  ec.rel_tol = field<double>(cfg, "rel_tol", ec.rel_tol);
  const auto fit = nmf::fit_joint(bundle.interaction, bundle.friendship, ec);
  nmf::save_factors(fit.factors, out);
  nmf::save_trace(fit.trace, out + "/trace.csv");

  const auto& y = bundle.interaction.labels;
  const auto w = nmf::train_classifier(fit.factors.D, y, ec.lambda);
  std::vector<int> preds, labels;
  for (Eigen::Index j = 0; j < y.size(); ++j) {
    if (y[j] == 0) continue;
    preds.push_back(nmf::predict(fit.factors.D.row(j), w));
    labels.push_back(y[j]);
  }
  fill_metrics(metrics, evaluate(preds, labels));
  metrics["objective"] = fit.trace.empty() ? 0.0 : fit.trace.back().total;
  metrics["converged"] = fit.converged ? 1 : 0;
}

void task_detect_seq(const json& cfg, const std::string& out, json& metrics) {
  const auto bundle = load_bundle(cfg);
  const int r = field<int>(cfg, "rank", 2);
  const int k = field<int>(cfg, "vocab_k", 8);
  const bool normalize_eta = field<bool>(cfg, "normalize_eta", false);
  const int embed_dim = field<int>(cfg, "embed_dim", 6);
  const int hidden_dim = field<int>(cfg, "hidden_dim", 8);
  const int out_dim = field<int>(cfg, "out_dim", 4);
  const int epochs = field<int>(cfg, "epochs", 200);
  const double lr = field<double>(cfg, "lr", 0.3);
  const double clip = field<double>(cfg, "clip", 5.0);

  std::vector<int> post_news(bundle.posts, -1);
  for (const auto& e : bundle.stance.stances)
    if (e.post >= 0 && e.post < static_cast<int>(bundle.posts)) post_news[e.post] = e.news;

  std::vector<seqrep::Sample> dataset;
  for (std::size_t j = 0; j < bundle.news; ++j) {
    if (bundle.interaction.labels[static_cast<Eigen::Index>(j)] == 0) continue;
    bool has_engagement = false;
    for (const auto& ev : bundle.diffusion.engagements)
      if (ev.post >= 0 && post_news[ev.post] == static_cast<int>(j)) has_engagement = true;
    if (!has_engagement) continue;
    seqrep::Sample s;
    s.features = seqrep::build_features(bundle.diffusion, bundle.interaction, post_news,
                                        static_cast<int>(j), r, k, normalize_eta);
    s.label = bundle.interaction.labels[static_cast<Eigen::Index>(j)];
    dataset.push_back(std::move(s));
  }
  if (dataset.empty()) throw ValidationError("no labeled news with engagements");

  const int input_dim = static_cast<int>(dataset.front().features.front().x_u.size() +
                                         dataset.front().features.front().x_s.size()) +
                        2;
  auto enc = seqrep::make_encoder(input_dim, embed_dim, hidden_dim, out_dim,
                                  cfg.at("seed").get<std::uint64_t>());
  const auto trained = seqrep::train(std::move(enc), dataset, epochs, lr, clip);
  seqrep::save_encoder(trained.encoder, out);

  std::vector<int> preds, labels;
  for (const auto& s : dataset) {
    preds.push_back(seqrep::classify(trained.encoder, s.features));
    labels.push_back(s.label);
  }
  fill_metrics(metrics, evaluate(preds, labels));
  metrics["final_loss"] = trained.loss_trace.empty() ? 0.0 : trained.loss_trace.back();
  metrics["sequences"] = dataset.size();
}

void task_embed_social(const json& cfg, const std::string& out, json& metrics) {
  const auto bundle = load_bundle(cfg);
  const auto method = field<std::string>(cfg, "method", "mnmf");
  if (method == "mnmf") {
    social::MnmfConfig mc;
    mc.seed = cfg.at("seed").get<std::uint64_t>();
    mc.k = field<int>(cfg, "k", mc.k);
    mc.l = field<int>(cfg, "l", mc.l);
    mc.alpha = field<double>(cfg, "alpha", mc.alpha);
    mc.beta = field<double>(cfg, "beta", mc.beta);
    mc.sim_ratio = field<double>(cfg, "sim_ratio", mc.sim_ratio);
    mc.iters = field<int>(cfg, "iters", mc.iters);
    mc.restarts = field<int>(cfg, "restarts", mc.restarts);
    const auto fit = social::mnmf_fit(bundle.friendship, mc);
    social::save_embeddings(fit.model.U, out + "/embeddings.csv");
    social::save_communities(social::communities(fit.model), out + "/communities.csv");
    metrics["objective"] = fit.trace.empty() ? 0.0 : fit.trace.back().total;
    metrics["communities"] = mc.l;
  } else if (method == "line") {
    const int d = field<int>(cfg, "d", 8);
    const int epochs = field<int>(cfg, "epochs", 200);
    const double lr = field<double>(cfg, "lr", 0.05);
    const int order = field<int>(cfg, "order", 1);
    if (order != 1 && order != 2) throw ValidationError("invalid config field: order");
    const auto fit = social::line_fit(
        bundle.friendship, d,
        order == 1 ? social::LineOrder::First : social::LineOrder::Second, epochs, lr,
        cfg.at("seed").get<std::uint64_t>());
    social::save_embeddings(fit.model.nodes, out + "/embeddings.csv");
    metrics["loss"] = fit.loss_trace.empty() ? 0.0 : fit.loss_trace.back();
  } else {
    throw ValidationError("invalid config field: method");
  }
}

cred::PropagationProblem credibility_problem(const json& cfg) {
  const double mu = field<double>(cfg, "mu", 0.5);
  if (cfg.contains("problem")) {
    const auto path = required_path(cfg, "problem");
    std::ifstream in(path);
    json j;
    try {
      in >> j;
    } catch (const json::parse_error& e) {
      throw ValidationError(std::string("problem parse error: ") + e.what());
    }
    const auto& posts = j.at("posts");
    Eigen::VectorXd t0(posts.size());
    std::vector<Eigen::VectorXd> viewpoints;
    for (std::size_t i = 0; i < posts.size(); ++i) {
      t0[static_cast<Eigen::Index>(i)] = posts.at(i).at("t0").get<double>();
      const auto vp = posts.at(i).at("viewpoint_dist").get<std::vector<double>>();
      viewpoints.push_back(
          Eigen::Map<const Eigen::VectorXd>(vp.data(), static_cast<Eigen::Index>(vp.size())));
    }
    std::vector<cred::LinkSpec> links;
    for (const auto& l : j.at("links"))
      links.push_back({l.at(0).get<int>(), l.at(1).get<int>(), l.at(2).get<bool>()});
    return cred::make_problem(t0, viewpoints, links, mu);
  }
  const auto bundle = load_bundle(cfg);
  if (bundle.credibility.posts == 0) throw ValidationError("bundle has no posts");
  const Eigen::VectorXd t0 = Eigen::Map<const Eigen::VectorXd>(
      bundle.credibility.credibility.data(),
      static_cast<Eigen::Index>(bundle.credibility.posts));
  return cred::make_problem(t0, bundle.credibility.weights, mu);
}

void task_credibility(const json& cfg, const std::string& out, json& metrics) {
  const auto problem = credibility_problem(cfg);
  const double tol = field<double>(cfg, "tol", 1e-10);
  const int max_iters = field<int>(cfg, "max_iters", 10000);
  const auto result = cred::propagate(problem, tol, max_iters);
  if (!result.converged)
    throw ConvergenceError("credibility propagation did not converge in " +
                           std::to_string(max_iters) + " iterations");
  std::ostringstream csv;
  csv << std::setprecision(17);
  csv << "post,credibility\n";
  for (Eigen::Index i = 0; i < result.T.size(); ++i) csv << i << "," << result.T[i] << "\n";
  write_text(out + "/credibility.csv", csv.str());
  metrics["verdict"] = cred::news_verdict(result.T);
  metrics["iters"] = result.iters;
  metrics["mean_credibility"] = result.T.mean();
}

graph::KnowledgeGraph load_kg_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  graph::KnowledgeGraph kg;
  std::string line;
  int lineno = 0, max_id = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int s, o;
    std::string pred;
    if (!(ls >> s >> pred >> o))
      throw ValidationError("parse error at line " + std::to_string(lineno) +
                            ": expected subject predicate object");
    kg.triples.push_back({s, pred, o});
    max_id = std::max({max_id, s, o});
  }
  kg.entities = static_cast<std::size_t>(max_id + 1);
  return kg;
}

void task_factcheck(const json& cfg, const std::string& out, json& metrics) {
  graph::KnowledgeGraph kg;
  if (cfg.contains("kg")) {
    kg = load_kg_tsv(required_path(cfg, "kg"));
  } else {
    kg = load_bundle(cfg).knowledge;
  }
  const auto mode = field<std::string>(cfg, "mode", "path");
  if (mode != "path" && mode != "flow") throw ValidationError("invalid config field: mode");
  const int max_len = field<int>(cfg, "max_len", 6);
  const int max_paths = field<int>(cfg, "max_paths", 10000);
  const bool directed = field<bool>(cfg, "directed", false);

  std::ifstream in(required_path(cfg, "claims"));
  std::string line;
  std::ostringstream csv;
  csv << std::setprecision(17);
  csv << "claim,tau,n_paths\n";
  int lineno = 0, n_claims = 0;
  double total_tau = 0.0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ValidationError("claim parse error at line " + std::to_string(lineno) + ": " +
                            e.what());
    }
    kg::Claim claim{j.at("subject").get<int>(), j.at("predicate").get<std::string>(),
                    j.at("object").get<int>()};
    double tau = 0.0;
    std::size_t n_paths = 0;
    if (mode == "path") {
      const auto check = kg::truth_value_path(kg, claim, max_len, max_paths, directed);
      tau = check.tau;
      n_paths = check.n_paths;
    } else {
      kg::FlowOptions opts;
      opts.directed = directed;
      const auto flow = kg::knowledge_flow(kg, claim, opts);
      tau = flow.tau;
      n_paths = flow.paths.size();
    }
    csv << claim.subject << " " << claim.predicate << " " << claim.object << "," << tau
        << "," << n_paths << "\n";
    total_tau += tau;
    ++n_claims;
  }
  if (n_claims == 0) throw ValidationError("no claims in input");
  write_text(out + "/factcheck.csv", csv.str());
  metrics["claims"] = n_claims;
  metrics["mean_tau"] = total_tau / n_claims;
}

void task_stance(const json& cfg, const std::string& out, json& metrics) {
  graph::StanceNetwork net;
  std::set<int> labeled_fake, labeled_true;
  Eigen::VectorXi truth;
  if (cfg.contains("likes")) {
    std::ifstream in(required_path(cfg, "likes"));
    std::string line;
    int lineno = 0, max_u = -1, max_n = -1;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty() || line[0] == '#') continue;
      std::istringstream ls(line);
      int u, v;
      if (!(ls >> u >> v))
        throw ValidationError("parse error at line " + std::to_string(lineno) +
                              ": expected user news");
      net.likes.emplace_back(u, v);
      max_u = std::max(max_u, u);
      max_n = std::max(max_n, v);
    }
    net.users = field<std::size_t>(cfg, "users", static_cast<std::size_t>(max_u + 1));
    net.news = field<std::size_t>(cfg, "news", static_cast<std::size_t>(max_n + 1));
    std::ifstream lin(required_path(cfg, "labels"));
    json lj;
    try {
      lin >> lj;
    } catch (const json::parse_error& e) {
      throw ValidationError(std::string("labels parse error: ") + e.what());
    }
    for (int j : lj.at("fake").get<std::vector<int>>()) labeled_fake.insert(j);
    for (int j : lj.at("true").get<std::vector<int>>()) labeled_true.insert(j);
  } else {
    const auto bundle = load_bundle(cfg);
    net = bundle.stance;
    truth = bundle.interaction.labels;
    // pin the first fifth of each class as known labels
    const double fraction = field<double>(cfg, "labeled_fraction", 0.2);
    std::size_t want_fake = 0, want_true = 0, n_fake = 0, n_true = 0;
    for (Eigen::Index j = 0; j < truth.size(); ++j) {
      if (truth[j] == 1) ++n_fake;
      if (truth[j] == -1) ++n_true;
    }
    want_fake = static_cast<std::size_t>(std::ceil(fraction * n_fake));
    want_true = static_cast<std::size_t>(std::ceil(fraction * n_true));
    for (Eigen::Index j = 0; j < truth.size(); ++j) {
      if (truth[j] == 1 && labeled_fake.size() < want_fake) labeled_fake.insert(static_cast<int>(j));
      if (truth[j] == -1 && labeled_true.size() < want_true) labeled_true.insert(static_cast<int>(j));
    }
  }

  auto table = stance::init(net, labeled_fake, labeled_true);
  const int max_rounds = field<int>(cfg, "max_rounds", 200);
  const auto result = stance::iterate(table, max_rounds, field<double>(cfg, "tol", 1e-10));
  if (!result.converged)
    throw ConvergenceError("stance aggregation did not converge in " +
                           std::to_string(max_rounds) + " rounds");

  std::ostringstream csv;
  csv << std::setprecision(17);
  csv << "news,q,verdict\n";
  int fake_count = 0;
  for (std::size_t j = 0; j < net.news; ++j) {
    const bool fake = stance::predict_fake(table, static_cast<int>(j));
    fake_count += fake;
    csv << j << "," << table.news_q[j] << "," << (fake ? "fake" : "true") << "\n";
  }
  write_text(out + "/stance.csv", csv.str());
  metrics["rounds"] = result.rounds;
  metrics["predicted_fake"] = fake_count;
  if (truth.size() > 0) {
    std::vector<int> preds, labels;
    for (Eigen::Index j = 0; j < truth.size(); ++j) {
      if (truth[j] == 0 || labeled_fake.count(static_cast<int>(j)) ||
          labeled_true.count(static_cast<int>(j)))
        continue;
      preds.push_back(stance::predict_fake(table, static_cast<int>(j)) ? 1 : -1);
      labels.push_back(truth[j]);
    }
    if (!preds.empty()) fill_metrics(metrics, evaluate(preds, labels));
  }
}

void task_provenance(const json& cfg, const std::string& out, json& metrics,
                     json& extras) {
  const auto bundle = load_bundle(cfg);
  mitigate::ProvenanceInstance inst;
  inst.diffusion = bundle.diffusion;
  inst.recipients = field<std::vector<int>>(cfg, "recipients", {});
  inst.k = field<int>(cfg, "k", 1);
  inst.transmitters = field<int>(cfg, "transmitters", 5);
  inst.weight_by_probability = field<bool>(cfg, "weight_by_probability", false);
  const auto result = mitigate::find_provenance_paths(inst);
  json edges = json::array();
  for (const auto& [a, b] : result.edges) edges.push_back({a, b});
  json report = {{"edges", std::move(edges)},
                 {"sources", result.sources},
                 {"utility", result.utility}};
  write_text(out + "/provenance.json", report.dump(1) + "\n");
  metrics["sources"] = result.sources.size();
  metrics["utility"] = result.utility;
  extras["sources"] = result.sources;
}

void task_leaders(const json& cfg, const std::string& out, json& metrics, json& extras) {
  const auto bundle = load_bundle(cfg);
  const int K = field<int>(cfg, "K", 1);
  const auto leaders = mitigate::identify_leaders(bundle.stance.posting, bundle.users, K);
  std::set<int> covered;
  for (const auto& [u, p] : bundle.stance.posting)
    if (std::find(leaders.begin(), leaders.end(), u) != leaders.end()) covered.insert(p);
  json report = {{"leaders", leaders}, {"covered_posts", covered.size()}};
  write_text(out + "/leaders.json", report.dump(1) + "\n");
  metrics["leaders"] = leaders.size();
  metrics["covered_posts"] = covered.size();
  extras["leaders"] = leaders;
}

void task_estimate_audience(const json& cfg, json& metrics) {
  const auto a = field<std::vector<int>>(cfg, "r_a", {});
  const auto b = field<std::vector<int>>(cfg, "r_b", {});
  if (a.empty() || b.empty()) throw ValidationError("missing config field: r_a / r_b");
  const double n = mitigate::scale_up_estimate(std::set<int>(a.begin(), a.end()),
                                               std::set<int>(b.begin(), b.end()));
  metrics["estimate"] = n;
}

void task_block(const json& cfg, const std::string& out, json& metrics, json& extras) {
  const auto bundle = load_bundle(cfg);
  mitigate::IcmInstance inst;
  inst.diffusion = bundle.diffusion;
  inst.seeds = field<std::vector<int>>(cfg, "seeds", {});
  if (inst.seeds.empty()) throw ValidationError("missing config field: seeds");
  inst.replications = field<int>(cfg, "replications", 10000);
  inst.seed = cfg.contains("seed") ? cfg.at("seed").get<std::uint64_t>() : 0;
  const int k = field<int>(cfg, "k", 1);
  const double before = mitigate::influence(inst);
  const auto blocked = mitigate::greedy_block(inst, k);
  inst.blocked = blocked;
  const double after = mitigate::influence(inst);
  json report = {{"blocked", blocked},
                 {"influence_before", before},
                 {"influence_after", after}};
  write_text(out + "/blocked.json", report.dump(1) + "\n");
  metrics["influence_before"] = before;
  metrics["influence_after"] = after;
  extras["blocked"] = blocked;
}

void task_campaign(const json& cfg, const std::string& out, json& metrics) {
  const auto bundle = load_bundle(cfg);
  const int m = static_cast<int>(bundle.users);
  mitigate::HawkesCampaign campaign;
  campaign.adjacency = graph::adjacency(bundle.friendship);
  campaign.base_fake =
      Eigen::VectorXd::Constant(m, field<double>(cfg, "base_fake", 0.2));
  campaign.base_mitigation =
      Eigen::VectorXd::Constant(m, field<double>(cfg, "base_mitigation", 0.05));
  campaign.excitation =
      field<double>(cfg, "excitation_scale", 0.0) * campaign.adjacency;
  campaign.omega = field<double>(cfg, "omega", 1.0);
  campaign.horizon = field<double>(cfg, "horizon", 10.0);
  campaign.seed = cfg.at("seed").get<std::uint64_t>();
  std::vector<int> candidates = field<std::vector<int>>(cfg, "candidates", {});
  if (candidates.empty())
    for (int u = 0; u < m; ++u) candidates.push_back(u);
  const double budget = field<double>(cfg, "budget", 1.0);
  const int stages = field<int>(cfg, "stages", 1);
  const int rollouts = field<int>(cfg, "rollouts", 20);
  const auto plan = mitigate::greedy_campaign(campaign, candidates, budget, stages, rollouts);
  csvio::write_matrix(plan.allocation, out + "/allocation.csv");
  metrics["reward"] = plan.reward;
  metrics["baseline"] = plan.baseline;
}

void write_csv_report(const json& report, const std::string& path) {
  std::ostringstream csv;
  csv << std::setprecision(17);
  csv << "key,value\n";
  csv << "task," << report.at("task").get<std::string>() << "\n";
  csv << "version," << report.at("version").get<std::string>() << "\n";
  if (report.contains("seed")) csv << "seed," << report.at("seed") << "\n";
  for (const auto& [k, v] : report.at("metrics").items()) csv << k << "," << v << "\n";
  write_text(path, csv.str());
}

}  // namespace

std::string run(const std::string& config_json) {
  const auto start = std::chrono::steady_clock::now();
  const json cfg = parse_config(config_json);
  if (!cfg.contains("task")) throw ValidationError("missing config field: task");
  const auto task = cfg.at("task").get<std::string>();
  if (kStochasticTasks.count(task) && !cfg.contains("seed"))
    throw ValidationError("missing config field: seed (required for task " + task + ")");
  if (!cfg.contains("out")) throw ValidationError("missing config field: out");
  const auto out = cfg.at("out").get<std::string>();
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw IoError("cannot create output directory " + out);
  const auto format = field<std::string>(cfg, "format", "json");
  if (format != "json" && format != "csv")
    throw ValidationError("invalid config field: format");

  json report;
  report["task"] = task;
  report["version"] = version();
  report["threads"] = thread_cap();
  if (cfg.contains("seed")) report["seed"] = cfg.at("seed").get<std::uint64_t>();
  json metrics = json::object();
  json extras = json::object();

  if (task == "generate") {
    task_generate(cfg, out, metrics);
  } else if (task == "detect-embed") {
    task_detect_embed(cfg, out, metrics);
  } else if (task == "detect-seq") {
    task_detect_seq(cfg, out, metrics);
  } else if (task == "embed-social") {
    task_embed_social(cfg, out, metrics);
  } else if (task == "credibility") {
    task_credibility(cfg, out, metrics);
  } else if (task == "factcheck") {
    task_factcheck(cfg, out, metrics);
  } else if (task == "stance") {
    task_stance(cfg, out, metrics);
  } else if (task == "provenance") {
    task_provenance(cfg, out, metrics, extras);
  } else if (task == "leaders") {
    task_leaders(cfg, out, metrics, extras);
  } else if (task == "estimate-audience") {
    task_estimate_audience(cfg, metrics);
  } else if (task == "block") {
    task_block(cfg, out, metrics, extras);
  } else if (task == "campaign") {
    task_campaign(cfg, out, metrics);
  } else {
    throw ValidationError("unknown task: " + task);
  }

  report["metrics"] = std::move(metrics);
  for (const auto& [k, v] : extras.items()) report[k] = v;
  const auto end = std::chrono::steady_clock::now();
  report["wall_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count();

  const auto text = report.dump(1) + "\n";
  write_text(out + "/report.json", text);
  if (format == "csv") write_csv_report(report, out + "/report.csv");
  return text;
}

}  // namespace misinfo::harness
