#include "misinfo/seqrep.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include "misinfo/csvio.hpp"
#include "misinfo/errors.hpp"
#include "misinfo/rng.hpp"
#include "json.hpp"

namespace misinfo::seqrep {

namespace {

Eigen::MatrixXd init_tensor(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed,
                            std::uint64_t stream) {
  Rng rng(Rng::derive(seed, stream));
  const double scale = 1.0 / std::sqrt(static_cast<double>(cols));
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.uniform(-scale, scale);
  return m;
}

Eigen::VectorXd flatten_input(const EngagementFeature& f) {
  Eigen::VectorXd x(2 + f.x_u.size() + f.x_s.size());
  x[0] = static_cast<double>(f.eta) * f.eta_scale;
  x[1] = f.delta_t;
  x.segment(2, f.x_u.size()) = f.x_u;
  x.segment(2 + f.x_u.size(), f.x_s.size()) = f.x_s;
  return x;
}

}  // namespace

RecurrentEncoder make_encoder(int input_dim, int embed_dim, int hidden_dim, int out_dim,
                              std::uint64_t seed) {
  if (input_dim < 1 || embed_dim < 1 || hidden_dim < 1 || out_dim < 1)
    throw ValidationError("encoder dims must be >= 1");
  RecurrentEncoder e;
  e.W_embed = init_tensor(embed_dim, input_dim, seed, 0);
  e.b_embed = Eigen::VectorXd::Zero(embed_dim);
  e.W_in = init_tensor(hidden_dim, embed_dim, seed, 2);
  e.W_hh = init_tensor(hidden_dim, hidden_dim, seed, 3);
  e.b_h = Eigen::VectorXd::Zero(hidden_dim);
  e.W_out = init_tensor(out_dim, hidden_dim, seed, 5);
  e.b_out = Eigen::VectorXd::Zero(out_dim);
  e.w_read = init_tensor(out_dim, 1, seed, 7);
  e.b_read = 0.0;
  return e;
}

std::vector<EngagementFeature> build_features(const graph::DiffusionNetwork& diffusion,
                                              const graph::InteractionNetwork& interaction,
                                              const std::vector<int>& post_news, int news,
                                              int r, int k, bool normalize_eta) {
  const Eigen::MatrixXd& W = interaction.engaging;
  const Eigen::MatrixXd& X = interaction.word_counts;
  if (news < 0 || news >= X.rows()) throw ValidationError("unknown news id");

  // User features: rank-r truncated SVD of the engaging matrix, with a sign
  // canonicalization so the factorization is reproducible.
  const int rank = std::min<int>(r, static_cast<int>(std::min(W.rows(), W.cols())));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(W, Eigen::ComputeThinU);
  Eigen::MatrixXd Ur = svd.matrixU().leftCols(rank);
  const double sv_tol = 1e-12 * std::max(svd.singularValues()[0], 1.0);
  for (Eigen::Index c = 0; c < Ur.cols(); ++c) {
    if (svd.singularValues()[c] <= sv_tol) {
      Ur.col(c).setZero();  // numerically null direction: basis is arbitrary
      continue;
    }
    Eigen::Index imax = 0;
    Ur.col(c).cwiseAbs().maxCoeff(&imax);
    if (Ur(imax, c) < 0.0) Ur.col(c) = -Ur.col(c);
  }

  // Top-k corpus vocabulary by total frequency; ties by word id.
  const int kk = std::min<int>(k, static_cast<int>(X.cols()));
  std::vector<int> words(X.cols());
  std::iota(words.begin(), words.end(), 0);
  const Eigen::VectorXd colsum = X.colwise().sum();
  std::stable_sort(words.begin(), words.end(),
                   [&](int a, int b) { return colsum[a] > colsum[b]; });
  words.resize(kk);

  Eigen::VectorXd xs(kk);
  const double row_total = X.row(news).sum();
  for (int w = 0; w < kk; ++w)
    xs[w] = row_total > 0.0 ? X(news, words[w]) / row_total : 0.0;

  std::vector<EngagementFeature> out;
  double prev_time = 0.0;
  for (const auto& e : diffusion.engagements) {
    if (e.post < 0 || e.post >= static_cast<int>(post_news.size())) continue;
    if (post_news[e.post] != news) continue;
    EngagementFeature f;
    f.eta = static_cast<int>(out.size()) + 1;
    f.delta_t = out.empty() ? 0.0 : e.time - prev_time;
    f.x_u = Ur.row(e.user);
    f.x_s = xs;
    prev_time = e.time;
    out.push_back(std::move(f));
  }
  if (out.empty()) throw ValidationError("news " + std::to_string(news) + " has no engagements");
  if (normalize_eta)
    for (auto& f : out) f.eta_scale = 1.0 / static_cast<double>(out.size());
  return out;
}

Eigen::VectorXd encode(const RecurrentEncoder& enc,
                       const std::vector<EngagementFeature>& features) {
  if (features.empty()) throw ValidationError("encode: empty sequence");
  Eigen::VectorXd h = Eigen::VectorXd::Zero(enc.W_hh.rows());
  for (const auto& f : features) {
    const Eigen::VectorXd x = flatten_input(f);
    if (x.size() != enc.W_embed.cols()) throw ValidationError("encode: feature dim mismatch");
    const Eigen::VectorXd xt = enc.W_embed * x + enc.b_embed;
    h = (enc.W_in * xt + enc.W_hh * h + enc.b_h).array().tanh();
  }
  return (enc.W_out * h + enc.b_out).array().tanh();
}

namespace {

struct Forward {
  std::vector<Eigen::VectorXd> x, xt, h;
  Eigen::VectorXd v;
  double score = 0.0;
};

Forward run_forward(const RecurrentEncoder& enc, const std::vector<EngagementFeature>& seq) {
  Forward fw;
  Eigen::VectorXd h = Eigen::VectorXd::Zero(enc.W_hh.rows());
  for (const auto& f : seq) {
    const Eigen::VectorXd x = flatten_input(f);
    const Eigen::VectorXd xt = enc.W_embed * x + enc.b_embed;
    h = (enc.W_in * xt + enc.W_hh * h + enc.b_h).array().tanh();
    fw.x.push_back(x);
    fw.xt.push_back(xt);
    fw.h.push_back(h);
  }
  fw.v = (enc.W_out * h + enc.b_out).array().tanh();
  fw.score = enc.w_read.dot(fw.v) + enc.b_read;
  return fw;
}

EncoderGradients zero_like(const RecurrentEncoder& e) {
  EncoderGradients g;
  g.W_embed = Eigen::MatrixXd::Zero(e.W_embed.rows(), e.W_embed.cols());
  g.b_embed = Eigen::VectorXd::Zero(e.b_embed.size());
  g.W_in = Eigen::MatrixXd::Zero(e.W_in.rows(), e.W_in.cols());
  g.W_hh = Eigen::MatrixXd::Zero(e.W_hh.rows(), e.W_hh.cols());
  g.b_h = Eigen::VectorXd::Zero(e.b_h.size());
  g.W_out = Eigen::MatrixXd::Zero(e.W_out.rows(), e.W_out.cols());
  g.b_out = Eigen::VectorXd::Zero(e.b_out.size());
  g.w_read = Eigen::VectorXd::Zero(e.w_read.size());
  g.b_read = 0.0;
  return g;
}

}  // namespace

double loss(const RecurrentEncoder& enc, const std::vector<Sample>& dataset) {
  if (dataset.empty()) throw ValidationError("loss: empty dataset");
  double total = 0.0;
  for (const auto& s : dataset) {
    const Forward fw = run_forward(enc, s.features);
    const double margin = static_cast<double>(s.label) * fw.score;
    // log(1 + exp(-margin)), stably
    total += margin > 0 ? std::log1p(std::exp(-margin)) : -margin + std::log1p(std::exp(margin));
  }
  return total / static_cast<double>(dataset.size());
}

EncoderGradients gradients(const RecurrentEncoder& enc, const std::vector<Sample>& dataset) {
  if (dataset.empty()) throw ValidationError("gradients: empty dataset");
  EncoderGradients g = zero_like(enc);
  const double inv_n = 1.0 / static_cast<double>(dataset.size());
  for (const auto& s : dataset) {
    const Forward fw = run_forward(enc, s.features);
    const double y = static_cast<double>(s.label);
    const double dscore = -y / (1.0 + std::exp(y * fw.score)) * inv_n;

    g.w_read += dscore * fw.v;
    g.b_read += dscore;
    const Eigen::VectorXd dv = dscore * enc.w_read;
    const Eigen::VectorXd da_out =
        (dv.array() * (1.0 - fw.v.array() * fw.v.array())).matrix();
    const auto steps = static_cast<int>(fw.h.size());
    g.W_out += da_out * fw.h[steps - 1].transpose();
    g.b_out += da_out;

    Eigen::VectorXd dh = enc.W_out.transpose() * da_out;
    for (int i = steps - 1; i >= 0; --i) {
      const Eigen::VectorXd da =
          (dh.array() * (1.0 - fw.h[i].array() * fw.h[i].array())).matrix();
      g.W_in += da * fw.xt[i].transpose();
      if (i > 0) g.W_hh += da * fw.h[i - 1].transpose();
      g.b_h += da;
      const Eigen::VectorXd dxt = enc.W_in.transpose() * da;
      g.W_embed += dxt * fw.x[i].transpose();
      g.b_embed += dxt;
      dh = enc.W_hh.transpose() * da;
    }
  }
  return g;
}

TrainResult train(RecurrentEncoder enc, const std::vector<Sample>& dataset, int epochs,
                  double lr, double clip) {
  int n_pos = 0, n_neg = 0;
  for (const auto& s : dataset) (s.label > 0 ? n_pos : n_neg)++;
  if (dataset.size() > 1 && (n_pos == 0 || n_neg == 0))
    throw ValidationError("train: need at least one example per class");

  TrainResult result;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    EncoderGradients g = gradients(enc, dataset);
    double norm2 = g.W_embed.squaredNorm() + g.b_embed.squaredNorm() + g.W_in.squaredNorm() +
                   g.W_hh.squaredNorm() + g.b_h.squaredNorm() + g.W_out.squaredNorm() +
                   g.b_out.squaredNorm() + g.w_read.squaredNorm() + g.b_read * g.b_read;
    const double norm = std::sqrt(norm2);
    const double scale = (clip > 0.0 && norm > clip) ? clip / norm : 1.0;
    enc.W_embed -= lr * scale * g.W_embed;
    enc.b_embed -= lr * scale * g.b_embed;
    enc.W_in -= lr * scale * g.W_in;
    enc.W_hh -= lr * scale * g.W_hh;
    enc.b_h -= lr * scale * g.b_h;
    enc.W_out -= lr * scale * g.W_out;
    enc.b_out -= lr * scale * g.b_out;
    enc.w_read -= lr * scale * g.w_read;
    enc.b_read -= lr * scale * g.b_read;
    const double l = loss(enc, dataset);
    if (!std::isfinite(l))
      throw ConvergenceError("train: non-finite loss at epoch " + std::to_string(epoch));
    result.loss_trace.push_back(l);
  }
  result.encoder = std::move(enc);
  return result;
}

int classify(const RecurrentEncoder& enc, const std::vector<EngagementFeature>& features) {
  const Forward fw = run_forward(enc, features);
  return fw.score >= 0.0 ? 1 : -1;
}

void save_encoder(const RecurrentEncoder& enc, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  csvio::write_matrix(enc.W_embed, dir + "/W_embed.csv");
  csvio::write_matrix(enc.b_embed, dir + "/b_embed.csv");
  csvio::write_matrix(enc.W_in, dir + "/W_in.csv");
  csvio::write_matrix(enc.W_hh, dir + "/W_hh.csv");
  csvio::write_matrix(enc.b_h, dir + "/b_h.csv");
  csvio::write_matrix(enc.W_out, dir + "/W_out.csv");
  csvio::write_matrix(enc.b_out, dir + "/b_out.csv");
  csvio::write_matrix(enc.w_read, dir + "/w_read.csv");
  nlohmann::json manifest = {{"b_read", enc.b_read},
                             {"hidden", enc.W_hh.rows()},
                             {"embed", enc.W_embed.rows()},
                             {"input", enc.W_embed.cols()},
                             {"out", enc.W_out.rows()}};
  std::ofstream out(dir + "/manifest.json");
  if (!out) throw IoError("cannot write encoder manifest in " + dir);
  out << manifest.dump(1) << "\n";
}

RecurrentEncoder load_encoder(const std::string& dir) {
  RecurrentEncoder e;
  e.W_embed = csvio::read_matrix(dir + "/W_embed.csv");
  e.b_embed = csvio::read_matrix(dir + "/b_embed.csv");
  e.W_in = csvio::read_matrix(dir + "/W_in.csv");
  e.W_hh = csvio::read_matrix(dir + "/W_hh.csv");
  e.b_h = csvio::read_matrix(dir + "/b_h.csv");
  e.W_out = csvio::read_matrix(dir + "/W_out.csv");
  e.b_out = csvio::read_matrix(dir + "/b_out.csv");
  e.w_read = csvio::read_matrix(dir + "/w_read.csv");
  std::ifstream in(dir + "/manifest.json");
  if (!in) throw IoError("cannot read encoder manifest in " + dir);
  nlohmann::json manifest;
  in >> manifest;
  e.b_read = manifest.at("b_read").get<double>();
  return e;
}

}  // namespace misinfo::seqrep
