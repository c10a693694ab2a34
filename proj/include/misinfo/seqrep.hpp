#ifndef MISINFO_SEQREP_HPP
#define MISINFO_SEQREP_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "misinfo/graph.hpp"

namespace misinfo::seqrep {

// One engagement of the diffusion sequence of a news item.
struct EngagementFeature {
  int eta = 1;            // running engagement count
  double eta_scale = 1.0; // applied to eta in the model input (1/length when normalized)
  double delta_t = 0.0;   // time since previous engagement (first = 0)
  Eigen::VectorXd x_u;   // user feature from truncated SVD of W_eng
  Eigen::VectorXd x_s;   // post content term frequencies over top-k vocabulary
};

// Single-layer tanh recurrent encoder with a shared affine embedding layer
// and a tanh output head; w_read/b_read form the logistic readout for
// training.
struct RecurrentEncoder {
  Eigen::MatrixXd W_embed;
  Eigen::VectorXd b_embed;
  Eigen::MatrixXd W_in;
  Eigen::MatrixXd W_hh;
  Eigen::VectorXd b_h;
  Eigen::MatrixXd W_out;
  Eigen::VectorXd b_out;
  Eigen::VectorXd w_read;
  double b_read = 0.0;
};

RecurrentEncoder make_encoder(int input_dim, int embed_dim, int hidden_dim, int out_dim,
                              std::uint64_t seed);

// Gradients with the same shapes as the encoder parameters.
struct EncoderGradients {
  Eigen::MatrixXd W_embed;
  Eigen::VectorXd b_embed;
  Eigen::MatrixXd W_in;
  Eigen::MatrixXd W_hh;
  Eigen::VectorXd b_h;
  Eigen::MatrixXd W_out;
  Eigen::VectorXd b_out;
  Eigen::VectorXd w_read;
  double b_read = 0.0;
};

struct Sample {
  std::vector<EngagementFeature> features;
  int label = 0;  // +1 fake, -1 true
};

// Time-ordered engagement features of one news item. post_news maps post ids
// to news ids; r is the SVD rank, k the vocabulary size. normalize_eta
// rescales the running count by the sequence length.
std::vector<EngagementFeature> build_features(const graph::DiffusionNetwork& diffusion,
                                              const graph::InteractionNetwork& interaction,
                                              const std::vector<int>& post_news, int news,
                                              int r, int k, bool normalize_eta = false);

Eigen::VectorXd encode(const RecurrentEncoder& enc,
                       const std::vector<EngagementFeature>& features);

// Mean logistic loss of the linear readout over the dataset.
double loss(const RecurrentEncoder& enc, const std::vector<Sample>& dataset);

// Full backpropagation through time of loss().
EncoderGradients gradients(const RecurrentEncoder& enc, const std::vector<Sample>& dataset);

struct TrainResult {
  RecurrentEncoder encoder;
  std::vector<double> loss_trace;
};

TrainResult train(RecurrentEncoder enc, const std::vector<Sample>& dataset, int epochs,
                  double lr, double clip);

// Classify from the readout score; ties predict fake.
int classify(const RecurrentEncoder& enc, const std::vector<EngagementFeature>& features);

void save_encoder(const RecurrentEncoder& enc, const std::string& dir);
RecurrentEncoder load_encoder(const std::string& dir);

}  // namespace misinfo::seqrep

#endif
