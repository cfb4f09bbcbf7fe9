#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dynemb/embedding.hpp"
#include "dynemb/lstm_cell.hpp"
#include "dynemb/rng.hpp"
#include "dynemb/walker.hpp"

namespace dynemb {

struct AutoencoderParams {
  Mat embed;  // (vocab + 1) x d; the last row is the start-of-sequence token
  std::vector<LstmParams<Scalar>> encoder;
  LstmParams<Scalar> decoder;
  Mat out_weights;  // vocab x d
  Vec out_bias;     // vocab

  // Visits every parameter tensor as (data, size), always in the same order.
  template <typename F>
  void for_each_block(F&& f) {
    f(embed.data(), embed.size());
    for (auto& layer : encoder) layer.for_each_block(f);
    decoder.for_each_block(f);
    f(out_weights.data(), out_weights.size());
    f(out_bias.data(), out_bias.size());
  }
  template <typename F>
  void for_each_block(F&& f) const {
    f(embed.data(), embed.size());
    for (const auto& layer : encoder) layer.for_each_block(f);
    decoder.for_each_block(f);
    f(out_weights.data(), out_weights.size());
    f(out_bias.data(), out_bias.size());
  }

  AutoencoderParams zeros_like() const;
  Eigen::Index parameter_count() const;
  bool all_finite() const;
  friend bool operator==(const AutoencoderParams& a, const AutoencoderParams& b);
};

struct LstmConfig {
  Eigen::Index dim = 128;  // embedding size == hidden size
  std::size_t encoder_layers = 1;
};

// Sequence autoencoder over node ids: an encoder LSTM reads the embedded walk,
// a decoder LSTM started from the encoder's final state reconstructs it with
// teacher forcing, and a softmax layer scores every vocabulary node.
class LstmAutoencoder {
 public:
  LstmAutoencoder() = default;
  // Fresh initialization. `vocab` is deduplicated and sorted.
  LstmAutoencoder(std::vector<NodeId> vocab, const LstmConfig& config, Rng& rng);

  const std::vector<NodeId>& vocab() const noexcept { return vocab_; }
  Eigen::Index vocab_size() const noexcept { return static_cast<Eigen::Index>(vocab_.size()); }
  Eigen::Index dim() const noexcept { return config_.dim; }
  const LstmConfig& config() const noexcept { return config_; }
  std::optional<Eigen::Index> index_of(NodeId id) const;
  Eigen::Index start_token() const noexcept { return vocab_size(); }

  AutoencoderParams& params() noexcept { return params_; }
  const AutoencoderParams& params() const noexcept { return params_; }

  // Global ids -> local token indices. Throws OutOfVocab.
  std::vector<Eigen::Index> encode(std::span<const NodeId> walk) const;

 private:
  std::vector<NodeId> vocab_;
  LstmConfig config_;
  AutoencoderParams params_;
  std::unordered_map<NodeId, Eigen::Index> index_;
};

struct AutoencodeResult {
  Mat logits;   // one row per walk position
  double loss;  // mean cross-entropy over positions
};

AutoencodeResult forward_autoencode(const LstmAutoencoder& m, std::span<const NodeId> walk);

// Mean cross-entropy of reconstructing `tokens`; when `grad` is given,
// adds `scale` times the gradient of that loss to it.
double autoencode_loss(const AutoencoderParams& params, std::span<const Eigen::Index> tokens,
                       AutoencoderParams* grad = nullptr, double scale = 1.0,
                       BackpropMutation mutation = BackpropMutation::None);

// Fraction of positions whose argmax logit is the true node.
double reconstruction_accuracy(const LstmAutoencoder& m, const WalkSet& walks);

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Adam with bias correction over any parameter set exposing for_each_block.
class Adam {
 public:
  Adam(Eigen::Index parameter_count, const AdamConfig& config)
      : config_(config), m_(Vec::Zero(parameter_count)), v_(Vec::Zero(parameter_count)) {}

  template <typename Params>
  void step(Params& params, const Params& grad) {
    ++t_;
    const double c1 = 1.0 - std::pow(config_.beta1, static_cast<double>(t_));
    const double c2 = 1.0 - std::pow(config_.beta2, static_cast<double>(t_));
    std::vector<const double*> grads;
    grad.for_each_block([&](const double* g, Eigen::Index) { grads.push_back(g); });
    std::size_t block = 0;
    Eigen::Index offset = 0;
    params.for_each_block([&](double* p, Eigen::Index n) {
      Eigen::Map<Vec> theta(p, n);
      Eigen::Map<const Vec> g(grads[block++], n);
      auto m = m_.segment(offset, n);
      auto v = v_.segment(offset, n);
      m = config_.beta1 * m + (1.0 - config_.beta1) * g;
      v = config_.beta2 * v + (1.0 - config_.beta2) * g.cwiseAbs2();
      theta.array() -= config_.lr * (m.array() / c1) / ((v.array() / c2).sqrt() + config_.eps);
      offset += n;
    });
  }

  std::int64_t steps() const noexcept { return t_; }

 private:
  AdamConfig config_;
  Vec m_;
  Vec v_;
  std::int64_t t_ = 0;
};

struct LstmTrainConfig {
  std::size_t epochs = 20;
  std::size_t batch = 32;
  double clip = 5.0;
  AdamConfig adam;
};

struct LossTrace {
  std::vector<double> epoch_loss;
};

// Adam on BPTT gradients; walks are reshuffled every epoch and each batch's
// gradient is clipped to global norm `clip`. Throws EmptyCorpus.
LossTrace train(LstmAutoencoder& m, const WalkSet& corpus, const LstmTrainConfig& config,
                Rng& rng);

// Copy of the input-layer table restricted to real nodes (no start token).
EmbeddingMatrix input_embeddings(const LstmAutoencoder& m);

// Carries state across time points: input rows come from z_prev where it has
// the node, else from prev's input layer; encoder, decoder and shared output
// rows come from prev. Everything else keeps m's fresh initialization.
void warm_start(LstmAutoencoder& m, const LstmAutoencoder* prev, const EmbeddingMatrix* z_prev);

struct GradientCheckOptions {
  double eps = 1e-5;
  std::size_t samples_per_group = 24;
  std::uint64_t seed = 0;
  BackpropMutation mutation = BackpropMutation::None;
};

// Max over sampled coordinates of |analytic - numeric| / max(|analytic|, |numeric|, 1e-4),
// with numeric from two fresh central-difference loss evaluations per coordinate.
double gradient_check(const LstmAutoencoder& m, std::span<const NodeId> walk,
                      const GradientCheckOptions& options = {});

// Self-describing binary checkpoint (see docs/formats.md).
void save_checkpoint(const LstmAutoencoder& m, const std::string& path);
LstmAutoencoder load_checkpoint(const std::string& path);

}  // namespace dynemb
