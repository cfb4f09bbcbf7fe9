#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dynemb/embedding.hpp"
#include "dynemb/graph.hpp"
#include "dynemb/lstm.hpp"
#include "dynemb/skipgram.hpp"
#include "dynemb/walker.hpp"

namespace dynemb {

struct EmbedConfig {
  Eigen::Index dim = 128;
  std::size_t window = 10;  // L, snapshots of history per temporal walk
  std::size_t temporal_walks = 10;  // k
  double p = 0.25;
  double q = 1.0;
  TemporalBias bias = TemporalBias::Uniform;

  std::size_t walks_per_node = 10;
  std::size_t walk_length = 80;
  std::size_t context = 10;
  std::size_t negatives = 5;
  std::size_t epochs_sgns = 5;
  double lr_sgns_start = 0.025;
  double lr_sgns_end = 0.0001;

  std::size_t epochs_lstm = 20;
  std::size_t batch = 32;
  double lr_adam = 1e-3;
  double clip = 5.0;
  std::size_t encoder_layers = 1;

  std::uint64_t seed = 0;
  std::size_t threads = 1;

  // Throws InvalidArgument naming the first violated bound.
  void validate() const;
};

struct EmbeddingStream {
  std::vector<std::size_t> times;        // snapshot index of each matrix
  std::vector<EmbeddingMatrix> matrices;  // Z_t, aligned with times
  EmbedConfig config;
  std::string method = "lstm-node2vec";
  std::vector<double> step_seconds;

  // Z_t, or nullptr when no matrix exists for t.
  const EmbeddingMatrix* at(std::size_t t) const;
};

// What one time point of the dynamic method did; handed to an observer so
// callers can audit the weight transfers.
struct StepRecord {
  std::size_t t = 0;
  const EmbeddingMatrix* z_prev = nullptr;
  EmbeddingMatrix lstm_initial_inputs;  // after warm start, before training
  EmbeddingMatrix lstm_trained_inputs;
  EmbeddingMatrix skipgram_initial;
  const EmbeddingMatrix* z = nullptr;
  std::size_t temporal_walk_count = 0;
  LossTrace lstm_loss;
  LossTrace sgns_loss;
};

using StepObserver = std::function<void(const StepRecord&)>;

// Runs the dynamic method for every t in [L-1, T-1]: temporal walks over the
// window, warm-started autoencoder training, transfer of its input layer to
// a skipgram model, and skipgram training on node2vec walks of G_t.
EmbeddingStream embed_stream(const SnapshotSequence& seq, const EmbedConfig& config,
                             const StepObserver& observer = {});

// node2vec (or DeepWalk with p = q = 1) on a single snapshot from a random start.
EmbeddingMatrix embed_static(const Snapshot& s, const EmbedConfig& config);

// embed_static on every snapshot t >= L-1, each with its own derived seed.
EmbeddingStream embed_static_stream(const SnapshotSequence& seq, const EmbedConfig& config);

// Z_<t>.emb per time point plus manifest.json.
void save_stream(const EmbeddingStream& stream, const NodeRegistry& registry,
                 const std::string& dir, const std::string& extra_manifest_json = "{}");
EmbeddingStream load_stream(const std::string& dir, NodeRegistry& registry);

}  // namespace dynemb
