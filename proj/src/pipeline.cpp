#include "dynemb/pipeline.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>

#include "dynemb/error.hpp"
#include "dynemb/json_io.hpp"

namespace dynemb {

namespace fs = std::filesystem;

void EmbedConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::InvalidArgument, what);
  };
  require(dim >= 1, "dim must be >= 1");
  require(window >= 2, "L must be >= 2");
  require(temporal_walks >= 1, "k must be >= 1");
  require(p > 0.0 && q > 0.0, "p and q must be > 0");
  require(walks_per_node >= 1 && walk_length >= 1, "walk counts must be >= 1");
  require(context >= 1 && negatives >= 1, "context and negatives must be >= 1");
  require(epochs_sgns >= 1 && epochs_lstm >= 1, "epochs must be >= 1");
  require(batch >= 1, "batch must be >= 1");
  require(lr_adam >= 0.0 && lr_sgns_start >= 0.0 && lr_sgns_end >= 0.0,
          "learning rates must be >= 0");
  require(clip > 0.0, "clip must be > 0");
  require(encoder_layers == 1 || encoder_layers == 2, "encoder_layers must be 1 or 2");
  require(threads >= 1, "threads must be >= 1");
}

const EmbeddingMatrix* EmbeddingStream::at(std::size_t t) const {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] == t) return &matrices[i];
  }
  return nullptr;
}

namespace {

Node2vecParams static_walk_params(const EmbedConfig& c, std::uint64_t seed) {
  Node2vecParams p;
  p.p = c.p;
  p.q = c.q;
  p.walks_per_node = c.walks_per_node;
  p.walk_length = c.walk_length;
  p.seed = seed;
  p.threads = c.threads;
  return p;
}

SgnsConfig sgns_config(const EmbedConfig& c) {
  return {c.context, c.negatives, c.epochs_sgns, c.lr_sgns_start, c.lr_sgns_end};
}

std::uint64_t step_seed(const EmbedConfig& c, Stream s, std::size_t t) {
  return derive_seed(c.seed, {tag(s), static_cast<std::uint64_t>(t)});
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

EmbeddingStream embed_stream(const SnapshotSequence& seq, const EmbedConfig& config,
                             const StepObserver& observer) {
  config.validate();
  if (seq.size() < config.window) {
    throw Error(ErrorCode::TooFewSnapshots, "need at least L=" + std::to_string(config.window) +
                                                " snapshots, have " + std::to_string(seq.size()));
  }
  EmbeddingStream out;
  out.config = config;
  out.method = "lstm-node2vec";

  std::optional<LstmAutoencoder> prev_lstm;
  const LstmConfig lstm_config{config.dim, config.encoder_layers};
  LstmTrainConfig train_config;
  train_config.epochs = config.epochs_lstm;
  train_config.batch = config.batch;
  train_config.clip = config.clip;
  train_config.adam.lr = config.lr_adam;

  for (std::size_t t = config.window - 1; t < seq.size(); ++t) {
    const auto started = std::chrono::steady_clock::now();
    const Snapshot& g = seq[t];

    TemporalWalkParams twp;
    twp.window = config.window;
    twp.walks_per_node = config.temporal_walks;
    twp.bias = config.bias;
    twp.p = config.p;
    twp.q = config.q;
    twp.seed = step_seed(config, Stream::TemporalWalks, t);
    twp.threads = config.threads;
    const WalkSet temporal = temporal_walks(seq, t, twp);

    std::vector<NodeId> vocab = temporal.vocab();
    vocab.insert(vocab.end(), g.node_set().begin(), g.node_set().end());
    Rng init_rng(step_seed(config, Stream::LstmInit, t));
    LstmAutoencoder lstm(std::move(vocab), lstm_config, init_rng);
    const EmbeddingMatrix* z_prev = out.matrices.empty() ? nullptr : &out.matrices.back();
    warm_start(lstm, prev_lstm ? &*prev_lstm : nullptr, z_prev);

    StepRecord record;
    record.t = t;
    record.z_prev = z_prev;
    record.temporal_walk_count = temporal.size();
    if (observer) record.lstm_initial_inputs = input_embeddings(lstm);
    if (!temporal.empty()) {
      Rng train_rng(step_seed(config, Stream::LstmTrain, t));
      record.lstm_loss = train(lstm, temporal, train_config, train_rng);
    }
    const EmbeddingMatrix transferred = input_embeddings(lstm);

    const WalkSet walks = node2vec_walks(g, static_walk_params(config, step_seed(config, Stream::StaticWalks, t)));
    Rng sg_init_rng(step_seed(config, Stream::SkipgramInit, t));
    SkipgramModel sg = init_skipgram(g.node_set(), config.dim, &transferred, walks, sg_init_rng);
    if (observer) {
      record.lstm_trained_inputs = transferred;
      record.skipgram_initial = embeddings(sg);
    }
    Rng sg_rng(step_seed(config, Stream::SkipgramTrain, t));
    record.sgns_loss = train_sgns(sg, walks, sgns_config(config), sg_rng);

    out.times.push_back(t);
    out.matrices.push_back(embeddings(sg));
    out.step_seconds.push_back(seconds_since(started));
    prev_lstm = std::move(lstm);
    if (observer) {
      // z_prev may have moved when matrices grew
      record.z_prev = out.matrices.size() > 1 ? &out.matrices[out.matrices.size() - 2] : nullptr;
      record.z = &out.matrices.back();
      observer(record);
    }
  }
  return out;
}

EmbeddingMatrix embed_static(const Snapshot& s, const EmbedConfig& config) {
  config.validate();
  const std::size_t t = s.index();
  const WalkSet walks = node2vec_walks(s, static_walk_params(config, step_seed(config, Stream::StaticWalks, t)));
  Rng init_rng(step_seed(config, Stream::SkipgramInit, t));
  SkipgramModel sg = init_skipgram(s.node_set(), config.dim, nullptr, walks, init_rng);
  if (!walks.empty()) {
    Rng sg_rng(step_seed(config, Stream::SkipgramTrain, t));
    train_sgns(sg, walks, sgns_config(config), sg_rng);
  }
  return embeddings(sg);
}

EmbeddingStream embed_static_stream(const SnapshotSequence& seq, const EmbedConfig& config) {
  config.validate();
  if (seq.size() < config.window) {
    throw Error(ErrorCode::TooFewSnapshots, "need at least L=" + std::to_string(config.window) +
                                                " snapshots, have " + std::to_string(seq.size()));
  }
  EmbeddingStream out;
  out.config = config;
  out.method = config.p == 1.0 && config.q == 1.0 ? "deepwalk" : "node2vec";
  for (std::size_t t = config.window - 1; t < seq.size(); ++t) {
    const auto started = std::chrono::steady_clock::now();
    out.times.push_back(t);
    out.matrices.push_back(embed_static(seq[t], config));
    out.step_seconds.push_back(seconds_since(started));
  }
  return out;
}

void save_stream(const EmbeddingStream& stream, const NodeRegistry& registry,
                 const std::string& dir, const std::string& extra_manifest_json) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create '" + dir + "': " + ec.message());
  for (std::size_t i = 0; i < stream.times.size(); ++i) {
    const auto path = fs::path(dir) / ("Z_" + std::to_string(stream.times[i]) + ".emb");
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
    write_embeddings(out, stream.matrices[i], registry);
  }
  nlohmann::json manifest = nlohmann::json::parse(extra_manifest_json);
  manifest["method"] = stream.method;
  manifest["config"] = stream.config;
  manifest["seed"] = stream.config.seed;
  manifest["dim"] = stream.config.dim;
  manifest["time_points"] = stream.times;
  manifest["step_seconds"] = stream.step_seconds;
  const auto path = fs::path(dir) / "manifest.json";
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  out << manifest.dump(2) << '\n';
}

EmbeddingStream load_stream(const std::string& dir, NodeRegistry& registry) {
  const auto manifest_path = fs::path(dir) / "manifest.json";
  std::ifstream in(manifest_path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + manifest_path.string() + "'");
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::FormatError, manifest_path.string() + ": " + e.what(), e.byte);
  }
  EmbeddingStream out;
  try {
    out.config = manifest.at("config").get<EmbedConfig>();
    out.method = manifest.value("method", std::string("lstm-node2vec"));
    out.times = manifest.at("time_points").get<std::vector<std::size_t>>();
    out.step_seconds = manifest.value("step_seconds", std::vector<double>{});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::FormatError, manifest_path.string() + ": " + e.what());
  }
  for (std::size_t t : out.times) {
    const auto path = fs::path(dir) / ("Z_" + std::to_string(t) + ".emb");
    std::ifstream emb(path);
    if (!emb) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
    try {
      out.matrices.push_back(read_embeddings(emb, registry));
    } catch (const Error& e) {
      throw Error(e.code(), path.string() + ": " + e.what(), e.position());
    }
  }
  return out;
}

std::string to_string(TemporalBias bias) {
  return bias == TemporalBias::Uniform ? "uniform" : "second_order";
}

TemporalBias parse_bias(const std::string& text) {
  if (text == "uniform") return TemporalBias::Uniform;
  if (text == "second_order") return TemporalBias::SecondOrder;
  throw Error(ErrorCode::InvalidArgument, "unknown bias '" + text + "'");
}

void to_json(nlohmann::json& j, const EmbedConfig& c) {
  j = nlohmann::json{{"dim", c.dim},
                     {"L", c.window},
                     {"k", c.temporal_walks},
                     {"p", c.p},
                     {"q", c.q},
                     {"bias", to_string(c.bias)},
                     {"walks_per_node", c.walks_per_node},
                     {"walk_length", c.walk_length},
                     {"context", c.context},
                     {"negatives", c.negatives},
                     {"epochs_sgns", c.epochs_sgns},
                     {"lr_sgns_start", c.lr_sgns_start},
                     {"lr_sgns_end", c.lr_sgns_end},
                     {"epochs_lstm", c.epochs_lstm},
                     {"batch", c.batch},
                     {"lr_adam", c.lr_adam},
                     {"clip", c.clip},
                     {"encoder_layers", c.encoder_layers},
                     {"seed", c.seed},
                     {"threads", c.threads}};
}

void from_json(const nlohmann::json& j, EmbedConfig& c) {
  EmbedConfig d;
  c.dim = j.value("dim", d.dim);
  c.window = j.value("L", d.window);
  c.temporal_walks = j.value("k", d.temporal_walks);
  c.p = j.value("p", d.p);
  c.q = j.value("q", d.q);
  c.bias = parse_bias(j.value("bias", to_string(d.bias)));
  c.walks_per_node = j.value("walks_per_node", d.walks_per_node);
  c.walk_length = j.value("walk_length", d.walk_length);
  c.context = j.value("context", d.context);
  c.negatives = j.value("negatives", d.negatives);
  c.epochs_sgns = j.value("epochs_sgns", d.epochs_sgns);
  c.lr_sgns_start = j.value("lr_sgns_start", d.lr_sgns_start);
  c.lr_sgns_end = j.value("lr_sgns_end", d.lr_sgns_end);
  c.epochs_lstm = j.value("epochs_lstm", d.epochs_lstm);
  c.batch = j.value("batch", d.batch);
  c.lr_adam = j.value("lr_adam", d.lr_adam);
  c.clip = j.value("clip", d.clip);
  c.encoder_layers = j.value("encoder_layers", d.encoder_layers);
  c.seed = j.value("seed", d.seed);
  c.threads = j.value("threads", d.threads);
}

}  // namespace dynemb
