#include "dynemb/lstm.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>

#include "dynemb/error.hpp"

namespace dynemb {

AutoencoderParams AutoencoderParams::zeros_like() const {
  AutoencoderParams z;
  z.embed = Mat::Zero(embed.rows(), embed.cols());
  for (const auto& layer : encoder) {
    z.encoder.push_back(LstmParams<Scalar>::zeros(layer.hidden_dim(), layer.input_dim()));
  }
  z.decoder = LstmParams<Scalar>::zeros(decoder.hidden_dim(), decoder.input_dim());
  z.out_weights = Mat::Zero(out_weights.rows(), out_weights.cols());
  z.out_bias = Vec::Zero(out_bias.size());
  return z;
}

Eigen::Index AutoencoderParams::parameter_count() const {
  Eigen::Index n = 0;
  for_each_block([&](const double*, Eigen::Index size) { n += size; });
  return n;
}

bool AutoencoderParams::all_finite() const {
  bool ok = true;
  for_each_block([&](const double* p, Eigen::Index n) {
    ok = ok && Eigen::Map<const Vec>(p, n).allFinite();
  });
  return ok;
}

bool operator==(const AutoencoderParams& a, const AutoencoderParams& b) {
  std::vector<std::pair<const double*, Eigen::Index>> blocks;
  a.for_each_block([&](const double* p, Eigen::Index n) { blocks.emplace_back(p, n); });
  std::size_t i = 0;
  bool equal = true;
  b.for_each_block([&](const double* p, Eigen::Index n) {
    if (!equal) return;
    if (i >= blocks.size() || blocks[i].second != n ||
        std::memcmp(blocks[i].first, p, static_cast<std::size_t>(n) * sizeof(double)) != 0) {
      equal = false;
    }
    ++i;
  });
  return equal && i == blocks.size();
}

namespace {

void fill_uniform(double* p, Eigen::Index n, double bound, Rng& rng) {
  for (Eigen::Index i = 0; i < n; ++i) p[i] = uniform(rng, -bound, bound);
}

LstmParams<Scalar> init_lstm(Eigen::Index hidden, Eigen::Index input, Rng& rng) {
  auto p = LstmParams<Scalar>::zeros(hidden, input);
  fill_uniform(p.weights.data(), p.weights.size(),
               1.0 / std::sqrt(static_cast<double>(hidden + input)), rng);
  p.gate_bias(Gate::Forget).setOnes();
  return p;
}

}  // namespace

LstmAutoencoder::LstmAutoencoder(std::vector<NodeId> vocab, const LstmConfig& config, Rng& rng)
    : vocab_(std::move(vocab)), config_(config) {
  if (config.dim < 1) throw Error(ErrorCode::InvalidArgument, "dim must be >= 1");
  if (config.encoder_layers < 1 || config.encoder_layers > 2) {
    throw Error(ErrorCode::InvalidArgument, "encoder_layers must be 1 or 2");
  }
  std::sort(vocab_.begin(), vocab_.end());
  vocab_.erase(std::unique(vocab_.begin(), vocab_.end()), vocab_.end());
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    index_.emplace(vocab_[i], static_cast<Eigen::Index>(i));
  }
  const Eigen::Index d = config.dim;
  const Eigen::Index v = vocab_size();
  params_.embed.resize(v + 1, d);
  fill_uniform(params_.embed.data(), params_.embed.size(), 0.5 / static_cast<double>(d), rng);
  for (std::size_t l = 0; l < config.encoder_layers; ++l) params_.encoder.push_back(init_lstm(d, d, rng));
  params_.decoder = init_lstm(d, d, rng);
  params_.out_weights.resize(v, d);
  fill_uniform(params_.out_weights.data(), params_.out_weights.size(),
               1.0 / std::sqrt(static_cast<double>(d)), rng);
  params_.out_bias = Vec::Zero(v);
}

std::optional<Eigen::Index> LstmAutoencoder::index_of(NodeId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Eigen::Index> LstmAutoencoder::encode(std::span<const NodeId> walk) const {
  std::vector<Eigen::Index> tokens;
  tokens.reserve(walk.size());
  for (NodeId id : walk) {
    auto idx = index_of(id);
    if (!idx) throw Error(ErrorCode::OutOfVocab, "node " + std::to_string(id) + " not in vocabulary");
    tokens.push_back(*idx);
  }
  return tokens;
}

namespace {

struct ForwardPass {
  std::vector<std::vector<LstmStepCache<Scalar>>> encoder;  // [layer][position]
  std::vector<LstmStepCache<Scalar>> decoder;
  Mat log_probs;  // positions x vocab
  double loss = 0.0;
};

void run_forward(const AutoencoderParams& p, std::span<const Eigen::Index> tokens, ForwardPass& fw) {
  const auto n = tokens.size();
  const Eigen::Index d = p.embed.cols();
  const Eigen::Index vocab = p.out_weights.rows();
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "walks must have at least 2 elements");
  for (Eigen::Index t : tokens) {
    if (t < 0 || t >= vocab) throw Error(ErrorCode::OutOfVocab, "token outside vocabulary");
  }
  const Vec zero = Vec::Zero(d);

  fw.encoder.resize(p.encoder.size());
  for (std::size_t l = 0; l < p.encoder.size(); ++l) {
    auto& layer = fw.encoder[l];
    layer.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const Vec& h_prev = j == 0 ? zero : layer[j - 1].h;
      const Vec& c_prev = j == 0 ? zero : layer[j - 1].c;
      if (l == 0) {
        lstm_forward<Scalar>(p.encoder[l], h_prev, c_prev, p.embed.row(tokens[j]).transpose(), layer[j]);
      } else {
        lstm_forward<Scalar>(p.encoder[l], h_prev, c_prev, fw.encoder[l - 1][j].h, layer[j]);
      }
    }
  }

  const auto& top = fw.encoder.back().back();
  fw.decoder.resize(n);
  fw.log_probs.resize(static_cast<Eigen::Index>(n), vocab);
  fw.loss = 0.0;
  Vec logits(vocab);
  for (std::size_t j = 0; j < n; ++j) {
    const Eigen::Index input = j == 0 ? vocab : tokens[j - 1];
    const Vec& h_prev = j == 0 ? top.h : fw.decoder[j - 1].h;
    const Vec& c_prev = j == 0 ? top.c : fw.decoder[j - 1].c;
    lstm_forward<Scalar>(p.decoder, h_prev, c_prev, p.embed.row(input).transpose(), fw.decoder[j]);
    logits.noalias() = p.out_weights * fw.decoder[j].h;
    logits += p.out_bias;
    const double mx = logits.maxCoeff();
    const double lse = mx + std::log((logits.array() - mx).exp().sum());
    fw.log_probs.row(static_cast<Eigen::Index>(j)) = (logits.array() - lse).matrix().transpose();
    fw.loss -= fw.log_probs(static_cast<Eigen::Index>(j), tokens[j]);
  }
  fw.loss /= static_cast<double>(n);
}

}  // namespace

double autoencode_loss(const AutoencoderParams& p, std::span<const Eigen::Index> tokens,
                       AutoencoderParams* grad, double scale, BackpropMutation mutation) {
  thread_local ForwardPass fw;
  run_forward(p, tokens, fw);
  if (grad == nullptr) return fw.loss;

  const auto n = tokens.size();
  const Eigen::Index d = p.embed.cols();
  const Eigen::Index vocab = p.out_weights.rows();
  const double w = scale / static_cast<double>(n);

  Vec dz(vocab), dh(d), dh_prev(d), dc_prev(d), dx(d), scratch;
  Vec dh_next = Vec::Zero(d);
  Vec dc_next = Vec::Zero(d);
  for (std::size_t jj = n; jj-- > 0;) {
    const auto j = static_cast<Eigen::Index>(jj);
    dz = fw.log_probs.row(j).transpose().array().exp().matrix();
    dz(tokens[jj]) -= 1.0;
    dz *= w;
    const auto& cache = fw.decoder[jj];
    grad->out_weights.noalias() += dz * cache.h.transpose();
    grad->out_bias += dz;
    dh.noalias() = p.out_weights.transpose() * dz;
    dh += dh_next;
    lstm_backward<Scalar>(p.decoder, cache, dh, dc_next, grad->decoder, dh_prev, dc_prev, dx,
                          scratch, mutation);
    const Eigen::Index input = jj == 0 ? vocab : tokens[jj - 1];
    grad->embed.row(input) += dx.transpose();
    dh_next.swap(dh_prev);
    dc_next.swap(dc_prev);
  }

  // The decoder's initial-state gradient flows into the top encoder layer.
  std::vector<Vec> from_above;
  for (std::size_t ll = p.encoder.size(); ll-- > 0;) {
    const bool top = ll + 1 == p.encoder.size();
    Vec dh_n = top ? dh_next : Vec::Zero(d);
    Vec dc_n = top ? dc_next : Vec::Zero(d);
    std::vector<Vec> to_below(ll > 0 ? n : 0);
    for (std::size_t jj = n; jj-- > 0;) {
      dh = dh_n;
      if (!top) dh += from_above[jj];
      lstm_backward<Scalar>(p.encoder[ll], fw.encoder[ll][jj], dh, dc_n, grad->encoder[ll], dh_prev,
                            dc_prev, dx, scratch, mutation);
      if (ll == 0) {
        grad->embed.row(tokens[jj]) += dx.transpose();
      } else {
        to_below[jj] = dx;
      }
      dh_n.swap(dh_prev);
      dc_n.swap(dc_prev);
    }
    from_above = std::move(to_below);
  }
  return fw.loss;
}

AutoencodeResult forward_autoencode(const LstmAutoencoder& m, std::span<const NodeId> walk) {
  const auto tokens = m.encode(walk);
  ForwardPass fw;
  run_forward(m.params(), tokens, fw);
  // log-softmax differs from the logits by a per-row constant; recover logits
  const auto& p = m.params();
  Mat logits(static_cast<Eigen::Index>(tokens.size()), m.vocab_size());
  for (std::size_t j = 0; j < tokens.size(); ++j) {
    logits.row(static_cast<Eigen::Index>(j)) =
        (p.out_weights * fw.decoder[j].h + p.out_bias).transpose();
  }
  return {std::move(logits), fw.loss};
}

double reconstruction_accuracy(const LstmAutoencoder& m, const WalkSet& walks) {
  std::size_t correct = 0;
  std::size_t total = 0;
  ForwardPass fw;
  for (const Walk& w : walks.walks) {
    const auto tokens = m.encode(w.nodes);
    run_forward(m.params(), tokens, fw);
    for (std::size_t j = 0; j < tokens.size(); ++j) {
      Eigen::Index best = 0;
      fw.log_probs.row(static_cast<Eigen::Index>(j)).maxCoeff(&best);
      correct += best == tokens[j] ? 1 : 0;
      ++total;
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
}

namespace {

double global_norm(const AutoencoderParams& g) {
  double sq = 0.0;
  g.for_each_block([&](const double* p, Eigen::Index n) { sq += Eigen::Map<const Vec>(p, n).squaredNorm(); });
  return std::sqrt(sq);
}

void set_zero(AutoencoderParams& g) {
  g.for_each_block([](double* p, Eigen::Index n) { Eigen::Map<Vec>(p, n).setZero(); });
}

void scale_by(AutoencoderParams& g, double s) {
  g.for_each_block([s](double* p, Eigen::Index n) { Eigen::Map<Vec>(p, n) *= s; });
}

}  // namespace

LossTrace train(LstmAutoencoder& m, const WalkSet& corpus, const LstmTrainConfig& config, Rng& rng) {
  if (corpus.empty()) throw Error(ErrorCode::EmptyCorpus, "no walks to train on");
  if (config.batch < 1) throw Error(ErrorCode::InvalidArgument, "batch must be >= 1");

  std::vector<std::vector<Eigen::Index>> sequences;
  sequences.reserve(corpus.size());
  for (const Walk& w : corpus.walks) sequences.push_back(m.encode(w.nodes));

  auto& params = m.params();
  AutoencoderParams grad = params.zeros_like();
  Adam adam(params.parameter_count(), config.adam);
  std::vector<std::size_t> order(sequences.size());
  std::iota(order.begin(), order.end(), std::size_t{0});

  LossTrace trace;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    shuffle(order, rng);
    double total = 0.0;
    for (std::size_t start = 0; start < order.size(); start += config.batch) {
      const std::size_t end = std::min(order.size(), start + config.batch);
      const double inv = 1.0 / static_cast<double>(end - start);
      set_zero(grad);
      for (std::size_t b = start; b < end; ++b) {
        total += autoencode_loss(params, sequences[order[b]], &grad, inv);
      }
      const double norm = global_norm(grad);
      if (config.clip > 0.0 && norm > config.clip) scale_by(grad, config.clip / norm);
      adam.step(params, grad);
    }
    trace.epoch_loss.push_back(total / static_cast<double>(sequences.size()));
  }
  return trace;
}

EmbeddingMatrix input_embeddings(const LstmAutoencoder& m) {
  return EmbeddingMatrix(m.vocab(), m.params().embed.topRows(m.vocab_size()));
}

void warm_start(LstmAutoencoder& m, const LstmAutoencoder* prev, const EmbeddingMatrix* z_prev) {
  auto& p = m.params();
  if (z_prev != nullptr && z_prev->size() > 0 && z_prev->dim() != m.dim()) {
    throw Error(ErrorCode::ShapeMismatch, "previous embeddings have dimension " +
                                              std::to_string(z_prev->dim()) + ", model uses " +
                                              std::to_string(m.dim()));
  }
  if (prev != nullptr) {
    if (prev->dim() != m.dim() || prev->params().encoder.size() != p.encoder.size()) {
      throw Error(ErrorCode::ShapeMismatch, "previous autoencoder has a different architecture");
    }
    p.encoder = prev->params().encoder;
    p.decoder = prev->params().decoder;
    p.embed.row(m.start_token()) = prev->params().embed.row(prev->start_token());
  }
  for (Eigen::Index r = 0; r < m.vocab_size(); ++r) {
    const NodeId id = m.vocab()[static_cast<std::size_t>(r)];
    std::optional<Eigen::Index> prev_row = prev ? prev->index_of(id) : std::nullopt;
    if (z_prev != nullptr) {
      if (auto zr = z_prev->row_of(id)) {
        p.embed.row(r) = z_prev->values().row(*zr);
      } else if (prev_row) {
        p.embed.row(r) = prev->params().embed.row(*prev_row);
      }
    } else if (prev_row) {
      p.embed.row(r) = prev->params().embed.row(*prev_row);
    }
    if (prev_row) {
      p.out_weights.row(r) = prev->params().out_weights.row(*prev_row);
      p.out_bias(r) = prev->params().out_bias(*prev_row);
    }
  }
}

double gradient_check(const LstmAutoencoder& m, std::span<const NodeId> walk,
                      const GradientCheckOptions& options) {
  if (!(options.eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be > 0");
  const auto tokens = m.encode(walk);
  AutoencoderParams grad = m.params().zeros_like();
  autoencode_loss(m.params(), tokens, &grad, 1.0, options.mutation);

  // (data, size) of each group, analytic and a mutable working copy
  AutoencoderParams work = m.params();
  std::vector<std::pair<double*, Eigen::Index>> work_blocks;
  work.for_each_block([&](double* p, Eigen::Index n) { work_blocks.emplace_back(p, n); });
  std::vector<const double*> grad_blocks;
  grad.for_each_block([&](const double* p, Eigen::Index) { grad_blocks.push_back(p); });

  // embedding coordinates only matter on rows the walk touches
  std::vector<Eigen::Index> embed_rows(tokens.begin(), tokens.end());
  embed_rows.push_back(m.start_token());
  std::sort(embed_rows.begin(), embed_rows.end());
  embed_rows.erase(std::unique(embed_rows.begin(), embed_rows.end()), embed_rows.end());

  Rng rng = make_rng(options.seed, {0x6c63ULL});
  double worst = 0.0;
  for (std::size_t b = 0; b < work_blocks.size(); ++b) {
    auto [data, size] = work_blocks[b];
    std::vector<Eigen::Index> coords;
    if (b == 0) {
      for (Eigen::Index r : embed_rows) {
        for (Eigen::Index c = 0; c < m.dim(); ++c) coords.push_back(r * m.dim() + c);
      }
    } else {
      coords.resize(static_cast<std::size_t>(size));
      std::iota(coords.begin(), coords.end(), Eigen::Index{0});
    }
    shuffle(coords, rng);
    coords.resize(std::min(coords.size(), options.samples_per_group));

    for (Eigen::Index c : coords) {
      const double saved = data[c];
      data[c] = saved + options.eps;
      const double plus = autoencode_loss(work, tokens);
      data[c] = saved - options.eps;
      const double minus = autoencode_loss(work, tokens);
      data[c] = saved;
      const double numeric = (plus - minus) / (2.0 * options.eps);
      const double analytic = grad_blocks[b][c];
      const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-4});
      worst = std::max(worst, std::abs(analytic - numeric) / denom);
    }
  }
  return worst;
}

namespace {

constexpr char kMagic[8] = {'D', 'Y', 'N', 'E', 'M', 'B', 'A', 'E'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& in, const std::string& path) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof(T))) {
    throw Error(ErrorCode::FormatError, "checkpoint '" + path + "' is truncated",
                static_cast<std::size_t>(std::max<std::streamoff>(0, in.tellg())));
  }
  return v;
}

}  // namespace

void save_checkpoint(const LstmAutoencoder& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write checkpoint '" + path + "'");
  out.write(kMagic, sizeof(kMagic));
  put(out, kVersion);
  put(out, static_cast<std::int64_t>(m.dim()));
  put(out, static_cast<std::uint64_t>(m.config().encoder_layers));
  put(out, static_cast<std::uint64_t>(m.vocab().size()));
  for (NodeId id : m.vocab()) put(out, static_cast<std::int64_t>(id));
  m.params().for_each_block([&](const double* p, Eigen::Index n) {
    put(out, static_cast<std::uint64_t>(n));
    out.write(reinterpret_cast<const char*>(p), static_cast<std::streamsize>(n * sizeof(double)));
  });
  if (!out) throw Error(ErrorCode::IoError, "failed writing checkpoint '" + path + "'");
}

LstmAutoencoder load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open checkpoint '" + path + "'");
  char magic[8];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw Error(ErrorCode::FormatError, "'" + path + "' is not an autoencoder checkpoint", 0);
  }
  if (get<std::uint32_t>(in, path) != kVersion) {
    throw Error(ErrorCode::FormatError, "unsupported checkpoint version", 8);
  }
  LstmConfig config;
  config.dim = static_cast<Eigen::Index>(get<std::int64_t>(in, path));
  config.encoder_layers = static_cast<std::size_t>(get<std::uint64_t>(in, path));
  const auto vocab_size = get<std::uint64_t>(in, path);
  std::vector<NodeId> vocab(static_cast<std::size_t>(vocab_size));
  for (auto& id : vocab) id = static_cast<NodeId>(get<std::int64_t>(in, path));
  Rng rng(0);
  LstmAutoencoder m(vocab, config, rng);
  m.params().for_each_block([&](double* p, Eigen::Index n) {
    const auto stored = get<std::uint64_t>(in, path);
    if (stored != static_cast<std::uint64_t>(n)) {
      throw Error(ErrorCode::FormatError, "tensor size mismatch in checkpoint",
                  static_cast<std::size_t>(in.tellg()));
    }
    if (!in.read(reinterpret_cast<char*>(p), static_cast<std::streamsize>(n * sizeof(double)))) {
      throw Error(ErrorCode::FormatError, "checkpoint '" + path + "' is truncated",
                  static_cast<std::size_t>(std::max<std::streamoff>(0, in.tellg())));
    }
  });
  return m;
}

}  // namespace dynemb
