#include "dynemb/skipgram.hpp"

#include <cmath>

#include "dynemb/error.hpp"

namespace dynemb {

std::optional<Eigen::Index> SkipgramModel::row_of(NodeId id) const {
  auto it = rows.find(id);
  if (it == rows.end()) return std::nullopt;
  return it->second;
}

SkipgramModel init_skipgram(std::vector<NodeId> vocab, Eigen::Index dim, const EmbeddingMatrix* warm,
                            const WalkSet& corpus, Rng& rng) {
  if (dim < 1) throw Error(ErrorCode::InvalidArgument, "dim must be >= 1");
  if (warm != nullptr && warm->size() > 0 && warm->dim() != dim) {
    throw Error(ErrorCode::ShapeMismatch, "warm-start embeddings have dimension " +
                                              std::to_string(warm->dim()) + ", expected " +
                                              std::to_string(dim));
  }
  SkipgramModel m;
  m.vocab = std::move(vocab);
  const auto n = static_cast<Eigen::Index>(m.vocab.size());
  for (Eigen::Index r = 0; r < n; ++r) {
    if (!m.rows.emplace(m.vocab[static_cast<std::size_t>(r)], r).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate node in skipgram vocabulary");
    }
  }
  m.in_embed.resize(n, dim);
  const double bound = 0.5 / static_cast<double>(dim);
  for (Eigen::Index r = 0; r < n; ++r) {
    std::optional<Eigen::Index> wr;
    if (warm != nullptr) wr = warm->row_of(m.vocab[static_cast<std::size_t>(r)]);
    if (wr) {
      m.in_embed.row(r) = warm->values().row(*wr);
    } else {
      for (Eigen::Index c = 0; c < dim; ++c) m.in_embed(r, c) = uniform(rng, -bound, bound);
    }
  }
  m.out_embed = Mat::Zero(n, dim);

  std::vector<double> counts(static_cast<std::size_t>(n), 0.0);
  for (const Walk& w : corpus.walks) {
    for (NodeId id : w.nodes) {
      auto r = m.row_of(id);
      if (!r) throw Error(ErrorCode::OutOfVocab, "walk node " + std::to_string(id) + " not in vocabulary");
      counts[static_cast<std::size_t>(*r)] += 1.0;
    }
  }
  m.noise.assign(counts.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    m.noise[i] = std::pow(counts[i], 0.75);
    total += m.noise[i];
  }
  std::vector<double> positive;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (total > 0.0) m.noise[i] /= total;
    if (m.noise[i] > 0.0) {
      positive.push_back(m.noise[i]);
      m.noise_rows.push_back(static_cast<Eigen::Index>(i));
    }
  }
  if (!positive.empty()) m.noise_table = build_alias_table(positive);
  return m;
}

LossTrace train_sgns(SkipgramModel& m, const WalkSet& corpus, const SgnsConfig& config, Rng& rng) {
  if (corpus.empty()) throw Error(ErrorCode::EmptyCorpus, "no walks to train on");
  if (config.window < 1 || config.negatives < 1) {
    throw Error(ErrorCode::InvalidArgument, "window and negatives must be >= 1");
  }
  if (m.noise_rows.empty()) throw Error(ErrorCode::EmptyCorpus, "noise distribution is empty");

  std::vector<std::vector<Eigen::Index>> sequences;
  sequences.reserve(corpus.size());
  for (const Walk& w : corpus.walks) {
    std::vector<Eigen::Index> seq;
    seq.reserve(w.nodes.size());
    for (NodeId id : w.nodes) {
      auto r = m.row_of(id);
      if (!r) throw Error(ErrorCode::OutOfVocab, "walk node " + std::to_string(id) + " not in vocabulary");
      seq.push_back(*r);
    }
    sequences.push_back(std::move(seq));
  }
  const double total_steps =
      static_cast<double>(corpus.token_count()) * static_cast<double>(config.epochs);
  double step = 0.0;

  const Eigen::Index d = m.dim();
  Vec center_grad(d);
  LossTrace trace;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    double loss = 0.0;
    std::size_t pairs = 0;
    for (const auto& seq : sequences) {
      const auto len = seq.size();
      for (std::size_t i = 0; i < len; ++i, step += 1.0) {
        const double lr =
            config.lr_start + (config.lr_end - config.lr_start) * (step / std::max(1.0, total_steps));
        const Eigen::Index u = seq[i];
        const std::size_t lo = i >= config.window ? i - config.window : 0;
        const std::size_t hi = std::min(len - 1, i + config.window);
        for (std::size_t j = lo; j <= hi; ++j) {
          if (j == i) continue;
          const Eigen::Index c = seq[j];
          auto f = m.in_embed.row(u);
          center_grad.setZero();

          const double pos = f.dot(m.out_embed.row(c));
          loss += softplus(-pos);
          const double gp = sigmoid(pos) - 1.0;
          center_grad += gp * m.out_embed.row(c).transpose();
          m.out_embed.row(c) -= lr * gp * f;

          for (std::size_t k = 0; k < config.negatives; ++k) {
            Eigen::Index neg = -1;
            for (int attempt = 0; attempt < 100; ++attempt) {
              const Eigen::Index cand = m.sample_negative(rng);
              if (cand != c) {
                neg = cand;
                break;
              }
            }
            if (neg < 0) continue;
            const double s = f.dot(m.out_embed.row(neg));
            loss += softplus(s);
            const double gn = sigmoid(s);
            center_grad += gn * m.out_embed.row(neg).transpose();
            m.out_embed.row(neg) -= lr * gn * f;
          }
          m.in_embed.row(u) -= lr * center_grad.transpose();
          ++pairs;
        }
      }
    }
    trace.epoch_loss.push_back(pairs == 0 ? 0.0 : loss / static_cast<double>(pairs));
  }
  return trace;
}

EmbeddingMatrix embeddings(const SkipgramModel& m) { return EmbeddingMatrix(m.vocab, m.in_embed); }

}  // namespace dynemb
