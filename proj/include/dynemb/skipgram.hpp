#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "dynemb/embedding.hpp"
#include "dynemb/lstm.hpp"
#include "dynemb/rng.hpp"
#include "dynemb/walker.hpp"

namespace dynemb {

// Skipgram with negative sampling. in_embed holds f(u); out_embed holds the
// context vectors g(c).
struct SkipgramModel {
  std::vector<NodeId> vocab;
  Mat in_embed;
  Mat out_embed;
  std::vector<double> noise;  // unigram^0.75 distribution over vocab rows
  AliasTable noise_table;     // over rows with nonzero noise mass
  std::vector<Eigen::Index> noise_rows;

  Eigen::Index dim() const { return in_embed.cols(); }
  std::optional<Eigen::Index> row_of(NodeId id) const;
  Eigen::Index sample_negative(Rng& rng) const { return noise_rows[alias_sample(noise_table, rng)]; }

  std::unordered_map<NodeId, Eigen::Index> rows;
};

// in_embed rows are copied from `warm` where it has the node (bit for bit),
// else drawn uniformly from [-0.5/d, 0.5/d]; out_embed starts at zero.
SkipgramModel init_skipgram(std::vector<NodeId> vocab, Eigen::Index dim, const EmbeddingMatrix* warm,
                            const WalkSet& corpus, Rng& rng);

struct SgnsConfig {
  std::size_t window = 10;
  std::size_t negatives = 5;
  std::size_t epochs = 5;
  double lr_start = 0.025;
  double lr_end = 0.0001;
};

// Loss of one (center, context, negatives) tuple:
//   -log s(f . g_c) - sum_j log s(-f . g_j)
template <typename F, typename G>
double sgns_pair_loss(const Eigen::MatrixBase<F>& f, const Eigen::MatrixBase<G>& context,
                      const Mat& negatives) {
  double loss = softplus(-f.dot(context));
  for (Eigen::Index j = 0; j < negatives.rows(); ++j) {
    loss += softplus(negatives.row(j).dot(f.transpose()));
  }
  return loss;
}

struct SgnsPairGrad {
  Vec d_center;
  Vec d_context;
  Mat d_negatives;  // one row per negative
};

template <typename F, typename G>
SgnsPairGrad sgns_pair_grad(const Eigen::MatrixBase<F>& f, const Eigen::MatrixBase<G>& context,
                            const Mat& negatives) {
  SgnsPairGrad g;
  const double pos = sigmoid(f.dot(context)) - 1.0;
  g.d_center = pos * context;
  g.d_context = pos * f;
  g.d_negatives.resize(negatives.rows(), f.size());
  for (Eigen::Index j = 0; j < negatives.rows(); ++j) {
    const double s = sigmoid(negatives.row(j).dot(f.transpose()));
    g.d_center += s * negatives.row(j).transpose();
    g.d_negatives.row(j) = s * f.transpose();
  }
  return g;
}

// Plain SGD over every (center, context) pair within `window` positions,
// with the learning rate decaying linearly from lr_start to lr_end over all
// center positions. Returns the mean pair loss of each epoch.
LossTrace train_sgns(SkipgramModel& m, const WalkSet& corpus, const SgnsConfig& config, Rng& rng);

EmbeddingMatrix embeddings(const SkipgramModel& m);

}  // namespace dynemb
