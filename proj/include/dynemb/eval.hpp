#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dynemb/embedding.hpp"
#include "dynemb/graph.hpp"
#include "dynemb/pipeline.hpp"
#include "dynemb/rng.hpp"

namespace dynemb {

// ---- star anomaly injection -------------------------------------------------

struct InjectionPlan {
  std::size_t n = 10;        // edges per star
  std::size_t k_consec = 3;  // consecutive snapshots carrying the same star
  std::size_t m_gap = 2;     // snapshots skipped between stars
  std::size_t start = 0;     // first snapshot that may receive a star
  // Shrink a star to the target's non-neighbors instead of failing.
  bool cap_to_available = false;
};

enum class EdgeClass : int { Normal = 0, Anomalous = 1 };

struct LabeledEdge {
  NodeId u;
  NodeId v;
  EdgeClass label;
  friend bool operator==(const LabeledEdge&, const LabeledEdge&) = default;
};

struct LabeledEdgeSet {
  std::vector<std::vector<LabeledEdge>> per_snapshot;
};

struct StarAnomaly {
  std::vector<std::size_t> snapshots;
  NodeId target;
  std::vector<NodeId> others;
};

struct InjectionResult {
  SnapshotSequence seq;
  LabeledEdgeSet labels;
  std::vector<StarAnomaly> anomalies;
};

// Adds stars of n new edges (target -> n nodes it has no edge to) to
// k_consec consecutive snapshots, then skips m_gap snapshots, repeating
// while a full group fits. Throws InsufficientNonNeighbors (with
// cap_to_available, only when a target has no non-neighbor at all).
InjectionResult inject_stars(const SnapshotSequence& seq, const InjectionPlan& plan, Rng& rng);

// Permutes labels within each snapshot (null-model baseline).
LabeledEdgeSet shuffle_labels(const LabeledEdgeSet& labels, Rng& rng);

// ---- edge features ----------------------------------------------------------

enum class EdgeOp { L1, L2, Hadamard, Average };

std::string to_string(EdgeOp op);
EdgeOp parse_edge_op(const std::string& text);

template <typename A, typename B>
Vec edge_feature(const Eigen::MatrixBase<A>& fu, const Eigen::MatrixBase<B>& fv, EdgeOp op) {
  switch (op) {
    case EdgeOp::L1: return fu - fv;
    case EdgeOp::L2: return (fu - fv).cwiseAbs2();
    case EdgeOp::Hadamard: return fu.cwiseProduct(fv);
    case EdgeOp::Average: return (fu + fv) / 2.0;
  }
  return {};
}

// Throws MissingNode when either endpoint has no vector in z.
Vec edge_embed(const EmbeddingMatrix& z, NodeId u, NodeId v, EdgeOp op);

// ---- logistic regression ----------------------------------------------------

struct LogRegModel {
  Vec weights;
  double bias = 0.0;
  double reg = 0.0;
};

struct LogRegGradient {
  Vec weights;
  double bias;
};

// Gradient of mean logistic loss + reg/2 |w|^2, optionally with per-example weights.
LogRegGradient logreg_gradient(const LogRegModel& m, const Mat& features, std::span<const int> labels,
                               std::span<const double> sample_weights = {});

// Full-batch gradient descent from zero. Throws SingleClass.
LogRegModel train_logreg(const Mat& features, std::span<const int> labels, double reg,
                         std::size_t epochs, double lr, std::span<const double> sample_weights = {});

// sigmoid(w . x + b) per row. Throws DimensionMismatch.
Vec predict_scores(const LogRegModel& m, const Mat& features);

// ---- metrics ----------------------------------------------------------------

// Mann-Whitney AUC with ties counted 1/2. Throws SingleClass.
double auc(std::span<const double> scores, std::span<const int> labels);

struct F1Scores {
  double macro;
  double micro;
};

// Classes absent from both vectors do not enter the macro average.
F1Scores f1_scores(std::span<const int> predicted, std::span<const int> truth);

// ---- protocols --------------------------------------------------------------

struct ClassifierConfig {
  EdgeOp op = EdgeOp::L1;
  double reg = 1e-3;
  std::size_t epochs = 300;
  double lr = 0.5;
  bool standardize = true;
  bool balance_classes = true;
  std::uint64_t seed = 0;
};

struct PointResult {
  std::size_t t;
  std::vector<double> values;  // aligned with EvalReport::metrics
  std::size_t positives = 0;   // test examples per class (edge tasks)
  std::size_t negatives = 0;
};

struct SkippedPoint {
  std::size_t t;
  std::string reason;
};

struct EvalReport {
  std::string task;
  std::vector<std::string> metrics;
  std::vector<PointResult> per_time_point;
  std::vector<SkippedPoint> skipped;
  std::vector<double> averages;  // arithmetic mean over per_time_point
  std::string config_json = "{}";
  std::uint64_t seed = 0;

  double average(const std::string& metric) const;
  const PointResult* point(std::size_t t) const;
};

std::string to_json(const EvalReport& report);

// Edge classification at every embedded time point, trained on all earlier
// embedded time points (each edge featurized with its own snapshot's Z).
EvalReport run_anomaly_task(const EmbeddingStream& es, const LabeledEdgeSet& labeled,
                            const ClassifierConfig& cls);

// `count` distinct node pairs drawn uniformly from pairs of `pool` nodes that
// are not adjacent in s. Throws NotEnoughNegatives.
std::vector<Edge> sample_non_edges(const Snapshot& s, std::span<const NodeId> pool, std::size_t count,
                                   Rng& rng);
std::vector<Edge> sample_negative_edges(const Snapshot& s, std::size_t count, Rng& rng);

// Predicts the edges of G_t from Z_{t-1}, trained on edges and equally many
// non-edges of all earlier embedded snapshots.
EvalReport run_link_prediction(const EmbeddingStream& es, const SnapshotSequence& seq,
                               const ClassifierConfig& cls);

// One-vs-rest logistic regression fit on Z_{t-1}, scored on Z_t.
EvalReport run_node_classification(const EmbeddingStream& es, const NodeLabels& labels,
                                   const ClassifierConfig& cls);

}  // namespace dynemb
