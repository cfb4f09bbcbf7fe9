#include "dynemb/eval.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include <json.hpp>

#include "dynemb/error.hpp"

namespace dynemb {

// ---- injection --------------------------------------------------------------

InjectionResult inject_stars(const SnapshotSequence& seq, const InjectionPlan& plan, Rng& rng) {
  if (plan.n < 1 || plan.k_consec < 1) {
    throw Error(ErrorCode::InvalidArgument, "injection needs n >= 1 and k >= 1");
  }
  const std::size_t T = seq.size();
  std::vector<std::vector<Edge>> added(T);
  InjectionResult out;

  for (std::size_t first = plan.start; first + plan.k_consec <= T;
       first += plan.k_consec + plan.m_gap) {
    const Snapshot& base = seq[first];
    const auto& active = base.node_set();
    if (active.size() < (plan.cap_to_available ? 2 : plan.n + 1)) {
      throw Error(ErrorCode::InsufficientNonNeighbors,
                  "snapshot " + std::to_string(first) + " has " + std::to_string(active.size()) +
                      " active nodes; a star of " + std::to_string(plan.n) + " needs " +
                      std::to_string(plan.n + 1));
    }
    StarAnomaly star;
    star.target = active[uniform_index(rng, active.size())];
    for (std::size_t s = first; s < first + plan.k_consec; ++s) star.snapshots.push_back(s);

    std::vector<NodeId> candidates;
    for (NodeId v : active) {
      if (v == star.target) continue;
      bool linked = false;
      for (std::size_t s : star.snapshots) linked = linked || seq[s].has_edge(star.target, v);
      if (!linked) candidates.push_back(v);
    }
    const std::size_t n = plan.cap_to_available ? std::min(plan.n, candidates.size()) : plan.n;
    if (candidates.size() < n || n == 0) {
      throw Error(ErrorCode::InsufficientNonNeighbors,
                  "node " + seq.registry.label(star.target) + " has only " +
                      std::to_string(candidates.size()) + " non-neighbors, need " +
                      std::to_string(std::max<std::size_t>(n, 1)));
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::swap(candidates[i], candidates[i + uniform_index(rng, candidates.size() - i)]);
    }
    star.others.assign(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(n));
    for (std::size_t s : star.snapshots) {
      for (NodeId v : star.others) added[s].push_back({star.target, v, 1.0});
    }
    out.anomalies.push_back(std::move(star));
  }

  out.seq.registry = seq.registry;
  out.labels.per_snapshot.resize(T);
  for (std::size_t s = 0; s < T; ++s) {
    std::vector<Edge> edges = seq[s].edges();
    auto& labeled = out.labels.per_snapshot[s];
    for (const Edge& e : edges) labeled.push_back({e.u, e.v, EdgeClass::Normal});
    for (const Edge& e : added[s]) labeled.push_back({e.u, e.v, EdgeClass::Anomalous});
    edges.insert(edges.end(), added[s].begin(), added[s].end());
    out.seq.snapshots.emplace_back(s, seq.registry.size(), edges);
  }
  return out;
}

LabeledEdgeSet shuffle_labels(const LabeledEdgeSet& labels, Rng& rng) {
  LabeledEdgeSet out = labels;
  for (auto& snap : out.per_snapshot) {
    std::vector<EdgeClass> classes;
    for (const auto& e : snap) classes.push_back(e.label);
    shuffle(classes, rng);
    for (std::size_t i = 0; i < snap.size(); ++i) snap[i].label = classes[i];
  }
  return out;
}

// ---- edge features ----------------------------------------------------------

std::string to_string(EdgeOp op) {
  switch (op) {
    case EdgeOp::L1: return "l1";
    case EdgeOp::L2: return "l2";
    case EdgeOp::Hadamard: return "hadamard";
    case EdgeOp::Average: return "average";
  }
  return "?";
}

EdgeOp parse_edge_op(const std::string& text) {
  if (text == "l1") return EdgeOp::L1;
  if (text == "l2") return EdgeOp::L2;
  if (text == "hadamard") return EdgeOp::Hadamard;
  if (text == "average") return EdgeOp::Average;
  throw Error(ErrorCode::InvalidArgument, "unknown edge operator '" + text + "'");
}

Vec edge_embed(const EmbeddingMatrix& z, NodeId u, NodeId v, EdgeOp op) {
  return edge_feature(z.row(u), z.row(v), op);
}

// ---- logistic regression ----------------------------------------------------

namespace {

void check_labels(const Mat& features, std::span<const int> labels, std::span<const double> weights) {
  if (static_cast<Eigen::Index>(labels.size()) != features.rows()) {
    throw Error(ErrorCode::LengthMismatch, "labels and feature rows differ in count");
  }
  if (!weights.empty() && weights.size() != labels.size()) {
    throw Error(ErrorCode::LengthMismatch, "sample weights and labels differ in count");
  }
}

}  // namespace

LogRegGradient logreg_gradient(const LogRegModel& m, const Mat& features, std::span<const int> labels,
                               std::span<const double> sample_weights) {
  check_labels(features, labels, sample_weights);
  Vec residual = predict_scores(m, features);
  double total = 0.0;
  for (Eigen::Index i = 0; i < residual.size(); ++i) {
    const double w = sample_weights.empty() ? 1.0 : sample_weights[static_cast<std::size_t>(i)];
    residual(i) = (residual(i) - static_cast<double>(labels[static_cast<std::size_t>(i)])) * w;
    total += w;
  }
  LogRegGradient g;
  g.weights = features.transpose() * residual / total + m.reg * m.weights;
  g.bias = residual.sum() / total;
  return g;
}

LogRegModel train_logreg(const Mat& features, std::span<const int> labels, double reg,
                         std::size_t epochs, double lr, std::span<const double> sample_weights) {
  check_labels(features, labels, sample_weights);
  const auto positives = std::count(labels.begin(), labels.end(), 1);
  if (positives == 0 || positives == static_cast<std::ptrdiff_t>(labels.size())) {
    throw Error(ErrorCode::SingleClass, "logistic regression needs both classes");
  }
  LogRegModel m;
  m.weights = Vec::Zero(features.cols());
  m.reg = reg;
  for (std::size_t e = 0; e < epochs; ++e) {
    const LogRegGradient g = logreg_gradient(m, features, labels, sample_weights);
    m.weights -= lr * g.weights;
    m.bias -= lr * g.bias;
  }
  return m;
}

Vec predict_scores(const LogRegModel& m, const Mat& features) {
  if (features.cols() != m.weights.size()) {
    throw Error(ErrorCode::DimensionMismatch, "feature dimension " + std::to_string(features.cols()) +
                                                  " != model dimension " +
                                                  std::to_string(m.weights.size()));
  }
  Vec z = features * m.weights;
  z.array() += m.bias;
  return sigmoid(z);
}

// ---- metrics ----------------------------------------------------------------

double auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw Error(ErrorCode::LengthMismatch, "scores and labels differ in length");
  const auto n = scores.size();
  const auto pos = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), 1));
  const std::size_t neg = n - pos;
  if (pos == 0 || neg == 0) throw Error(ErrorCode::SingleClass, "AUC needs positives and negatives");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double rank_sum = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t r = i; r < j; ++r) {
      if (labels[order[r]] == 1) rank_sum += midrank;
    }
    i = j;
  }
  const double u = rank_sum - static_cast<double>(pos) * static_cast<double>(pos + 1) / 2.0;
  return u / (static_cast<double>(pos) * static_cast<double>(neg));
}

F1Scores f1_scores(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size()) throw Error(ErrorCode::LengthMismatch, "prediction and truth differ in length");
  if (predicted.empty()) throw Error(ErrorCode::InvalidArgument, "F1 needs at least one example");
  std::map<int, std::array<std::size_t, 3>> counts;  // class -> tp, fp, fn
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] == truth[i]) {
      ++counts[truth[i]][0];
    } else {
      ++counts[predicted[i]][1];
      ++counts[truth[i]][2];
    }
  }
  double macro = 0.0;
  std::size_t tp = 0, fp = 0, fn = 0;
  for (const auto& [cls, c] : counts) {
    macro += 2.0 * static_cast<double>(c[0]) / static_cast<double>(2 * c[0] + c[1] + c[2]);
    tp += c[0];
    fp += c[1];
    fn += c[2];
  }
  macro /= static_cast<double>(counts.size());
  const double micro = 2.0 * static_cast<double>(tp) / static_cast<double>(2 * tp + fp + fn);
  return {macro, micro};
}

// ---- reports ----------------------------------------------------------------

double EvalReport::average(const std::string& metric) const {
  for (std::size_t i = 0; i < metrics.size(); ++i) {
    if (metrics[i] == metric) return averages.at(i);
  }
  throw Error(ErrorCode::InvalidArgument, "report has no metric '" + metric + "'");
}

const PointResult* EvalReport::point(std::size_t t) const {
  for (const auto& p : per_time_point) {
    if (p.t == t) return &p;
  }
  return nullptr;
}

std::string to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["task"] = report.task;
  j["per_time_point"] = nlohmann::ordered_json::array();
  for (const auto& p : report.per_time_point) {
    nlohmann::ordered_json row;
    row["t"] = p.t;
    for (std::size_t i = 0; i < report.metrics.size(); ++i) row[report.metrics[i]] = p.values[i];
    if (p.positives + p.negatives > 0) {
      row["positives"] = p.positives;
      row["negatives"] = p.negatives;
    }
    j["per_time_point"].push_back(row);
  }
  j["skipped"] = nlohmann::ordered_json::array();
  for (const auto& s : report.skipped) j["skipped"].push_back({{"t", s.t}, {"reason", s.reason}});
  nlohmann::ordered_json avg;
  for (std::size_t i = 0; i < report.metrics.size(); ++i) avg[report.metrics[i]] = report.averages[i];
  j["average"] = avg;
  j["config"] = nlohmann::ordered_json::parse(report.config_json);
  j["seed"] = report.seed;
  return j.dump(2);
}

namespace {

void finalize(EvalReport& r) {
  r.averages.assign(r.metrics.size(), 0.0);
  if (r.per_time_point.empty()) {
    throw Error(ErrorCode::NoTrainingData, "no time point of task '" + r.task + "' could be evaluated");
  }
  for (std::size_t m = 0; m < r.metrics.size(); ++m) {
    double sum = 0.0;
    for (const auto& p : r.per_time_point) sum += p.values[m];
    r.averages[m] = sum / static_cast<double>(r.per_time_point.size());
  }
}

std::string classifier_json(const ClassifierConfig& c, const EmbeddingStream& es) {
  nlohmann::ordered_json j;
  j["op"] = to_string(c.op);
  j["reg"] = c.reg;
  j["epochs"] = c.epochs;
  j["lr"] = c.lr;
  j["standardize"] = c.standardize;
  j["balance_classes"] = c.balance_classes;
  j["embedding_method"] = es.method;
  return j.dump();
}

// Column standardization fit on the training rows.
struct Standardizer {
  Vec mean;
  Vec scale;

  static Standardizer fit(const Mat& x, bool enabled) {
    Standardizer s;
    s.mean = Vec::Zero(x.cols());
    s.scale = Vec::Ones(x.cols());
    if (!enabled || x.rows() == 0) return s;
    s.mean = x.colwise().mean().transpose();
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      const double var = (x.col(c).array() - s.mean(c)).square().mean();
      s.scale(c) = var > 1e-24 ? 1.0 / std::sqrt(var) : 1.0;
    }
    return s;
  }

  Mat apply(const Mat& x) const {
    Mat out = x;
    out.rowwise() -= mean.transpose();
    out.array().rowwise() *= scale.transpose().array();
    return out;
  }
};

std::vector<double> balanced_weights(std::span<const int> labels) {
  std::map<int, std::size_t> counts;
  for (int y : labels) ++counts[y];
  std::vector<double> w(labels.size());
  const double n = static_cast<double>(labels.size());
  const double k = static_cast<double>(counts.size());
  for (std::size_t i = 0; i < labels.size(); ++i) w[i] = n / (k * static_cast<double>(counts[labels[i]]));
  return w;
}

struct FeatureSet {
  std::vector<Vec> rows;
  std::vector<int> labels;

  void add(Vec x, int y) {
    rows.push_back(std::move(x));
    labels.push_back(y);
  }
  Mat matrix(Eigen::Index dim) const {
    Mat m(static_cast<Eigen::Index>(rows.size()), dim);
    for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    return m;
  }
  std::size_t count(int y) const { return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), y)); }
  bool has_both_classes() const {
    const auto pos = std::count(labels.begin(), labels.end(), 1);
    return pos > 0 && pos < static_cast<std::ptrdiff_t>(labels.size());
  }
};

// Fit on train, return scores for test.
Vec fit_and_score(const FeatureSet& train, const FeatureSet& test, Eigen::Index dim,
                  const ClassifierConfig& cls) {
  const Mat x_train = train.matrix(dim);
  const Standardizer st = Standardizer::fit(x_train, cls.standardize);
  const auto weights = cls.balance_classes ? balanced_weights(train.labels) : std::vector<double>{};
  const LogRegModel model = train_logreg(st.apply(x_train), train.labels, cls.reg, cls.epochs, cls.lr, weights);
  return predict_scores(model, st.apply(test.matrix(dim)));
}

double auc_of(const Vec& scores, const std::vector<int>& labels) {
  return auc(std::span<const double>(scores.data(), static_cast<std::size_t>(scores.size())), labels);
}

}  // namespace

EvalReport run_anomaly_task(const EmbeddingStream& es, const LabeledEdgeSet& labeled,
                            const ClassifierConfig& cls) {
  EvalReport report;
  report.task = "anomaly";
  report.metrics = {"auc"};
  report.seed = cls.seed;
  report.config_json = classifier_json(cls, es);
  const Eigen::Index dim = es.config.dim;

  FeatureSet train;
  for (std::size_t i = 0; i < es.times.size(); ++i) {
    const std::size_t t = es.times[i];
    if (t >= labeled.per_snapshot.size()) {
      throw Error(ErrorCode::InvalidArgument, "no edge labels for snapshot " + std::to_string(t));
    }
    const EmbeddingMatrix& z = es.matrices[i];
    FeatureSet test;
    for (const auto& e : labeled.per_snapshot[t]) {
      test.add(edge_embed(z, e.u, e.v, cls.op), static_cast<int>(e.label));
    }
    if (train.rows.empty()) {
      report.skipped.push_back({t, "NoTrainingData: no earlier embedded snapshot"});
    } else if (!train.has_both_classes()) {
      report.skipped.push_back({t, "SingleClass: training edges have a single class"});
    } else if (!test.has_both_classes()) {
      report.skipped.push_back({t, "SingleClass: snapshot has no edges of one class"});
    } else {
      report.per_time_point.push_back(
          {t, {auc_of(fit_and_score(train, test, dim, cls), test.labels)}, test.count(1), test.count(0)});
    }
    for (std::size_t r = 0; r < test.rows.size(); ++r) train.add(std::move(test.rows[r]), test.labels[r]);
  }
  finalize(report);
  return report;
}

std::vector<Edge> sample_non_edges(const Snapshot& s, std::span<const NodeId> pool, std::size_t count,
                                   Rng& rng) {
  std::vector<NodeId> nodes(pool.begin(), pool.end());
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  const std::size_t n = nodes.size();
  const double pairs = static_cast<double>(n) * static_cast<double>(n > 0 ? n - 1 : 0) / 2.0;

  std::size_t adjacent = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (const Neighbor& nb : s.neighbors(nodes[i])) {
      if (nb.id > nodes[i] && std::binary_search(nodes.begin(), nodes.end(), nb.id)) ++adjacent;
    }
  }
  const double available = pairs - static_cast<double>(adjacent);
  if (static_cast<double>(count) > available) {
    throw Error(ErrorCode::NotEnoughNegatives, "requested " + std::to_string(count) +
                                                   " non-edges but only " +
                                                   std::to_string(static_cast<std::size_t>(available)) +
                                                   " exist");
  }
  std::vector<Edge> out;
  if (count == 0) return out;
  if (available <= 4.0 * static_cast<double>(count) || pairs <= 2e6) {
    std::vector<Edge> all;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!s.has_edge(nodes[i], nodes[j])) all.push_back({nodes[i], nodes[j], 1.0});
      }
    }
    for (std::size_t i = 0; i < count; ++i) {
      std::swap(all[i], all[i + uniform_index(rng, all.size() - i)]);
    }
    out.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(count));
    return out;
  }
  std::set<std::pair<NodeId, NodeId>> seen;
  while (out.size() < count) {
    NodeId a = nodes[uniform_index(rng, n)];
    NodeId b = nodes[uniform_index(rng, n)];
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    if (s.has_edge(a, b) || !seen.emplace(a, b).second) continue;
    out.push_back({a, b, 1.0});
  }
  return out;
}

std::vector<Edge> sample_negative_edges(const Snapshot& s, std::size_t count, Rng& rng) {
  return sample_non_edges(s, s.node_set(), count, rng);
}

EvalReport run_link_prediction(const EmbeddingStream& es, const SnapshotSequence& seq,
                               const ClassifierConfig& cls) {
  if (es.times.size() < 2) {
    throw Error(ErrorCode::NoTrainingData, "link prediction needs at least two embedded snapshots");
  }
  EvalReport report;
  report.task = "link";
  report.metrics = {"auc"};
  report.seed = cls.seed;
  report.config_json = classifier_json(cls, es);
  const Eigen::Index dim = es.config.dim;

  FeatureSet train;
  for (std::size_t i = 0; i < es.times.size(); ++i) {
    const std::size_t t = es.times[i];
    if (t >= seq.size()) throw Error(ErrorCode::InvalidArgument, "embedding for unknown snapshot " + std::to_string(t));
    const Snapshot& g = seq[t];

    const EmbeddingMatrix* z_prev = t > 0 ? es.at(t - 1) : nullptr;
    if (z_prev == nullptr) {
      report.skipped.push_back({t, "NoTrainingData: no embeddings precede this snapshot"});
    } else if (train.rows.empty() || !train.has_both_classes()) {
      report.skipped.push_back({t, "NoTrainingData: no earlier embedded snapshot"});
    } else {
      Rng rng = make_rng(cls.seed, {tag(Stream::Negatives), t, 1});
      std::vector<NodeId> pool;
      for (NodeId v : g.node_set()) {
        if (z_prev->contains(v)) pool.push_back(v);
      }
      std::vector<Edge> positives;
      for (const Edge& e : g.edges()) {
        if (z_prev->contains(e.u) && z_prev->contains(e.v)) positives.push_back(e);
      }
      FeatureSet test;
      const std::size_t available = pool.size() * (pool.size() - (pool.empty() ? 0 : 1)) / 2 - positives.size();
      const std::size_t count = std::min(positives.size(), available);
      if (count < positives.size()) {
        shuffle(positives, rng);
        positives.resize(count);
      }
      for (const Edge& e : positives) test.add(edge_embed(*z_prev, e.u, e.v, cls.op), 1);
      for (const Edge& e : sample_non_edges(g, pool, count, rng)) test.add(edge_embed(*z_prev, e.u, e.v, cls.op), 0);
      if (!test.has_both_classes()) {
        report.skipped.push_back({t, "SingleClass: no scorable edges or non-edges"});
      } else {
        report.per_time_point.push_back(
          {t, {auc_of(fit_and_score(train, test, dim, cls), test.labels)}, test.count(1), test.count(0)});
      }
    }

    // this snapshot joins the training pool, featurized with its own Z
    const EmbeddingMatrix& z = es.matrices[i];
    Rng rng = make_rng(cls.seed, {tag(Stream::Negatives), t, 0});
    std::vector<Edge> positives;
    for (const Edge& e : g.edges()) {
      if (z.contains(e.u) && z.contains(e.v)) positives.push_back(e);
    }
    std::vector<NodeId> pool;
    for (NodeId v : g.node_set()) {
      if (z.contains(v)) pool.push_back(v);
    }
    const std::size_t possible = pool.size() * (pool.size() - (pool.empty() ? 0 : 1)) / 2 - positives.size();
    if (possible < positives.size()) {
      shuffle(positives, rng);
      positives.resize(possible);
    }
    for (const Edge& e : positives) train.add(edge_embed(z, e.u, e.v, cls.op), 1);
    for (const Edge& e : sample_non_edges(g, pool, positives.size(), rng)) {
      train.add(edge_embed(z, e.u, e.v, cls.op), 0);
    }
  }
  finalize(report);
  return report;
}

EvalReport run_node_classification(const EmbeddingStream& es, const NodeLabels& labels,
                                   const ClassifierConfig& cls) {
  if (es.times.size() < 2) {
    throw Error(ErrorCode::NoTrainingData, "node classification needs at least two embedded snapshots");
  }
  std::set<int> seen;
  for (const auto& z : es.matrices) {
    for (NodeId id : z.ids()) {
      if (auto it = labels.classes.find(id); it != labels.classes.end()) seen.insert(it->second);
    }
  }
  if (seen.size() < 2) throw Error(ErrorCode::SingleClass, "labels cover fewer than two classes among embedded nodes");

  EvalReport report;
  report.task = "node";
  report.metrics = {"macro_f1", "micro_f1"};
  report.seed = cls.seed;
  report.config_json = classifier_json(cls, es);
  const Eigen::Index dim = es.config.dim;

  for (std::size_t i = 0; i < es.times.size(); ++i) {
    const std::size_t t = es.times[i];
    const EmbeddingMatrix* z_prev = t > 0 ? es.at(t - 1) : nullptr;
    if (z_prev == nullptr) {
      report.skipped.push_back({t, "NoTrainingData: no embeddings precede this snapshot"});
      continue;
    }
    const EmbeddingMatrix& z = es.matrices[i];
    std::vector<Vec> train_rows;
    std::vector<int> train_classes;
    for (NodeId id : z_prev->ids()) {
      if (auto it = labels.classes.find(id); it != labels.classes.end()) {
        train_rows.push_back(z_prev->row(id));
        train_classes.push_back(it->second);
      }
    }
    std::set<int> classes(train_classes.begin(), train_classes.end());
    if (classes.size() < 2) {
      report.skipped.push_back({t, "SingleClass: training nodes have a single class"});
      continue;
    }
    FeatureSet test;
    for (NodeId id : z.ids()) {
      if (auto it = labels.classes.find(id); it != labels.classes.end()) test.add(z.row(id), it->second);
    }
    if (test.rows.empty()) {
      report.skipped.push_back({t, "no labeled nodes in this snapshot"});
      continue;
    }

    Mat best = Mat::Constant(static_cast<Eigen::Index>(test.rows.size()), 1, -1.0);
    std::vector<int> predicted(test.rows.size(), *classes.begin());
    for (int c : classes) {
      FeatureSet train;
      for (std::size_t r = 0; r < train_rows.size(); ++r) train.add(train_rows[r], train_classes[r] == c ? 1 : 0);
      const Vec scores = fit_and_score(train, test, dim, cls);
      for (Eigen::Index r = 0; r < scores.size(); ++r) {
        if (scores(r) > best(r, 0)) {
          best(r, 0) = scores(r);
          predicted[static_cast<std::size_t>(r)] = c;
        }
      }
    }
    const F1Scores f1 = f1_scores(predicted, test.labels);
    report.per_time_point.push_back({t, {f1.macro, f1.micro}});
  }
  finalize(report);
  return report;
}

}  // namespace dynemb
