#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "dynemb/linalg.hpp"

namespace dynemb {

// Dense, stable ids for external node labels. Ids are handed out 0..N-1 in
// registration order and never change.
class NodeRegistry {
 public:
  NodeId register_node(const std::string& label);
  std::optional<NodeId> find(const std::string& label) const;
  const std::string& label(NodeId id) const { return labels_.at(static_cast<std::size_t>(id)); }
  std::size_t size() const noexcept { return labels_.size(); }
  bool contains(NodeId id) const noexcept {
    return id >= 0 && static_cast<std::size_t>(id) < labels_.size();
  }

 private:
  std::unordered_map<std::string, NodeId> ids_;
  std::vector<std::string> labels_;
};

struct TemporalEdge {
  NodeId src = 0;
  NodeId dst = 0;
  double timestamp = 0.0;
  double weight = 1.0;
  std::optional<int> label;
};

struct TemporalEdgeSet {
  std::vector<TemporalEdge> edges;
  double min_ts = 0.0;
  double max_ts = 0.0;
};

struct EdgeSchema {
  int src_col = 0;
  int dst_col = 1;
  int ts_col = 2;
  std::optional<int> weight_col = 3;  // used only when the line has that column
  std::optional<int> label_col;
};

struct IngestResult {
  NodeRegistry registry;
  TemporalEdgeSet edges;
  std::size_t self_loops_dropped = 0;
};

// Parses `src dst timestamp [weight]` lines. '#' lines and blank lines are
// skipped; self-loops are dropped. Throws MalformedLine (position = 1-based
// line number) or EmptyInput. An existing registry may be passed in so that
// several files share one id space.
IngestResult ingest_edge_list(std::istream& in, const EdgeSchema& schema = {},
                              NodeRegistry registry = {});
IngestResult ingest_edge_file(const std::string& path, const EdgeSchema& schema = {},
                              NodeRegistry registry = {});

struct Neighbor {
  NodeId id;
  double weight;
  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

struct Edge {
  NodeId u;
  NodeId v;
  double weight = 1.0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// One undirected graph G_i. Adjacency is symmetric, neighbor lists are sorted
// by id, and parallel edges are merged by summing weights.
class Snapshot {
 public:
  Snapshot() = default;
  Snapshot(std::size_t index, std::size_t num_nodes, std::span<const Edge> edges);

  std::size_t index() const noexcept { return index_; }
  std::size_t num_nodes() const noexcept { return adjacency_.size(); }
  // Number of edge records that fell in this window (before merging).
  std::size_t edge_count() const noexcept { return edge_count_; }
  const std::vector<NodeId>& node_set() const noexcept { return node_set_; }
  bool is_active(NodeId v) const noexcept;

  std::span<const Neighbor> neighbors(NodeId v) const noexcept;
  bool has_edge(NodeId u, NodeId v) const noexcept;
  std::optional<double> weight(NodeId u, NodeId v) const noexcept;
  std::size_t degree(NodeId v) const noexcept { return neighbors(v).size(); }

  // Unique undirected pairs with u < v, ordered by (u, v).
  std::vector<Edge> edges() const;
  std::size_t directed_entry_count() const noexcept { return directed_entries_; }

 private:
  std::size_t index_ = 0;
  std::size_t edge_count_ = 0;
  std::size_t directed_entries_ = 0;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<NodeId> node_set_;
};

inline std::span<const Neighbor> neighbors(const Snapshot& s, NodeId v) { return s.neighbors(v); }

struct SnapshotSequence {
  std::vector<Snapshot> snapshots;
  NodeRegistry registry;

  std::size_t size() const noexcept { return snapshots.size(); }
  const Snapshot& operator[](std::size_t i) const { return snapshots.at(i); }
};

struct SplitByCount {
  std::size_t count = 1;
};
struct SplitByWindow {
  double width = 1.0;
};
// Timestamps are already snapshot indices 0..T-1.
struct SplitByIndex {};

using SnapshotPolicy = std::variant<SplitByCount, SplitByWindow, SplitByIndex>;

std::size_t snapshot_slot(double ts, const TemporalEdgeSet& edges, const SnapshotPolicy& policy,
                          std::size_t num_slots);

// Buckets edges into equal-width half-open time windows (the last one
// closed) and builds one undirected Snapshot per window.
SnapshotSequence snapshot_split(const TemporalEdgeSet& edges, NodeRegistry registry,
                                const SnapshotPolicy& policy);

struct NodeLabels {
  std::unordered_map<NodeId, int> classes;
  std::vector<std::string> class_names;  // class id -> label text
};

// `node_label class_label` lines. Class labels get dense ids in order of first
// appearance; nodes unknown to the registry are ignored.
NodeLabels read_node_labels(std::istream& in, const NodeRegistry& registry);
NodeLabels read_node_labels_file(const std::string& path, const NodeRegistry& registry);

}  // namespace dynemb
