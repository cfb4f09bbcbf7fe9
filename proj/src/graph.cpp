#include "dynemb/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "dynemb/error.hpp"

namespace dynemb {

NodeId NodeRegistry::register_node(const std::string& label) {
  auto [it, inserted] = ids_.try_emplace(label, static_cast<NodeId>(labels_.size()));
  if (inserted) labels_.push_back(label);
  return it->second;
}

std::optional<NodeId> NodeRegistry::find(const std::string& label) const {
  auto it = ids_.find(label);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

std::optional<double> parse_real(std::string_view text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

bool is_comment_or_blank(std::string_view line) {
  auto first = line.find_first_not_of(" \t\r");
  return first == std::string_view::npos || line[first] == '#';
}

}  // namespace

IngestResult ingest_edge_list(std::istream& in, const EdgeSchema& schema, NodeRegistry registry) {
  IngestResult out;
  out.registry = std::move(registry);
  const int required = std::max({schema.src_col, schema.dst_col, schema.ts_col}) + 1;

  std::string line;
  std::size_t line_no = 0;
  bool have_range = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    auto fields = split_fields(line);
    if (static_cast<int>(fields.size()) < required) {
      throw Error(ErrorCode::MalformedLine,
                  "line " + std::to_string(line_no) + ": expected at least " +
                      std::to_string(required) + " columns, got " + std::to_string(fields.size()),
                  line_no);
    }
    auto ts = parse_real(fields[static_cast<std::size_t>(schema.ts_col)]);
    if (!ts) {
      throw Error(ErrorCode::MalformedLine,
                  "line " + std::to_string(line_no) + ": non-numeric timestamp", line_no);
    }
    double weight = 1.0;
    if (schema.weight_col && static_cast<int>(fields.size()) > *schema.weight_col) {
      auto w = parse_real(fields[static_cast<std::size_t>(*schema.weight_col)]);
      if (!w || *w <= 0.0) {
        throw Error(ErrorCode::MalformedLine,
                    "line " + std::to_string(line_no) + ": weight must be a positive number",
                    line_no);
      }
      weight = *w;
    }
    std::optional<int> label;
    if (schema.label_col && static_cast<int>(fields.size()) > *schema.label_col) {
      auto l = parse_real(fields[static_cast<std::size_t>(*schema.label_col)]);
      if (!l) {
        throw Error(ErrorCode::MalformedLine,
                    "line " + std::to_string(line_no) + ": non-numeric edge label", line_no);
      }
      label = static_cast<int>(*l);
    }

    const std::string src(fields[static_cast<std::size_t>(schema.src_col)]);
    const std::string dst(fields[static_cast<std::size_t>(schema.dst_col)]);
    if (src == dst) {
      ++out.self_loops_dropped;
      continue;
    }
    TemporalEdge e;
    e.src = out.registry.register_node(src);
    e.dst = out.registry.register_node(dst);
    e.timestamp = *ts;
    e.weight = weight;
    e.label = label;
    out.edges.edges.push_back(e);
    if (!have_range) {
      out.edges.min_ts = out.edges.max_ts = *ts;
      have_range = true;
    } else {
      out.edges.min_ts = std::min(out.edges.min_ts, *ts);
      out.edges.max_ts = std::max(out.edges.max_ts, *ts);
    }
  }
  if (out.edges.edges.empty()) throw Error(ErrorCode::EmptyInput, "no valid edges in input");
  return out;
}

IngestResult ingest_edge_file(const std::string& path, const EdgeSchema& schema,
                              NodeRegistry registry) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open edge list '" + path + "'");
  return ingest_edge_list(in, schema, std::move(registry));
}

Snapshot::Snapshot(std::size_t index, std::size_t num_nodes, std::span<const Edge> edges)
    : index_(index), edge_count_(edges.size()), adjacency_(num_nodes) {
  for (const Edge& e : edges) {
    adjacency_.at(static_cast<std::size_t>(e.u)).push_back({e.v, e.weight});
    adjacency_.at(static_cast<std::size_t>(e.v)).push_back({e.u, e.weight});
  }
  for (std::size_t v = 0; v < adjacency_.size(); ++v) {
    auto& list = adjacency_[v];
    if (list.empty()) continue;
    std::stable_sort(list.begin(), list.end(),
              [](const Neighbor& a, const Neighbor& b) { return a.id < b.id; });
    // merge parallel entries; input order is fixed so the summation order is too
    std::size_t w = 0;
    for (std::size_t r = 1; r < list.size(); ++r) {
      if (list[r].id == list[w].id) {
        list[w].weight += list[r].weight;
      } else {
        list[++w] = list[r];
      }
    }
    list.resize(w + 1);
    directed_entries_ += list.size();
    node_set_.push_back(static_cast<NodeId>(v));
  }
}

bool Snapshot::is_active(NodeId v) const noexcept { return !neighbors(v).empty(); }

std::span<const Neighbor> Snapshot::neighbors(NodeId v) const noexcept {
  if (v < 0 || static_cast<std::size_t>(v) >= adjacency_.size()) return {};
  return adjacency_[static_cast<std::size_t>(v)];
}

std::optional<double> Snapshot::weight(NodeId u, NodeId v) const noexcept {
  auto list = neighbors(u);
  auto it = std::lower_bound(list.begin(), list.end(), v,
                             [](const Neighbor& n, NodeId id) { return n.id < id; });
  if (it == list.end() || it->id != v) return std::nullopt;
  return it->weight;
}

bool Snapshot::has_edge(NodeId u, NodeId v) const noexcept { return weight(u, v).has_value(); }

std::vector<Edge> Snapshot::edges() const {
  std::vector<Edge> out;
  out.reserve(directed_entries_ / 2);
  for (NodeId u : node_set_) {
    for (const Neighbor& n : adjacency_[static_cast<std::size_t>(u)]) {
      if (n.id > u) out.push_back({u, n.id, n.weight});
    }
  }
  return out;
}

namespace {

std::size_t slot_count(const TemporalEdgeSet& edges, const SnapshotPolicy& policy) {
  return std::visit(
      [&](const auto& p) -> std::size_t {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, SplitByCount>) {
          if (p.count < 1) throw Error(ErrorCode::InvalidArgument, "snapshot count must be >= 1");
          if (edges.min_ts == edges.max_ts && p.count > 1) {
            throw Error(ErrorCode::DegenerateRange,
                        "all timestamps are equal; cannot split into " +
                            std::to_string(p.count) + " snapshots");
          }
          return p.count;
        } else if constexpr (std::is_same_v<P, SplitByWindow>) {
          if (!(p.width > 0.0)) throw Error(ErrorCode::InvalidArgument, "window must be > 0");
          return static_cast<std::size_t>(std::floor((edges.max_ts - edges.min_ts) / p.width)) + 1;
        } else {
          if (edges.min_ts < 0.0) {
            throw Error(ErrorCode::InvalidArgument, "snapshot indices must be >= 0");
          }
          return static_cast<std::size_t>(edges.max_ts) + 1;
        }
      },
      policy);
}

}  // namespace

std::size_t snapshot_slot(double ts, const TemporalEdgeSet& edges, const SnapshotPolicy& policy,
                          std::size_t num_slots) {
  std::size_t slot = std::visit(
      [&](const auto& p) -> std::size_t {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, SplitByCount>) {
          if (num_slots == 1) return 0;
          double f = (ts - edges.min_ts) * static_cast<double>(num_slots) /
                     (edges.max_ts - edges.min_ts);
          return static_cast<std::size_t>(std::floor(f));
        } else if constexpr (std::is_same_v<P, SplitByWindow>) {
          return static_cast<std::size_t>(std::floor((ts - edges.min_ts) / p.width));
        } else {
          if (ts != std::floor(ts)) {
            throw Error(ErrorCode::InvalidArgument,
                        "timestamp " + std::to_string(ts) + " is not a snapshot index");
          }
          return static_cast<std::size_t>(ts);
        }
      },
      policy);
  return std::min(slot, num_slots - 1);
}

SnapshotSequence snapshot_split(const TemporalEdgeSet& edges, NodeRegistry registry,
                                const SnapshotPolicy& policy) {
  const std::size_t num_slots = slot_count(edges, policy);
  std::vector<std::vector<Edge>> buckets(num_slots);
  for (const TemporalEdge& e : edges.edges) {
    if (!registry.contains(e.src) || !registry.contains(e.dst)) {
      throw Error(ErrorCode::InvalidArgument, "edge references an unregistered node");
    }
    if (!(e.weight > 0.0)) throw Error(ErrorCode::NonPositiveWeight, "edge weight must be > 0");
    if (e.src == e.dst) continue;
    buckets[snapshot_slot(e.timestamp, edges, policy, num_slots)].push_back(
        {e.src, e.dst, e.weight});
  }
  SnapshotSequence seq;
  seq.snapshots.reserve(num_slots);
  for (std::size_t i = 0; i < num_slots; ++i) {
    seq.snapshots.emplace_back(i, registry.size(), buckets[i]);
  }
  seq.registry = std::move(registry);
  return seq;
}

NodeLabels read_node_labels(std::istream& in, const NodeRegistry& registry) {
  NodeLabels out;
  std::unordered_map<std::string, int> class_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_comment_or_blank(line)) continue;
    auto fields = split_fields(line);
    if (fields.size() < 2) {
      throw Error(ErrorCode::MalformedLine,
                  "line " + std::to_string(line_no) + ": expected `node class`", line_no);
    }
    auto [it, inserted] =
        class_ids.try_emplace(std::string(fields[1]), static_cast<int>(out.class_names.size()));
    if (inserted) out.class_names.emplace_back(fields[1]);
    if (auto id = registry.find(std::string(fields[0]))) out.classes[*id] = it->second;
  }
  return out;
}

NodeLabels read_node_labels_file(const std::string& path, const NodeRegistry& registry) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open label file '" + path + "'");
  return read_node_labels(in, registry);
}

}  // namespace dynemb
