#include "synthetic.hpp"

#include <string>

#include "dynemb/rng.hpp"

namespace dynemb::synth {

namespace {

NodeRegistry numbered_registry(std::size_t n) {
  NodeRegistry r;
  for (std::size_t i = 0; i < n; ++i) r.register_node("n" + std::to_string(i));
  return r;
}

}  // namespace

CommunityStream community_stream(const CommunityStreamParams& params) {
  CommunityStream out;
  out.seq.registry = numbered_registry(params.nodes);
  const auto C = static_cast<int>(params.communities);
  for (std::size_t t = 0; t < params.snapshots; ++t) {
    std::vector<int> member(params.nodes);
    for (std::size_t i = 0; i < params.nodes; ++i) member[i] = static_cast<int>(i) % C;
    if (params.migrant && t >= params.migrate_at) {
      auto& m = member[static_cast<std::size_t>(*params.migrant)];
      m = (m + 1) % C;
    }
    Rng rng = make_rng(params.seed, {t});
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < params.nodes; ++i) {
      for (std::size_t j = i + 1; j < params.nodes; ++j) {
        const double p = member[i] == member[j] ? params.p_in : params.p_out;
        if (uniform01(rng) < p) edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j), 1.0});
      }
    }
    out.seq.snapshots.emplace_back(t, params.nodes, edges);
    out.membership.push_back(std::move(member));
  }
  for (std::size_t c = 0; c < params.communities; ++c) out.labels.class_names.push_back("c" + std::to_string(c));
  for (std::size_t i = 0; i < params.nodes; ++i) {
    out.labels.classes[static_cast<NodeId>(i)] = static_cast<int>(i) % C;
  }
  return out;
}

SnapshotSequence clique_stream(std::size_t m, std::size_t snapshots) {
  SnapshotSequence seq;
  seq.registry = numbered_registry(2 * m);
  std::vector<Edge> edges;
  for (std::size_t base : {std::size_t{0}, m}) {
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        edges.push_back({static_cast<NodeId>(base + i), static_cast<NodeId>(base + j), 1.0});
      }
    }
  }
  edges.push_back({0, static_cast<NodeId>(m), 1.0});
  for (std::size_t t = 0; t < snapshots; ++t) seq.snapshots.emplace_back(t, 2 * m, edges);
  return seq;
}

}  // namespace dynemb::synth
