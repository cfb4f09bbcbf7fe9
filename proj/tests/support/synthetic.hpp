#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dynemb/graph.hpp"

namespace dynemb::synth {

struct CommunityStreamParams {
  std::size_t nodes = 200;
  std::size_t communities = 2;
  std::size_t snapshots = 10;
  double p_in = 0.05;
  double p_out = 0.002;
  std::uint64_t seed = 0;
  std::optional<NodeId> migrant;  // switches to the next community at migrate_at
  std::size_t migrate_at = 0;
};

struct CommunityStream {
  SnapshotSequence seq;
  std::vector<std::vector<int>> membership;  // [t][node]
  NodeLabels labels;                          // community at t = 0
};

// Independent planted-partition graph per snapshot; node i starts in i % C.
CommunityStream community_stream(const CommunityStreamParams& params);

// Two K_m joined by one bridge edge, identical in every snapshot.
SnapshotSequence clique_stream(std::size_t m, std::size_t snapshots);

inline int clique_of(NodeId v, std::size_t m) { return static_cast<std::size_t>(v) < m ? 0 : 1; }

}  // namespace dynemb::synth
