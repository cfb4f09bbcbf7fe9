#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "dynemb/graph.hpp"
#include "dynemb/rng.hpp"

namespace dynemb {

// Walker's alias method: O(n) construction, O(1) draws.
struct AliasTable {
  std::vector<double> prob;
  std::vector<std::uint32_t> alias;

  std::size_t size() const noexcept { return prob.size(); }
};

AliasTable build_alias_table(std::span<const double> weights);

// One uniform draw picks the slot, a second decides between the slot and its alias.
inline std::size_t alias_sample(const AliasTable& table, Rng& rng) {
  const std::size_t slot = uniform_index(rng, table.size());
  return uniform01(rng) < table.prob[slot] ? slot : table.alias[slot];
}

// Exact distribution represented by a table: P(j) = (prob[j] + sum over
// slots aliased to j of (1 - prob[slot])) / n.
std::vector<double> alias_distribution(const AliasTable& table);

enum class WalkKind { Static, Temporal };

struct Walk {
  std::vector<NodeId> nodes;
  WalkKind kind = WalkKind::Static;
  NodeId anchor = -1;                 // temporal walks only
  std::vector<std::size_t> snapshots;  // temporal walks: source snapshot of each element
};

struct WalkSet {
  std::vector<Walk> walks;

  std::size_t size() const noexcept { return walks.size(); }
  bool empty() const noexcept { return walks.empty(); }
  // Sorted, unique node ids that appear in any walk.
  std::vector<NodeId> vocab() const;
  std::size_t token_count() const;
};

// node2vec's search bias alpha_pq for a candidate at distance 0, 1 or 2
// from the previous node.
inline double search_bias(int distance, double p, double q) {
  switch (distance) {
    case 0: return 1.0 / p;
    case 1: return 1.0;
    default: return 1.0 / q;
  }
}

// 0 if u == prev, 1 if u is adjacent to prev in s, else 2.
int step_distance(const Snapshot& s, NodeId prev, NodeId u);

struct Node2vecParams {
  double p = 0.25;
  double q = 1.0;
  std::size_t walks_per_node = 10;
  std::size_t walk_length = 80;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
  // Above this many directed adjacency entries, second-order transition
  // tables are not precomputed and steps are sampled on the fly.
  std::size_t precompute_limit = 1'000'000;
};

// Second-order biased walks from every active node of s. Output order is
// (start node ascending, walk index ascending) regardless of thread count.
WalkSet node2vec_walks(const Snapshot& s, const Node2vecParams& params);

// Probability of each neighbor of v (in neighbor order) as the next step
// after arriving from prev. Brute-force normalization used by tests and the
// on-the-fly sampler.
std::vector<double> transition_weights(const Snapshot& s, NodeId prev, NodeId v, double p,
                                       double q);

enum class TemporalBias { Uniform, SecondOrder };

struct TemporalWalkParams {
  std::size_t window = 2;  // L
  std::size_t walks_per_node = 10;
  TemporalBias bias = TemporalBias::Uniform;
  double p = 0.25;
  double q = 1.0;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

// For each node active in snapshot t, up to k sequences of its neighbors,
// one per snapshot of the window [t-L+1, t] in which it is active. Sequences
// with fewer than two elements are dropped.
WalkSet temporal_walks(const SnapshotSequence& seq, std::size_t t,
                       const TemporalWalkParams& params);

// One walk per line: `T` or `S`, then external node labels.
void write_walks(std::ostream& out, const WalkSet& walks, const NodeRegistry& registry);

}  // namespace dynemb
