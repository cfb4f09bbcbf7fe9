#include <gtest/gtest.h>

#include <map>
#include <set>

#include "dynemb/error.hpp"
#include "dynemb/walker.hpp"

using namespace dynemb;

namespace {

std::vector<double> normalized(const std::vector<double>& w) {
  double sum = 0.0;
  for (double x : w) sum += x;
  std::vector<double> out;
  for (double x : w) out.push_back(x / sum);
  return out;
}

double linf(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

std::vector<double> empirical(const AliasTable& t, std::size_t draws, std::uint64_t seed) {
  Rng rng = make_rng(seed, {});
  std::vector<double> f(t.size(), 0.0);
  for (std::size_t i = 0; i < draws; ++i) f[alias_sample(t, rng)] += 1.0;
  for (double& x : f) x /= static_cast<double>(draws);
  return f;
}

SnapshotSequence sequence(std::size_t nodes, const std::vector<std::vector<Edge>>& per_snapshot) {
  SnapshotSequence seq;
  for (std::size_t i = 0; i < nodes; ++i) seq.registry.register_node("v" + std::to_string(i));
  for (std::size_t t = 0; t < per_snapshot.size(); ++t) seq.snapshots.emplace_back(t, nodes, per_snapshot[t]);
  return seq;
}

// Six nodes: a triangle 0-1-2 with a tail 2-3, 3-4, 3-5 and chord 1-4; weights vary.
Snapshot fixture() {
  return Snapshot(0, 6,
                  std::vector<Edge>{{0, 1, 1.0}, {0, 2, 2.0}, {1, 2, 1.0}, {2, 3, 1.5}, {3, 4, 1.0}, {3, 5, 0.5},
                                    {1, 4, 1.0}});
}

}  // namespace

TEST(Alias, ExampleTables) {
  EXPECT_LE(linf(alias_distribution(build_alias_table(std::vector<double>{1, 1})), {0.5, 0.5}), 1e-12);
  const auto single = build_alias_table(std::vector<double>{5});
  Rng rng = make_rng(1, {});
  for (int i = 0; i < 100; ++i) EXPECT_EQ(alias_sample(single, rng), 0u);
  EXPECT_LE(linf(alias_distribution(build_alias_table(std::vector<double>{4, 1, 1})), {2.0 / 3, 1.0 / 6, 1.0 / 6}),
            1e-12);
}

TEST(Alias, Errors) {
  EXPECT_THROW(build_alias_table(std::vector<double>{}), Error);
  try {
    build_alias_table(std::vector<double>{1.0, 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveWeight);
  }
}

TEST(Alias, MonteCarloMatchesExact) {
  EXPECT_LE(linf(empirical(build_alias_table(std::vector<double>{1, 1}), 100000, 3), {0.5, 0.5}), 0.01);
  EXPECT_LE(linf(empirical(build_alias_table(std::vector<double>{4, 1, 1}), 100000, 4), {2.0 / 3, 1.0 / 6, 1.0 / 6}),
            0.01);
}

// Expected value over both uniform draws, integrated analytically slot by slot.
TEST(Alias, ExactInducedDistributionForSmallVectors) {
  Rng rng = make_rng(5, {});
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + uniform_index(rng, 8);
    std::vector<double> w(n);
    for (double& x : w) x = 0.01 + uniform(rng, 0.0, 10.0);
    const AliasTable t = build_alias_table(w);
    ASSERT_EQ(t.prob.size(), n);
    ASSERT_EQ(t.alias.size(), n);
    std::vector<double> induced(n, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
      ASSERT_GE(t.prob[s], 0.0);
      ASSERT_LE(t.prob[s], 1.0);
      induced[s] += t.prob[s] / static_cast<double>(n);
      induced[t.alias[s]] += (1.0 - t.prob[s]) / static_cast<double>(n);
    }
    EXPECT_LE(linf(induced, normalized(w)), 1e-9);
  }
}

TEST(Node2vec, SearchBiasValues) {
  EXPECT_DOUBLE_EQ(search_bias(0, 0.25, 1.0), 4.0);
  EXPECT_DOUBLE_EQ(search_bias(1, 0.25, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(search_bias(2, 0.25, 1.0), 1.0);
  for (int d = 0; d < 3; ++d) EXPECT_DOUBLE_EQ(search_bias(d, 1.0, 1.0), 1.0);
}

TEST(Node2vec, PathGraphAlternates) {
  const Snapshot s(0, 2, std::vector<Edge>{{0, 1, 1.0}});
  Node2vecParams params;
  params.walk_length = 4;
  params.walks_per_node = 3;
  const WalkSet ws = node2vec_walks(s, params);
  ASSERT_EQ(ws.size(), 6u);
  for (const auto& w : ws.walks) {
    ASSERT_EQ(w.nodes.size(), 4u);
    for (std::size_t i = 1; i < w.nodes.size(); ++i) EXPECT_NE(w.nodes[i], w.nodes[i - 1]);
    EXPECT_EQ(w.kind, WalkKind::Static);
  }
  EXPECT_EQ(ws.walks[0].nodes, (std::vector<NodeId>{0, 1, 0, 1}));
}

TEST(Node2vec, IsolatedNodeAndLengthBounds) {
  const Snapshot s = fixture();
  Node2vecParams params;
  params.walk_length = 7;
  params.walks_per_node = 4;
  const WalkSet ws = node2vec_walks(s, params);
  EXPECT_EQ(ws.size(), 24u);
  for (const auto& w : ws.walks) {
    EXPECT_GE(w.nodes.size(), 1u);
    EXPECT_LE(w.nodes.size(), 7u);
    for (std::size_t i = 1; i < w.nodes.size(); ++i) EXPECT_TRUE(s.has_edge(w.nodes[i - 1], w.nodes[i]));
  }
}

// Brute-force oracle: alpha from an explicit adjacency matrix.
TEST(Node2vec, SecondOrderFrequenciesMatchBruteForce) {
  const Snapshot s = fixture();
  double adj[6][6] = {};
  for (const Edge& e : s.edges()) adj[e.u][e.v] = adj[e.v][e.u] = e.weight;
  const double p = 0.25, q = 1.0;

  for (std::size_t limit : {std::size_t{1'000'000}, std::size_t{0}}) {
    Node2vecParams params;
    params.p = p;
    params.q = q;
    params.walks_per_node = 6000;
    params.walk_length = 80;
    params.seed = 17;
    params.precompute_limit = limit;
    const WalkSet ws = node2vec_walks(s, params);
    std::map<std::pair<NodeId, NodeId>, std::array<double, 6>> counts;
    for (const auto& w : ws.walks) {
      for (std::size_t i = 2; i < w.nodes.size(); ++i) counts[{w.nodes[i - 2], w.nodes[i - 1]}][w.nodes[i]] += 1.0;
    }
    std::size_t checked = 0;
    for (const auto& [key, c] : counts) {
      double n = 0.0;
      for (double x : c) n += x;
      if (n < 100000) continue;
      const auto [prev, v] = key;
      std::vector<double> expected(6, 0.0), observed(6, 0.0);
      for (int u = 0; u < 6; ++u) {
        if (adj[v][u] == 0.0) continue;
        const double alpha = u == prev ? 1.0 / p : (adj[prev][u] != 0.0 ? 1.0 : 1.0 / q);
        expected[u] = adj[v][u] * alpha;
        observed[u] = c[u] / n;
      }
      EXPECT_LE(linf(observed, normalized(expected)), 0.01) << prev << "->" << v;
      ++checked;
    }
    EXPECT_GE(checked, 3u);
  }
}

TEST(Node2vec, TransitionWeightsAgreeWithOracle) {
  const Snapshot s = fixture();
  const auto w = transition_weights(s, 2, 3, 0.25, 2.0);
  // neighbors of 3: 2 (back, 1.5*4), 4 (not adjacent to 2, 1*0.5), 5 (not adjacent, 0.5*0.5)
  EXPECT_LE(linf(w, normalized({6.0, 0.5, 0.25})), 1e-12);
}

TEST(Node2vec, DeterministicAcrossThreadCounts) {
  const Snapshot s = fixture();
  Node2vecParams params;
  params.seed = 99;
  params.walk_length = 20;
  const WalkSet one = node2vec_walks(s, params);
  params.threads = 4;
  const WalkSet four = node2vec_walks(s, params);
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) EXPECT_EQ(one.walks[i].nodes, four.walks[i].nodes);
  params.seed = 100;
  const WalkSet other = node2vec_walks(s, params);
  bool differs = false;
  for (std::size_t i = 0; i < one.size(); ++i) differs = differs || one.walks[i].nodes != other.walks[i].nodes;
  EXPECT_TRUE(differs);
}

TEST(Temporal, PresentInOneSnapshotIsDiscarded) {
  const auto seq = sequence(4, {{{1, 2, 1.0}}, {{1, 3, 1.0}}, {{0, 1, 1.0}}});
  TemporalWalkParams params;
  params.window = 3;
  const WalkSet ws = temporal_walks(seq, 2, params);
  for (const auto& w : ws.walks) EXPECT_NE(w.anchor, 0);
  bool anchor1 = false;
  for (const auto& w : ws.walks) anchor1 = anchor1 || w.anchor == 1;
  EXPECT_TRUE(anchor1);
}

TEST(Temporal, ForcedNeighborsInTimeOrder) {
  const auto seq = sequence(4, {{{0, 1, 1.0}}, {{0, 2, 1.0}}, {{0, 3, 1.0}}});
  TemporalWalkParams params;
  params.window = 3;
  params.walks_per_node = 5;
  const WalkSet ws = temporal_walks(seq, 2, params);
  std::size_t anchored = 0;
  for (const auto& w : ws.walks) {
    if (w.anchor != 0) continue;
    ++anchored;
    EXPECT_EQ(w.nodes, (std::vector<NodeId>{1, 2, 3}));
    EXPECT_EQ(w.snapshots, (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(w.kind, WalkKind::Temporal);
  }
  EXPECT_EQ(anchored, 5u);
}

TEST(Temporal, WalkCountBoundAndInvariants) {
  Rng rng = make_rng(8, {});
  std::vector<std::vector<Edge>> snaps(5);
  for (auto& edges : snaps) {
    for (int i = 0; i < 40; ++i) {
      const auto u = static_cast<NodeId>(uniform_index(rng, 20));
      const auto v = static_cast<NodeId>(uniform_index(rng, 20));
      if (u != v) edges.push_back({u, v, 1.0});
    }
  }
  const auto seq = sequence(20, snaps);
  for (auto bias : {TemporalBias::Uniform, TemporalBias::SecondOrder}) {
    TemporalWalkParams params;
    params.window = 3;
    params.walks_per_node = 10;
    params.bias = bias;
    const std::size_t t = 4;
    const WalkSet ws = temporal_walks(seq, t, params);
    const auto& eligible = seq[t].node_set();
    EXPECT_LE(ws.size(), 10 * eligible.size());
    std::size_t full = 0;
    for (NodeId v : eligible) {
      int present = 0;
      for (std::size_t s = t - 2; s <= t; ++s) present += seq[s].is_active(v);
      full += present >= 2;
    }
    EXPECT_EQ(ws.size(), 10 * full);
    for (const auto& w : ws.walks) {
      EXPECT_GE(w.nodes.size(), 2u);
      EXPECT_LE(w.nodes.size(), 3u);
      for (std::size_t j = 0; j < w.nodes.size(); ++j) {
        EXPECT_TRUE(seq[w.snapshots[j]].has_edge(w.anchor, w.nodes[j]));
        EXPECT_GE(w.snapshots[j], t - 2);
        if (j > 0) EXPECT_LT(w.snapshots[j - 1], w.snapshots[j]);
      }
    }
    params.threads = 3;
    const WalkSet again = temporal_walks(seq, t, params);
    ASSERT_EQ(again.size(), ws.size());
    for (std::size_t i = 0; i < ws.size(); ++i) EXPECT_EQ(again.walks[i].nodes, ws.walks[i].nodes);
  }
}

TEST(Temporal, WindowTooLarge) {
  const auto seq = sequence(3, {{{0, 1, 1.0}}, {{0, 2, 1.0}}});
  TemporalWalkParams params;
  params.window = 3;
  try {
    temporal_walks(seq, 1, params);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WindowTooLarge);
  }
}

TEST(Walks, VocabAndDump) {
  const auto seq = sequence(4, {{{0, 1, 1.0}}, {{0, 2, 1.0}}});
  TemporalWalkParams params;
  params.window = 2;
  params.walks_per_node = 1;
  const WalkSet ws = temporal_walks(seq, 1, params);
  EXPECT_EQ(ws.vocab(), (std::vector<NodeId>{1, 2}));
  std::ostringstream out;
  write_walks(out, ws, seq.registry);
  EXPECT_EQ(out.str(), "T v1 v2\n");
}
