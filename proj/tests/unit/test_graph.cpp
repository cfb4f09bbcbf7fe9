#include <gtest/gtest.h>

#include <sstream>

#include "dynemb/error.hpp"
#include "dynemb/graph.hpp"
#include "dynemb/rng.hpp"

using namespace dynemb;

namespace {

IngestResult parse(const std::string& text) {
  std::istringstream in(text);
  return ingest_edge_list(in);
}

SnapshotSequence split(const std::string& text, SnapshotPolicy policy) {
  IngestResult r = parse(text);
  return snapshot_split(r.edges, std::move(r.registry), policy);
}

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Registry, AssignsDenseIdsInOrder) {
  NodeRegistry r;
  EXPECT_EQ(r.register_node("A"), 0);
  EXPECT_EQ(r.register_node("A"), 0);
  EXPECT_EQ(r.register_node("B"), 1);
  EXPECT_EQ(r.size(), 2u);
}

TEST(Registry, RoundTripsEveryLabel) {
  NodeRegistry r;
  std::vector<std::string> labels;
  for (int i = 0; i < 50; ++i) labels.push_back("node-" + std::to_string(i * 7 % 31));
  for (const auto& l : labels) r.register_node(l);
  for (const auto& l : labels) EXPECT_EQ(r.label(*r.find(l)), l);
  for (NodeId id = 0; id < static_cast<NodeId>(r.size()); ++id) EXPECT_EQ(*r.find(r.label(id)), id);
}

TEST(Ingest, ParsesBasicLines) {
  const IngestResult r = parse("a b 1\nb c 2\n");
  EXPECT_EQ(r.registry.size(), 3u);
  EXPECT_EQ(r.edges.edges.size(), 2u);
  EXPECT_DOUBLE_EQ(r.edges.min_ts, 1.0);
  EXPECT_DOUBLE_EQ(r.edges.max_ts, 2.0);
  EXPECT_DOUBLE_EQ(r.edges.edges[0].weight, 1.0);
}

TEST(Ingest, CommentsWeightsAndSelfLoops) {
  const IngestResult r = parse("# header\na\tb 1 2.5\n\nc c 3\nb a 4\n");
  ASSERT_EQ(r.edges.edges.size(), 2u);
  EXPECT_DOUBLE_EQ(r.edges.edges[0].weight, 2.5);
  EXPECT_EQ(r.self_loops_dropped, 1u);
}

TEST(Ingest, EmptyInput) {
  EXPECT_EQ(code_of([] { parse(""); }), ErrorCode::EmptyInput);
  EXPECT_EQ(code_of([] { parse("# only comments\n"); }), ErrorCode::EmptyInput);
}

TEST(Ingest, MalformedLineReportsLineNumber) {
  try {
    parse("a b 1\n# c\na b\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MalformedLine);
    ASSERT_TRUE(e.position());
    EXPECT_EQ(*e.position(), 3u);
  }
  EXPECT_EQ(code_of([] { parse("a b x\n"); }), ErrorCode::MalformedLine);
  EXPECT_EQ(code_of([] { parse("a b 1 -2\n"); }), ErrorCode::MalformedLine);
}

TEST(Split, EqualWidthWindows) {
  const auto seq = split("a b 1\nb c 2\nc d 3\nd e 4\n", SplitByCount{2});
  ASSERT_EQ(seq.size(), 2u);
  EXPECT_TRUE(seq[0].has_edge(0, 1));
  EXPECT_TRUE(seq[0].has_edge(1, 2));
  EXPECT_FALSE(seq[0].has_edge(2, 3));
  EXPECT_TRUE(seq[1].has_edge(2, 3));
  EXPECT_TRUE(seq[1].has_edge(3, 4));
  EXPECT_EQ(seq[0].edge_count(), 2u);
  EXPECT_EQ(seq[1].edge_count(), 2u);
}

TEST(Split, AggregatesParallelEdges) {
  const auto seq = split("a b 1\nb a 1\n", SplitByCount{1});
  const auto nb = neighbors(seq[0], 0);
  ASSERT_EQ(nb.size(), 1u);
  EXPECT_EQ(nb[0], (Neighbor{1, 2.0}));
}

TEST(Split, ThirtyNineWindows) {
  std::string text;
  for (int i = 0; i < 390; ++i) text += "n" + std::to_string(i % 17) + " m" + std::to_string(i % 5) + " " + std::to_string(i) + "\n";
  const auto seq = split(text, SplitByCount{39});
  EXPECT_EQ(seq.size(), 39u);
  for (std::size_t i = 0; i < seq.size(); ++i) EXPECT_EQ(seq[i].index(), i);
}

TEST(Split, DegenerateRange) {
  EXPECT_EQ(code_of([] { split("a b 5\nb c 5\n", SplitByCount{2}); }), ErrorCode::DegenerateRange);
  EXPECT_NO_THROW(split("a b 5\nb c 5\n", SplitByCount{1}));
}

TEST(Split, ByWindowAndIndex) {
  const auto by_window = split("a b 0\nb c 0.5\nc d 2.5\n", SplitByWindow{1.0});
  ASSERT_EQ(by_window.size(), 3u);
  EXPECT_TRUE(by_window[2].has_edge(2, 3));
  EXPECT_TRUE(by_window[1].node_set().empty());
  const auto by_index = split("a b 0\nb c 2\n", SplitByIndex{});
  ASSERT_EQ(by_index.size(), 3u);
  EXPECT_TRUE(by_index[2].has_edge(1, 2));
}

TEST(Snapshot, NeighborQueries) {
  const auto seq = split("a b 1\nb c 1\na c 1\nd e 1\n", SplitByCount{1});
  const auto nb = neighbors(seq[0], 0);
  ASSERT_EQ(nb.size(), 2u);
  EXPECT_EQ(nb[0].id, 1);
  EXPECT_EQ(nb[1].id, 2);
  EXPECT_TRUE(neighbors(seq[0], 99).empty());
  EXPECT_FALSE(seq[0].is_active(99));
  EXPECT_EQ(seq[0].degree(3), 1u);
}

TEST(Snapshot, NodeSetIsExactlyNonEmptyAdjacency) {
  const Snapshot s(0, 6, std::vector<Edge>{{0, 1, 1.0}, {3, 4, 2.0}});
  EXPECT_EQ(s.node_set(), (std::vector<NodeId>{0, 1, 3, 4}));
  for (NodeId v = 0; v < 6; ++v) EXPECT_EQ(s.is_active(v), !s.neighbors(v).empty());
}

TEST(SplitProperties, PartitionSymmetryDeterminism) {
  Rng rng = make_rng(11, {});
  for (int trial = 0; trial < 20; ++trial) {
    std::string text;
    const int records = 20 + static_cast<int>(uniform_index(rng, 80));
    for (int i = 0; i < records; ++i) {
      const auto u = uniform_index(rng, 12), v = uniform_index(rng, 12);
      if (u == v) continue;
      text += std::to_string(u) + " " + std::to_string(v) + " " + std::to_string(uniform(rng, 0, 100)) + " " +
              std::to_string(0.5 + uniform01(rng)) + "\n";
    }
    const IngestResult r = parse(text);
    const std::size_t T = 1 + uniform_index(rng, 7);
    const auto seq = snapshot_split(r.edges, r.registry, SplitByCount{T});
    std::size_t total = 0;
    for (const auto& s : seq.snapshots) {
      total += s.edge_count();
      for (NodeId u : s.node_set()) {
        for (const auto& nb : s.neighbors(u)) EXPECT_EQ(s.weight(nb.id, u), nb.weight);
      }
    }
    EXPECT_EQ(total, r.edges.edges.size());
    const auto again = snapshot_split(r.edges, r.registry, SplitByCount{T});
    for (std::size_t t = 0; t < seq.size(); ++t) EXPECT_EQ(seq[t].edges(), again[t].edges());
  }
}

TEST(NodeLabelsFile, DenseClassIdsAndUnknownNodes) {
  NodeRegistry reg;
  reg.register_node("a");
  reg.register_node("b");
  std::istringstream in("a red\nb blue\nzz red\n");
  const NodeLabels labels = read_node_labels(in, reg);
  EXPECT_EQ(labels.classes.size(), 2u);
  EXPECT_EQ(labels.classes.at(0), 0);
  EXPECT_EQ(labels.classes.at(1), 1);
  EXPECT_EQ(labels.class_names, (std::vector<std::string>{"red", "blue"}));
}
