#include "dynemb/walker.hpp"

#include <algorithm>
#include <numeric>
#include <thread>

#include "dynemb/error.hpp"

namespace dynemb {

AliasTable build_alias_table(std::span<const double> weights) {
  const std::size_t n = weights.size();
  if (n == 0) throw Error(ErrorCode::EmptyWeights, "alias table needs at least one weight");
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw Error(ErrorCode::NonPositiveWeight, "alias weights must be > 0");
    total += w;
  }

  AliasTable table;
  table.prob.resize(n);
  table.alias.resize(n);
  std::vector<double> scaled(n);
  std::vector<std::uint32_t> small;
  std::vector<std::uint32_t> large;
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = weights[i] * static_cast<double>(n) / total;
    table.alias[i] = static_cast<std::uint32_t>(i);
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    const std::uint32_t s = small.back();
    small.pop_back();
    const std::uint32_t l = large.back();
    table.prob[s] = scaled[s];
    table.alias[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // leftovers are 1 up to rounding
  for (std::uint32_t i : large) table.prob[i] = 1.0;
  for (std::uint32_t i : small) table.prob[i] = 1.0;
  return table;
}

std::vector<double> alias_distribution(const AliasTable& table) {
  const std::size_t n = table.size();
  std::vector<double> p(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    p[i] += table.prob[i];
    p[table.alias[i]] += 1.0 - table.prob[i];
  }
  for (double& x : p) x /= static_cast<double>(n);
  return p;
}

std::vector<NodeId> WalkSet::vocab() const {
  std::vector<NodeId> ids;
  for (const Walk& w : walks) ids.insert(ids.end(), w.nodes.begin(), w.nodes.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::size_t WalkSet::token_count() const {
  std::size_t n = 0;
  for (const Walk& w : walks) n += w.nodes.size();
  return n;
}

int step_distance(const Snapshot& s, NodeId prev, NodeId u) {
  if (u == prev) return 0;
  return s.has_edge(prev, u) ? 1 : 2;
}

std::vector<double> transition_weights(const Snapshot& s, NodeId prev, NodeId v, double p,
                                       double q) {
  auto nbrs = s.neighbors(v);
  std::vector<double> w(nbrs.size());
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    w[i] = nbrs[i].weight * search_bias(step_distance(s, prev, nbrs[i].id), p, q);
  }
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  if (total > 0.0) {
    for (double& x : w) x /= total;
  }
  return w;
}

namespace {

// Runs fn(i) for i in [0, n) over up to `threads` workers. Each index writes
// only its own output slot, so results do not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += threads) fn(i);
    });
  }
}

std::vector<double> neighbor_weights(std::span<const Neighbor> nbrs) {
  std::vector<double> w(nbrs.size());
  for (std::size_t i = 0; i < nbrs.size(); ++i) w[i] = nbrs[i].weight;
  return w;
}

class Node2vecSampler {
 public:
  Node2vecSampler(const Snapshot& s, const Node2vecParams& params) : s_(s), params_(params) {
    const std::size_t n = s.num_nodes();
    first_order_.resize(n);
    for (NodeId v : s.node_set()) {
      first_order_[static_cast<std::size_t>(v)] = build_alias_table(neighbor_weights(s.neighbors(v)));
    }
    precomputed_ = s.directed_entry_count() <= params.precompute_limit;
    if (precomputed_) {
      offsets_.assign(n + 1, 0);
      for (std::size_t v = 0; v < n; ++v) {
        offsets_[v + 1] = offsets_[v] + s.neighbors(static_cast<NodeId>(v)).size();
      }
      edge_tables_.resize(offsets_[n]);
      for (NodeId prev : s.node_set()) {
        auto nbrs = s.neighbors(prev);
        for (std::size_t j = 0; j < nbrs.size(); ++j) {
          edge_tables_[offsets_[static_cast<std::size_t>(prev)] + j] =
              build_alias_table(transition_weights(s, prev, nbrs[j].id, params.p, params.q));
        }
      }
    }
  }

  NodeId first_step(NodeId v, Rng& rng) const {
    auto nbrs = s_.neighbors(v);
    return nbrs[alias_sample(first_order_[static_cast<std::size_t>(v)], rng)].id;
  }

  NodeId next_step(NodeId prev, NodeId v, Rng& rng) const {
    auto nbrs = s_.neighbors(v);
    if (precomputed_) {
      auto prev_nbrs = s_.neighbors(prev);
      auto it = std::lower_bound(prev_nbrs.begin(), prev_nbrs.end(), v,
                                 [](const Neighbor& n, NodeId id) { return n.id < id; });
      const auto j = static_cast<std::size_t>(it - prev_nbrs.begin());
      return nbrs[alias_sample(edge_tables_[offsets_[static_cast<std::size_t>(prev)] + j], rng)].id;
    }
    const AliasTable table = build_alias_table(transition_weights(s_, prev, v, params_.p, params_.q));
    return nbrs[alias_sample(table, rng)].id;
  }

 private:
  const Snapshot& s_;
  const Node2vecParams& params_;
  bool precomputed_ = false;
  std::vector<AliasTable> first_order_;
  std::vector<std::size_t> offsets_;
  std::vector<AliasTable> edge_tables_;
};

}  // namespace

WalkSet node2vec_walks(const Snapshot& s, const Node2vecParams& params) {
  if (params.walk_length < 1 || params.walks_per_node < 1) {
    throw Error(ErrorCode::InvalidArgument, "walk_length and walks_per_node must be >= 1");
  }
  if (!(params.p > 0.0) || !(params.q > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "p and q must be > 0");
  }
  const Node2vecSampler sampler(s, params);
  const auto& starts = s.node_set();
  std::vector<std::vector<Walk>> per_node(starts.size());

  parallel_for(starts.size(), params.threads, [&](std::size_t i) {
    const NodeId start = starts[i];
    auto& out = per_node[i];
    out.resize(params.walks_per_node);
    for (std::size_t w = 0; w < params.walks_per_node; ++w) {
      Rng rng = make_rng(params.seed, {static_cast<std::uint64_t>(start), w});
      Walk& walk = out[w];
      walk.kind = WalkKind::Static;
      walk.nodes.reserve(params.walk_length);
      walk.nodes.push_back(start);
      while (walk.nodes.size() < params.walk_length) {
        const NodeId cur = walk.nodes.back();
        if (s.neighbors(cur).empty()) break;
        walk.nodes.push_back(walk.nodes.size() == 1
                                 ? sampler.first_step(cur, rng)
                                 : sampler.next_step(walk.nodes[walk.nodes.size() - 2], cur, rng));
      }
    }
  });

  WalkSet result;
  result.walks.reserve(starts.size() * params.walks_per_node);
  for (auto& group : per_node) {
    for (auto& w : group) result.walks.push_back(std::move(w));
  }
  return result;
}

WalkSet temporal_walks(const SnapshotSequence& seq, std::size_t t,
                       const TemporalWalkParams& params) {
  if (params.window < 1 || params.walks_per_node < 1) {
    throw Error(ErrorCode::InvalidArgument, "window and walks_per_node must be >= 1");
  }
  if (t >= seq.size()) throw Error(ErrorCode::InvalidArgument, "target snapshot out of range");
  if (params.window > t + 1) {
    throw Error(ErrorCode::WindowTooLarge,
                "window " + std::to_string(params.window) + " exceeds the " +
                    std::to_string(t + 1) + " snapshots available at t=" + std::to_string(t));
  }
  if (params.bias == TemporalBias::SecondOrder && (!(params.p > 0.0) || !(params.q > 0.0))) {
    throw Error(ErrorCode::InvalidArgument, "p and q must be > 0");
  }
  const std::size_t first = t + 1 - params.window;
  const auto& anchors = seq[t].node_set();

  // weight-proportional tables for each anchor in each window snapshot
  std::vector<std::vector<std::optional<AliasTable>>> tables(anchors.size());
  parallel_for(anchors.size(), params.threads, [&](std::size_t i) {
    tables[i].resize(params.window);
    for (std::size_t j = 0; j < params.window; ++j) {
      auto nbrs = seq[first + j].neighbors(anchors[i]);
      if (!nbrs.empty()) tables[i][j] = build_alias_table(neighbor_weights(nbrs));
    }
  });

  std::vector<std::vector<Walk>> per_node(anchors.size());
  parallel_for(anchors.size(), params.threads, [&](std::size_t i) {
    const NodeId v = anchors[i];
    for (std::size_t w = 0; w < params.walks_per_node; ++w) {
      Rng rng = make_rng(params.seed, {static_cast<std::uint64_t>(v), w});
      Walk walk;
      walk.kind = WalkKind::Temporal;
      walk.anchor = v;
      for (std::size_t j = 0; j < params.window; ++j) {
        if (!tables[i][j]) continue;
        const Snapshot& s = seq[first + j];
        auto nbrs = s.neighbors(v);
        NodeId next;
        if (params.bias == TemporalBias::SecondOrder && !walk.nodes.empty() &&
            s.is_active(walk.nodes.back())) {
          std::vector<double> weights(nbrs.size());
          for (std::size_t c = 0; c < nbrs.size(); ++c) {
            weights[c] = nbrs[c].weight *
                         search_bias(step_distance(s, walk.nodes.back(), nbrs[c].id), params.p,
                                     params.q);
          }
          next = nbrs[alias_sample(build_alias_table(weights), rng)].id;
        } else {
          next = nbrs[alias_sample(*tables[i][j], rng)].id;
        }
        walk.nodes.push_back(next);
        walk.snapshots.push_back(first + j);
      }
      if (walk.nodes.size() >= 2) per_node[i].push_back(std::move(walk));
    }
  });

  WalkSet result;
  for (auto& group : per_node) {
    for (auto& w : group) result.walks.push_back(std::move(w));
  }
  return result;
}

void write_walks(std::ostream& out, const WalkSet& walks, const NodeRegistry& registry) {
  for (const Walk& w : walks.walks) {
    out << (w.kind == WalkKind::Temporal ? 'T' : 'S');
    for (NodeId id : w.nodes) out << ' ' << registry.label(id);
    out << '\n';
  }
}

}  // namespace dynemb
