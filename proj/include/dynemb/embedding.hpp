#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "dynemb/graph.hpp"
#include "dynemb/linalg.hpp"

namespace dynemb {

// A |V| x d table of node vectors; row r belongs to node ids()[r].
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  EmbeddingMatrix(std::vector<NodeId> ids, Mat values);

  const std::vector<NodeId>& ids() const noexcept { return ids_; }
  const Mat& values() const noexcept { return values_; }
  Mat& values() noexcept { return values_; }

  std::size_t size() const noexcept { return ids_.size(); }
  Eigen::Index dim() const noexcept { return values_.cols(); }
  bool contains(NodeId id) const { return rows_.contains(id); }
  std::optional<Eigen::Index> row_of(NodeId id) const;

  // Throws MissingNode.
  Eigen::Ref<const Vec> row(NodeId id) const;

  bool all_finite() const { return values_.allFinite(); }

  friend bool operator==(const EmbeddingMatrix& a, const EmbeddingMatrix& b) {
    return a.ids_ == b.ids_ && a.values_.rows() == b.values_.rows() &&
           a.values_.cols() == b.values_.cols() && a.values_ == b.values_;
  }

 private:
  std::vector<NodeId> ids_;
  Mat values_;
  std::unordered_map<NodeId, Eigen::Index> rows_;
};

// Shortest text that parses back to the same double.
std::string format_real(double x);

// word2vec text layout: `N d`, then `label v1 ... vd` per row.
void write_embeddings(std::ostream& out, const EmbeddingMatrix& z, const NodeRegistry& registry);
// Labels not yet known are registered. Throws FormatError with the 1-based
// line number as position.
EmbeddingMatrix read_embeddings(std::istream& in, NodeRegistry& registry);

}  // namespace dynemb
