#include "dynemb/embedding.hpp"

#include <charconv>
#include <sstream>

#include "dynemb/error.hpp"

namespace dynemb {

EmbeddingMatrix::EmbeddingMatrix(std::vector<NodeId> ids, Mat values)
    : ids_(std::move(ids)), values_(std::move(values)) {
  if (static_cast<Eigen::Index>(ids_.size()) != values_.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "embedding ids and rows differ in count");
  }
  rows_.reserve(ids_.size());
  for (std::size_t r = 0; r < ids_.size(); ++r) {
    if (!rows_.emplace(ids_[r], static_cast<Eigen::Index>(r)).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate node id in embedding");
    }
  }
}

std::optional<Eigen::Index> EmbeddingMatrix::row_of(NodeId id) const {
  auto it = rows_.find(id);
  if (it == rows_.end()) return std::nullopt;
  return it->second;
}

Eigen::Ref<const Vec> EmbeddingMatrix::row(NodeId id) const {
  auto r = row_of(id);
  if (!r) throw Error(ErrorCode::MissingNode, "node " + std::to_string(id) + " has no embedding");
  return values_.row(*r).transpose();
}

std::string format_real(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

void write_embeddings(std::ostream& out, const EmbeddingMatrix& z, const NodeRegistry& registry) {
  out << z.size() << ' ' << z.dim() << '\n';
  for (std::size_t r = 0; r < z.size(); ++r) {
    out << registry.label(z.ids()[r]);
    for (Eigen::Index c = 0; c < z.dim(); ++c) {
      out << ' ' << format_real(z.values()(static_cast<Eigen::Index>(r), c));
    }
    out << '\n';
  }
}

namespace {

template <typename T>
bool parse_number(std::string_view text, T& value) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

EmbeddingMatrix read_embeddings(std::istream& in, NodeRegistry& registry) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw Error(ErrorCode::FormatError, "missing header line", 1);
  std::istringstream header(line);
  std::string n_text, d_text;
  std::size_t n = 0;
  long d = 0;
  if (!(header >> n_text >> d_text) || !parse_number(n_text, n) || !parse_number(d_text, d) ||
      d < 1) {
    throw Error(ErrorCode::FormatError, "bad header `" + line + "`", 1);
  }
  std::vector<NodeId> ids;
  ids.reserve(n);
  Mat values(static_cast<Eigen::Index>(n), d);
  for (std::size_t r = 0; r < n; ++r) {
    ++line_no;
    if (!std::getline(in, line)) {
      throw Error(ErrorCode::FormatError,
                  "truncated: expected " + std::to_string(n) + " rows, found " + std::to_string(r),
                  line_no);
    }
    std::istringstream row(line);
    std::string label;
    row >> label;
    if (label.empty()) throw Error(ErrorCode::FormatError, "empty row", line_no);
    ids.push_back(registry.register_node(label));
    std::string tok;
    long c = 0;
    while (row >> tok) {
      double v = 0.0;
      if (c >= d || !parse_number(tok, v)) {
        throw Error(ErrorCode::FormatError, "bad value `" + tok + "`", line_no);
      }
      values(static_cast<Eigen::Index>(r), c++) = v;
    }
    if (c != d) {
      throw Error(ErrorCode::FormatError,
                  "row has " + std::to_string(c) + " values, expected " + std::to_string(d),
                  line_no);
    }
  }
  return EmbeddingMatrix(std::move(ids), std::move(values));
}

}  // namespace dynemb
