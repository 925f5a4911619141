#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace webnav {

using NodeId = std::uint32_t;

struct GrowthParams {
  std::size_t n = 0;
  std::size_t m = 3;  // edges added per new node
  double gamma = 2.1;
  std::uint64_t seed = 1;
};

/// Immutable directed graph in compressed adjacency form.
///
/// Neighbor lists are sorted by id and free of duplicates and self-loops.
/// Graphs produced by this module are symmetric and have no dangling nodes.
class WebGraph {
 public:
  WebGraph() = default;

  // Builds from arbitrary directed edges over [0, n): drops self-loops and
  // duplicates, optionally inserting reverse edges.
  static WebGraph from_edges(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges,
                             bool symmetrize);

  std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return neighbors_.size(); }

  // Throws std::out_of_range for u >= size().
  std::span<const NodeId> out_neighbors(NodeId u) const;
  std::size_t out_degree(NodeId u) const { return out_neighbors(u).size(); }

  std::vector<std::size_t> in_degrees() const;

  const std::optional<GrowthParams>& growth() const noexcept { return growth_; }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbors_;
  std::optional<GrowthParams> growth_;

  friend WebGraph generate_scale_free(const GrowthParams&);
};

// Rank attachment exponent yielding degree exponent gamma: a = 1/(gamma - 1).
inline double attachment_exponent(double gamma) { return 1.0 / (gamma - 1.0); }

/// Grows a scale-free graph by age ranking.
///
/// Starts from a clique on m+1 nodes. Every later node links to m distinct
/// existing nodes; the node of age rank R (oldest is 1) is picked with
/// probability ∝ R^-a, a = 1/(gamma-1), and duplicates are redrawn. Each
/// link is stored in both directions.
WebGraph generate_scale_free(const GrowthParams& params);

// Edge-list text: "src dst" per line, '#' comments. After optional
// symmetrization the largest strongly connected component is kept and ids
// are renumbered densely in increasing original order.
WebGraph read_edge_list(std::istream& in, bool symmetrize);
WebGraph load_edge_list(const std::filesystem::path& path, bool symmetrize);

// Writes every directed entry sorted by (source, target).
void write_edge_list(std::ostream& out, const WebGraph& g);
void save_edge_list(const std::filesystem::path& path, const WebGraph& g);

}  // namespace webnav
