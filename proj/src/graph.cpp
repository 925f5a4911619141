#include "webnav/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include "webnav/errors.hpp"
#include "webnav/random.hpp"

namespace webnav {

WebGraph WebGraph::from_edges(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges,
                              bool symmetrize) {
  std::vector<std::pair<NodeId, NodeId>> all;
  all.reserve(symmetrize ? 2 * edges.size() : edges.size());
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw std::out_of_range("edge endpoint outside node range");
    if (u == v) continue;
    all.emplace_back(u, v);
    if (symmetrize) all.emplace_back(v, u);
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  WebGraph g;
  g.offsets_.assign(n + 1, 0);
  for (const auto& e : all) ++g.offsets_[e.first + 1];
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.neighbors_.reserve(all.size());
  for (const auto& e : all) g.neighbors_.push_back(e.second);
  return g;
}

std::span<const NodeId> WebGraph::out_neighbors(NodeId u) const {
  if (u >= size()) throw std::out_of_range("node id " + std::to_string(u) + " out of range");
  return {neighbors_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
}

std::vector<std::size_t> WebGraph::in_degrees() const {
  std::vector<std::size_t> deg(size(), 0);
  for (NodeId v : neighbors_) ++deg[v];
  return deg;
}

WebGraph generate_scale_free(const GrowthParams& params) {
  if (params.m < 1) throw ConfigError("m must be at least 1");
  if (params.n < params.m + 1) throw ConfigError("n must be at least m + 1");
  if (!(params.gamma > 2.0)) throw ConfigError("gamma must exceed 2");
  if (params.n > std::numeric_limits<NodeId>::max()) throw ConfigError("n exceeds node id range");

  const double a = attachment_exponent(params.gamma);
  Rng rng = derive_rng(params.seed, 0, 0x67726170);  // "grap"

  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(params.n * params.m);
  const auto seed_nodes = static_cast<NodeId>(params.m + 1);
  for (NodeId u = 0; u < seed_nodes; ++u)
    for (NodeId v = u + 1; v < seed_nodes; ++v) edges.emplace_back(v, u);

  std::vector<NodeId> chosen;
  chosen.reserve(params.m);
  for (std::size_t t = seed_nodes; t < params.n; ++t) {
    const ZipfSampler rank(t, a);
    chosen.clear();
    while (chosen.size() < params.m) {
      const auto target = static_cast<NodeId>(rank(rng) - 1);
      if (std::find(chosen.begin(), chosen.end(), target) == chosen.end()) chosen.push_back(target);
    }
    for (NodeId target : chosen) edges.emplace_back(static_cast<NodeId>(t), target);
  }

  WebGraph g = WebGraph::from_edges(params.n, edges, /*symmetrize=*/true);
  g.growth_ = params;
  return g;
}

namespace {

// Iterative Tarjan. Returns the component label of each node.
std::vector<std::size_t> strongly_connected_components(std::size_t n,
                                                       const std::vector<std::size_t>& offsets,
                                                       const std::vector<NodeId>& adj,
                                                       std::size_t& component_count) {
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0), comp(n, kUnvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<NodeId> stack;
  std::vector<std::pair<NodeId, std::size_t>> call;  // (node, next edge offset)
  std::size_t counter = 0;
  component_count = 0;

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.emplace_back(static_cast<NodeId>(root), offsets[root]);
    index[root] = low[root] = counter++;
    stack.push_back(static_cast<NodeId>(root));
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [u, edge] = call.back();
      if (edge < offsets[u + 1]) {
        const NodeId v = adj[edge++];
        if (index[v] == kUnvisited) {
          index[v] = low[v] = counter++;
          stack.push_back(v);
          on_stack[v] = true;
          call.emplace_back(v, offsets[v]);
        } else if (on_stack[v]) {
          low[u] = std::min(low[u], index[v]);
        }
        continue;
      }
      const NodeId done = u;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        NodeId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = component_count;
        } while (w != done);
        ++component_count;
      }
    }
  }
  return comp;
}

}  // namespace

WebGraph read_edge_list(std::istream& in, bool symmetrize) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto space = line.find(' ');
    if (space == std::string::npos) throw ParseError(line_no, "expected two ids separated by a space");
    std::uint64_t u = 0, v = 0;
    const char* begin = line.data();
    const char* end = line.data() + line.size();
    auto r1 = std::from_chars(begin, begin + space, u);
    auto r2 = std::from_chars(begin + space + 1, end, v);
    if (r1.ec != std::errc{} || r1.ptr != begin + space || r2.ec != std::errc{} || r2.ptr != end ||
        space == 0 || space + 1 == line.size())
      throw ParseError(line_no, "malformed edge '" + line + "'");
    raw.emplace_back(u, v);
  }

  std::vector<std::uint64_t> ids;
  ids.reserve(2 * raw.size());
  for (const auto& [u, v] : raw) {
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.empty()) throw DataError("edge list contains no edges");
  if (ids.size() > std::numeric_limits<NodeId>::max()) throw DataError("too many nodes");

  auto dense = [&ids](std::uint64_t id) {
    return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(raw.size());
  for (const auto& [u, v] : raw) edges.emplace_back(dense(u), dense(v));
  raw.clear();
  raw.shrink_to_fit();

  const WebGraph full = WebGraph::from_edges(ids.size(), edges, symmetrize);
  std::vector<std::size_t> offsets(full.size() + 1, 0);
  std::vector<NodeId> adj;
  adj.reserve(full.edge_count());
  for (NodeId u = 0; u < full.size(); ++u) {
    auto nb = full.out_neighbors(u);
    adj.insert(adj.end(), nb.begin(), nb.end());
    offsets[u + 1] = adj.size();
  }

  std::size_t count = 0;
  const auto comp = strongly_connected_components(full.size(), offsets, adj, count);
  std::vector<std::size_t> comp_size(count, 0);
  for (auto c : comp) ++comp_size[c];
  // Largest component; ties go to the one holding the smallest original id.
  std::size_t best = comp[0];
  for (std::size_t u = 0; u < comp.size(); ++u)
    if (comp_size[comp[u]] > comp_size[best]) best = comp[u];
  if (comp_size[best] < 2)
    throw DataError("largest strongly connected component has no edges");

  std::vector<NodeId> remap(full.size(), std::numeric_limits<NodeId>::max());
  NodeId next = 0;
  for (std::size_t u = 0; u < comp.size(); ++u)
    if (comp[u] == best) remap[u] = next++;
  std::vector<std::pair<NodeId, NodeId>> kept;
  for (NodeId u = 0; u < full.size(); ++u) {
    if (remap[u] == std::numeric_limits<NodeId>::max()) continue;
    for (NodeId v : full.out_neighbors(u))
      if (remap[v] != std::numeric_limits<NodeId>::max()) kept.emplace_back(remap[u], remap[v]);
  }
  return WebGraph::from_edges(next, kept, false);
}

WebGraph load_edge_list(const std::filesystem::path& path, bool symmetrize) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge list " + path.string());
  return read_edge_list(in, symmetrize);
}

void write_edge_list(std::ostream& out, const WebGraph& g) {
  std::string buf;
  for (NodeId u = 0; u < g.size(); ++u) {
    for (NodeId v : g.out_neighbors(u)) {
      buf += std::to_string(u);
      buf += ' ';
      buf += std::to_string(v);
      buf += '\n';
    }
    if (buf.size() > (1u << 20)) {
      out << buf;
      buf.clear();
    }
  }
  out << buf;
}

void save_edge_list(const std::filesystem::path& path, const WebGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write edge list " + path.string());
  write_edge_list(out, g);
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace webnav
