#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vecpart/io_util.hpp"

namespace vecpart {

using VertexId = std::uint32_t;

// Immutable undirected graph in CSR form. Each edge is stored in both
// endpoint lists; neighbor lists are sorted, deduplicated and free of
// self-loops. Safe for concurrent reads once constructed.
struct Graph {
  std::size_t n = 0;
  std::uint64_t edge_count = 0;               // undirected |E|
  std::vector<std::uint64_t> offsets;         // n + 1 entries
  std::vector<VertexId> neighbors;            // 2 * |E| entries
  std::vector<VertexId> degrees;

  std::span<const VertexId> neighbors_of(VertexId v) const {
    return {neighbors.data() + offsets[v], neighbors.data() + offsets[v + 1]};
  }

  VertexId degree(VertexId v) const { return degrees[v]; }

  // Builds a graph from an arbitrary pair list: symmetrizes, drops
  // self-loops, collapses duplicates.
  static Graph from_edges(std::size_t n, std::span<const std::pair<VertexId, VertexId>> edges) {
    Graph g;
    g.n = n;
    std::vector<std::uint64_t> count(n + 1, 0);
    for (const auto& [u, v] : edges) {
      if (u == v) continue;
      if (u >= n || v >= n) throw std::invalid_argument("edge endpoint out of range");
      ++count[u + 1];
      ++count[v + 1];
    }
    std::vector<std::uint64_t> cursor(n + 1, 0);
    std::partial_sum(count.begin(), count.end(), cursor.begin());
    std::vector<VertexId> raw(cursor[n]);
    std::vector<std::uint64_t> fill(cursor.begin(), cursor.end() - 1);
    for (const auto& [u, v] : edges) {
      if (u == v) continue;
      raw[fill[u]++] = v;
      raw[fill[v]++] = u;
    }
    g.offsets.assign(n + 1, 0);
    g.degrees.assign(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
      auto begin = raw.begin() + static_cast<std::ptrdiff_t>(cursor[v]);
      auto end = raw.begin() + static_cast<std::ptrdiff_t>(cursor[v + 1]);
      std::sort(begin, end);
      const auto unique_end = std::unique(begin, end);
      const auto deg = static_cast<std::uint64_t>(unique_end - begin);
      g.degrees[v] = static_cast<VertexId>(deg);
      g.offsets[v + 1] = g.offsets[v] + deg;
    }
    g.neighbors.resize(g.offsets[n]);
    for (std::size_t v = 0; v < n; ++v) {
      auto begin = raw.begin() + static_cast<std::ptrdiff_t>(cursor[v]);
      std::copy(begin, begin + g.degrees[v], g.neighbors.begin() + static_cast<std::ptrdiff_t>(g.offsets[v]));
    }
    g.edge_count = g.offsets[n] / 2;
    return g;
  }

  bool has_edge(VertexId u, VertexId v) const {
    const auto nb = neighbors_of(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  // Full scan of the representation invariants; throws on the first
  // violation. Cheap enough to run after every load.
  void validate() const {
    if (offsets.size() != n + 1 || offsets[0] != 0 || offsets[n] != 2 * edge_count) {
      throw std::runtime_error("graph invariant violated: offsets shape");
    }
    if (degrees.size() != n || neighbors.size() != offsets[n]) {
      throw std::runtime_error("graph invariant violated: array sizes");
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (offsets[v] > offsets[v + 1]) throw std::runtime_error("graph invariant violated: offsets not monotone");
      if (offsets[v + 1] - offsets[v] != degrees[v]) {
        throw std::runtime_error("graph invariant violated: degree mismatch");
      }
      const auto nb = neighbors_of(static_cast<VertexId>(v));
      for (std::size_t i = 0; i < nb.size(); ++i) {
        if (nb[i] >= n) throw std::runtime_error("graph invariant violated: neighbor out of range");
        if (nb[i] == v) throw std::runtime_error("graph invariant violated: self-loop");
        if (i > 0 && nb[i - 1] >= nb[i]) {
          throw std::runtime_error("graph invariant violated: neighbors not strictly sorted");
        }
        if (!has_edge(nb[i], static_cast<VertexId>(v))) {
          throw std::runtime_error("graph invariant violated: asymmetric edge");
        }
      }
    }
  }
};

// Text edge list: "u v" per line, '#' lines ignored. The vertex universe is
// [0, max id]; unreferenced ids in between become isolated vertices.
inline Graph load_edge_list(const std::string& path) {
  const std::string content = detail::read_file(path);
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::uint64_t max_id = 0;
  bool any_id = false;
  detail::for_each_line(content, [&](std::string_view line, std::size_t line_no) {
    if (detail::is_blank(line) || line.front() == '#') return;
    detail::TokenScanner scan(line);
    std::string_view tok_u, tok_v;
    std::uint64_t u = 0, v = 0;
    if (!scan.next(tok_u) || !detail::parse_u64(tok_u, u) || !scan.next(tok_v) ||
        !detail::parse_u64(tok_v, v) || !scan.at_end()) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": malformed edge line");
    }
    if (u >= std::numeric_limits<VertexId>::max() || v >= std::numeric_limits<VertexId>::max()) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": vertex id too large");
    }
    any_id = true;
    max_id = std::max({max_id, u, v});
    if (u != v) edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
  });
  if (!any_id) throw std::runtime_error(path + ": no edges (zero-vertex graph)");
  Graph g = Graph::from_edges(static_cast<std::size_t>(max_id) + 1, edges);
  g.validate();
  return g;
}

// Writes each undirected edge once, smaller endpoint first, ascending.
inline void save_edge_list(const Graph& g, const std::string& path) {
  std::string out;
  out.reserve(g.edge_count * 14);
  for (std::size_t v = 0; v < g.n; ++v) {
    for (VertexId w : g.neighbors_of(static_cast<VertexId>(v))) {
      if (w > v) {
        out += std::to_string(v);
        out.push_back(' ');
        out += std::to_string(w);
        out.push_back('\n');
      }
    }
  }
  detail::write_file(path, out);
}

enum class NodeClass : std::uint8_t { kTrain = 0, kVal = 1, kRest = 2 };

constexpr std::array<NodeClass, 3> kAllClasses{NodeClass::kTrain, NodeClass::kVal, NodeClass::kRest};

inline const char* class_name(NodeClass c) {
  switch (c) {
    case NodeClass::kTrain: return "train";
    case NodeClass::kVal: return "val";
    default: return "rest";
  }
}

// Total labeling of every vertex as train / val / rest.
struct NodeSplit {
  std::vector<NodeClass> class_of;

  std::size_t size() const { return class_of.size(); }

  static NodeSplit all_rest(std::size_t n) {
    NodeSplit s;
    s.class_of.assign(n, NodeClass::kRest);
    return s;
  }

  std::vector<VertexId> members(NodeClass c) const {
    std::vector<VertexId> out;
    for (std::size_t v = 0; v < class_of.size(); ++v) {
      if (class_of[v] == c) out.push_back(static_cast<VertexId>(v));
    }
    return out;
  }
};

// Text split: "vertex_id class" per line with class in {train, val, rest};
// unlisted vertices default to rest.
inline NodeSplit load_split(const std::string& path, std::size_t n) {
  const std::string content = detail::read_file(path);
  NodeSplit split = NodeSplit::all_rest(n);
  detail::for_each_line(content, [&](std::string_view line, std::size_t line_no) {
    if (detail::is_blank(line) || line.front() == '#') return;
    detail::TokenScanner scan(line);
    std::string_view tok_id, tok_class;
    std::uint64_t id = 0;
    if (!scan.next(tok_id) || !detail::parse_u64(tok_id, id) || !scan.next(tok_class) || !scan.at_end()) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": malformed split line");
    }
    if (id >= n) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": vertex id " + std::to_string(id) +
                               " out of range (n=" + std::to_string(n) + ")");
    }
    NodeClass c;
    if (tok_class == "train") {
      c = NodeClass::kTrain;
    } else if (tok_class == "val") {
      c = NodeClass::kVal;
    } else if (tok_class == "rest") {
      c = NodeClass::kRest;
    } else {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": unknown class '" +
                               std::string(tok_class) + "'");
    }
    split.class_of[id] = c;
  });
  return split;
}

inline void save_split(const NodeSplit& split, const std::string& path) {
  std::string out;
  out.reserve(split.size() * 10);
  for (std::size_t v = 0; v < split.size(); ++v) {
    out += std::to_string(v);
    out.push_back(' ');
    out += class_name(split.class_of[v]);
    out.push_back('\n');
  }
  detail::write_file(path, out);
}

}  // namespace vecpart
