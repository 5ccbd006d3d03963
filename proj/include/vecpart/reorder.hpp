#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "vecpart/assignment.hpp"
#include "vecpart/graph.hpp"
#include "vecpart/partitioner.hpp"

// Turns a partition into a vertex relabeling with consecutive ids per
// partition: vertices that cluster together end up adjacent in memory, which
// is what single-machine message passing wants. The unbalanced variant skips
// migration entirely; moved vertices only ever hurt locality.

namespace vecpart {

// Bijection old id -> new id over [0, n).
struct Ordering {
  std::vector<VertexId> perm;

  std::size_t size() const { return perm.size(); }
  VertexId new_id(VertexId old_id) const { return perm[old_id]; }

  static Ordering identity(std::size_t n) {
    Ordering o;
    o.perm.resize(n);
    std::iota(o.perm.begin(), o.perm.end(), 0u);
    return o;
  }

  void check_bijection() const {
    std::vector<bool> seen(perm.size(), false);
    for (VertexId p : perm) {
      if (p >= perm.size() || seen[p]) throw std::invalid_argument("ordering is not a bijection");
      seen[p] = true;
    }
  }
};

// Partitions laid out in ascending partition id. Within a partition the
// original id order is kept by default; degree-descending placement is
// available as a toggle.
inline Ordering ordering_from_partition(const PartitionAssignment& assignment,
                                        std::span<const VertexId> degrees = {},
                                        bool degree_descending = false) {
  assignment.check_total();
  const std::size_t n = assignment.size();
  Ordering o;
  o.perm.assign(n, 0);
  std::vector<std::uint64_t> next(assignment.k + 1, 0);
  for (std::uint32_t p : assignment.part_of) ++next[p + 1];
  std::partial_sum(next.begin(), next.end(), next.begin());
  if (!degree_descending) {
    for (std::size_t v = 0; v < n; ++v) {
      o.perm[v] = static_cast<VertexId>(next[assignment.part_of[v]]++);
    }
  } else {
    if (degrees.size() != n) throw std::invalid_argument("ordering_from_partition: degrees required");
    std::vector<VertexId> by_partition(n);
    std::iota(by_partition.begin(), by_partition.end(), 0u);
    std::sort(by_partition.begin(), by_partition.end(), [&](VertexId a, VertexId b) {
      if (assignment.part_of[a] != assignment.part_of[b]) return assignment.part_of[a] < assignment.part_of[b];
      if (degrees[a] != degrees[b]) return degrees[a] > degrees[b];
      return a < b;
    });
    for (std::size_t pos = 0; pos < n; ++pos) o.perm[by_partition[pos]] = static_cast<VertexId>(pos);
  }
  return o;
}

// Clustering without the balancing step, straight to an ordering.
inline Ordering reorder_unbalanced(const Graph& graph, const PipelineInput& input, std::uint32_t k,
                                   PipelineConfig config, std::uint64_t seed, std::size_t threads = 1) {
  config.rebalance = false;
  const PartitionAssignment assignment =
      embedding_partition(graph, input, k, NodeSplit::all_rest(graph.n), config, seed, threads);
  return ordering_from_partition(assignment);
}

struct RelabeledData {
  Graph graph;
  FeatureMatrix features;
  NodeSplit split;
};

// Materializes the relabeled graph (sorted CSR again) with feature rows and
// split tags carried along. The result is isomorphic to the input.
inline RelabeledData apply_ordering(const Graph& graph, const FeatureMatrix& features,
                                    const NodeSplit& split, const Ordering& ordering) {
  if (ordering.size() != graph.n) throw std::invalid_argument("apply_ordering: size mismatch");
  if (features.rows != 0 && features.rows != graph.n) {
    throw std::invalid_argument("apply_ordering: feature rows do not match vertex count");
  }
  if (split.size() != 0 && split.size() != graph.n) {
    throw std::invalid_argument("apply_ordering: split size does not match vertex count");
  }
  ordering.check_bijection();
  const std::size_t n = graph.n;

  RelabeledData out;
  out.graph.n = n;
  out.graph.edge_count = graph.edge_count;
  out.graph.degrees.assign(n, 0);
  out.graph.offsets.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    out.graph.degrees[ordering.perm[v]] = graph.degrees[v];
  }
  for (std::size_t v = 0; v < n; ++v) out.graph.offsets[v + 1] = out.graph.offsets[v] + out.graph.degrees[v];
  out.graph.neighbors.resize(out.graph.offsets[n]);
  for (std::size_t v = 0; v < n; ++v) {
    const VertexId nv = ordering.perm[v];
    auto* dst = out.graph.neighbors.data() + out.graph.offsets[nv];
    std::size_t i = 0;
    for (VertexId u : graph.neighbors_of(static_cast<VertexId>(v))) dst[i++] = ordering.perm[u];
    std::sort(dst, dst + i);
  }

  if (features.rows == n) {
    out.features = FeatureMatrix(n, features.cols);
    for (std::size_t v = 0; v < n; ++v) {
      std::copy_n(features.row(v).data(), features.cols, out.features.row(ordering.perm[v]).data());
    }
  }
  if (split.size() == n) {
    out.split = NodeSplit::all_rest(n);
    for (std::size_t v = 0; v < n; ++v) out.split.class_of[ordering.perm[v]] = split.class_of[v];
  }
  return out;
}

// Text format: "old_id new_id", one line per vertex in old-id order.
inline void save_ordering(const Ordering& ordering, const std::string& path) {
  std::string out;
  out.reserve(ordering.size() * 8);
  for (std::size_t v = 0; v < ordering.size(); ++v) {
    out += std::to_string(v);
    out.push_back(' ');
    out += std::to_string(ordering.perm[v]);
    out.push_back('\n');
  }
  detail::write_file(path, out);
}

inline Ordering load_ordering(const std::string& path, std::size_t n) {
  const std::string content = detail::read_file(path);
  Ordering o;
  o.perm.assign(n, 0);
  std::vector<bool> seen(n, false);
  std::size_t listed = 0;
  detail::for_each_line(content, [&](std::string_view line, std::size_t line_no) {
    if (detail::is_blank(line) || line.front() == '#') return;
    detail::TokenScanner scan(line);
    std::string_view tok_old, tok_new;
    std::uint64_t old_id = 0, new_id = 0;
    if (!scan.next(tok_old) || !detail::parse_u64(tok_old, old_id) || !scan.next(tok_new) ||
        !detail::parse_u64(tok_new, new_id) || !scan.at_end()) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": malformed ordering line");
    }
    if (old_id >= n || new_id >= n) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": id out of range (n=" +
                               std::to_string(n) + ")");
    }
    if (!seen[old_id]) {
      seen[old_id] = true;
      ++listed;
    }
    o.perm[old_id] = static_cast<VertexId>(new_id);
  });
  if (listed != n) throw std::runtime_error(path + ": ordering incomplete");
  o.check_bijection();
  return o;
}

}  // namespace vecpart
