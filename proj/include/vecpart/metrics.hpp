#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vecpart/assignment.hpp"
#include "vecpart/graph.hpp"
#include "vecpart/parallel.hpp"
#include "vecpart/reorder.hpp"

// Partitioning and reordering quality metrics. All functions are pure reads;
// the parallel scans only reduce integer counts, so any thread count gives
// the same answer.

namespace vecpart {

// Fraction of undirected edges whose endpoints land in different partitions.
// 0 when the graph has no edges.
inline double edge_cut_ratio(const Graph& graph, const PartitionAssignment& assignment,
                             std::size_t threads = 1) {
  if (assignment.size() != graph.n) throw std::invalid_argument("edge_cut_ratio: assignment size mismatch");
  if (graph.edge_count == 0) return 0.0;
  std::vector<std::uint64_t> partial(graph.n, 0);
  parallel_for(graph.n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t v = begin; v < end; ++v) {
      std::uint64_t cut = 0;
      for (VertexId u : graph.neighbors_of(static_cast<VertexId>(v))) {
        if (u > v && assignment.part_of[u] != assignment.part_of[v]) ++cut;
      }
      partial[v] = cut;
    }
  });
  std::uint64_t cut = 0;
  for (std::uint64_t c : partial) cut += c;
  return static_cast<double>(cut) / static_cast<double>(graph.edge_count);
}

struct BalanceValue {
  double value = 1.0;
  bool empty_class = false;  // filtered class had no members; value reported as 1
};

// max partition share over mean partition share; 1 is perfect, k means one
// partition holds everything.
inline BalanceValue vertex_balance(const PartitionAssignment& assignment) {
  const std::vector<std::uint64_t> sizes = partition_sizes(assignment);
  const std::uint64_t total = assignment.size();
  if (total == 0) return {1.0, true};
  const std::uint64_t max_size = *std::max_element(sizes.begin(), sizes.end());
  const double mean = static_cast<double>(total) / static_cast<double>(assignment.k);
  return {static_cast<double>(max_size) / mean, false};
}

inline BalanceValue vertex_balance(const PartitionAssignment& assignment, const NodeSplit& split,
                                   NodeClass c) {
  if (split.size() != assignment.size()) throw std::invalid_argument("vertex_balance: split size mismatch");
  std::vector<std::uint64_t> counts(assignment.k, 0);
  std::uint64_t total = 0;
  for (std::size_t v = 0; v < split.size(); ++v) {
    if (split.class_of[v] == c) {
      ++counts[assignment.part_of[v]];
      ++total;
    }
  }
  if (total == 0) return {1.0, true};
  const std::uint64_t max_count = *std::max_element(counts.begin(), counts.end());
  const double mean = static_cast<double>(total) / static_cast<double>(assignment.k);
  return {static_cast<double>(max_count) / mean, false};
}

// |pi(u) - pi(v)|: how far apart two vertices sit after reordering.
inline std::uint64_t gap(const Ordering& ordering, VertexId u, VertexId v) {
  const std::uint64_t pu = ordering.perm[u], pv = ordering.perm[v];
  return pu > pv ? pu - pv : pv - pu;
}

// Distance to the farthest neighbor; 0 for isolated vertices.
inline std::uint64_t vertex_bandwidth(const Graph& graph, const Ordering& ordering, VertexId v) {
  std::uint64_t best = 0;
  for (VertexId u : graph.neighbors_of(v)) best = std::max(best, gap(ordering, v, u));
  return best;
}

inline double avg_graph_bandwidth(const Graph& graph, const Ordering& ordering, std::size_t threads = 1) {
  if (ordering.size() != graph.n) throw std::invalid_argument("avg_graph_bandwidth: ordering size mismatch");
  if (graph.n == 0) return 0.0;
  std::vector<std::uint64_t> bw(graph.n, 0);
  parallel_for(graph.n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t v = begin; v < end; ++v) {
      bw[v] = vertex_bandwidth(graph, ordering, static_cast<VertexId>(v));
    }
  });
  std::uint64_t sum = 0;
  for (std::uint64_t b : bw) sum += b;
  return static_cast<double>(sum) / static_cast<double>(graph.n);
}

// k x k counts of cut edges per partition pair; symmetric, zero diagonal.
inline std::vector<std::vector<std::uint64_t>> cut_matrix(const Graph& graph,
                                                          const PartitionAssignment& assignment) {
  if (assignment.size() != graph.n) throw std::invalid_argument("cut_matrix: assignment size mismatch");
  std::vector<std::vector<std::uint64_t>> m(assignment.k, std::vector<std::uint64_t>(assignment.k, 0));
  for (std::size_t v = 0; v < graph.n; ++v) {
    for (VertexId u : graph.neighbors_of(static_cast<VertexId>(v))) {
      if (u > v && assignment.part_of[u] != assignment.part_of[v]) {
        ++m[assignment.part_of[v]][assignment.part_of[u]];
        ++m[assignment.part_of[u]][assignment.part_of[v]];
      }
    }
  }
  return m;
}

struct MetricsReport {
  double ecr = 0.0;
  double balance_overall = 1.0;
  double balance_train = 1.0;
  double balance_val = 1.0;
  double balance_rest = 1.0;
  bool train_empty = false;
  bool val_empty = false;
  bool rest_empty = false;
  std::vector<std::vector<std::uint64_t>> cut_matrix;
  std::optional<double> avg_bandwidth;  // set when an ordering was evaluated
};

inline MetricsReport metrics_report(const Graph& graph, const PartitionAssignment& assignment,
                                    const NodeSplit& split, const Ordering* ordering = nullptr,
                                    std::size_t threads = 1) {
  assignment.check_total();
  MetricsReport r;
  r.ecr = edge_cut_ratio(graph, assignment, threads);
  r.balance_overall = vertex_balance(assignment).value;
  const BalanceValue train = vertex_balance(assignment, split, NodeClass::kTrain);
  const BalanceValue val = vertex_balance(assignment, split, NodeClass::kVal);
  const BalanceValue rest = vertex_balance(assignment, split, NodeClass::kRest);
  r.balance_train = train.value;
  r.balance_val = val.value;
  r.balance_rest = rest.value;
  r.train_empty = train.empty_class;
  r.val_empty = val.empty_class;
  r.rest_empty = rest.empty_class;
  r.cut_matrix = cut_matrix(graph, assignment);
  if (ordering) r.avg_bandwidth = avg_graph_bandwidth(graph, *ordering, threads);
  return r;
}

namespace detail {

inline void append_number(std::string& out, double v) {
  char buf[40];
  const int len = std::snprintf(buf, sizeof(buf), "%.6g", v);
  out.append(buf, static_cast<std::size_t>(len));
}

}  // namespace detail

// Flat JSON document; numbers carry 6 significant digits, so serialization
// is byte-stable.
inline std::string to_json(const MetricsReport& r) {
  std::string out = "{\n  \"schema\": 1,\n  \"ecr\": ";
  detail::append_number(out, r.ecr);
  out += ",\n  \"balance_overall\": ";
  detail::append_number(out, r.balance_overall);
  out += ",\n  \"balance_train\": ";
  detail::append_number(out, r.balance_train);
  out += ",\n  \"balance_val\": ";
  detail::append_number(out, r.balance_val);
  out += ",\n  \"balance_rest\": ";
  detail::append_number(out, r.balance_rest);
  out += ",\n  \"empty_classes\": [";
  bool first = true;
  for (const auto& [empty, name] :
       {std::pair{r.train_empty, "train"}, std::pair{r.val_empty, "val"}, std::pair{r.rest_empty, "rest"}}) {
    if (!empty) continue;
    if (!first) out += ", ";
    out += '"';
    out += name;
    out += '"';
    first = false;
  }
  out += "],\n  \"cut_matrix\": [";
  for (std::size_t i = 0; i < r.cut_matrix.size(); ++i) {
    out += (i == 0) ? "[" : ", [";
    for (std::size_t j = 0; j < r.cut_matrix[i].size(); ++j) {
      if (j > 0) out += ", ";
      out += std::to_string(r.cut_matrix[i][j]);
    }
    out += "]";
  }
  out += "]";
  if (r.avg_bandwidth.has_value()) {
    out += ",\n  \"avg_bandwidth\": ";
    detail::append_number(out, *r.avg_bandwidth);
  }
  out += "\n}\n";
  return out;
}

}  // namespace vecpart
