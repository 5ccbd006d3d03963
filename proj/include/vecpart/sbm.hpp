#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vecpart/graph.hpp"
#include "vecpart/matrix.hpp"
#include "vecpart/rng.hpp"

namespace vecpart {

struct SbmResult {
  Graph graph;
  FeatureMatrix features;  // one-hot block indicator plus noise, d = #blocks
  NodeSplit split;         // 60/20/20 train/val/rest per block, by vertex id
};

namespace detail {

// Each unordered pair gets an independent draw keyed by its global rank, so
// the output is a pure function of (block_sizes, p_in, p_out, seed):
// identical on every platform and independent of iteration order.
inline bool pair_hit(std::uint64_t seed, std::uint64_t pair_rank, std::uint64_t threshold) {
  return hash_at(seed, pair_rank) < threshold;
}

inline std::uint64_t bernoulli_threshold(double p) {
  // caller handles p <= 0 and p >= 1
  return static_cast<std::uint64_t>(p * 0x1.0p64);
}

}  // namespace detail

// Stochastic block model: dense inside blocks (p_in), sparse across (p_out).
// Vertices are numbered block by block. Deterministic for a given seed.
inline SbmResult sbm_generate(const std::vector<std::uint32_t>& block_sizes, double p_in, double p_out,
                              std::uint64_t seed) {
  if (block_sizes.empty()) throw std::invalid_argument("sbm_generate: block_sizes must be non-empty");
  if (!(p_out >= 0.0) || !(p_in <= 1.0) || !(p_out <= p_in)) {
    throw std::invalid_argument("sbm_generate: need 0 <= p_out <= p_in <= 1");
  }
  std::size_t n = 0;
  std::vector<std::size_t> block_end;
  for (std::uint32_t size : block_sizes) {
    n += size;
    block_end.push_back(n);
  }
  if (n == 0) throw std::invalid_argument("sbm_generate: zero total vertices");

  const std::uint64_t edge_seed = derive_seed(seed, "sbm-edges");
  const std::uint64_t feature_seed = derive_seed(seed, "sbm-features");

  std::vector<std::pair<VertexId, VertexId>> edges;
  const bool all_in = p_in >= 1.0, none_in = p_in <= 0.0;
  const bool all_out = p_out >= 1.0, none_out = p_out <= 0.0;
  const std::uint64_t t_in = (all_in || none_in) ? 0 : detail::bernoulli_threshold(p_in);
  const std::uint64_t t_out = (all_out || none_out) ? 0 : detail::bernoulli_threshold(p_out);

  // Scans every unordered pair (u, v), u < v, in canonical order. Pairs
  // inside u's block use p_in, the tail of the row uses p_out.
  std::uint64_t pair_rank = 0;
  std::size_t block = 0;
  for (std::size_t u = 0; u < n; ++u) {
    while (u >= block_end[block]) ++block;
    const std::size_t intra_end = block_end[block];
    if (none_in) {
      pair_rank += intra_end - (u + 1);
    } else {
      for (std::size_t v = u + 1; v < intra_end; ++v, ++pair_rank) {
        if (all_in || detail::pair_hit(edge_seed, pair_rank, t_in)) {
          edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
        }
      }
    }
    if (none_out) {
      pair_rank += n - intra_end;
      continue;
    }
    for (std::size_t v = intra_end; v < n; ++v, ++pair_rank) {
      if (all_out || detail::pair_hit(edge_seed, pair_rank, t_out)) {
        edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
      }
    }
  }

  SbmResult result;
  result.graph = Graph::from_edges(n, edges);

  const std::size_t d = block_sizes.size();
  result.features = FeatureMatrix(n, d);
  block = 0;
  for (std::size_t v = 0; v < n; ++v) {
    while (v >= block_end[block]) ++block;
    for (std::size_t j = 0; j < d; ++j) {
      const double noise =
          0.1 * (static_cast<double>(hash_at(feature_seed, v * d + j) >> 11) * 0x1.0p-53);
      result.features(v, j) = (j == block ? 1.0 : 0.0) + noise;
    }
  }

  result.split = NodeSplit::all_rest(n);
  std::size_t start = 0;
  for (std::size_t b = 0; b < block_sizes.size(); ++b) {
    const std::size_t size = block_sizes[b];
    const std::size_t n_train = size * 6 / 10;
    const std::size_t n_val = size * 2 / 10;
    for (std::size_t i = 0; i < size; ++i) {
      if (i < n_train) {
        result.split.class_of[start + i] = NodeClass::kTrain;
      } else if (i < n_train + n_val) {
        result.split.class_of[start + i] = NodeClass::kVal;
      }
    }
    start += size;
  }
  return result;
}

}  // namespace vecpart
