#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "vecpart/balance.hpp"
#include "vecpart/embedding.hpp"
#include "vecpart/graph.hpp"
#include "vecpart/kmeans.hpp"
#include "vecpart/rng.hpp"

// The embed -> cluster -> balance driver, plus the two internal baselines
// (random and LDG-style streaming). The stages stay independently callable:
// running them by hand with the seeds from pipeline_seeds() reproduces the
// composed call exactly.

namespace vecpart {

struct EncoderConfig {
  std::uint32_t hidden_dim = 64;
  std::uint32_t num_layers = 2;
};

struct PipelineConfig {
  EncoderConfig encoder;
  KMeansConfig kmeans;
  BalanceConfig balance;
  bool rebalance = true;
};

// Exactly one of the two inputs must be set.
struct PipelineInput {
  const FeatureMatrix* features = nullptr;      // embed here with a fresh untrained encoder
  const EmbeddingMatrix* embeddings = nullptr;  // precomputed (e.g. from an external trainer)
};

struct PipelineSeeds {
  std::uint64_t encoder;
  std::uint64_t kmeans;
  std::uint64_t balance;
  std::uint64_t features;  // used by the CLI's --random-features
};

inline PipelineSeeds pipeline_seeds(std::uint64_t root) {
  return {derive_seed(root, "encoder"), derive_seed(root, "kmeans"), derive_seed(root, "balance"),
          derive_seed(root, "features")};
}

inline EmbeddingMatrix pipeline_embeddings(const Graph& graph, const PipelineInput& input,
                                           const EncoderConfig& encoder, std::uint64_t encoder_seed,
                                           std::size_t threads = 1) {
  if ((input.features != nullptr) == (input.embeddings != nullptr)) {
    throw std::invalid_argument("pipeline: exactly one of features/embeddings must be supplied");
  }
  if (input.embeddings) {
    if (input.embeddings->rows != graph.n) {
      throw std::invalid_argument("pipeline: embedding rows do not match vertex count");
    }
    return *input.embeddings;
  }
  const EncoderWeights weights = init_weights(static_cast<std::uint32_t>(input.features->cols),
                                              encoder.hidden_dim, encoder.num_layers, encoder_seed);
  return forward_embed(graph, *input.features, weights, threads);
}

inline PartitionAssignment embedding_partition(const Graph& graph, const PipelineInput& input,
                                               std::uint32_t k, const NodeSplit& split,
                                               const PipelineConfig& config, std::uint64_t seed,
                                               std::size_t threads = 1) {
  if (k < 1) throw std::invalid_argument("embedding_partition: k must be >= 1");
  if (k > graph.n) throw std::invalid_argument("embedding_partition: k exceeds vertex count");
  const PipelineSeeds seeds = pipeline_seeds(seed);
  const EmbeddingMatrix emb = pipeline_embeddings(graph, input, config.encoder, seeds.encoder, threads);
  const Centroids centroids = kmeans_fit(emb, k, config.kmeans, seeds.kmeans);
  PartitionAssignment assignment = kmeans_assign(emb, centroids, threads);
  if (config.rebalance) {
    assignment = balance_all(assignment, split, config.balance, graph.degrees, seeds.balance);
  }
  return assignment;
}

inline PartitionAssignment random_partition(std::size_t n, std::uint32_t k, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("random_partition: k must be >= 1");
  PartitionAssignment a;
  a.k = k;
  a.part_of.resize(n);
  Rng rng(seed);
  for (std::size_t v = 0; v < n; ++v) a.part_of[v] = static_cast<std::uint32_t>(rng.next_below(k));
  return a;
}

// Streaming greedy baseline: vertices arrive in a seeded random order and
// each goes to argmax |N(v) /\ P_i| * (1 - |P_i| / C) over partitions below
// capacity C = slack * n / k. Ties break to the lighter partition, then the
// lower index.
inline PartitionAssignment ldg_partition(const Graph& graph, std::uint32_t k, double slack,
                                         std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("ldg_partition: k must be >= 1");
  if (!(slack >= 1.0)) throw std::invalid_argument("ldg_partition: slack must be >= 1");
  const std::size_t n = graph.n;
  const double capacity = slack * static_cast<double>(n) / static_cast<double>(k);

  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), 0u);
  Rng rng(seed);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.next_below(n - i));
    std::swap(order[i], order[j]);
  }

  constexpr std::uint32_t kUnassigned = 0xffffffffu;
  PartitionAssignment a;
  a.k = k;
  a.part_of.assign(n, kUnassigned);
  std::vector<std::uint64_t> load(k, 0);
  std::vector<std::uint32_t> neighbor_count(k, 0);
  std::vector<std::uint32_t> touched;

  for (VertexId v : order) {
    touched.clear();
    for (VertexId u : graph.neighbors_of(v)) {
      const std::uint32_t p = a.part_of[u];
      if (p == kUnassigned) continue;
      if (neighbor_count[p]++ == 0) touched.push_back(p);
    }
    std::uint32_t best = kUnassigned;
    double best_score = 0.0;
    for (std::uint32_t i = 0; i < k; ++i) {
      if (static_cast<double>(load[i]) >= capacity) continue;  // at capacity
      const double score =
          static_cast<double>(neighbor_count[i]) * (1.0 - static_cast<double>(load[i]) / capacity);
      if (best == kUnassigned || score > best_score ||
          (score == best_score && load[i] < load[best])) {
        best = i;
        best_score = score;
      }
    }
    if (best == kUnassigned) {
      // all partitions at capacity; fall back to the least loaded
      best = static_cast<std::uint32_t>(std::min_element(load.begin(), load.end()) - load.begin());
    }
    a.part_of[v] = best;
    ++load[best];
    for (std::uint32_t p : touched) neighbor_count[p] = 0;
  }
  return a;
}

}  // namespace vecpart
