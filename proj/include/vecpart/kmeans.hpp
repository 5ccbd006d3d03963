#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "vecpart/assignment.hpp"
#include "vecpart/matrix.hpp"
#include "vecpart/parallel.hpp"
#include "vecpart/rng.hpp"

// Sampled k-means over embedding rows. Centroids are fitted on a uniform
// sample of min(n, k * sample_per_cluster) rows (512 per cluster is plenty),
// then every vertex is assigned to its nearest centroid. All ties break to
// the lowest centroid index so results do not depend on row processing
// order or thread count.

namespace vecpart {

struct Centroids {
  std::uint32_t k = 0;
  std::size_t dim = 0;
  std::vector<double> values;  // k x dim, row-major

  const double* row(std::uint32_t c) const { return values.data() + static_cast<std::size_t>(c) * dim; }
  double* row(std::uint32_t c) { return values.data() + static_cast<std::size_t>(c) * dim; }
};

struct KMeansConfig {
  std::uint32_t sample_per_cluster = 512;
  std::uint32_t max_iters = 25;
  double tol = 1e-4;  // stop when relative objective decrease falls below
};

namespace detail {

inline double squared_distance(const double* a, const double* b, std::size_t d) {
  double sq = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double diff = a[j] - b[j];
    sq += diff * diff;
  }
  return sq;
}

inline std::uint32_t nearest_centroid(const double* point, const Centroids& c, double* best_out = nullptr) {
  std::uint32_t best = 0;
  double best_sq = squared_distance(point, c.row(0), c.dim);
  for (std::uint32_t j = 1; j < c.k; ++j) {
    const double sq = squared_distance(point, c.row(j), c.dim);
    if (sq < best_sq) {
      best_sq = sq;
      best = j;
    }
  }
  if (best_out) *best_out = best_sq;
  return best;
}

}  // namespace detail

// Lloyd iterations with k-means++ seeding on the sample. An empty cluster is
// re-seeded to the unclaimed sample point farthest from its stale centroid,
// which keeps exactly k centroids and never increases the objective.
// `objective_trace`, when given, receives the sample objective after each
// assignment step.
inline Centroids kmeans_fit(const EmbeddingMatrix& embeddings, std::uint32_t k,
                            const KMeansConfig& config, std::uint64_t seed,
                            std::vector<double>* objective_trace = nullptr) {
  const std::size_t n = embeddings.rows;
  const std::size_t d = embeddings.cols;
  if (k < 1) throw std::invalid_argument("kmeans_fit: k must be >= 1");
  if (n == 0) throw std::invalid_argument("kmeans_fit: no rows to cluster");
  if (k > n) throw std::invalid_argument("kmeans_fit: more clusters than rows");
  if (config.sample_per_cluster < 1 || config.max_iters < 1 || config.tol < 0.0) {
    throw std::invalid_argument("kmeans_fit: invalid config");
  }
  if (objective_trace) objective_trace->clear();

  Rng rng(seed);

  // Uniform sample without replacement (partial Fisher-Yates).
  const std::size_t sample_size =
      static_cast<std::size_t>(std::min<std::uint64_t>(n, static_cast<std::uint64_t>(k) * config.sample_per_cluster));
  std::vector<std::uint32_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0u);
  std::vector<std::uint32_t> sample(sample_size);
  for (std::size_t i = 0; i < sample_size; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.next_below(n - i));
    std::swap(pool[i], pool[j]);
    sample[i] = pool[i];
  }
  auto sample_row = [&](std::size_t i) { return embeddings.values.data() + static_cast<std::size_t>(sample[i]) * d; };

  // k-means++ seeding.
  Centroids centroids;
  centroids.k = k;
  centroids.dim = d;
  centroids.values.resize(static_cast<std::size_t>(k) * d);
  std::vector<double> dist_sq(sample_size, std::numeric_limits<double>::infinity());
  std::size_t first = static_cast<std::size_t>(rng.next_below(sample_size));
  std::copy_n(sample_row(first), d, centroids.row(0));
  for (std::uint32_t c = 1; c < k; ++c) {
    double total = 0.0;
    for (std::size_t i = 0; i < sample_size; ++i) {
      dist_sq[i] = std::min(dist_sq[i], detail::squared_distance(sample_row(i), centroids.row(c - 1), d));
      total += dist_sq[i];
    }
    std::size_t chosen;
    if (total > 0.0) {
      const double r = rng.next_double() * total;
      double cum = 0.0;
      chosen = sample_size - 1;
      for (std::size_t i = 0; i < sample_size; ++i) {
        cum += dist_sq[i];
        if (r < cum) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = static_cast<std::size_t>(rng.next_below(sample_size));  // all points coincide
    }
    std::copy_n(sample_row(chosen), d, centroids.row(c));
  }

  std::vector<std::uint32_t> member_of(sample_size, 0);
  std::vector<double> sums(static_cast<std::size_t>(k) * d);
  std::vector<std::uint64_t> counts(k);
  double prev_objective = std::numeric_limits<double>::infinity();

  for (std::uint32_t iter = 0; iter < config.max_iters; ++iter) {
    double objective = 0.0;
    for (std::size_t i = 0; i < sample_size; ++i) {
      double best_sq = 0.0;
      member_of[i] = detail::nearest_centroid(sample_row(i), centroids, &best_sq);
      objective += best_sq;
    }
    if (objective_trace) objective_trace->push_back(objective);
    if (iter > 0) {
      const double improvement = prev_objective - objective;
      if (improvement <= config.tol * prev_objective) break;
    }
    prev_objective = objective;

    std::fill(sums.begin(), sums.end(), 0.0);
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < sample_size; ++i) {
      double* sum = sums.data() + static_cast<std::size_t>(member_of[i]) * d;
      const double* p = sample_row(i);
      for (std::size_t j = 0; j < d; ++j) sum[j] += p[j];
      ++counts[member_of[i]];
    }
    std::vector<bool> claimed(sample_size, false);
    for (std::uint32_t c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        const double inv = 1.0 / static_cast<double>(counts[c]);
        double* row = centroids.row(c);
        const double* sum = sums.data() + static_cast<std::size_t>(c) * d;
        for (std::size_t j = 0; j < d; ++j) row[j] = sum[j] * inv;
      } else {
        // farthest unclaimed sample point from the stale centroid
        std::size_t far = 0;
        double far_sq = -1.0;
        for (std::size_t i = 0; i < sample_size; ++i) {
          if (claimed[i]) continue;
          const double sq = detail::squared_distance(sample_row(i), centroids.row(c), d);
          if (sq > far_sq) {
            far_sq = sq;
            far = i;
          }
        }
        claimed[far] = true;
        std::copy_n(sample_row(far), d, centroids.row(c));
      }
    }
  }
  return centroids;
}

// Nearest-centroid assignment for every row; k is preserved even when some
// partitions end up empty.
inline PartitionAssignment kmeans_assign(const EmbeddingMatrix& embeddings, const Centroids& centroids,
                                         std::size_t threads = 1) {
  if (embeddings.cols != centroids.dim) {
    throw std::invalid_argument("kmeans_assign: dimension mismatch");
  }
  PartitionAssignment a;
  a.k = centroids.k;
  a.part_of.assign(embeddings.rows, 0);
  parallel_for(embeddings.rows, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t v = begin; v < end; ++v) {
      a.part_of[v] = detail::nearest_centroid(embeddings.values.data() + v * embeddings.cols, centroids);
    }
  });
  return a;
}

inline double kmeans_objective(const EmbeddingMatrix& embeddings, const Centroids& centroids,
                               const PartitionAssignment& assignment) {
  if (embeddings.cols != centroids.dim || assignment.size() != embeddings.rows || assignment.k != centroids.k) {
    throw std::invalid_argument("kmeans_objective: shape mismatch");
  }
  double total = 0.0;
  for (std::size_t v = 0; v < embeddings.rows; ++v) {
    total += detail::squared_distance(embeddings.values.data() + v * embeddings.cols,
                                      centroids.row(assignment.part_of[v]), embeddings.cols);
  }
  return total;
}

}  // namespace vecpart
