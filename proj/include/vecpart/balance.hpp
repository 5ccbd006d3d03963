#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "vecpart/assignment.hpp"
#include "vecpart/graph.hpp"
#include "vecpart/rng.hpp"

// Degree-aware rebalancing. Clustering gives no balance guarantee, so each
// vertex class (train / val / rest) is capped at a per-partition capacity
// derived from its imbalance factor, and overloaded partitions shed their
// lowest-degree members to randomly sampled underloaded partitions. Low
// degree first: a vertex with three neighbors can add at most three cut
// edges when it moves.

namespace vecpart {

struct BalanceConfig {
  double beta_train = 1.05;
  double beta_val = 1.05;
  double beta_rest = 1.05;

  double beta_for(NodeClass c) const {
    switch (c) {
      case NodeClass::kTrain: return beta_train;
      case NodeClass::kVal: return beta_val;
      default: return beta_rest;
    }
  }
};

// Uniform per-partition capacity floor(beta * class_size / k), bumped to
// ceil(class_size / k) when the floor cannot hold the class at all.
inline std::uint64_t capacities(std::uint64_t class_size, std::uint32_t k, double beta) {
  if (k < 1) throw std::invalid_argument("capacities: k must be >= 1");
  if (!(beta > 1.0)) throw std::invalid_argument("capacities: beta must be > 1");
  std::uint64_t c = static_cast<std::uint64_t>(beta * static_cast<double>(class_size) / static_cast<double>(k));
  if (c * k < class_size) c = (class_size + k - 1) / k;
  return c;
}

inline std::vector<std::uint64_t> partition_loads(const PartitionAssignment& assignment,
                                                  std::span<const VertexId> candidates) {
  std::vector<std::uint64_t> loads(assignment.k, 0);
  for (VertexId v : candidates) ++loads[assignment.part_of[v]];
  return loads;
}

// Moves exactly load - capacity vertices out of each overloaded partition,
// smallest degree first (ties by lowest id). Each move samples its
// destination among underloaded partitions with probability proportional to
// remaining free capacity, refreshed after every placement so no destination
// can overshoot. Vertices outside `candidates` are never touched.
inline PartitionAssignment migrate(const PartitionAssignment& assignment,
                                   std::span<const VertexId> candidates,
                                   std::span<const std::uint64_t> capacity,
                                   std::span<const VertexId> degrees, std::uint64_t seed) {
  const std::uint32_t k = assignment.k;
  if (capacity.size() != k) throw std::invalid_argument("migrate: capacity size must equal k");
  std::vector<std::uint64_t> loads = partition_loads(assignment, candidates);
  const std::uint64_t total_capacity = std::accumulate(capacity.begin(), capacity.end(), std::uint64_t{0});
  if (total_capacity < candidates.size()) throw std::invalid_argument("migrate: infeasible capacities");

  PartitionAssignment result = assignment;
  std::vector<std::uint64_t> free(k, 0);
  std::uint64_t total_free = 0;
  for (std::uint32_t i = 0; i < k; ++i) {
    if (loads[i] < capacity[i]) {
      free[i] = capacity[i] - loads[i];
      total_free += free[i];
    }
  }

  Rng rng(seed);
  std::vector<VertexId> members;
  for (std::uint32_t i = 0; i < k; ++i) {
    if (loads[i] <= capacity[i]) continue;
    const std::uint64_t excess = loads[i] - capacity[i];
    members.clear();
    for (VertexId v : candidates) {
      if (assignment.part_of[v] == i) members.push_back(v);
    }
    std::sort(members.begin(), members.end(),
              [&](VertexId a, VertexId b) { return degrees[a] != degrees[b] ? degrees[a] < degrees[b] : a < b; });
    for (std::uint64_t m = 0; m < excess; ++m) {
      const VertexId v = members[m];
      std::uint64_t r = rng.next_below(total_free);
      std::uint32_t dest = 0;
      for (std::uint32_t u = 0; u < k; ++u) {
        if (r < free[u]) {
          dest = u;
          break;
        }
        r -= free[u];
      }
      result.part_of[v] = dest;
      --free[dest];
      --total_free;
    }
  }
  return result;
}

// Alg-order passes over train, then val, then rest. Classes are disjoint, so
// later passes cannot break earlier constraints. One migrate pass already
// satisfies the guard; the loop stays as a backstop.
inline PartitionAssignment balance_all(const PartitionAssignment& assignment, const NodeSplit& split,
                                       const BalanceConfig& config, std::span<const VertexId> degrees,
                                       std::uint64_t seed) {
  if (split.size() != assignment.size()) {
    throw std::invalid_argument("balance_all: split size does not match assignment");
  }
  PartitionAssignment result = assignment;
  for (NodeClass c : kAllClasses) {
    const std::vector<VertexId> members = split.members(c);
    const std::uint64_t cap = capacities(members.size(), assignment.k, config.beta_for(c));
    const std::vector<std::uint64_t> capacity(assignment.k, cap);
    const std::uint64_t class_seed = derive_seed(seed, class_name(c));
    for (std::uint32_t round = 0;; ++round) {
      const std::vector<std::uint64_t> loads = partition_loads(result, members);
      const bool overloaded = std::any_of(loads.begin(), loads.end(), [&](std::uint64_t l) { return l > cap; });
      if (!overloaded) break;
      if (round >= 16) throw std::logic_error("balance_all: migration failed to converge");
      result = migrate(result, members, capacity, degrees, hash_at(class_seed, round));
    }
  }
  return result;
}

}  // namespace vecpart
