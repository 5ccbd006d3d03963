#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "vecpart/graph.hpp"
#include "vecpart/rng.hpp"

namespace testutil {

// Ground-truth edge list kept alongside the CSR graph so oracles never read
// the representation under test.
struct TestGraph {
  vecpart::Graph graph;
  std::vector<std::pair<vecpart::VertexId, vecpart::VertexId>> edges;  // unique, u < v
  std::size_t n = 0;
};

inline TestGraph make_graph(std::size_t n,
                            std::vector<std::pair<vecpart::VertexId, vecpart::VertexId>> edges) {
  std::set<std::pair<vecpart::VertexId, vecpart::VertexId>> unique;
  for (auto [u, v] : edges) {
    if (u == v) continue;
    unique.insert({std::min(u, v), std::max(u, v)});
  }
  TestGraph tg;
  tg.n = n;
  tg.edges.assign(unique.begin(), unique.end());
  tg.graph = vecpart::Graph::from_edges(n, tg.edges);
  return tg;
}

inline TestGraph random_test_graph(vecpart::Rng& rng, std::size_t max_n, std::size_t max_edges) {
  const std::size_t n = 2 + rng.next_below(max_n - 1);
  std::vector<std::pair<vecpart::VertexId, vecpart::VertexId>> edges;
  const std::size_t attempts = rng.next_below(max_edges + 1);
  for (std::size_t i = 0; i < attempts; ++i) {
    const auto u = static_cast<vecpart::VertexId>(rng.next_below(n));
    const auto v = static_cast<vecpart::VertexId>(rng.next_below(n));
    edges.emplace_back(u, v);
  }
  return make_graph(n, std::move(edges));
}

// --- independent metric oracles (straight from the definitions) -----------

inline double ecr_oracle(const TestGraph& tg, const std::vector<std::uint32_t>& part_of) {
  if (tg.edges.empty()) return 0.0;
  std::uint64_t cut = 0;
  for (auto [u, v] : tg.edges) {
    if (part_of[u] != part_of[v]) ++cut;
  }
  return static_cast<double>(cut) / static_cast<double>(tg.edges.size());
}

inline double balance_oracle(const std::vector<std::uint32_t>& part_of, std::uint32_t k,
                             const std::vector<bool>* in_class = nullptr) {
  std::vector<std::uint64_t> counts(k, 0);
  std::uint64_t total = 0;
  for (std::size_t v = 0; v < part_of.size(); ++v) {
    if (in_class && !(*in_class)[v]) continue;
    ++counts[part_of[v]];
    ++total;
  }
  if (total == 0) return 1.0;
  const std::uint64_t max_count = *std::max_element(counts.begin(), counts.end());
  return static_cast<double>(max_count) / (static_cast<double>(total) / static_cast<double>(k));
}

inline std::vector<std::vector<std::uint64_t>> cut_matrix_oracle(const TestGraph& tg,
                                                                 const std::vector<std::uint32_t>& part_of,
                                                                 std::uint32_t k) {
  std::vector<std::vector<std::uint64_t>> m(k, std::vector<std::uint64_t>(k, 0));
  for (auto [u, v] : tg.edges) {
    if (part_of[u] != part_of[v]) {
      ++m[part_of[u]][part_of[v]];
      ++m[part_of[v]][part_of[u]];
    }
  }
  return m;
}

inline std::uint64_t gap_oracle(const std::vector<vecpart::VertexId>& perm, vecpart::VertexId u,
                                vecpart::VertexId v) {
  return perm[u] > perm[v] ? perm[u] - perm[v] : perm[v] - perm[u];
}

inline std::uint64_t vertex_bandwidth_oracle(const TestGraph& tg, const std::vector<vecpart::VertexId>& perm,
                                             vecpart::VertexId v) {
  std::uint64_t best = 0;
  for (auto [a, b] : tg.edges) {
    if (a == v) best = std::max(best, gap_oracle(perm, a, b));
    if (b == v) best = std::max(best, gap_oracle(perm, a, b));
  }
  return best;
}

inline double avg_bandwidth_oracle(const TestGraph& tg, const std::vector<vecpart::VertexId>& perm) {
  std::uint64_t sum = 0;
  for (std::size_t v = 0; v < tg.n; ++v) {
    sum += vertex_bandwidth_oracle(tg, perm, static_cast<vecpart::VertexId>(v));
  }
  return static_cast<double>(sum) / static_cast<double>(tg.n);
}

// --- filesystem helpers ----------------------------------------------------

class TempDir {
 public:
  TempDir() {
    char buf[] = "/tmp/vecpart_test_XXXXXX";
    if (!mkdtemp(buf)) std::abort();
    path_ = buf;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return path_ + "/" + name; }

 private:
  std::string path_;
};

inline void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

#ifdef VECPART_CLI_PATH
struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

inline CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(VECPART_CLI_PATH) + " " + args + " 2>&1";
  CliResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return result;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) result.output.append(buf, got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}
#endif

}  // namespace testutil
