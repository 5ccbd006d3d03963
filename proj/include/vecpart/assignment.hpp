#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "vecpart/graph.hpp"
#include "vecpart/io_util.hpp"

namespace vecpart {

// Total map vertex -> partition id in [0, k). k is carried explicitly so
// trailing empty partitions survive (the balancer treats them as maximally
// underloaded).
struct PartitionAssignment {
  std::uint32_t k = 0;
  std::vector<std::uint32_t> part_of;

  std::size_t size() const { return part_of.size(); }

  void check_total() const {
    if (k == 0) throw std::invalid_argument("partition assignment: k must be >= 1");
    for (std::uint32_t p : part_of) {
      if (p >= k) throw std::invalid_argument("partition assignment: id out of range");
    }
  }
};

inline std::vector<std::uint64_t> partition_sizes(const PartitionAssignment& a) {
  std::vector<std::uint64_t> sizes(a.k, 0);
  for (std::uint32_t p : a.part_of) ++sizes[p];
  return sizes;
}

// Text format: "vertex_id partition_id", one line per vertex in id order.
inline void save_assignment(const PartitionAssignment& a, const std::string& path) {
  std::string out;
  out.reserve(a.size() * 8);
  for (std::size_t v = 0; v < a.size(); ++v) {
    out += std::to_string(v);
    out.push_back(' ');
    out += std::to_string(a.part_of[v]);
    out.push_back('\n');
  }
  detail::write_file(path, out);
}

// Also accepts files written by external partitioners as long as they follow
// the same line format. k is inferred as max partition id + 1.
inline PartitionAssignment load_assignment(const std::string& path, std::size_t n) {
  const std::string content = detail::read_file(path);
  PartitionAssignment a;
  a.part_of.assign(n, 0);
  std::vector<bool> seen(n, false);
  std::uint32_t max_pid = 0;
  std::size_t assigned = 0;
  detail::for_each_line(content, [&](std::string_view line, std::size_t line_no) {
    if (detail::is_blank(line) || line.front() == '#') return;
    detail::TokenScanner scan(line);
    std::string_view tok_v, tok_p;
    std::uint64_t v = 0, p = 0;
    if (!scan.next(tok_v) || !detail::parse_u64(tok_v, v) || !scan.next(tok_p) ||
        !detail::parse_u64(tok_p, p) || !scan.at_end()) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": malformed assignment line");
    }
    if (v >= n) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": vertex id " + std::to_string(v) +
                               " out of range (n=" + std::to_string(n) + ")");
    }
    if (p > 0x7fffffffULL) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": partition id too large");
    }
    if (!seen[v]) {
      seen[v] = true;
      ++assigned;
    }
    a.part_of[v] = static_cast<std::uint32_t>(p);
    max_pid = std::max(max_pid, static_cast<std::uint32_t>(p));
  });
  if (assigned != n) {
    throw std::runtime_error(path + ": assignment incomplete (" + std::to_string(assigned) + " of " +
                             std::to_string(n) + " vertices assigned)");
  }
  a.k = max_pid + 1;
  return a;
}

}  // namespace vecpart
