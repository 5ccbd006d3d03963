#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vecpart::detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

// Calls fn(line, line_no) for every line; tolerates LF and CRLF, drops the
// terminator. line_no starts at 1.
template <typename Fn>
void for_each_line(std::string_view content, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t nl = content.find('\n', pos);
    std::size_t end = (nl == std::string_view::npos) ? content.size() : nl;
    std::string_view line = content.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(line, ++line_no);
    pos = (nl == std::string_view::npos) ? content.size() : nl + 1;
  }
}

inline bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

// Whitespace-separated token scanner over one line.
class TokenScanner {
 public:
  explicit TokenScanner(std::string_view line) : line_(line) {}

  bool next(std::string_view& token) {
    std::size_t b = line_.find_first_not_of(" \t", pos_);
    if (b == std::string_view::npos) return false;
    std::size_t e = line_.find_first_of(" \t", b);
    if (e == std::string_view::npos) e = line_.size();
    token = line_.substr(b, e - b);
    pos_ = e;
    return true;
  }

  bool at_end() {
    std::string_view ignored;
    std::size_t saved = pos_;
    bool more = next(ignored);
    pos_ = saved;
    return !more;
  }

 private:
  std::string_view line_;
  std::size_t pos_ = 0;
};

inline bool parse_u64(std::string_view token, std::uint64_t& out) {
  if (token.empty()) return false;
  std::uint64_t value = 0;
  for (char c : token) {
    if (c < '0' || c > '9') return false;
    const std::uint64_t digit = static_cast<std::uint64_t>(c - '0');
    if (value > (UINT64_MAX - digit) / 10) return false;
    value = value * 10 + digit;
  }
  out = value;
  return true;
}

inline bool parse_double(std::string_view token, double& out) {
  if (token.empty()) return false;
  char buf[64];
  if (token.size() >= sizeof(buf)) return false;
  token.copy(buf, token.size());
  buf[token.size()] = '\0';
  char* end = nullptr;
  out = std::strtod(buf, &end);
  return end == buf + token.size();
}

inline void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open file for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace vecpart::detail
