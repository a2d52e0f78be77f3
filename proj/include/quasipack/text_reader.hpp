#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "quasipack/error.hpp"

namespace quasipack {

// Line-oriented reader shared by every text format. Lines starting with '#'
// and blank lines are skipped. Errors carry the 1-based line number.
class text_reader {
 public:
  explicit text_reader(std::istream& in) : in_(in) {}

  std::optional<std::string> next() {
    if (pending_) {
      auto line = std::move(*pending_);
      pending_.reset();
      return line;
    }
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      return line;
    }
    return std::nullopt;
  }

  std::optional<std::string> peek() {
    if (!pending_) pending_ = next();
    return pending_ ? std::optional<std::string>(*pending_) : std::nullopt;
  }

  std::string expect_line(const std::string& what) {
    auto line = next();
    if (!line) fail("unexpected end of input, expected " + what);
    return *line;
  }

  void expect_end() {
    if (next()) fail("trailing content");
  }

  std::vector<std::uint64_t> integers(const std::string& line, std::size_t count) {
    std::vector<std::uint64_t> out;
    std::istringstream is(line);
    std::string token;
    while (is >> token) {
      if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
        fail("expected a non-negative integer, got '" + token + "'");
      if (token.size() > 18) fail("integer too large: '" + token + "'");
      out.push_back(std::stoull(token));
    }
    if (out.size() != count)
      fail("expected " + std::to_string(count) + " integers, got " + std::to_string(out.size()));
    return out;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw error(error_kind::parse_error, "line " + std::to_string(line_no_) + ": " + message);
  }

  std::size_t line_number() const noexcept { return line_no_; }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
  std::optional<std::string> pending_;
};

}  // namespace quasipack
