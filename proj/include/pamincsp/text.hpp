#pragma once

#include <charconv>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pamincsp/model.hpp"

namespace pamincsp::text {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

/// Splits `input` into non-empty token lines. `#` starts a comment.
inline std::vector<Line> tokenize(std::string_view input) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= input.size()) {
    std::size_t end = input.find('\n', pos);
    if (end == std::string_view::npos)
      end = input.size();
    std::string_view raw = input.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos)
      raw = raw.substr(0, hash);
    Line line{number, {}};
    std::istringstream in{std::string(raw)};
    for (std::string tok; in >> tok;)
      line.tokens.push_back(tok);
    if (!line.tokens.empty())
      lines.push_back(std::move(line));
    if (end == input.size())
      break;
    pos = end + 1;
  }
  return lines;
}

inline std::int64_t parse_int(const std::string &tok, int line,
                              const char *what) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, std::string("expected integer ") + what +
                               ", got '" + tok + "'");
  return value;
}

inline bool valid_name(std::string_view name) {
  if (name.empty())
    return false;
  for (char ch : name) {
    bool ok = (ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z') ||
              (ch >= '0' && ch <= '9') || ch == '_';
    if (!ok)
      return false;
  }
  return true;
}

/// Like valid_name but also accepts dots, used by generated gadget vertex names.
inline bool valid_vertex_name(std::string_view name) {
  if (name.empty())
    return false;
  for (char ch : name)
    if (!(valid_name(std::string_view(&ch, 1)) || ch == '.'))
      return false;
  return true;
}

inline Softness parse_softness(const std::string &tok, int line) {
  if (tok == "soft")
    return Softness::Soft;
  if (tok == "crisp")
    return Softness::Crisp;
  throw ParseError(line, "expected 'soft' or 'crisp', got '" + tok + "'");
}

inline std::string_view softness_token(Softness s) {
  return s == Softness::Soft ? "soft" : "crisp";
}

inline std::string weight_budget_token(const std::optional<Weight> &w) {
  return w ? std::to_string(*w) : std::string("inf");
}

} // namespace pamincsp::text
