#pragma once

#include <cctype>
#include <fstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "free_product.hpp"
#include "group_factor.hpp"

namespace freeperc {

/// Parse a textual product spec: factor ("*" factor)+, where factor is
/// "C<m>" (cyclic), "Z" (integers), "F<n>" (free group), or
/// "file:<path>" (explicit edge-list graph). Whitespace around tokens is
/// ignored; parse errors report the offending position.
inline FreeProduct parse_product_spec(const std::string& text) {
  std::vector<GroupFactor> factors;
  std::size_t pos = 0;
  const std::size_t n = text.size();
  auto skip_ws = [&]() {
    while (pos < n && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto parse_int = [&](const char* what) {
    std::size_t start = pos;
    while (pos < n && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw ParseError(start, what, "expected " + std::string(what) + " at position " +
                                                        std::to_string(start) + " in \"" + text + "\"");
    return std::stoi(text.substr(start, pos - start));
  };

  while (true) {
    skip_ws();
    if (pos >= n) {
      throw ParseError(pos, "factor (C<m>, Z, F<n>, or file:<path>)",
                       "expected a factor at position " + std::to_string(pos) + " in \"" + text + "\"");
    }
    std::size_t factor_pos = pos;
    char c = text[pos];
    if (c == 'C') {
      ++pos;
      int m = parse_int("cyclic order");
      if (m < 2)
        throw ParseError(factor_pos, "cyclic order >= 2",
                         "cyclic order must be at least 2 at position " + std::to_string(factor_pos));
      factors.push_back(GroupFactor::cyclic(m));
    } else if (c == 'Z') {
      ++pos;
      factors.push_back(GroupFactor::integers());
    } else if (c == 'F') {
      ++pos;
      int r = parse_int("free rank");
      if (r < 2)
        throw ParseError(factor_pos, "free rank >= 2",
                         "free rank must be at least 2 at position " + std::to_string(factor_pos));
      factors.push_back(GroupFactor::free_group(r));
    } else if (text.compare(pos, 5, "file:") == 0) {
      pos += 5;
      std::size_t start = pos;
      while (pos < n && text[pos] != '*') ++pos;
      std::string path = text.substr(start, pos - start);
      while (!path.empty() && std::isspace(static_cast<unsigned char>(path.back()))) path.pop_back();
      if (path.empty())
        throw ParseError(start, "file path", "expected a file path at position " + std::to_string(start));
      std::ifstream in(path);
      if (!in) throw ParseError(start, "readable file", "cannot open graph file: " + path);
      factors.push_back(GroupFactor::explicit_finite(FiniteCayleyGraph::parse(in), path));
    } else {
      throw ParseError(factor_pos, "factor (C<m>, Z, F<n>, or file:<path>)",
                       "unrecognized factor at position " + std::to_string(factor_pos) + " in \"" + text + "\"");
    }
    skip_ws();
    if (pos >= n) break;
    if (text[pos] != '*') {
      throw ParseError(pos, "'*' or end of spec",
                       "expected '*' at position " + std::to_string(pos) + " in \"" + text + "\"");
    }
    ++pos;
  }
  if (factors.size() < 2) {
    throw ParseError(n, "at least two factors",
                     "a free product needs at least two factors: \"" + text + "\"");
  }
  return FreeProduct(std::move(factors));
}

}  // namespace freeperc
