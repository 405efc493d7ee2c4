#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace cbugscan {

struct ConfigToken {
  std::string text;
  bool quoted = false;
};

struct ConfigLine {
  int number = 0;
  std::vector<ConfigToken> tokens;

  bool is(std::size_t i, std::string_view word) const {
    return i < tokens.size() && !tokens[i].quoted && tokens[i].text == word;
  }
};

/// Splits line-oriented config text into whitespace-separated words and
/// double-quoted strings (`\"` and `\\` escapes). `#` outside quotes starts
/// a comment. Blank lines are omitted. Throws ConfigError on an unterminated
/// string.
std::vector<ConfigLine> splitConfigLines(std::string_view text, std::string_view origin);

} // namespace cbugscan
