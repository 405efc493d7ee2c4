#include "cbugscan/line_config.hpp"

#include <cctype>

#include "cbugscan/error.hpp"

namespace cbugscan {

std::vector<ConfigLine> splitConfigLines(std::string_view text, std::string_view origin) {
  std::vector<ConfigLine> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos)
      eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    ++number;
    pos = eol + 1;

    ConfigLine line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      char c = raw[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (c == '#')
        break;
      if (c == '"') {
        std::string s;
        ++i;
        bool closed = false;
        while (i < raw.size()) {
          if (raw[i] == '\\' && i + 1 < raw.size()) {
            s += raw[i + 1];
            i += 2;
            continue;
          }
          if (raw[i] == '"') {
            closed = true;
            ++i;
            break;
          }
          s += raw[i++];
        }
        if (!closed)
          throw ConfigError(std::string(origin) + ":" + std::to_string(number) +
                            ": unterminated string");
        line.tokens.push_back({std::move(s), true});
        continue;
      }
      std::size_t start = i;
      while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i])) &&
             raw[i] != '"' && raw[i] != '#')
        ++i;
      line.tokens.push_back({std::string(raw.substr(start, i - start)), false});
    }
    if (!line.tokens.empty())
      lines.push_back(std::move(line));
    if (eol == text.size())
      break;
  }
  return lines;
}

} // namespace cbugscan
