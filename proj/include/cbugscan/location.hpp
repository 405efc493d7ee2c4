#pragma once

#include <compare>
#include <string>

namespace cbugscan {

struct SourceLocation {
  std::string file;
  int line = 1;
  int column = 1;

  std::string str() const {
    return file + ":" + std::to_string(line) + ":" + std::to_string(column);
  }

  auto operator<=>(const SourceLocation &) const = default;
};

} // namespace cbugscan
