#pragma once

#include <filesystem>
#include <fstream>
#include <memory>
#include <string>

#include "cbugscan/unit.hpp"

namespace testing_support {

inline std::string sourcePath(const std::string &relative) {
  return std::string(CBUGSCAN_SOURCE_DIR) + "/" + relative;
}

inline std::shared_ptr<const cbugscan::TranslationUnit> unitOf(const std::string &text,
                                                               const std::string &path = "t.c") {
  return cbugscan::buildUnit(text, path);
}

/// Scratch directory removed on destruction.
class TempDir {
public:
  TempDir() {
    std::string templ = (std::filesystem::temp_directory_path() / "cbugscan-XXXXXX").string();
    path_ = ::mkdtemp(templ.data());
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path &path() const { return path_; }
  std::string file(const std::string &name, const std::string &content) const {
    auto p = path_ / name;
    std::filesystem::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << content;
    return p.string();
  }

private:
  std::filesystem::path path_;
};

} // namespace testing_support
