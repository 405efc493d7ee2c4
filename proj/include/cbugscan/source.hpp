#pragma once

#include <string>
#include <vector>

namespace cbugscan {

enum class PreprocessMode { None, ExternalCommand };

struct SourceDescriptor {
  std::string path;
  /// Include directories and macro definitions, in command-line order.
  std::vector<std::string> preprocessorFlags;
  PreprocessMode preprocessMode = PreprocessMode::None;

  bool operator==(const SourceDescriptor &) const = default;
};

/// Returns the text to parse. With PreprocessMode::ExternalCommand the
/// command is run through the shell as `command flags... path` and its
/// standard output is returned; a nonzero exit raises PreprocessError with
/// the command's standard error.
std::string preprocess(const SourceDescriptor &desc, const std::string &command = {});

std::string readFile(const std::string &path);

} // namespace cbugscan
