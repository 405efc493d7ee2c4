#include <sys/wait.h>

#include <array>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "cbugscan/error.hpp"
#include "cbugscan/source.hpp"

namespace cbugscan {

namespace {

std::string shellQuote(const std::string &s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  return out + "'";
}

} // namespace

std::string readFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string preprocess(const SourceDescriptor &desc, const std::string &command) {
  if (desc.preprocessMode == PreprocessMode::None)
    return readFile(desc.path);
  if (command.empty())
    throw PreprocessError("no preprocessor command configured for '" + desc.path + "'");

  static std::atomic<int> counter{0};
  std::string errPath =
      (std::filesystem::temp_directory_path() / ("cbugscan-pp-" + std::to_string(::getpid()) +
                                                 "-" + std::to_string(counter++)))
          .string();
  std::string cmdline = command;
  for (const auto &flag : desc.preprocessorFlags)
    cmdline += " " + shellQuote(flag);
  cmdline += " " + shellQuote(desc.path) + " 2>" + shellQuote(errPath);

  FILE *pipe = ::popen(cmdline.c_str(), "r");
  if (!pipe)
    throw PreprocessError("cannot run preprocessor '" + command + "'");
  std::string output;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
    output.append(buf.data(), n);
  int status = ::pclose(pipe);

  std::string diagnostics;
  if (std::filesystem::exists(errPath)) {
    diagnostics = readFile(errPath);
    std::filesystem::remove(errPath);
  }
  if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    std::string msg = "preprocessor failed on '" + desc.path + "'";
    if (WIFEXITED(status))
      msg += " (exit status " + std::to_string(WEXITSTATUS(status)) + ")";
    if (!diagnostics.empty())
      msg += ": " + diagnostics;
    throw PreprocessError(msg);
  }
  return output;
}

} // namespace cbugscan
