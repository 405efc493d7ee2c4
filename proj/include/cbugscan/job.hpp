#pragma once

#include <string>
#include <vector>

#include "cbugscan/checker.hpp"

namespace cbugscan {

/// Entries of a JSON compilation database: an array of
/// `{"file": "...", "flags": ["-I...", ...]}`. Relative files resolve
/// against the database's directory. A file listed twice keeps its first
/// position and the flags of its last entry.
std::vector<SourceDescriptor> loadCompilationDatabase(const std::string &path);

/// `*.c` files under `dir`, sorted by path.
std::vector<std::string> expandDirectory(const std::string &dir, bool recursive);

/// Non-blank, non-`#` lines of a list file; relative paths resolve
/// against the list file's directory.
std::vector<std::string> expandListFile(const std::string &path);

/// Parses `check ...` arguments (args[0] == "check") into a validated job.
/// Every named checker is instantiated once to validate its
/// configuration. Throws ConfigError on any problem.
AnalysisJob buildJob(const std::vector<std::string> &args, const CheckerRegistry &registry);

} // namespace cbugscan
