#include "cbugscan/job.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "cbugscan/error.hpp"

namespace fs = std::filesystem;

namespace cbugscan {

namespace {

std::string resolve(const fs::path &base, const std::string &p) {
  fs::path path(p);
  if (path.is_relative() && !base.empty())
    path = base / path;
  return path.lexically_normal().string();
}

void requireReadable(const std::string &path, const std::string &what) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec))
    throw ConfigError(what + " '" + path + "' does not exist or is not a regular file");
  std::ifstream in(path);
  if (!in)
    throw ConfigError(what + " '" + path + "' is not readable");
}

} // namespace

std::vector<SourceDescriptor> loadCompilationDatabase(const std::string &path) {
  requireReadable(path, "compilation database");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(readFile(path));
  } catch (const nlohmann::json::exception &e) {
    throw ConfigError(path + ": " + e.what());
  }
  if (!doc.is_array())
    throw ConfigError(path + ": expected an array of entries");
  const fs::path base = fs::path(path).parent_path();
  std::vector<SourceDescriptor> out;
  std::map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto &e = doc[i];
    auto where = path + ": entry " + std::to_string(i);
    if (!e.is_object() || !e.contains("file") || !e["file"].is_string())
      throw ConfigError(where + ": missing string field 'file'");
    if (!e.contains("flags") || !e["flags"].is_array())
      throw ConfigError(where + ": missing array field 'flags'");
    SourceDescriptor d;
    d.path = resolve(base, e["file"].get<std::string>());
    for (const auto &f : e["flags"]) {
      if (!f.is_string())
        throw ConfigError(where + ": flags must be strings");
      d.preprocessorFlags.push_back(f.get<std::string>());
    }
    auto [it, fresh] = position.emplace(d.path, out.size());
    if (fresh)
      out.push_back(std::move(d));
    else
      out[it->second] = std::move(d);
  }
  return out;
}

std::vector<std::string> expandDirectory(const std::string &dir, bool recursive) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec))
    throw ConfigError("directory '" + dir + "' does not exist");
  std::vector<std::string> out;
  auto consider = [&](const fs::directory_entry &e) {
    if (e.is_regular_file() && e.path().extension() == ".c")
      out.push_back(e.path().lexically_normal().string());
  };
  if (recursive) {
    for (const auto &e : fs::recursive_directory_iterator(dir))
      consider(e);
  } else {
    for (const auto &e : fs::directory_iterator(dir))
      consider(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> expandListFile(const std::string &path) {
  requireReadable(path, "list file");
  std::ifstream in(path);
  const fs::path base = fs::path(path).parent_path();
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#')
      continue;
    auto last = line.find_last_not_of(" \t\r");
    out.push_back(resolve(base, line.substr(first, last - first + 1)));
  }
  return out;
}

AnalysisJob buildJob(const std::vector<std::string> &args, const CheckerRegistry &registry) {
  if (args.empty() || args.front() != "check")
    throw ConfigError("expected the 'check' subcommand");

  CLI::App app{"cbugscan check", "cbugscan check"};
  std::vector<std::string> dirs, lists, compdbs, files, checkers;
  bool recursive = false;
  std::optional<std::size_t> memoryUnits;
  std::string format = "console";
  std::optional<std::string> output;
  std::string preprocess;
  std::string minImportance = "warning";

  app.add_option("--dir", dirs, "directory of .c files")->allow_extra_args(false);
  app.add_flag("--recursive", recursive, "descend into subdirectories of --dir");
  app.add_option("--list", lists, "file listing one source per line")->allow_extra_args(false);
  app.add_option("--compdb", compdbs, "JSON compilation database")->allow_extra_args(false);
  app.add_option("files", files, "source files");
  app.add_option("--checker", checkers, "NAME[:CONFIG]")->allow_extra_args(false)->required();
  app.add_option("--memory-units", memoryUnits, "resident unit budget");
  app.add_option("--format", format, "json|xml|console");
  app.add_option("--output", output, "report path (default stdout)");
  app.add_option("--preprocess", preprocess, "external preprocessor command");
  app.add_option("--min-importance", minImportance, "warning|error");

  std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rest);
  } catch (const CLI::ParseError &e) {
    throw ConfigError(e.what());
  }

  AnalysisJob job;
  job.outputFormat = parseReportFormat(format);
  job.minImportance = parseImportance(minImportance);
  job.outputPath = output;
  job.preprocessCommand = preprocess;
  if (memoryUnits) {
    if (*memoryUnits < 1)
      throw ConfigError("--memory-units must be at least 1");
    job.memoryBudgetUnits = memoryUnits;
  }

  std::vector<SourceDescriptor> sources;
  for (const auto &f : files)
    sources.push_back(SourceDescriptor{fs::path(f).lexically_normal().string(), {}, {}});
  for (const auto &d : dirs)
    for (const auto &f : expandDirectory(d, recursive))
      sources.push_back(SourceDescriptor{f, {}, {}});
  for (const auto &l : lists)
    for (const auto &f : expandListFile(l))
      sources.push_back(SourceDescriptor{f, {}, {}});
  for (const auto &c : compdbs)
    for (auto &d : loadCompilationDatabase(c))
      sources.push_back(std::move(d));

  std::set<std::string> seen;
  for (auto &s : sources) {
    if (!seen.insert(s.path).second)
      continue;
    requireReadable(s.path, "source");
    if (!preprocess.empty())
      s.preprocessMode = PreprocessMode::ExternalCommand;
    job.sources.push_back(std::move(s));
  }
  if (job.sources.empty())
    throw ConfigError("no source files given");

  std::set<std::string> names;
  for (const auto &spec : checkers) {
    CheckerSpec c;
    auto colon = spec.find(':');
    c.name = spec.substr(0, colon);
    if (colon != std::string::npos)
      c.configPath = spec.substr(colon + 1);
    if (!registry.contains(c.name))
      throw ConfigError("unknown checker '" + c.name + "'");
    if (!names.insert(c.name).second)
      throw ConfigError("checker '" + c.name + "' listed twice");
    if (c.configPath)
      requireReadable(*c.configPath, "checker configuration");
    registry.instantiate(c.name, c.configPath);
    job.checkers.push_back(std::move(c));
  }
  return job;
}

} // namespace cbugscan
