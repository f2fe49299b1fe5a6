#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>

#include "specsbm/error.hpp"

namespace specsbm::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config file " + path.string());
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Error(ErrorCode::kParse, path.string() + ":" + std::to_string(number) + ": expected key=value");
    }
    std::string key = trim(t.substr(0, eq));
    // Accept "n_per_k" as well as "n-per-k".
    for (char& c : key) {
      if (c == '_') c = '-';
    }
    entries.emplace_back(std::move(key), trim(t.substr(eq + 1)));
  }
  return entries;
}

std::vector<std::string> expand_config(int argc, char** argv,
                                       const std::function<bool(const std::string&, const std::string&)>& accepts) {
  std::vector<std::string> args(argv, argv + argc);
  std::string config;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config = args[i].substr(9);
    }
  }
  if (config.empty()) return args;

  // The subcommand is the first token that is not an option.
  std::size_t insert_at = 1;
  while (insert_at < args.size() && args[insert_at].rfind("-", 0) == 0) {
    insert_at += args[insert_at] == "--config" ? 2 : 1;
  }
  if (insert_at >= args.size()) return args;
  const std::string subcommand = args[insert_at++];

  std::vector<std::string> injected;
  for (const auto& [key, value] : read_config(config)) {
    if (key == "config") continue;
    if (!accepts(subcommand, key)) {
      std::cerr << "warning: config key '" << key << "' does not apply to " << subcommand << '\n';
      continue;
    }
    injected.push_back("--" + key + "=" + value);
  }
  args.insert(args.begin() + static_cast<std::ptrdiff_t>(insert_at), injected.begin(), injected.end());
  return args;
}

}  // namespace specsbm::cli
