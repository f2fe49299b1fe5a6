#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace specsbm::cli {

// Flat "key=value" lines; blank lines and lines starting with '#' are skipped.
std::vector<std::pair<std::string, std::string>> read_config(const std::filesystem::path& path);

// Returns argv with the entries of the --config file (if any) turned into
// "--key=value" tokens placed right after the subcommand, ahead of the user's
// own flags. Options keep their last value, so the command line wins. Keys
// for which `accepts(subcommand, key)` is false are skipped with a warning.
std::vector<std::string> expand_config(int argc, char** argv,
                                       const std::function<bool(const std::string&, const std::string&)>& accepts);

}  // namespace specsbm::cli
