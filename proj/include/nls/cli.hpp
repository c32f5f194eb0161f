#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace nls::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitInconclusive = 2;

/// Reads a flat key=value file ('#' comments, blank lines ignored).
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Removes --config PATH from args and appends "--key value" for every file
/// entry whose flag is not already on the command line. Returns the path ("" if none).
std::string merge_config(std::vector<std::string>& args);

/// Runs one subcommand. args excludes the program name.
int parse_and_dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err);
int parse_and_dispatch(int argc, char** argv);

}  // namespace nls::cli
