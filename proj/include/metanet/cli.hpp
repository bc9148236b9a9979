#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace metanet::cli {

/// Provenance block embedded in every JSON output.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> input_digests;  // path -> SHA-256 hex
  std::string version;
  std::string timestamp;  // UTC, ISO 8601
};

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

std::string version();

/// Runs one command line (args excludes the program name). Returns 0 on
/// success, 2 on a usage error, 1 on a runtime error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace metanet::cli
