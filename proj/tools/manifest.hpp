#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace pfsa::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

struct OutputDigest {
  std::string path;
  std::string sha256;
};

// Everything needed to rerun a command: the command name, its full
// configuration (the same document `--config` accepts), the root seed, the
// tool version and a digest of every file written. No timestamps, so equal
// runs produce equal manifests.
struct RunManifest {
  std::string command;
  Json config;
  std::uint64_t seed = 0;
  std::string version = kVersion;
  std::vector<OutputDigest> outputs;
};

std::string sha256_file(const std::string& path);

// `<output>.manifest.json`
std::string manifest_path_for(const std::string& output);

void write_manifest(const std::string& path, const RunManifest& manifest);
RunManifest read_manifest(const std::string& path);

}  // namespace pfsa::cli
