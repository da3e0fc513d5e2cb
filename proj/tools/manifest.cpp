#include "manifest.hpp"

#include <array>
#include <fstream>
#include <memory>
#include <stdexcept>

#include <fmt/format.h>
#include <openssl/evp.h>

namespace pfsa::cli {

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read '" + path + "'");
  }
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 initialization failed");
  }
  std::array<char, 1 << 16> buffer{};
  while (in.read(buffer.data(), buffer.size()) || in.gcount() > 0) {
    EVP_DigestUpdate(ctx.get(), buffer.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx.get(), digest.data(), &length);
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) {
    hex += fmt::format("{:02x}", digest[i]);
  }
  return hex;
}

std::string manifest_path_for(const std::string& output) { return output + ".manifest.json"; }

void write_manifest(const std::string& path, const RunManifest& manifest) {
  Json doc;
  doc["command"] = manifest.command;
  doc["version"] = manifest.version;
  doc["seed"] = manifest.seed;
  doc["config"] = manifest.config;
  doc["outputs"] = Json::array();
  for (const auto& out : manifest.outputs) {
    doc["outputs"].push_back({{"path", out.path}, {"sha256", out.sha256}});
  }
  std::ofstream file(path, std::ios::binary);
  file << doc.dump(2) << '\n';
  if (!file) {
    throw std::runtime_error("cannot write manifest '" + path + "'");
  }
}

RunManifest read_manifest(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    throw std::runtime_error("cannot read manifest '" + path + "'");
  }
  Json doc;
  try {
    doc = Json::parse(file);
    RunManifest m;
    m.command = doc.at("command").get<std::string>();
    m.version = doc.at("version").get<std::string>();
    m.seed = doc.at("seed").get<std::uint64_t>();
    m.config = doc.at("config");
    for (const auto& out : doc.at("outputs")) {
      m.outputs.push_back({out.at("path").get<std::string>(), out.at("sha256").get<std::string>()});
    }
    return m;
  } catch (const Json::exception& e) {
    throw std::runtime_error("malformed manifest '" + path + "': " + e.what());
  }
}

}  // namespace pfsa::cli
