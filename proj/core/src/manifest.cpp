#include "pulseforge/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace pulseforge {

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

void RunManifest::add_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot hash input file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                (unsigned long long)fnv1a64(buf.str()));
  inputs.push_back({path, hex});
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["version"] = version;
  j["seed"] = seed;
  j["inputs"] = nlohmann::ordered_json::array();
  for (const auto& in : inputs)
    j["inputs"].push_back({{"path", in.path}, {"fnv1a64", in.hash}});
  j["outputs"] = outputs;
  j["wall_seconds"] = wall_seconds;
  return j.dump() + "\n";
}

void RunManifest::append(const std::string& path) const {
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot write manifest: " + path);
  out << to_json();
}

}  // namespace pulseforge
