#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pulseforge {

/// FNV-1a over the raw bytes.
std::uint64_t fnv1a64(const std::string& bytes);

/// Provenance record written alongside every CLI run's outputs.
struct RunManifest {
  std::string command;
  std::string version;
  std::uint64_t seed = 0;
  struct InputRecord {
    std::string path;
    std::string hash;   // fnv1a64, hex
  };
  std::vector<InputRecord> inputs;
  std::vector<std::string> outputs;
  double wall_seconds = 0.0;

  void add_input(const std::string& path);
  std::string to_json() const;
  /// Appends one JSON manifest line per run.
  void append(const std::string& path) const;
};

}  // namespace pulseforge
