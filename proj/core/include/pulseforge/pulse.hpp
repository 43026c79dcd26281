#pragma once

#include <string>
#include <vector>

namespace pulseforge {

/// One constant-amplitude RF period: the 4-parameter control unit.
struct PulsePeriod {
  double power = 0.0;       // nutation amplitude, rad/s
  double offset = 0.0;      // transmitter offset from the base frame, rad/s
  double phase = 0.0;       // initial phase, radians
  double duration = 0.0;    // seconds, >= 0

  void validate() const;
};

struct SequenceMetadata {
  std::string gate;
  std::string created;
  double fidelity = -1.0;   // negative = not recorded
};

struct PulseSequence {
  std::vector<PulsePeriod> periods;   // period 1 is applied first
  SequenceMetadata metadata;

  double total_duration() const;
  void validate() const;

  /// JSON schema: metadata block + periods with power_khz, offset_hz,
  /// phase_deg, duration_us.
  std::string to_json() const;
  static PulseSequence from_json(const std::string& text);
  void save(const std::string& path) const;
  static PulseSequence load(const std::string& path);
};

}  // namespace pulseforge
