#pragma once

#include <string>
#include <vector>

#include "pulseforge/operator.hpp"
#include "pulseforge/pulse.hpp"
#include "pulseforge/spin_system.hpp"

namespace pulseforge {

struct WaveformSample {
  double amplitude = 0.0;   // rad/s, >= 0
  double phase = 0.0;       // radians, in [0, 2pi)
};

/// Constant-rate sampled RF waveform with zero-power pads on both ends.
struct SampledWaveform {
  double sample_period = 0.0;            // seconds
  std::vector<WaveformSample> samples;
  double pad = 6e-6;                     // seconds of zero power on each side

  double total_duration() const {
    return samples.size() * sample_period + 2.0 * pad;
  }
  void validate() const;

  std::string to_json() const;
  static SampledWaveform from_json(const std::string& text);

  /// Two-column amplitude-percent / phase-degrees rows with a `#` header
  /// block; pads emitted as zero-amplitude rows.
  std::string to_shape_table() const;

  void save(const std::string& path, const std::string& format) const;
  static SampledWaveform load(const std::string& path);
};

/// Samples the sequence at a constant rate. Within-period transmitter
/// offsets become linear phase ramps evaluated at sample midpoints; period
/// boundaries snap to the nearest grid point (ties favor the earlier one).
SampledWaveform discretize(const PulseSequence& seq, double sample_period,
                           double pad = 6e-6);

/// Chains one mini-period per sample at the base carrier (offset 0, phase
/// from the ramp); pads evolve freely under H_int.
Operator resimulate(const SpinSystem& sys, const SampledWaveform& w);

}  // namespace pulseforge
