#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pulseforge/operator.hpp"
#include "pulseforge/pulse.hpp"
#include "pulseforge/spin_system.hpp"

namespace pulseforge {

enum class PulseParam { power, offset, phase, duration };

PulseParam parse_pulse_param(const std::string& name);
std::string pulse_param_name(PulseParam p);

/// Uniform distortion of one control parameter across all periods:
/// multiplicative for power and duration, additive for phase (radians)
/// and offset (rad/s).
PulseSequence perturb_sequence(const PulseSequence& seq, PulseParam param,
                               double scale_or_shift);

struct AxisSpec {
  PulseParam param;
  double lo = 0.0;   // scale for power/duration, shift for phase/offset
  double hi = 0.0;
  int samples = 41;

  double value(int i) const { return lo + (hi - lo) * i / double(samples - 1); }
  /// Identity perturbation: scale 1 for multiplicative axes, shift 0 otherwise.
  static AxisSpec default_for(PulseParam p, int samples = 41);
};

struct SweepGrid {
  AxisSpec a;
  AxisSpec b;
  Eigen::MatrixXd fidelity;   // fidelity(i, j) at (a.value(i), b.value(j))

  std::string to_json() const;
};

/// Gate fidelity surface as two control parameters are jointly distorted.
SweepGrid sweep_pair(const SpinSystem& sys, const PulseSequence& seq,
                     const Operator& u_th, const AxisSpec& a,
                     const AxisSpec& b, int threads = 0);

struct SensitivityPoint {
  double scale = 1.0;
  double mean_fidelity = 0.0;
  double std_fidelity = 0.0;
  std::vector<double> fidelities;
};

/// RF-amplitude sensitivity of a pulse set: gate fidelity of each pulse at
/// each power scale, with mean and standard deviation across the set.
std::vector<SensitivityPoint> amplitude_sensitivity(
    const SpinSystem& sys, const std::vector<PulseSequence>& pulses,
    const std::vector<Operator>& targets, const std::vector<double>& scales);

std::string sensitivity_json(const std::vector<SensitivityPoint>& points);

struct ShiftSweep {
  std::vector<double> shifts_hz;
  std::vector<double> f_identity;   // vs identity, up to a fitted z rotation
  std::vector<double> f_target;     // vs the desired single-spin rotation

  std::string to_json() const;
};

/// Fidelity response of an isolated test spin (no couplings) driven by the
/// full waveform, as its resonance frequency is varied. The identity curve
/// allows a free z-rotation angle per point, since a pure phase change is
/// acceptable off-resonance behavior.
ShiftSweep chemshift_sweep(const PulseSequence& seq,
                           const std::vector<double>& test_shifts_hz,
                           const Operator& single_spin_target);

}  // namespace pulseforge
