#include "pulseforge/robustness.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "pulseforge/dynamics.hpp"
#include "pulseforge/fidelity.hpp"

namespace pulseforge {

PulseParam parse_pulse_param(const std::string& name) {
  if (name == "power") return PulseParam::power;
  if (name == "offset") return PulseParam::offset;
  if (name == "phase") return PulseParam::phase;
  if (name == "duration") return PulseParam::duration;
  throw std::invalid_argument("unknown pulse parameter: " + name);
}

std::string pulse_param_name(PulseParam p) {
  switch (p) {
    case PulseParam::power: return "power";
    case PulseParam::offset: return "offset";
    case PulseParam::phase: return "phase";
    case PulseParam::duration: return "duration";
  }
  return "?";
}

PulseSequence perturb_sequence(const PulseSequence& seq, PulseParam param,
                               double scale_or_shift) {
  PulseSequence out = seq;
  for (auto& p : out.periods) {
    switch (param) {
      case PulseParam::power:
        p.power *= scale_or_shift;
        break;
      case PulseParam::duration:
        p.duration *= scale_or_shift;
        break;
      case PulseParam::phase:
        p.phase += scale_or_shift;
        break;
      case PulseParam::offset:
        p.offset += scale_or_shift;
        break;
    }
  }
  return out;
}

AxisSpec AxisSpec::default_for(PulseParam p, int samples) {
  AxisSpec spec;
  spec.param = p;
  spec.samples = samples;
  switch (p) {
    case PulseParam::power:
    case PulseParam::duration:
      spec.lo = 0.9;    // +-10% multiplicative
      spec.hi = 1.1;
      break;
    case PulseParam::phase:
      spec.lo = -5.0 * std::numbers::pi / 180.0;   // +-5 degrees
      spec.hi = 5.0 * std::numbers::pi / 180.0;
      break;
    case PulseParam::offset:
      spec.lo = -2.0 * std::numbers::pi * 50.0;    // +-50 Hz
      spec.hi = 2.0 * std::numbers::pi * 50.0;
      break;
  }
  return spec;
}

std::string SweepGrid::to_json() const {
  nlohmann::ordered_json j;
  const auto axis_json = [](const AxisSpec& s) {
    nlohmann::ordered_json ja;
    ja["param"] = pulse_param_name(s.param);
    ja["values"] = nlohmann::ordered_json::array();
    for (int i = 0; i < s.samples; ++i) ja["values"].push_back(s.value(i));
    return ja;
  };
  j["axes"] = {axis_json(a), axis_json(b)};
  j["fidelity"] = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < fidelity.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Eigen::Index k = 0; k < fidelity.cols(); ++k)
      row.push_back(fidelity(i, k));
    j["fidelity"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

SweepGrid sweep_pair(const SpinSystem& sys, const PulseSequence& seq,
                     const Operator& u_th, const AxisSpec& a,
                     const AxisSpec& b, int threads) {
  if (a.param == b.param)
    throw std::invalid_argument("sweep_pair requires two distinct parameters");
  if (a.samples < 2 || b.samples < 2)
    throw std::invalid_argument("sweep axes need at least 2 samples");

  SweepGrid grid;
  grid.a = a;
  grid.b = b;
  grid.fidelity = Eigen::MatrixXd::Zero(a.samples, b.samples);

  const int total = a.samples * b.samples;
  std::atomic<int> next{0};
  const auto worker = [&] {
    for (int idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) {
      const int i = idx / b.samples;
      const int k = idx % b.samples;
      PulseSequence distorted = perturb_sequence(seq, a.param, a.value(i));
      distorted = perturb_sequence(distorted, b.param, b.value(k));
      grid.fidelity(i, k) =
          gate_fidelity_unitary(u_th, net_propagator(sys, distorted));
    }
  };
  const int nthreads = threads > 0
                           ? threads
                           : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return grid;
}

std::vector<SensitivityPoint> amplitude_sensitivity(
    const SpinSystem& sys, const std::vector<PulseSequence>& pulses,
    const std::vector<Operator>& targets, const std::vector<double>& scales) {
  if (pulses.size() != targets.size())
    throw std::invalid_argument("pulses/targets length mismatch");
  if (pulses.empty()) throw std::invalid_argument("pulse set is empty");

  std::vector<SensitivityPoint> points;
  for (double scale : scales) {
    SensitivityPoint pt;
    pt.scale = scale;
    for (size_t i = 0; i < pulses.size(); ++i) {
      const PulseSequence scaled = perturb_sequence(pulses[i], PulseParam::power, scale);
      pt.fidelities.push_back(
          gate_fidelity_unitary(targets[i], net_propagator(sys, scaled)));
    }
    double mean = 0.0;
    for (double f : pt.fidelities) mean += f;
    mean /= double(pt.fidelities.size());
    double var = 0.0;
    for (double f : pt.fidelities) var += (f - mean) * (f - mean);
    pt.mean_fidelity = mean;
    pt.std_fidelity = std::sqrt(var / double(pt.fidelities.size()));
    points.push_back(std::move(pt));
  }
  return points;
}

std::string sensitivity_json(const std::vector<SensitivityPoint>& points) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& p : points) {
    nlohmann::ordered_json jp;
    jp["scale"] = p.scale;
    jp["mean_fidelity"] = p.mean_fidelity;
    jp["std_fidelity"] = p.std_fidelity;
    jp["fidelities"] = p.fidelities;
    j.push_back(std::move(jp));
  }
  return j.dump(2) + "\n";
}

std::string ShiftSweep::to_json() const {
  nlohmann::ordered_json j;
  j["shifts_hz"] = shifts_hz;
  j["f_identity"] = f_identity;
  j["f_target"] = f_target;
  return j.dump(2) + "\n";
}

ShiftSweep chemshift_sweep(const PulseSequence& seq,
                           const std::vector<double>& test_shifts_hz,
                           const Operator& single_spin_target) {
  if (single_spin_target.dim() != 2)
    throw std::invalid_argument("chemshift_sweep target must be a single-spin unitary");

  ShiftSweep sweep;
  sweep.shifts_hz = test_shifts_hz;
  for (double shift_hz : test_shifts_hz) {
    SpinSystem test;
    test.n = 1;
    test.shifts = {2.0 * std::numbers::pi * shift_hz};
    test.couplings = Eigen::MatrixXd::Zero(1, 1);
    test.labels = {"test"};
    const Matrix u = net_propagator(test, seq).mat();
    // best overlap with a z rotation: max_theta |Tr(Rz(theta)^dag U)|/2,
    // attained when the two diagonal phases align
    const double best_identity = 0.5 * (std::abs(u(0, 0)) + std::abs(u(1, 1)));
    sweep.f_identity.push_back(best_identity * best_identity);
    sweep.f_target.push_back(
        gate_fidelity_unitary(single_spin_target, Operator::unitary(u)));
  }
  return sweep;
}

}  // namespace pulseforge
