#include "pulseforge/waveform.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "pulseforge/dynamics.hpp"

namespace pulseforge {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDegPerRad = 180.0 / std::numbers::pi;

double wrap_phase(double phi) {
  phi = std::fmod(phi, kTwoPi);
  if (phi < 0.0) phi += kTwoPi;
  return phi;
}

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}
}  // namespace

void SampledWaveform::validate() const {
  if (sample_period <= 0.0)
    throw std::invalid_argument("sample period must be positive");
  if (pad < 0.0) throw std::invalid_argument("pad duration must be >= 0");
  for (const auto& s : samples) {
    if (s.amplitude < 0.0)
      throw std::invalid_argument("waveform amplitude must be >= 0");
    if (s.phase < 0.0 || s.phase >= kTwoPi)
      throw std::invalid_argument("waveform phase must lie in [0, 2pi)");
  }
}

SampledWaveform discretize(const PulseSequence& seq, double sample_period,
                           double pad) {
  seq.validate();
  if (sample_period <= 0.0)
    throw std::invalid_argument("sample period must be positive");

  double shortest = std::numeric_limits<double>::infinity();
  for (const auto& p : seq.periods)
    if (p.duration > 0.0) shortest = std::min(shortest, p.duration);
  if (std::isfinite(shortest) && sample_period >= shortest) {
    std::ostringstream msg;
    msg << "sample period " << sample_period * 1e6
        << " us is too coarse; shortest period is " << shortest * 1e6
        << " us, need sample period < " << shortest * 1e6 << " us";
    throw std::invalid_argument(msg.str());
  }

  SampledWaveform w;
  w.sample_period = sample_period;
  w.pad = pad;

  double cumulative = 0.0;
  long boundary = 0;
  for (const auto& p : seq.periods) {
    cumulative += p.duration;
    // nearest grid point, ties to the earlier one
    const long next_boundary =
        long(std::ceil(cumulative / sample_period - 0.5 - 1e-9));
    const double amp = std::abs(p.power);
    const double fold = p.power < 0.0 ? std::numbers::pi : 0.0;
    for (long s = boundary; s < next_boundary; ++s) {
      const double t_mid = (double(s - boundary) + 0.5) * sample_period;
      WaveformSample sample;
      sample.amplitude = amp;
      sample.phase = wrap_phase(p.phase + p.offset * t_mid + fold);
      w.samples.push_back(sample);
    }
    boundary = next_boundary;
  }
  w.validate();
  return w;
}

Operator resimulate(const SpinSystem& sys, const SampledWaveform& w) {
  w.validate();
  const Operator h_int = internal_hamiltonian(sys);
  Matrix u = Matrix::Identity(sys.dim(), sys.dim());
  if (w.pad > 0.0) u = expm_hermitian(h_int, w.pad).mat();
  for (const auto& s : w.samples) {
    PulsePeriod p;
    p.power = s.amplitude;
    p.offset = 0.0;
    p.phase = s.phase;
    p.duration = w.sample_period;
    u = period_propagator(sys, p).mat() * u;
  }
  if (w.pad > 0.0) u = expm_hermitian(h_int, w.pad).mat() * u;
  return Operator::unitary(std::move(u));
}

std::string SampledWaveform::to_json() const {
  nlohmann::ordered_json j;
  j["sample_period_us"] = sample_period * 1e6;
  j["pad_us"] = pad * 1e6;
  j["samples"] = nlohmann::ordered_json::array();
  for (const auto& s : samples) {
    nlohmann::ordered_json js;
    js["amp_khz"] = s.amplitude / (kTwoPi * 1e3);
    js["phase_deg"] = s.phase * kDegPerRad;
    j["samples"].push_back(std::move(js));
  }
  return j.dump(2) + "\n";
}

SampledWaveform SampledWaveform::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("waveform file: ") + e.what());
  }
  SampledWaveform w;
  w.sample_period = j.at("sample_period_us").get<double>() * 1e-6;
  w.pad = j.at("pad_us").get<double>() * 1e-6;
  for (const auto& js : j.at("samples")) {
    WaveformSample s;
    s.amplitude = js.at("amp_khz").get<double>() * kTwoPi * 1e3;
    s.phase = js.at("phase_deg").get<double>() / kDegPerRad;
    w.samples.push_back(s);
  }
  w.validate();
  return w;
}

std::string SampledWaveform::to_shape_table() const {
  double max_amp = 0.0;
  for (const auto& s : samples) max_amp = std::max(max_amp, s.amplitude);
  const long pad_rows = std::lround(pad / sample_period);

  std::ostringstream out;
  out << "# pulseforge shape table\n";
  out << "# sample_period_us " << fmt6(sample_period * 1e6) << "\n";
  out << "# max_amplitude_khz " << fmt6(max_amp / (kTwoPi * 1e3)) << "\n";
  out << "# pad_rows " << pad_rows << " (each side, zero power)\n";
  out << "# columns: amp_percent phase_deg\n";
  const auto row = [&](double amp, double phase) {
    const double pct = max_amp > 0.0 ? 100.0 * amp / max_amp : 0.0;
    out << fmt6(pct) << " " << fmt6(phase * kDegPerRad) << "\n";
  };
  for (long i = 0; i < pad_rows; ++i) row(0.0, 0.0);
  for (const auto& s : samples) row(s.amplitude, s.phase);
  for (long i = 0; i < pad_rows; ++i) row(0.0, 0.0);
  return out.str();
}

void SampledWaveform::save(const std::string& path,
                           const std::string& format) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write waveform file: " + path);
  if (format == "json")
    out << to_json();
  else if (format == "shape-table")
    out << to_shape_table();
  else
    throw std::invalid_argument("unknown waveform format: " + format);
}

SampledWaveform SampledWaveform::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open waveform file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

}  // namespace pulseforge
