#include "pulseforge/pulse.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace pulseforge {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kDegPerRad = 180.0 / std::numbers::pi;
}  // namespace

void PulsePeriod::validate() const {
  if (duration < 0.0) throw std::invalid_argument("period duration must be >= 0");
  for (double v : {power, offset, phase, duration})
    if (!std::isfinite(v))
      throw std::invalid_argument("period parameter is not finite");
}

double PulseSequence::total_duration() const {
  double total = 0.0;
  for (const auto& p : periods) total += p.duration;
  return total;
}

void PulseSequence::validate() const {
  if (periods.empty()) throw std::invalid_argument("sequence must have at least one period");
  for (const auto& p : periods) p.validate();
}

std::string PulseSequence::to_json() const {
  nlohmann::ordered_json j;
  j["metadata"]["gate"] = metadata.gate;
  j["metadata"]["created"] = metadata.created;
  if (metadata.fidelity >= 0.0) j["metadata"]["fidelity"] = metadata.fidelity;
  j["periods"] = nlohmann::ordered_json::array();
  for (const auto& p : periods) {
    nlohmann::ordered_json jp;
    jp["power_khz"] = p.power / (kTwoPi * 1e3);
    jp["offset_hz"] = p.offset / kTwoPi;
    jp["phase_deg"] = p.phase * kDegPerRad;
    jp["duration_us"] = p.duration * 1e6;
    j["periods"].push_back(std::move(jp));
  }
  return j.dump(2) + "\n";
}

PulseSequence PulseSequence::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("pulse file: ") + e.what());
  }
  PulseSequence seq;
  if (j.contains("metadata")) {
    const auto& m = j["metadata"];
    seq.metadata.gate = m.value("gate", "");
    seq.metadata.created = m.value("created", "");
    seq.metadata.fidelity = m.value("fidelity", -1.0);
  }
  for (const auto& jp : j.at("periods")) {
    PulsePeriod p;
    p.power = jp.at("power_khz").get<double>() * kTwoPi * 1e3;
    p.offset = jp.at("offset_hz").get<double>() * kTwoPi;
    p.phase = jp.at("phase_deg").get<double>() / kDegPerRad;
    p.duration = jp.at("duration_us").get<double>() * 1e-6;
    seq.periods.push_back(p);
  }
  seq.validate();
  return seq;
}

void PulseSequence::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write pulse file: " + path);
  out << to_json();
}

PulseSequence PulseSequence::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open pulse file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

}  // namespace pulseforge
