#include "pulseforge/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "pulseforge/dynamics.hpp"

namespace pulseforge {

namespace {

double real_trace_product(const Matrix& a, const Matrix& b) {
  // Tr[a b] for Hermitian a, b is real
  return (a * b).trace().real();
}

double purity(const Matrix& rho) { return real_trace_product(rho, rho); }

}  // namespace

double projection(const Operator& rho_th, const Operator& rho_out) {
  if (rho_th.dim() != rho_out.dim())
    throw std::invalid_argument("projection: dimension mismatch");
  const double norm2 = purity(rho_th.mat()) * purity(rho_out.mat());
  if (norm2 <= 0.0)
    throw std::domain_error("projection undefined for zero-norm state");
  return real_trace_product(rho_th.mat(), rho_out.mat()) / std::sqrt(norm2);
}

double attenuated_correlation(const Operator& rho_th, const Operator& rho_out,
                              const Operator& rho_in) {
  if (rho_th.dim() != rho_out.dim() || rho_th.dim() != rho_in.dim())
    throw std::invalid_argument("attenuated_correlation: dimension mismatch");
  const double norm2 = purity(rho_th.mat()) * purity(rho_in.mat());
  if (norm2 <= 0.0)
    throw std::domain_error("attenuated correlation undefined for zero-norm input");
  return real_trace_product(rho_th.mat(), rho_out.mat()) / std::sqrt(norm2);
}

double gate_fidelity_states(const Operator& u_th, const StateMap& apply, int n) {
  const auto basis = pauli_basis(n);
  double sum = 0.0;
  for (const auto& sigma : basis) {
    const Operator rho_th = evolve_state(sigma, u_th);
    const Operator rho_out = apply(sigma);
    sum += attenuated_correlation(rho_th, rho_out, sigma);
  }
  return sum / double(basis.size());
}

double gate_fidelity_unitary(const Operator& u_th, const Operator& u_sim) {
  if (u_th.dim() != u_sim.dim())
    throw std::invalid_argument("gate_fidelity_unitary: dimension mismatch");
  const Complex overlap = (u_th.mat().adjoint() * u_sim.mat()).trace();
  const double scaled = std::abs(overlap) / double(u_th.dim());
  return scaled * scaled;
}

double quality_factor(double f) {
  if (f < -1e-12 || f > 1.0 + 1e-12)
    throw std::domain_error("quality_factor: fidelity outside [0, 1]");
  return 1.0 - std::sqrt(std::clamp(f, 0.0, 1.0));
}

std::string FidelityReport::to_json() const {
  nlohmann::ordered_json j;
  j["projection"] = projection;
  j["correlation"] = correlation;
  j["attenuation"] = projection != 0.0 ? correlation / projection : 0.0;
  j["fidelity"] = fidelity;
  j["quality"] = quality;
  j["per_state"] = nlohmann::ordered_json::array();
  for (const auto& s : per_state) {
    nlohmann::ordered_json js;
    js["input"] = s.input;
    js["projection"] = s.projection;
    js["correlation"] = s.correlation;
    j["per_state"].push_back(std::move(js));
  }
  return j.dump(2) + "\n";
}

std::vector<FidelityReport> simulate_experiment_table(
    const SpinSystem& sys, const std::vector<PulseSequence>& pulses,
    const std::vector<Operator>& targets) {
  if (pulses.size() != targets.size())
    throw std::invalid_argument("pulses/targets length mismatch");
  const struct {
    Axis axis;
    const char* label;
  } inputs[] = {{Axis::x, "Ix"}, {Axis::y, "Iy"}, {Axis::z, "Iz"}};

  std::vector<FidelityReport> reports;
  for (size_t i = 0; i < pulses.size(); ++i) {
    const Operator u_net = net_propagator(sys, pulses[i]);
    FidelityReport r;
    for (const auto& in : inputs) {
      const Operator rho_in = Operator::density(total_spin(sys.n, in.axis));
      const Operator rho_th = evolve_state(rho_in, targets[i]);
      const Operator rho_out = evolve_state(rho_in, u_net);
      StateBreakdown s;
      s.input = in.label;
      s.projection = projection(rho_th, rho_out);
      s.correlation = attenuated_correlation(rho_th, rho_out, rho_in);
      r.projection += s.projection / 3.0;
      r.correlation += s.correlation / 3.0;
      r.per_state.push_back(std::move(s));
    }
    r.fidelity = gate_fidelity_unitary(targets[i], u_net);
    r.quality = quality_factor(r.fidelity);
    reports.push_back(std::move(r));
  }
  return reports;
}

}  // namespace pulseforge
