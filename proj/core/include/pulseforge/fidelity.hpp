#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pulseforge/operator.hpp"
#include "pulseforge/pulse.hpp"
#include "pulseforge/spin_system.hpp"

namespace pulseforge {

/// A linear, trace-preserving map over density operators.
using StateMap = std::function<Operator(const Operator&)>;

/// Normalized trace overlap, Tr[a b] / sqrt(Tr[a^2] Tr[b^2]); in [-1, 1].
double projection(const Operator& rho_th, const Operator& rho_out);

/// Tr[rho_th rho_out] / sqrt(Tr[rho_th^2] Tr[rho_in^2]); the projection
/// scaled by the purity-attenuation factor sqrt(Tr rho_out^2 / Tr rho_in^2).
double attenuated_correlation(const Operator& rho_th, const Operator& rho_out,
                              const Operator& rho_in);

/// State-averaged gate fidelity: mean attenuated correlation over the N^2
/// normalized-Pauli-basis input operators.
double gate_fidelity_states(const Operator& u_th, const StateMap& apply, int n);

/// Reduced trace form for unitary implementations: |Tr(U_th^dag U_sim)/N|^2.
/// Insensitive to the global phase of either argument.
double gate_fidelity_unitary(const Operator& u_th, const Operator& u_sim);

/// Q = 1 - sqrt(F); the objective minimized by the pulse search.
double quality_factor(double f);

struct StateBreakdown {
  std::string input;        // "Ix", "Iy", "Iz" collective input label
  double projection = 0.0;
  double correlation = 0.0;
};

struct FidelityReport {
  double projection = 0.0;    // mean over inputs
  double correlation = 0.0;   // mean over inputs
  double fidelity = 0.0;
  double quality = 0.0;
  std::vector<StateBreakdown> per_state;

  std::string to_json() const;
};

/// Per-pulse projection/correlation averaged over the three collective
/// inputs sum_k I_j^k for j in {x, y, z}, plus the unitary gate fidelity.
std::vector<FidelityReport> simulate_experiment_table(
    const SpinSystem& sys, const std::vector<PulseSequence>& pulses,
    const std::vector<Operator>& targets);

}  // namespace pulseforge
