#pragma once

#include "pulseforge/operator.hpp"
#include "pulseforge/pulse.hpp"
#include "pulseforge/spin_system.hpp"

namespace pulseforge {

/// Instantaneous drive Hamiltonian in the base rotating frame:
///   sum_k e^{-i(w_RF t + phi) I_z^k} (-w I_x^k) e^{+i(w_RF t + phi) I_z^k}.
/// Slow path; used by the time-sliced integration oracle in tests.
Operator external_hamiltonian_lab(const SpinSystem& sys, const PulsePeriod& p,
                                  double t);

/// Time-independent Hamiltonian in the frame co-rotating with the
/// transmitter:
///   sum_k (w_k - w_RF) I_z^k + J terms - w sum_k (cos(phi) I_x^k + sin(phi) I_y^k)
Operator effective_hamiltonian(const SpinSystem& sys, const PulsePeriod& p);

/// e^{-iHt} by Hermitian eigendecomposition.
Operator expm_hermitian(const Operator& h, double t);

/// U_z(tau) = e^{+i w_RF sum_k I_z^k tau}; undoes the transmitter-frame
/// rotation at the end of a period. Diagonal in the computational basis.
Operator frame_correction(const SpinSystem& sys, const PulsePeriod& p);

/// Propagator of one period in the base rotating frame:
/// U_z^{-1}(tau) e^{-i H_eff tau}.
Operator period_propagator(const SpinSystem& sys, const PulsePeriod& p);

/// Ordered product over the sequence; period 1 applied first (rightmost).
Operator net_propagator(const SpinSystem& sys, const PulseSequence& seq);

/// U rho U^dagger.
Operator evolve_state(const Operator& rho, const Operator& u);

}  // namespace pulseforge
