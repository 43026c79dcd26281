#pragma once

#include <string>
#include <vector>

#include "pulseforge/operator.hpp"

namespace pulseforge {

enum class Axis { x, y, z };

/// n coupled spin-1/2 nuclei: chemical shifts (rad/s, offsets from the
/// base rotating frame) and a symmetric scalar-coupling matrix (Hz).
struct SpinSystem {
  int n = 0;
  std::vector<double> shifts;             // rad/s
  Eigen::MatrixXd couplings;              // Hz, symmetric, zero diagonal
  std::vector<std::string> labels;

  Eigen::Index dim() const { return Eigen::Index(1) << n; }

  /// Throws std::invalid_argument on any violated invariant.
  void validate() const;

  /// Parses the JSON config: labels, shifts_hz, couplings_hz
  /// (full n x n matrix or upper-triangle list, row major).
  static SpinSystem from_json(const std::string& text);
  static SpinSystem load(const std::string& path);
};

/// I_axis^k on an n-spin register: identity everywhere except sigma_axis/2
/// in slot k. Spins are numbered 1..n.
Operator spin_operator(int n, int k, Axis axis);

/// Sum_k I_axis^k.
Matrix total_spin(int n, Axis axis);

/// H_int = sum_k w_k I_z^k + 2*pi * sum_{j>k} J_kj I^k . I^j
Operator internal_hamiltonian(const SpinSystem& sys);

/// N^2 trace-orthonormal tensor-product Pauli matrices, scaled by 2^(-n/2).
/// Element 0 is proportional to identity.
std::vector<Operator> pauli_basis(int n);

}  // namespace pulseforge
