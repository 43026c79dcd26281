#pragma once

#include <string>
#include <vector>

#include "pulseforge/operator.hpp"
#include "pulseforge/spin_system.hpp"

namespace pulseforge {

/// e^{-i theta sum_{k in spins} I_axis^k}, identity on all other spins.
/// Spins are numbered 1..n.
Operator rotation_gate(int n, const std::vector<int>& spins, Axis axis,
                       double angle);

/// Gate mini-language: "identity" or "rot(spins...,axis,angle_deg)",
/// e.g. "rot(1,x,90)" or "rot(1,2,x,180)".
Operator standard_gate(const std::string& name, const SpinSystem& sys);

}  // namespace pulseforge
