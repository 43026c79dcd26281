#pragma once

#include <numbers>
#include <random>

#include "pulseforge/spin_system.hpp"

namespace pulseforge::fixtures {

/// The documented synthetic 3-spin design fixture.
inline SpinSystem three_spin() {
  SpinSystem sys;
  sys.n = 3;
  sys.shifts = {2.0 * std::numbers::pi * -3000.0, 0.0,
                2.0 * std::numbers::pi * 4000.0};
  sys.couplings = Eigen::MatrixXd::Zero(3, 3);
  sys.couplings(0, 1) = sys.couplings(1, 0) = 54.0;
  sys.couplings(1, 2) = sys.couplings(2, 1) = 35.0;
  sys.couplings(0, 2) = sys.couplings(2, 0) = 1.3;
  sys.labels = {"C1", "C2", "C3"};
  return sys;
}

inline SpinSystem random_two_spin(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> shift(-5000.0, 5000.0);
  std::uniform_real_distribution<double> coupling(-100.0, 100.0);
  SpinSystem sys;
  sys.n = 2;
  sys.shifts = {2.0 * std::numbers::pi * shift(rng),
                2.0 * std::numbers::pi * shift(rng)};
  sys.couplings = Eigen::MatrixXd::Zero(2, 2);
  sys.couplings(0, 1) = sys.couplings(1, 0) = coupling(rng);
  sys.labels = {"A", "B"};
  return sys;
}

}  // namespace pulseforge::fixtures
