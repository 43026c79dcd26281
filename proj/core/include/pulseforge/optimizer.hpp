#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pulseforge/fidelity.hpp"
#include "pulseforge/operator.hpp"
#include "pulseforge/pulse.hpp"
#include "pulseforge/spin_system.hpp"

namespace pulseforge {

struct GateSpec {
  Operator target;                     // desired unitary
  std::string name;
  double fidelity_threshold = 0.999;
  double max_power = 0.0;              // rad/s
  double max_total_duration = 0.0;     // seconds
  int max_periods = 0;

  void validate() const;
};

/// Quadratic-hinge penalties keeping the search inside the feasible box.
struct PenaltyConfig {
  double power_cap = 0.0;      // rad/s
  double offset_cap = 0.0;     // rad/s
  double duration_cap = 0.0;   // seconds, on the total
  double power_weight = 100.0;
  double offset_weight = 100.0;
  double duration_weight = 100.0;
  double negative_time_weight = 100.0;

  void validate() const;
};

struct SearchConfig {
  // simplex coefficients: reflection, expansion, contraction, shrink
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  // initial step sizes in the nondimensionalized search coordinates
  double step_power = 0.15;
  double step_offset = 0.15;
  double step_phase = 0.25;
  double step_duration = 0.15;
  int max_evals = 8000;        // per simplex run
  int rounds = 4;              // simplex runs per start, re-seeded at the best point
  double tolerance = 1e-11;    // convergence on objective spread
  int restarts = 8;            // independent starting points per period count
  std::uint64_t seed = 0;
  int threads = 0;             // 0 = hardware concurrency

  void validate() const;
};

/// Maps the flat search vector to physical period parameters. Search
/// coordinates are nondimensionalized: power/power_cap, offset/offset_cap,
/// phase/pi, duration/duration_scale.
struct ParamScaling {
  double power_cap = 0.0;
  double offset_cap = 0.0;
  double duration_scale = 0.0;

  PulseSequence decode(const Eigen::VectorXd& params) const;
  Eigen::VectorXd encode(const PulseSequence& seq) const;
};

/// Q(U_net(params), U_th) plus the penalty terms. Negative durations are
/// clamped to zero for simulation while still incurring their penalty.
double objective(const Eigen::VectorXd& params, const SpinSystem& sys,
                 const GateSpec& gate, const PenaltyConfig& pen,
                 const ParamScaling& scaling);

struct NelderMeadResult {
  Eigen::VectorXd x;
  double f = 0.0;
  int evals = 0;
  bool converged = false;
};

/// Standard reflect/expand/contract/shrink simplex minimization.
/// Deterministic given x0 and steps.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0,
                             const Eigen::VectorXd& steps,
                             const SearchConfig& cfg);

struct RestartRecord {
  int periods = 0;
  int restart = 0;
  double best_objective = 0.0;
  double fidelity = 0.0;
  int evals = 0;
  bool converged = false;
};

struct DesignResult {
  PulseSequence sequence;
  FidelityReport report;
  bool threshold_met = false;
  std::vector<RestartRecord> audit;

  std::string audit_json() const;
};

/// Multi-start simplex search at N periods, escalating N until the target
/// fidelity is met or max_periods is exhausted. Never throws on a missed
/// threshold; returns the best sequence found with threshold_met = false.
DesignResult design_pulse(const SpinSystem& sys, const GateSpec& gate,
                          const PenaltyConfig& pen, const SearchConfig& cfg);

/// Default penalty box derived from the gate constraints.
PenaltyConfig default_penalties(const GateSpec& gate, const SpinSystem& sys);

}  // namespace pulseforge
