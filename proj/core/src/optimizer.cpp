#include "pulseforge/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include <nlohmann/json.hpp>

#include "pulseforge/dynamics.hpp"

namespace pulseforge {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double hinge2(double value, double cap) {
  const double excess = std::abs(value) - cap;
  if (excess <= 0.0) return 0.0;
  const double rel = excess / cap;
  return rel * rel;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

void GateSpec::validate() const {
  if (target.dim() < 2) throw std::invalid_argument("gate target missing");
  if (unitarity_defect(target.mat()) >= 1e-10)
    throw std::invalid_argument("gate target is not unitary");
  if (fidelity_threshold <= 0.0 || fidelity_threshold >= 1.0)
    throw std::invalid_argument("fidelity threshold must be in (0, 1)");
  if (max_power <= 0.0) throw std::invalid_argument("max power must be positive");
  if (max_total_duration <= 0.0)
    throw std::invalid_argument("max total duration must be positive");
  if (max_periods < 1) throw std::invalid_argument("max periods must be >= 1");
}

void PenaltyConfig::validate() const {
  for (double v : {power_cap, offset_cap, duration_cap, power_weight,
                   offset_weight, duration_weight, negative_time_weight})
    if (!(v > 0.0))
      throw std::invalid_argument("penalty caps and weights must be positive");
}

void SearchConfig::validate() const {
  for (double v : {reflection, expansion, contraction, shrink, step_power,
                   step_offset, step_phase, step_duration})
    if (!(v > 0.0))
      throw std::invalid_argument("search coefficients and steps must be positive");
  if (tolerance <= 0.0) throw std::invalid_argument("tolerance must be positive");
  if (max_evals < 1 || rounds < 1 || restarts < 1)
    throw std::invalid_argument("evaluation budget, rounds, restarts must be >= 1");
}

PulseSequence ParamScaling::decode(const Eigen::VectorXd& params) const {
  if (params.size() % 4 != 0 || params.size() == 0)
    throw std::invalid_argument("parameter vector length must be a positive multiple of 4");
  PulseSequence seq;
  for (Eigen::Index m = 0; m < params.size() / 4; ++m) {
    PulsePeriod p;
    p.power = params[4 * m + 0] * power_cap;
    p.offset = params[4 * m + 1] * offset_cap;
    p.phase = params[4 * m + 2] * std::numbers::pi;
    p.duration = params[4 * m + 3] * duration_scale;
    seq.periods.push_back(p);
  }
  return seq;
}

Eigen::VectorXd ParamScaling::encode(const PulseSequence& seq) const {
  Eigen::VectorXd params(4 * Eigen::Index(seq.periods.size()));
  for (Eigen::Index m = 0; m < Eigen::Index(seq.periods.size()); ++m) {
    const auto& p = seq.periods[m];
    params[4 * m + 0] = p.power / power_cap;
    params[4 * m + 1] = p.offset / offset_cap;
    params[4 * m + 2] = p.phase / std::numbers::pi;
    params[4 * m + 3] = p.duration / duration_scale;
  }
  return params;
}

double objective(const Eigen::VectorXd& params, const SpinSystem& sys,
                 const GateSpec& gate, const PenaltyConfig& pen,
                 const ParamScaling& scaling) {
  if (!params.allFinite()) return std::numeric_limits<double>::infinity();

  PulseSequence seq = scaling.decode(params);
  double penalty = 0.0;
  double total = 0.0;
  for (auto& p : seq.periods) {
    penalty += pen.power_weight * hinge2(p.power, pen.power_cap);
    penalty += pen.offset_weight * hinge2(p.offset, pen.offset_cap);
    if (p.duration < 0.0) {
      const double rel = -p.duration / scaling.duration_scale;
      penalty += pen.negative_time_weight * rel * rel;
      p.duration = 0.0;  // clamp for simulation only
    }
    total += p.duration;
  }
  penalty += pen.duration_weight * hinge2(total, pen.duration_cap);

  const Operator u_net = net_propagator(sys, seq);
  const double f = gate_fidelity_unitary(gate.target, u_net);
  return quality_factor(f) + penalty;
}

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0,
                             const Eigen::VectorXd& steps,
                             const SearchConfig& cfg) {
  cfg.validate();
  const Eigen::Index dim = x0.size();
  if (steps.size() != dim)
    throw std::invalid_argument("nelder_mead: steps size mismatch");

  const double f0 = f(x0);
  if (!std::isfinite(f0))
    throw std::invalid_argument("nelder_mead: objective not finite at x0");

  std::vector<Eigen::VectorXd> verts(dim + 1, x0);
  std::vector<double> vals(dim + 1);
  vals[0] = f0;
  int evals = 1;
  for (Eigen::Index i = 0; i < dim; ++i) {
    verts[i + 1][i] += steps[i];
    vals[i + 1] = f(verts[i + 1]);
    ++evals;
  }

  std::vector<int> order(dim + 1);
  const auto sort_order = [&] {
    for (int i = 0; i <= dim; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return vals[a] < vals[b]; });
  };
  sort_order();

  bool converged = false;
  while (evals < cfg.max_evals) {
    const int best = order[0];
    const int worst = order[dim];
    const int second_worst = order[dim - 1];
    if (vals[worst] - vals[best] < cfg.tolerance) {
      converged = true;
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
    for (int i = 0; i < dim; ++i) centroid += verts[order[i]];
    centroid /= double(dim);

    const Eigen::VectorXd reflected =
        centroid + cfg.reflection * (centroid - verts[worst]);
    const double f_r = f(reflected);
    ++evals;

    if (f_r < vals[best]) {
      const Eigen::VectorXd expanded =
          centroid + cfg.expansion * (reflected - centroid);
      const double f_e = f(expanded);
      ++evals;
      if (f_e < f_r) {
        verts[worst] = expanded;
        vals[worst] = f_e;
      } else {
        verts[worst] = reflected;
        vals[worst] = f_r;
      }
    } else if (f_r < vals[second_worst]) {
      verts[worst] = reflected;
      vals[worst] = f_r;
    } else {
      const Eigen::VectorXd& outside = f_r < vals[worst] ? reflected : verts[worst];
      const Eigen::VectorXd contracted =
          centroid + cfg.contraction * (outside - centroid);
      const double f_c = f(contracted);
      ++evals;
      if (f_c < std::min(f_r, vals[worst])) {
        verts[worst] = contracted;
        vals[worst] = f_c;
      } else {
        // shrink toward the best vertex
        for (int i = 1; i <= dim; ++i) {
          const int v = order[i];
          verts[v] = verts[best] + cfg.shrink * (verts[v] - verts[best]);
          vals[v] = f(verts[v]);
          ++evals;
        }
      }
    }
    sort_order();
  }

  sort_order();
  NelderMeadResult result;
  result.x = verts[order[0]];
  result.f = vals[order[0]];
  result.evals = evals;
  result.converged = converged;
  return result;
}

namespace {

Eigen::VectorXd base_steps(int n_periods, const SearchConfig& cfg) {
  Eigen::VectorXd steps(4 * n_periods);
  for (int m = 0; m < n_periods; ++m) {
    steps[4 * m + 0] = cfg.step_power;
    steps[4 * m + 1] = cfg.step_offset;
    steps[4 * m + 2] = cfg.step_phase;
    steps[4 * m + 3] = cfg.step_duration;
  }
  return steps;
}

Eigen::VectorXd sample_start(std::mt19937_64& rng, const SpinSystem& sys,
                             int n_periods, const PenaltyConfig& pen,
                             const ParamScaling& scaling) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  PulseSequence seq;
  const double total_guess = (0.4 + 0.4 * unit(rng)) * pen.duration_cap;
  for (int m = 0; m < n_periods; ++m) {
    PulsePeriod p;
    p.power = (0.3 + 0.4 * unit(rng)) * pen.power_cap;
    // seed transmitter offsets near the chemical shifts
    const int spin = int(unit(rng) * sys.n) % sys.n;
    p.offset = sys.shifts[spin] + kTwoPi * 300.0 * (2.0 * unit(rng) - 1.0);
    p.phase = kTwoPi * unit(rng);
    p.duration = total_guess / n_periods * (0.7 + 0.6 * unit(rng));
    seq.periods.push_back(p);
  }
  return scaling.encode(seq);
}

/// Canonical form: nonnegative power, phase in [0, 2pi), durations >= 0,
/// residual cap violations clamped into the box.
PulseSequence project_feasible(PulseSequence seq, const PenaltyConfig& pen) {
  for (auto& p : seq.periods) {
    if (p.power < 0.0) {
      p.power = -p.power;
      p.phase += std::numbers::pi;
    }
    p.power = std::min(p.power, pen.power_cap);
    p.offset = std::clamp(p.offset, -pen.offset_cap, pen.offset_cap);
    p.phase = std::fmod(p.phase, kTwoPi);
    if (p.phase < 0.0) p.phase += kTwoPi;
    p.duration = std::max(p.duration, 0.0);
  }
  const double total = seq.total_duration();
  if (total > pen.duration_cap)
    for (auto& p : seq.periods) p.duration *= pen.duration_cap / total;
  return seq;
}

struct StartOutcome {
  Eigen::VectorXd x;
  double objective = std::numeric_limits<double>::infinity();
  int evals = 0;
  bool converged = false;
};

}  // namespace

std::string DesignResult::audit_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& r : audit) {
    nlohmann::ordered_json jr;
    jr["periods"] = r.periods;
    jr["restart"] = r.restart;
    jr["best_objective"] = r.best_objective;
    jr["fidelity"] = r.fidelity;
    jr["evals"] = r.evals;
    jr["converged"] = r.converged;
    j.push_back(std::move(jr));
  }
  return j.dump(2) + "\n";
}

PenaltyConfig default_penalties(const GateSpec& gate, const SpinSystem& sys) {
  PenaltyConfig pen;
  pen.power_cap = gate.max_power;
  double max_shift = 0.0;
  for (double w : sys.shifts) max_shift = std::max(max_shift, std::abs(w));
  pen.offset_cap = std::max(max_shift + kTwoPi * 2000.0, kTwoPi * 2000.0);
  pen.duration_cap = gate.max_total_duration;
  return pen;
}

DesignResult design_pulse(const SpinSystem& sys, const GateSpec& gate,
                          const PenaltyConfig& pen, const SearchConfig& cfg) {
  sys.validate();
  gate.validate();
  pen.validate();
  cfg.validate();
  if (gate.target.dim() != sys.dim())
    throw std::invalid_argument("gate target dimension does not match system");

  DesignResult result;
  const auto finalize = [&](PulseSequence seq, bool met_hint) {
    seq = project_feasible(std::move(seq), pen);
    seq.metadata.gate = gate.name;
    const auto reports = simulate_experiment_table(sys, {seq}, {gate.target});
    result.report = reports.front();
    seq.metadata.fidelity = result.report.fidelity;
    result.sequence = std::move(seq);
    result.threshold_met =
        met_hint && result.report.fidelity >= gate.fidelity_threshold;
  };

  // degenerate seed: a zero-power, zero-duration period (identity targets)
  {
    PulseSequence trivial;
    trivial.periods.push_back(PulsePeriod{});
    const double f =
        gate_fidelity_unitary(gate.target, net_propagator(sys, trivial));
    if (f >= gate.fidelity_threshold) {
      finalize(std::move(trivial), true);
      return result;
    }
  }

  const int threads = cfg.threads > 0
                          ? cfg.threads
                          : std::max(1u, std::thread::hardware_concurrency());

  PulseSequence best_seq;
  double best_f = -1.0;

  const int n_min = std::min(sys.n, gate.max_periods);
  for (int n_periods = n_min; n_periods <= gate.max_periods; ++n_periods) {
    ParamScaling scaling{pen.power_cap, pen.offset_cap,
                         pen.duration_cap / double(n_periods)};
    const auto fn = [&](const Eigen::VectorXd& x) {
      return objective(x, sys, gate, pen, scaling);
    };

    // warm start for escalation: the previous best with its longest period
    // split in half implements the same propagator with n_periods periods
    Eigen::VectorXd warm;
    if (int(best_seq.periods.size()) == n_periods - 1 && n_periods > n_min) {
      PulseSequence split = best_seq;
      std::size_t longest = 0;
      for (std::size_t i = 1; i < split.periods.size(); ++i)
        if (split.periods[i].duration > split.periods[longest].duration)
          longest = i;
      split.periods[longest].duration *= 0.5;
      split.periods.insert(split.periods.begin() + longest + 1,
                           split.periods[longest]);
      warm = scaling.encode(split);
    }

    std::vector<StartOutcome> outcomes(cfg.restarts);
    std::atomic<int> next{0};
    const auto worker = [&] {
      for (int r = next.fetch_add(1); r < cfg.restarts; r = next.fetch_add(1)) {
        std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(
                                std::uint64_t(n_periods) * 1000003ull + r)));
        StartOutcome out;
        out.x = (r == 0 && warm.size() > 0)
                    ? warm
                    : sample_start(rng, sys, n_periods, pen, scaling);
        out.objective = fn(out.x);
        ++out.evals;
        for (int round = 0; round < cfg.rounds; ++round) {
          const Eigen::VectorXd steps =
              base_steps(n_periods, cfg) / std::pow(2.0, round);
          const auto nm = nelder_mead(fn, out.x, steps, cfg);
          out.evals += nm.evals;
          out.converged = nm.converged;
          if (nm.f < out.objective) {
            out.objective = nm.f;
            out.x = nm.x;
          }
          // good enough already: 1 - sqrt(F) at the threshold
          if (out.objective <
              (1.0 - std::sqrt(gate.fidelity_threshold)) * 0.5)
            break;
        }
        outcomes[r] = std::move(out);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min(threads, cfg.restarts); ++t)
      pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    int best_restart = 0;
    for (int r = 1; r < cfg.restarts; ++r)
      if (outcomes[r].objective < outcomes[best_restart].objective)
        best_restart = r;

    for (int r = 0; r < cfg.restarts; ++r) {
      RestartRecord rec;
      rec.periods = n_periods;
      rec.restart = r;
      rec.best_objective = outcomes[r].objective;
      const PulseSequence seq = project_feasible(scaling.decode(outcomes[r].x), pen);
      rec.fidelity = gate_fidelity_unitary(gate.target, net_propagator(sys, seq));
      rec.evals = outcomes[r].evals;
      rec.converged = outcomes[r].converged;
      result.audit.push_back(rec);
    }

    const PulseSequence candidate =
        project_feasible(scaling.decode(outcomes[best_restart].x), pen);
    const double f =
        gate_fidelity_unitary(gate.target, net_propagator(sys, candidate));
    if (f > best_f) {
      best_f = f;
      best_seq = candidate;
    }
    if (best_f >= gate.fidelity_threshold) break;
  }

  finalize(std::move(best_seq), true);
  return result;
}

}  // namespace pulseforge
