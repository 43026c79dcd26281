// pulseforge: design, simulate, sweep, and export strongly modulating RF
// pulses from the command line. Every run appends a manifest line recording
// inputs, seed, and outputs, and reruns with identical inputs and seed are
// byte-identical.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pulseforge/dynamics.hpp"
#include "pulseforge/fidelity.hpp"
#include "pulseforge/gates.hpp"
#include "pulseforge/manifest.hpp"
#include "pulseforge/optimizer.hpp"
#include "pulseforge/robustness.hpp"
#include "pulseforge/spin_system.hpp"
#include "pulseforge/waveform.hpp"

#ifndef PULSEFORGE_VERSION
#define PULSEFORGE_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using namespace pulseforge;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitParse = 3;
constexpr int kExitNumerical = 4;

/// Thrown while loading or validating user inputs; maps to exit code 3.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(std::uint64_t flag_seed, bool seed_given) {
  if (seed_given) return flag_seed;
  if (const char* env = std::getenv("PULSEFORGE_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 0;
}

SpinSystem load_system(const std::string& path) {
  try {
    return SpinSystem::load(path);
  } catch (const std::exception& e) {
    throw InputError(std::string("system file: ") + e.what());
  }
}

PulseSequence load_pulse(const std::string& path) {
  try {
    return PulseSequence::load(path);
  } catch (const std::exception& e) {
    throw InputError(std::string("pulse file: ") + e.what());
  }
}

/// Raw-unitary escape hatch: {"unitary": [[[re, im], ...] per row]}.
Operator load_target_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open target file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("target file: ") + e.what());
  }
  try {
    const auto& rows = j.at("unitary");
    const Eigen::Index dim = Eigen::Index(rows.size());
    Matrix u(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
      const auto& row = rows.at(r);
      if (Eigen::Index(row.size()) != dim)
        throw InputError("target file: unitary matrix is not square");
      for (Eigen::Index c = 0; c < dim; ++c)
        u(r, c) = Complex(row.at(c).at(0).get<double>(),
                          row.at(c).at(1).get<double>());
    }
    return Operator::unitary(std::move(u));
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(std::string("target file: ") + e.what());
  }
}

Operator resolve_target(const std::string& gate, const std::string& target_file,
                        const SpinSystem& sys) {
  if (!target_file.empty()) return load_target_file(target_file);
  if (gate.empty()) throw InputError("need --gate or --target-file");
  try {
    return standard_gate(gate, sys);
  } catch (const std::exception& e) {
    throw InputError(std::string("gate: ") + e.what());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << content;
}

/// "0.9,1.0,1.1" or "0.9..1.1" (with `steps` points).
std::vector<double> parse_scales(const std::string& text, int steps) {
  std::vector<double> scales;
  const auto dots = text.find("..");
  try {
    if (dots != std::string::npos) {
      const double lo = std::stod(text.substr(0, dots));
      const double hi = std::stod(text.substr(dots + 2));
      if (steps < 2) throw InputError("range form needs --steps >= 2");
      for (int i = 0; i < steps; ++i)
        scales.push_back(lo + (hi - lo) * i / double(steps - 1));
    } else {
      std::istringstream in(text);
      std::string tok;
      while (std::getline(in, tok, ',')) scales.push_back(std::stod(tok));
    }
  } catch (const InputError&) {
    throw;
  } catch (const std::exception&) {
    throw InputError("cannot parse values: " + text);
  }
  if (scales.empty()) throw InputError("empty value list: " + text);
  return scales;
}

struct Run {
  RunManifest manifest;
  fs::path out_dir;
  std::chrono::steady_clock::time_point started;

  Run(const std::string& command_line, std::uint64_t seed,
      const std::string& dir)
      : out_dir(dir), started(std::chrono::steady_clock::now()) {
    fs::create_directories(out_dir);
    manifest.command = command_line;
    manifest.version = PULSEFORGE_VERSION;
    manifest.seed = seed;
  }

  std::string out(const std::string& name) {
    manifest.outputs.push_back(name);
    return (out_dir / name).string();
  }

  void finish() {
    manifest.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
            .count();
    manifest.append((out_dir / "manifest.jsonl").string());
  }
};

std::string join_args(int argc, char** argv) {
  std::string joined;
  for (int i = 0; i < argc; ++i) {
    if (i) joined += ' ';
    joined += argv[i];
  }
  return joined;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strongly modulating pulse toolkit"};
  app.set_version_flag("--version", PULSEFORGE_VERSION);
  app.require_subcommand(1);

  // shared options, bound per subcommand below
  std::string system_file, pulse_file, gate, target_file, out_dir = ".";
  double fidelity = 0.999, max_power_khz = 12.0, max_duration_us = 400.0;
  int max_periods = 6, threads = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;

  const auto add_common = [&](CLI::App* cmd, bool needs_system) {
    auto* s = cmd->add_option("--system", system_file, "spin system JSON file");
    if (needs_system) s->required();
    cmd->add_option("--out-dir", out_dir, "output directory (default .)");
    cmd->add_option("--seed", seed, "rng seed (else $PULSEFORGE_SEED, else 0)")
        ->each([&](const std::string&) { seed_given = true; });
    cmd->add_option("--threads", threads, "worker threads (0 = all cores)");
  };

  auto* design = app.add_subcommand("design", "search for a pulse implementing a gate");
  add_common(design, true);
  design->add_option("--gate", gate, "gate name, e.g. rot(1,x,90)");
  design->add_option("--target-file", target_file, "raw unitary JSON file");
  design->add_option("--fidelity", fidelity, "target gate fidelity (default 0.999)");
  design->add_option("--max-power-khz", max_power_khz, "RF power cap in kHz (default 12)");
  design->add_option("--max-duration-us", max_duration_us, "total duration cap in us (default 400)");
  design->add_option("--max-periods", max_periods, "period-count ceiling (default 6)");

  auto* simulate = app.add_subcommand("simulate", "evaluate a pulse against a target");
  add_common(simulate, true);
  simulate->add_option("--pulse", pulse_file, "pulse JSON file")->required();
  simulate->add_option("--gate", gate, "gate name");
  simulate->add_option("--target-file", target_file, "raw unitary JSON file");
  bool table2 = false;
  simulate->add_flag("--table2", table2, "emit per-input projection/correlation rows");

  auto* sweep_pair_cmd = app.add_subcommand("sweep-pair", "fidelity grid over two distorted parameters");
  add_common(sweep_pair_cmd, true);
  sweep_pair_cmd->add_option("--pulse", pulse_file)->required();
  sweep_pair_cmd->add_option("--gate", gate, "gate name");
  sweep_pair_cmd->add_option("--target-file", target_file);
  std::vector<std::string> pair_params = {"power", "duration"};
  int samples = 41;
  sweep_pair_cmd->add_option("--params", pair_params, "two of power|offset|phase|duration")
      ->expected(2);
  sweep_pair_cmd->add_option("--samples", samples, "samples per axis (default 41)");

  auto* sweep_amp = app.add_subcommand("sweep-amplitude", "RF-amplitude sensitivity of a pulse");
  add_common(sweep_amp, true);
  sweep_amp->add_option("--pulse", pulse_file)->required();
  sweep_amp->add_option("--gate", gate, "gate name");
  sweep_amp->add_option("--target-file", target_file);
  std::string scales_text = "0.90..1.10";
  int scale_steps = 21;
  sweep_amp->add_option("--scales", scales_text, "comma list or lo..hi range (default 0.90..1.10)");
  sweep_amp->add_option("--steps", scale_steps, "points for the range form (default 21)");

  auto* sweep_shift = app.add_subcommand("sweep-shift", "isolated-test-spin resonance sweep");
  add_common(sweep_shift, false);
  sweep_shift->add_option("--pulse", pulse_file)->required();
  std::string shift_gate = "rot(1,x,90)";
  std::string range_text = "-5000..9000";
  int shift_points = 141;
  sweep_shift->add_option("--gate", shift_gate, "desired single-spin gate (default rot(1,x,90))");
  sweep_shift->add_option("--range", range_text, "shift range in Hz, lo..hi or comma list");
  sweep_shift->add_option("--points", shift_points, "points for the range form (default 141)");

  auto* export_cmd = app.add_subcommand("export", "discretize a pulse into a sampled waveform");
  add_common(export_cmd, false);
  export_cmd->add_option("--pulse", pulse_file)->required();
  double rate_us = 0.5, pad_us = 6.0;
  std::string format = "json";
  export_cmd->add_option("--rate-us", rate_us, "sample period in us (default 0.5)");
  export_cmd->add_option("--pad-us", pad_us, "zero-power pad per side in us (default 6)");
  export_cmd->add_option("--format", format, "json or shape-table")
      ->check(CLI::IsMember({"json", "shape-table"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);   // prints help/usage diagnostics
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    // -------- load phase: any failure here is an input error (exit 3)
    Run run(join_args(argc, argv), resolve_seed(seed, seed_given), out_dir);

    if (design->parsed()) {
      const SpinSystem sys = load_system(system_file);
      run.manifest.add_input(system_file);
      GateSpec spec;
      spec.target = resolve_target(gate, target_file, sys);
      if (!target_file.empty()) run.manifest.add_input(target_file);
      spec.name = gate.empty() ? "target-file" : gate;
      spec.fidelity_threshold = fidelity;
      spec.max_power = kTwoPi * max_power_khz * 1e3;
      spec.max_total_duration = max_duration_us * 1e-6;
      spec.max_periods = max_periods;

      SearchConfig cfg;
      cfg.seed = run.manifest.seed;
      cfg.threads = threads;
      const DesignResult result =
          design_pulse(sys, spec, default_penalties(spec, sys), cfg);

      write_file(run.out("pulse.json"), result.sequence.to_json());
      write_file(run.out("report.json"), result.report.to_json());
      write_file(run.out("audit.json"), result.audit_json());
      run.finish();
      std::cout << "gate " << spec.name << ": F = " << result.report.fidelity
                << ", duration = " << result.sequence.total_duration() * 1e6
                << " us, periods = " << result.sequence.periods.size() << "\n";
      if (!result.threshold_met)
        std::cout << "warning: fidelity threshold " << fidelity
                  << " not met; best result written anyway\n";
      return kExitOk;
    }

    if (simulate->parsed()) {
      const SpinSystem sys = load_system(system_file);
      const PulseSequence seq = load_pulse(pulse_file);
      run.manifest.add_input(system_file);
      run.manifest.add_input(pulse_file);
      const Operator target = resolve_target(gate, target_file, sys);
      if (!target_file.empty()) run.manifest.add_input(target_file);

      const auto reports = simulate_experiment_table(sys, {seq}, {target});
      write_file(run.out(table2 ? "table2.json" : "report.json"),
                 reports.front().to_json());
      run.finish();
      std::cout << "F = " << reports.front().fidelity
                << ", Q = " << reports.front().quality << "\n";
      if (table2)
        for (const auto& s : reports.front().per_state)
          std::cout << s.input << ": P = " << s.projection
                    << ", C = " << s.correlation << "\n";
      return kExitOk;
    }

    if (sweep_pair_cmd->parsed()) {
      const SpinSystem sys = load_system(system_file);
      const PulseSequence seq = load_pulse(pulse_file);
      run.manifest.add_input(system_file);
      run.manifest.add_input(pulse_file);
      const Operator target = resolve_target(gate, target_file, sys);
      if (!target_file.empty()) run.manifest.add_input(target_file);
      AxisSpec a = AxisSpec::default_for(parse_pulse_param(pair_params[0]), samples);
      AxisSpec b = AxisSpec::default_for(parse_pulse_param(pair_params[1]), samples);

      const SweepGrid grid = sweep_pair(sys, seq, target, a, b, threads);
      write_file(run.out("sweep_" + pair_params[0] + "_" + pair_params[1] + ".json"),
                 grid.to_json());
      run.finish();
      return kExitOk;
    }

    if (sweep_amp->parsed()) {
      const SpinSystem sys = load_system(system_file);
      const PulseSequence seq = load_pulse(pulse_file);
      run.manifest.add_input(system_file);
      run.manifest.add_input(pulse_file);
      const Operator target = resolve_target(gate, target_file, sys);
      if (!target_file.empty()) run.manifest.add_input(target_file);
      const std::vector<double> scales = parse_scales(scales_text, scale_steps);

      const auto points = amplitude_sensitivity(sys, {seq}, {target}, scales);
      write_file(run.out("sensitivity.json"), sensitivity_json(points));
      run.finish();
      for (const auto& p : points)
        std::cout << "scale " << p.scale << ": mean F = " << p.mean_fidelity
                  << " +- " << p.std_fidelity << "\n";
      return kExitOk;
    }

    if (sweep_shift->parsed()) {
      const PulseSequence seq = load_pulse(pulse_file);
      run.manifest.add_input(pulse_file);
      SpinSystem one;
      one.n = 1;
      one.shifts = {0.0};
      one.couplings = Eigen::MatrixXd::Zero(1, 1);
      one.labels = {"test"};
      Operator target;
      try {
        target = standard_gate(shift_gate, one);
      } catch (const std::exception& e) {
        throw InputError(std::string("gate: ") + e.what());
      }
      const std::vector<double> shifts = parse_scales(range_text, shift_points);

      const ShiftSweep sweep = chemshift_sweep(seq, shifts, target);
      write_file(run.out("shift_sweep.json"), sweep.to_json());
      run.finish();
      return kExitOk;
    }

    if (export_cmd->parsed()) {
      const PulseSequence seq = load_pulse(pulse_file);
      run.manifest.add_input(pulse_file);

      const SampledWaveform w = discretize(seq, rate_us * 1e-6, pad_us * 1e-6);
      const std::string name =
          format == "json" ? "waveform.json" : "waveform.shape";
      w.save(run.out(name), format);
      run.finish();
      std::cout << w.samples.size() << " samples at " << rate_us << " us\n";
      return kExitOk;
    }

    return kExitUsage;  // unreachable: a subcommand is required
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
