#pragma once

#include "cablesim/cable_model.hpp"
#include "cablesim/integrator.hpp"
#include "cablesim/stability.hpp"
#include "cablesim/types.hpp"

#include <cstdint>
#include <string>

namespace cablesim {

enum class ScenarioKind { StaticFixedEnds, EndDisplacement };

const char* to_string(ScenarioKind k);

/// Experiment protocol: both ends held parallel to the ground, optionally
/// followed by a scripted displacement of one end after a settle phase.
struct Scenario {
  ScenarioKind kind = ScenarioKind::EndDisplacement;
  Vec3 displacement{0.0, 0.0, 0.005};  // EndDisplacement only [m]
  double ramp_duration = 0.1;          // [s]
  double settle_duration = 0.5;        // static phase before the ramp [s]
  double total_duration = 2.0;         // [s]
  std::vector<int> monitored_nodes{2, 4, 8};

  void validate() const;
};

/// Domain-randomization ranges; `base` carries the fixed geometry and
/// material fields that are not randomized. The seed fully determines the
/// sample sequence.
struct RandomizationRanges {
  CableSpec base;
  double youngs_modulus_min = 12.6e6, youngs_modulus_max = 1002.6e6;  // [Pa]
  int num_masses_min = 6, num_masses_max = 10;
  double time_step_min = 5e-6, time_step_max = 5e-6;                  // [s]
  double damping_min = 0.02, damping_max = 0.02;                      // [N s/m]
  std::uint64_t seed = 0;

  void validate() const;
};

/// Deterministic function of (seed, index): continuous parameters are
/// log-uniform over their range, num_masses is a uniform integer.
CableSpec sample(const RandomizationRanges& ranges, long long index);

/// Hold scripts for both ends at their discretized positions; for
/// EndDisplacement the far end ramps by `displacement` after the settle
/// phase and holds the displaced position afterwards. Uses the canonical
/// placement (anchor at the origin, cable along +x).
std::vector<BoundaryScript> build_scenario_scripts(const Scenario& scenario,
                                                   const CableSpec& spec);

/// Downsampled traces kept in an experiment record: positions and
/// velocities of the monitored nodes plus the reaction force at the held
/// (far) end.
struct TrajectorySummary {
  std::vector<double> times;
  std::vector<int> monitored_nodes;  // filtered to indices valid for n
  std::vector<std::vector<Vec3>> node_positions;   // [monitored][snapshot]
  std::vector<std::vector<Vec3>> node_velocities;  // [monitored][snapshot]
  std::vector<Vec3> end_reaction;                  // [snapshot]
};

struct ExperimentRecord {
  CableSpec sampled_spec;
  Scenario scenario;
  TrajectorySummary summary;
  StabilityReport report;
  long long damping_violations = 0;
  std::uint64_t seed = 0;
  long long index = -1;  // sweep index, -1 for standalone runs
  std::string error;     // nonempty when the run failed outright
};

/// Discretizes, runs and analyzes one experiment. record_stride 0 selects
/// a stride that keeps roughly 2000 snapshots. Halted runs come back as
/// Unstable classifications, never as errors.
ExperimentRecord run_experiment(const CableSpec& spec, const Scenario& scenario,
                                int record_stride = 0);

/// `count` independent experiments for indices 0..count-1, optionally on a
/// worker pool. Output order is by index regardless of worker count, and
/// records depend only on (seed, index).
std::vector<ExperimentRecord> sweep(const RandomizationRanges& ranges,
                                    const Scenario& scenario, long long count,
                                    int jobs = 1, int record_stride = 0);

/// Named parameter presets: table1_row1..table1_row5 plus the fig3/fig4
/// configurations whose captions disagree with the table.
struct Preset {
  std::string name;
  CableSpec spec;
  Scenario scenario;
};

Preset preset(const std::string& name);
std::vector<Preset> table1_presets();
std::vector<std::string> preset_names();

}  // namespace cablesim
