#pragma once

#include "cablesim/integrator.hpp"
#include "cablesim/types.hpp"

namespace cablesim {

enum class Classification { Stable, Oscillatory, Unstable };

const char* to_string(Classification c);

struct OscillationMetrics {
  double dominant_frequency = 0.0;  // [Hz], zero-frequency bin excluded
  double relative_amplitude = 0.0;  // (max-min)/(2|mean|) over final window
  double settling_time = 0.0;       // [s] from trace start, or inf
};

struct StabilityReport {
  Classification classification = Classification::Stable;
  double time_to_instability = 0.0;  // [s], inf when stable
  double peak_force_amplitude = 0.0; // max |total| at monitored node [N]
  OscillationMetrics oscillation;
};

/// Largest admissible damping coefficient |v m dt + F| / |v| for one node
/// sample; inf when the node is at rest (|v| < 1e-12).
double damping_bound(const Vec3& velocity, double mass, double dt,
                     const Vec3& force);

struct DampingCheckEntry {
  double time;
  int node;
  double bound;
  bool violated;  // spec damping coefficient exceeds the bound
};

/// Evaluates the damping bound for every free node at every snapshot,
/// using the node's internal (stretch + bend) force.
std::vector<DampingCheckEntry> check_damping(const CableSpec& spec,
                                             const Trajectory& trajectory);

/// Earliest snapshot time at which any node is non-finite (or the state is
/// flagged invalid), drifts farther than position_limit from the initial
/// centroid, or moves faster than velocity_limit; inf if never.
double detect_instability(const Trajectory& trajectory, double position_limit,
                          double velocity_limit);

/// Spectrum/amplitude/settling metrics of a uniformly sampled scalar
/// force trace. `window` selects the final analysis window in seconds.
/// Throws ParameterError for traces shorter than 8 samples.
OscillationMetrics oscillation_metrics(const std::vector<double>& trace,
                                       double sample_dt, double window);

struct StabilityOptions {
  double position_limit;          // caller supplies, typically 10 L
  double velocity_limit = 1e3;    // [m/s]
  double oscillatory_threshold = 0.1;
  double window_fraction = 0.2;   // final fraction of the trace analyzed
};

/// Full classification of a run from the reaction-force magnitude at
/// `monitored_node`: Unstable iff divergence was detected, Oscillatory when
/// stable but the final-window relative amplitude exceeds the threshold.
StabilityReport analyze(const Trajectory& trajectory, const CableSpec& spec,
                        int monitored_node, const StabilityOptions& options);

}  // namespace cablesim
