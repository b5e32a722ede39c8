#pragma once

#include "cablesim/forces.hpp"
#include "cablesim/types.hpp"

#include <optional>
#include <utility>

namespace cablesim {

/// Prescribed endpoint trajectory: hold, or a linear ramp that holds the
/// start position before ramp_start and the end position after ramp_end.
/// Position is continuous; velocity is the ramp slope inside
/// [ramp_start, ramp_end) and zero outside.
struct BoundaryScript {
  int node_index = 0;
  Vec3 from = Vec3::Zero();
  Vec3 to = Vec3::Zero();
  double ramp_start = 0.0;
  double ramp_end = 0.0;

  static BoundaryScript hold(int node, const Vec3& position);
  static BoundaryScript linear_ramp(int node, const Vec3& from, const Vec3& to,
                                    double t_start, double t_end);

  struct Sample {
    Vec3 position;
    Vec3 velocity;
  };
  Sample evaluate(double t) const;
};

/// Recorded run: state and force snapshots every record_stride steps
/// (t = 0 and the final state always included).
struct Trajectory {
  std::vector<double> sample_times;
  std::vector<CableState> states;
  std::vector<ForceBreakdown> force_records;
  int record_stride = 1;
  // Set when the run stopped on an invalid state; equals the time of the
  // last recorded (invalid) snapshot.
  std::optional<double> halt_time;

  bool halted() const { return halt_time.has_value(); }
};

/// One semi-implicit Euler step: v += (F/m) dt then x += v dt on free
/// nodes; scripted nodes take position and velocity from their script at
/// the new time, exactly. A non-finite result or a degenerate segment
/// flags the returned state invalid.
CableState step(const CableState& state,
                const std::vector<StretchSegment>& segments,
                const std::vector<BendingElement>& elements,
                const CableSpec& spec,
                const std::vector<BoundaryScript>& scripts);

/// Runs ceil(duration / dt) steps from `initial`, marking script nodes
/// fixed, recording every record_stride steps. Halts early when a step
/// goes invalid, recording the halt snapshot.
Trajectory run(const CableSpec& spec, const CableState& initial,
               const std::vector<BoundaryScript>& scripts, double duration,
               int record_stride);

/// Constraint force the mount applies to a fixed node (quasi-static:
/// minus the accumulated total). This is the simulated force/torque
/// sensor reading at a held end.
Vec3 reaction_force(const ForceBreakdown& forces, int node);

}  // namespace cablesim
