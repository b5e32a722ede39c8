#include "cablesim/integrator.hpp"

#include "cablesim/cable_model.hpp"

#include <cmath>

namespace cablesim {

BoundaryScript BoundaryScript::hold(int node, const Vec3& position) {
  return {node, position, position, 0.0, 0.0};
}

BoundaryScript BoundaryScript::linear_ramp(int node, const Vec3& from,
                                           const Vec3& to, double t_start,
                                           double t_end) {
  if (!(t_end > t_start))
    throw ParameterError("linear_ramp: t_end must be > t_start");
  return {node, from, to, t_start, t_end};
}

BoundaryScript::Sample BoundaryScript::evaluate(double t) const {
  if (ramp_end <= ramp_start || t < ramp_start) return {from, Vec3::Zero()};
  if (t >= ramp_end) return {to, Vec3::Zero()};
  const double inv_span = 1.0 / (ramp_end - ramp_start);
  return {from + ((t - ramp_start) * inv_span) * (to - from),
          (to - from) * inv_span};
}

namespace {

// Shared by step() and run(); reuses `work` across steps. `new_time` is
// passed explicitly so scripts are evaluated at the exact time the
// resulting state carries (bit-equal snapshots).
void step_into(const CableState& state,
               const std::vector<StretchSegment>& segments,
               const std::vector<BendingElement>& elements,
               const CableSpec& spec,
               const std::vector<BoundaryScript>& scripts, double new_time,
               ForceBreakdown& work, CableState& next) {
  accumulate(state, segments, elements, spec, {}, work);

  next = state;
  next.time = new_time;
  if (!work.valid) {
    next.valid = false;
    return;
  }

  const double dt = spec.time_step;
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (state.fixed_mask[i]) continue;
    next.velocities[i] += (dt / state.node_masses[i]) * work.total[i];
    next.positions[i] += dt * next.velocities[i];
  }
  for (const BoundaryScript& s : scripts) {
    const auto sample = s.evaluate(next.time);
    next.positions[s.node_index] = sample.position;
    next.velocities[s.node_index] = sample.velocity;
  }
  if (!next.all_finite()) next.valid = false;
}

}  // namespace

CableState step(const CableState& state,
                const std::vector<StretchSegment>& segments,
                const std::vector<BendingElement>& elements,
                const CableSpec& spec,
                const std::vector<BoundaryScript>& scripts) {
  ForceBreakdown work;
  CableState next;
  step_into(state, segments, elements, spec, scripts,
            state.time + spec.time_step, work, next);
  return next;
}

Trajectory run(const CableSpec& spec, const CableState& initial,
               const std::vector<BoundaryScript>& scripts, double duration,
               int record_stride) {
  if (!(duration > 0)) throw ParameterError("duration must be > 0");
  if (record_stride < 1) throw ParameterError("record_stride must be >= 1");
  if (initial.size() != static_cast<std::size_t>(spec.num_masses))
    throw ParameterError("initial state size does not match spec.num_masses");

  // Segment rest lengths and stiffnesses are properties of the spec, not
  // of the (possibly deformed) initial positions.
  DiscretizedCable reference = discretize(spec, Vec3::Zero(), Vec3::UnitX());
  const auto& segments = reference.segments;
  const auto& elements = reference.bending_elements;

  CableState state = initial;
  for (const BoundaryScript& s : scripts) {
    if (s.node_index < 0 || s.node_index >= static_cast<int>(state.size()))
      throw ParameterError("script node_index out of range");
    state.fixed_mask[s.node_index] = true;
  }

  const long long steps =
      static_cast<long long>(std::ceil(duration / spec.time_step - 1e-9));

  Trajectory traj;
  traj.record_stride = record_stride;
  const std::size_t expected =
      static_cast<std::size_t>(steps / record_stride) + 2;
  traj.sample_times.reserve(expected);
  traj.states.reserve(expected);
  traj.force_records.reserve(expected);

  auto record = [&](const CableState& s) {
    traj.sample_times.push_back(s.time);
    traj.states.push_back(s);
    traj.force_records.push_back(accumulate(s, segments, elements, spec, {}));
  };

  record(state);
  ForceBreakdown work;
  CableState next;
  for (long long k = 1; k <= steps; ++k) {
    // Times are exact multiples of dt, not a running sum, so script
    // evaluation stays synchronized with recorded snapshot times.
    step_into(state, segments, elements, spec, scripts,
              static_cast<double>(k) * spec.time_step, work, next);
    std::swap(state, next);
    if (!state.valid) {
      record(state);
      traj.halt_time = state.time;
      break;
    }
    if (k % record_stride == 0 || k == steps) record(state);
  }
  return traj;
}

Vec3 reaction_force(const ForceBreakdown& forces, int node) {
  return -forces.total[node];
}

}  // namespace cablesim
