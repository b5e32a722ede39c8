#include "cablesim/forces.hpp"

#include <cmath>

namespace cablesim {

void ForceBreakdown::resize(std::size_t n) {
  stretch.assign(n, Vec3::Zero());
  bend.assign(n, Vec3::Zero());
  damping.assign(n, Vec3::Zero());
  external.assign(n, Vec3::Zero());
  total.assign(n, Vec3::Zero());
  valid = true;
  failed_segment = -1;
}

std::optional<SegmentGeometry> segment_geometry(const Vec3& pos_a,
                                                const Vec3& pos_b) {
  const Vec3 d = pos_b - pos_a;
  const double len = d.norm();
  if (len < kDegenerateSegmentLength) return std::nullopt;
  return SegmentGeometry{len, d / len};
}

std::optional<StretchForces> stretch_forces(const StretchSegment& segment,
                                            const CableState& state) {
  const auto geo = segment_geometry(state.positions[segment.node_a],
                                    state.positions[segment.node_b]);
  if (!geo) return std::nullopt;
  const Vec3 f_b = -segment.stiffness * (geo->length - segment.rest_length) *
                   geo->unit;
  return StretchForces{-f_b, f_b};
}

double bending_angle(const Vec3& seg_prev, const Vec3& seg_next) {
  if (seg_prev.norm() < kDegenerateSegmentLength ||
      seg_next.norm() < kDegenerateSegmentLength)
    throw ParameterError("bending_angle: zero-length segment vector");
  return std::atan2(seg_prev.cross(seg_next).norm(), seg_prev.dot(seg_next));
}

std::optional<BendingForces> bending_forces(const BendingElement& element,
                                            const CableState& state) {
  const Vec3& xp = state.positions[element.node_prev];
  const Vec3& xm = state.positions[element.node_mid];
  const Vec3& xn = state.positions[element.node_next];
  const Vec3 a = xm - xp;
  const Vec3 b = xn - xm;
  const double la2 = a.squaredNorm();
  const double lb2 = b.squaredNorm();
  if (la2 < kDegenerateSegmentLength * kDegenerateSegmentLength ||
      lb2 < kDegenerateSegmentLength * kDegenerateSegmentLength)
    return std::nullopt;

  const Vec3 cross = a.cross(b);
  const double s = cross.norm();
  const double d = a.dot(b);
  // Collinear: beta = 0 is a smooth minimum of 1/2 k_b beta^2, force is
  // zero. (The exactly-folded beta = pi case lands here too; its gradient
  // is singular and the configuration is measure-zero.)
  if (s <= 1e-12 * std::sqrt(la2 * lb2)) return BendingForces{Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};

  const double beta = std::atan2(s, d);
  // grad of beta w.r.t. the segment vectors a and b
  const Vec3 grad_a = ((d / la2) * a - b) / s;
  const Vec3 grad_b = ((d / lb2) * b - a) / s;
  const double coef = element.stiffness * (beta - element.rest_angle);

  BendingForces f;
  f.on_prev = coef * grad_a;
  f.on_mid = -coef * (grad_a - grad_b);
  f.on_next = -coef * grad_b;
  return f;
}

void accumulate(const CableState& state,
                const std::vector<StretchSegment>& segments,
                const std::vector<BendingElement>& elements,
                const CableSpec& spec, const std::vector<Vec3>& extra_external,
                ForceBreakdown& out) {
  const std::size_t n = state.size();
  out.resize(n);

  for (std::size_t si = 0; si < segments.size(); ++si) {
    const auto f = stretch_forces(segments[si], state);
    if (!f) {
      out.resize(n);  // wipe partial sums
      out.valid = false;
      out.failed_segment = static_cast<int>(si);
      return;
    }
    out.stretch[segments[si].node_a] += f->on_a;
    out.stretch[segments[si].node_b] += f->on_b;
  }

  for (const BendingElement& el : elements) {
    const auto f = bending_forces(el, state);
    if (!f) {
      // Degenerate segments were already caught above; keep the guard for
      // states where segments and elements disagree.
      out.resize(n);
      out.valid = false;
      return;
    }
    out.bend[el.node_prev] += f->on_prev;
    out.bend[el.node_mid] += f->on_mid;
    out.bend[el.node_next] += f->on_next;
  }

  for (std::size_t i = 0; i < n; ++i) {
    out.damping[i] = -spec.damping_coefficient * state.velocities[i];
    out.external[i] = state.node_masses[i] * spec.gravity;
    if (!extra_external.empty()) out.external[i] += extra_external[i];
    out.total[i] = out.stretch[i] + out.bend[i] + out.damping[i] + out.external[i];
  }
}

ForceBreakdown accumulate(const CableState& state,
                          const std::vector<StretchSegment>& segments,
                          const std::vector<BendingElement>& elements,
                          const CableSpec& spec,
                          const std::vector<Vec3>& extra_external) {
  ForceBreakdown out;
  accumulate(state, segments, elements, spec, extra_external, out);
  return out;
}

double stretch_energy(const StretchSegment& segment, const CableState& state) {
  const auto geo = segment_geometry(state.positions[segment.node_a],
                                    state.positions[segment.node_b]);
  if (!geo) return 0.0;
  const double delta = geo->length - segment.rest_length;
  return 0.5 * segment.stiffness * delta * delta;
}

double bending_energy(const BendingElement& element, const CableState& state) {
  const Vec3 a =
      state.positions[element.node_mid] - state.positions[element.node_prev];
  const Vec3 b =
      state.positions[element.node_next] - state.positions[element.node_mid];
  const double beta = bending_angle(a, b) - element.rest_angle;
  return 0.5 * element.stiffness * beta * beta;
}

double elastic_energy(const CableState& state,
                      const std::vector<StretchSegment>& segments,
                      const std::vector<BendingElement>& elements) {
  double e = 0.0;
  for (const auto& s : segments) e += stretch_energy(s, state);
  for (const auto& b : elements) e += bending_energy(b, state);
  return e;
}

double kinetic_energy(const CableState& state) {
  double e = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i)
    e += 0.5 * state.node_masses[i] * state.velocities[i].squaredNorm();
  return e;
}

double gravitational_energy(const CableState& state, const Vec3& gravity) {
  double e = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i)
    e -= state.node_masses[i] * gravity.dot(state.positions[i]);
  return e;
}

}  // namespace cablesim
