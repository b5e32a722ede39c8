#pragma once

#include "cablesim/types.hpp"

#include <optional>

namespace cablesim {

// Segments shorter than this are numerically destroyed, not regularized.
inline constexpr double kDegenerateSegmentLength = 1e-12;  // [m]

/// Per-node force vectors split by source. `total` is always the
/// componentwise sum stretch + bend + damping + external in that order.
struct ForceBreakdown {
  std::vector<Vec3> stretch;
  std::vector<Vec3> bend;
  std::vector<Vec3> damping;
  std::vector<Vec3> external;
  std::vector<Vec3> total;
  bool valid = true;
  int failed_segment = -1;  // segment index that degenerated, -1 if none

  void resize(std::size_t n);
};

struct SegmentGeometry {
  double length;
  Vec3 unit;  // from a towards b
};

/// Current length and direction of the segment a->b, or nullopt when the
/// points are closer than kDegenerateSegmentLength.
std::optional<SegmentGeometry> segment_geometry(const Vec3& pos_a,
                                                const Vec3& pos_b);

struct StretchForces {
  Vec3 on_a;
  Vec3 on_b;
};

/// F = -k_s (l - l0) u on node_b, opposite on node_a; a stretched segment
/// pulls its endpoints together. Nullopt on a degenerate segment.
std::optional<StretchForces> stretch_forces(const StretchSegment& segment,
                                            const CableState& state);

/// Angle between consecutive segment vectors, atan2(|prev x next|,
/// prev . next), in [0, pi]. Throws ParameterError on a zero-length input.
double bending_angle(const Vec3& seg_prev, const Vec3& seg_next);

struct BendingForces {
  Vec3 on_prev;
  Vec3 on_mid;
  Vec3 on_next;
};

/// Negative gradient of E = 1/2 k_b beta^2 with respect to the three node
/// positions. Exactly straight (or exactly folded) configurations return
/// zero forces. Nullopt when either segment is degenerate.
std::optional<BendingForces> bending_forces(const BendingElement& element,
                                            const CableState& state);

/// Accumulates all force sources for every node, fixed ones included
/// (their totals are the boundary reaction data). Summation order is
/// fixed, so results are bit-reproducible. A degenerate segment marks the
/// breakdown invalid with the offending index and leaves the arrays zero.
void accumulate(const CableState& state,
                const std::vector<StretchSegment>& segments,
                const std::vector<BendingElement>& elements,
                const CableSpec& spec, const std::vector<Vec3>& extra_external,
                ForceBreakdown& out);

ForceBreakdown accumulate(const CableState& state,
                          const std::vector<StretchSegment>& segments,
                          const std::vector<BendingElement>& elements,
                          const CableSpec& spec,
                          const std::vector<Vec3>& extra_external = {});

// Energies, exposed for testing and for the integrator's energy audit.
double stretch_energy(const StretchSegment& segment, const CableState& state);
double bending_energy(const BendingElement& element, const CableState& state);
double elastic_energy(const CableState& state,
                      const std::vector<StretchSegment>& segments,
                      const std::vector<BendingElement>& elements);
double kinetic_energy(const CableState& state);
double gravitational_energy(const CableState& state, const Vec3& gravity);

}  // namespace cablesim
