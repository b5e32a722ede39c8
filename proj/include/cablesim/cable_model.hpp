#pragma once

#include "cablesim/types.hpp"

namespace cablesim {

/// Area and second moment of area of a solid circular cross-section.
struct CrossSection {
  double area;           // A = pi r^2 [m^2]
  double second_moment;  // I = pi r^4 / 4 [m^4]
};

CrossSection cross_section_properties(double radius);

/// k_s = E A / l0 [N/m]
double linear_stiffness(double youngs_modulus, double area, double rest_length);

/// k_b = E I / l0 [N m]
double bending_stiffness(double youngs_modulus, double second_moment,
                         double rest_length);

/// A cable discretized into n masses, n-1 stretch segments and n-2
/// bending elements.
struct DiscretizedCable {
  CableState state;
  std::vector<StretchSegment> segments;
  std::vector<BendingElement> bending_elements;
};

/// Places n masses collinearly from `anchor` along unit vector `direction`
/// with uniform spacing L/(n-1). Node masses are the uniform lumping
/// rho*A*L/n; velocities start at zero and no node is fixed.
DiscretizedCable discretize(const CableSpec& spec, const Vec3& anchor,
                            const Vec3& direction);

}  // namespace cablesim
