#include "cablesim/cable_model.hpp"

#include <cmath>

namespace cablesim {

void CableSpec::validate() const {
  if (!(length > 0)) throw ParameterError("length must be > 0");
  if (!(radius > 0)) throw ParameterError("radius must be > 0");
  if (!(density > 0)) throw ParameterError("density must be > 0");
  if (!(youngs_modulus > 0)) throw ParameterError("youngs_modulus must be > 0");
  if (num_masses < 2) throw ParameterError("num_masses must be >= 2");
  if (!(time_step > 0)) throw ParameterError("time_step must be > 0");
  if (!(damping_coefficient >= 0))
    throw ParameterError("damping_coefficient must be >= 0");
  if (!gravity.allFinite()) throw ParameterError("gravity must be finite");
}

bool CableState::all_finite() const {
  for (const Vec3& p : positions)
    if (!p.allFinite()) return false;
  for (const Vec3& v : velocities)
    if (!v.allFinite()) return false;
  return true;
}

CrossSection cross_section_properties(double radius) {
  if (!(radius > 0)) throw ParameterError("radius must be > 0");
  const double r2 = radius * radius;
  return {M_PI * r2, M_PI * r2 * r2 / 4.0};
}

double linear_stiffness(double youngs_modulus, double area,
                        double rest_length) {
  if (!(youngs_modulus > 0)) throw ParameterError("youngs_modulus must be > 0");
  if (!(area > 0)) throw ParameterError("area must be > 0");
  if (!(rest_length > 0)) throw ParameterError("rest_length must be > 0");
  return youngs_modulus * area / rest_length;
}

double bending_stiffness(double youngs_modulus, double second_moment,
                         double rest_length) {
  if (!(youngs_modulus > 0)) throw ParameterError("youngs_modulus must be > 0");
  if (!(second_moment > 0)) throw ParameterError("second_moment must be > 0");
  if (!(rest_length > 0)) throw ParameterError("rest_length must be > 0");
  return youngs_modulus * second_moment / rest_length;
}

DiscretizedCable discretize(const CableSpec& spec, const Vec3& anchor,
                            const Vec3& direction) {
  spec.validate();
  if (std::abs(direction.norm() - 1.0) > 1e-9)
    throw ParameterError("direction must have unit norm");

  const int n = spec.num_masses;
  const double spacing = spec.length / static_cast<double>(n - 1);
  const CrossSection cs = cross_section_properties(spec.radius);
  const double node_mass =
      spec.density * cs.area * spec.length / static_cast<double>(n);
  const double ks = linear_stiffness(spec.youngs_modulus, cs.area, spacing);

  DiscretizedCable cable;
  cable.state.time = 0.0;
  cable.state.positions.resize(n);
  cable.state.velocities.assign(n, Vec3::Zero());
  cable.state.node_masses.assign(n, node_mass);
  cable.state.fixed_mask.assign(n, false);
  for (int i = 0; i < n; ++i)
    cable.state.positions[i] = anchor + (spacing * i) * direction;

  cable.segments.reserve(n - 1);
  for (int i = 0; i + 1 < n; ++i)
    cable.segments.push_back({i, i + 1, spacing, ks});

  if (n >= 3) {
    const double kb =
        bending_stiffness(spec.youngs_modulus, cs.second_moment, spacing);
    cable.bending_elements.reserve(n - 2);
    for (int i = 0; i + 2 < n; ++i)
      cable.bending_elements.push_back({i, i + 1, i + 2, kb, 0.0});
  }
  return cable;
}

}  // namespace cablesim
