#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace cablesim {

using Vec3 = Eigen::Vector3d;

/// Thrown when a physical or numerical parameter violates its constraint.
/// The message names the offending quantity.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Physical and numerical description of one cable instance.
struct CableSpec {
  double length = 0.5;               // total rest length L [m]
  double radius = 0.002;             // cross-section radius r [m]
  double density = 1000.0;           // material density rho [kg/m^3]
  double youngs_modulus = 12.6e6;    // E [Pa]
  int num_masses = 10;               // n lumped masses
  double damping_coefficient = 0.1;  // k_d, per-node viscous damping [N s/m]
  double time_step = 5e-6;           // fixed integration step [s]
  Vec3 gravity{0.0, 0.0, -9.81};     // [m/s^2]

  /// Throws ParameterError naming the first violated constraint.
  void validate() const;
};

/// Snapshot of the discrete cable at one time instant.
struct CableState {
  double time = 0.0;
  std::vector<Vec3> positions;
  std::vector<Vec3> velocities;
  std::vector<double> node_masses;
  std::vector<bool> fixed_mask;
  // False once the integrator produced a non-finite value or hit a
  // degenerate segment; such a state carries the halt time.
  bool valid = true;

  std::size_t size() const { return positions.size(); }
  bool all_finite() const;
};

/// Linear spring between two adjacent masses.
struct StretchSegment {
  int node_a = 0;
  int node_b = 1;          // always node_a + 1
  double rest_length = 0;  // l0 [m]
  double stiffness = 0;    // k_s = E A / l0 [N/m]
};

/// Angular spring over three consecutive masses, straight rest shape.
struct BendingElement {
  int node_prev = 0;
  int node_mid = 1;
  int node_next = 2;
  double stiffness = 0;     // k_b = E I / l0 [N m]
  double rest_angle = 0.0;  // always 0
};

}  // namespace cablesim
