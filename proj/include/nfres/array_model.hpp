// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

namespace nfres {

// Uniform planar array in the x-z plane, centred at the origin.  Element
// (m, n) sits at (n*d, 0, m*d) with m in [-m_max, m_max] (vertical) and
// n in [-n_max, n_max] (horizontal); m_max = 0 gives a uniform linear array
// along x.
struct ArrayConfig {
  int m_max;
  int n_max;
  double wavelength;  // carrier wavelength, metres
  double spacing;     // element spacing d, metres

  ArrayConfig(int m_max, int n_max, double wavelength, double spacing);

  // Critically sampled aperture, d = wavelength / 2.
  static ArrayConfig half_wavelength(int m_max, int n_max, double wavelength);

  int rows() const { return 2 * m_max + 1; }
  int cols() const { return 2 * n_max + 1; }
  int size() const { return rows() * cols(); }  // t, the element count

  // 8 d^2 (M^2 + N^2) / lambda, the near/far-field boundary.
  double rayleigh_distance() const;
};

// Spherical user coordinate relative to the array centre.  The Cartesian
// mapping is
//   x = r cos(theta) sin(phi),  y = r sin(theta) sin(phi),  z = r cos(phi),
// the unique convention whose first-order terms match the second-order
// (Fresnel) path expansion for elements laid out along x (index n) and
// z (index m).
struct UserLocation {
  double r;      // metres, > 0
  double theta;  // radians, open interval (0, pi)
  double phi;    // radians, open interval (0, pi)

  UserLocation(double r, double theta, double phi);
};

enum class PhaseModel { exact, fresnel };

// Unit-norm array response.  Entries are flattened row-major: m outer
// (-m_max..m_max), n inner (-n_max..n_max).  Every entry has magnitude
// 1/sqrt(t).
struct SteeringVector {
  Eigen::VectorXcd entries;
  PhaseModel phase_model;
};

Eigen::Vector3d element_position(const ArrayConfig& cfg, int m, int n);
Eigen::Vector3d user_cartesian(const UserLocation& user);

// Element-to-user path length, and the path offset dist - r it is built
// from.  The offset never forms dist explicitly, which keeps steering
// phases exact far from the array where dist - r is many digits below r.
double path_offset(const ArrayConfig& cfg, const UserLocation& user, int m,
                   int n, PhaseModel model);
double exact_distance(const ArrayConfig& cfg, const UserLocation& user, int m,
                      int n);
double fresnel_distance(const ArrayConfig& cfg, const UserLocation& user,
                        int m, int n);

SteeringVector steering_vector(const ArrayConfig& cfg, const UserLocation& user,
                               PhaseModel model);

// sqrt(t) * lambda / (4 pi r)
double channel_gain(const ArrayConfig& cfg, const UserLocation& user);

}  // namespace nfres
