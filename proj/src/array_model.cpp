// SPDX-License-Identifier: Apache-2.0
#include "nfres/array_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nfres/numeric.hpp"

namespace nfres {

namespace {

void check_indices(const ArrayConfig& cfg, int m, int n) {
  if (m < -cfg.m_max || m > cfg.m_max || n < -cfg.n_max || n > cfg.n_max) {
    throw std::out_of_range("element index (" + std::to_string(m) + ", " +
                            std::to_string(n) + ") outside [-" +
                            std::to_string(cfg.m_max) + ", " +
                            std::to_string(cfg.m_max) + "] x [-" +
                            std::to_string(cfg.n_max) + ", " +
                            std::to_string(cfg.n_max) + "]");
  }
}

// Per-user constants of the second-order path expansion:
//   offset(m, n) = lin_n*n + quad_n*n^2 + lin_m*m + quad_m*m^2
struct FresnelTerms {
  double lin_n, quad_n, lin_m, quad_m;

  FresnelTerms(const ArrayConfig& cfg, const UserLocation& u) {
    const double ct = std::cos(u.theta);
    const double sp = std::sin(u.phi);
    const double cp = std::cos(u.phi);
    const double d = cfg.spacing;
    lin_n = -d * ct * sp;
    quad_n = d * d * (1.0 - ct * ct * sp * sp) / (2.0 * u.r);
    lin_m = -d * cp;
    quad_m = d * d * sp * sp / (2.0 * u.r);
  }

  double offset(int m, int n) const {
    return (lin_n + quad_n * n) * n + (lin_m + quad_m * m) * m;
  }
};

// dist - r evaluated as (|s|^2 - 2 v.s) / (dist + r); cancellation-free.
struct ExactTerms {
  Eigen::Vector3d user;
  double r, d;

  ExactTerms(const ArrayConfig& cfg, const UserLocation& u)
      : user(user_cartesian(u)), r(u.r), d(cfg.spacing) {}

  double offset(int m, int n) const {
    const double sx = n * d;
    const double sz = m * d;
    const double w = sx * (sx - 2.0 * user.x()) + sz * (sz - 2.0 * user.z());
    return w / (std::sqrt(r * r + w) + r);
  }
};

}  // namespace

ArrayConfig::ArrayConfig(int m_max, int n_max, double wavelength,
                         double spacing)
    : m_max(m_max), n_max(n_max), wavelength(wavelength), spacing(spacing) {
  if (m_max < 0 || n_max < 0)
    throw std::invalid_argument("ArrayConfig: half-extents must be >= 0");
  if (!(wavelength > 0.0))
    throw std::invalid_argument("ArrayConfig: wavelength must be > 0");
  if (!(spacing > 0.0))
    throw std::invalid_argument("ArrayConfig: spacing must be > 0");
}

ArrayConfig ArrayConfig::half_wavelength(int m_max, int n_max,
                                         double wavelength) {
  return ArrayConfig(m_max, n_max, wavelength, wavelength / 2.0);
}

double ArrayConfig::rayleigh_distance() const {
  const double m2n2 =
      static_cast<double>(m_max) * m_max + static_cast<double>(n_max) * n_max;
  return 8.0 * spacing * spacing * m2n2 / wavelength;
}

UserLocation::UserLocation(double r, double theta, double phi)
    : r(r), theta(theta), phi(phi) {
  if (!(r > 0.0)) throw std::invalid_argument("UserLocation: r must be > 0");
  if (!(theta > 0.0 && theta < std::numbers::pi))
    throw std::invalid_argument("UserLocation: theta must be in (0, pi)");
  if (!(phi > 0.0 && phi < std::numbers::pi))
    throw std::invalid_argument("UserLocation: phi must be in (0, pi)");
}

Eigen::Vector3d element_position(const ArrayConfig& cfg, int m, int n) {
  check_indices(cfg, m, n);
  return {n * cfg.spacing, 0.0, m * cfg.spacing};
}

Eigen::Vector3d user_cartesian(const UserLocation& u) {
  const double sp = std::sin(u.phi);
  return {u.r * std::cos(u.theta) * sp, u.r * std::sin(u.theta) * sp,
          u.r * std::cos(u.phi)};
}

double path_offset(const ArrayConfig& cfg, const UserLocation& user, int m,
                   int n, PhaseModel model) {
  check_indices(cfg, m, n);
  if (model == PhaseModel::fresnel) return FresnelTerms(cfg, user).offset(m, n);
  return ExactTerms(cfg, user).offset(m, n);
}

double exact_distance(const ArrayConfig& cfg, const UserLocation& user, int m,
                      int n) {
  return user.r + path_offset(cfg, user, m, n, PhaseModel::exact);
}

double fresnel_distance(const ArrayConfig& cfg, const UserLocation& user,
                        int m, int n) {
  return user.r + path_offset(cfg, user, m, n, PhaseModel::fresnel);
}

SteeringVector steering_vector(const ArrayConfig& cfg,
                               const UserLocation& user, PhaseModel model) {
  const int t = cfg.size();
  const double scale = 1.0 / std::sqrt(static_cast<double>(t));
  const double inv_lambda = 1.0 / cfg.wavelength;

  const FresnelTerms fresnel(cfg, user);
  const ExactTerms exact(cfg, user);

  Eigen::VectorXcd entries(t);
  Eigen::Index idx = 0;
  for (int m = -cfg.m_max; m <= cfg.m_max; ++m) {
    for (int n = -cfg.n_max; n <= cfg.n_max; ++n, ++idx) {
      const double off = model == PhaseModel::fresnel ? fresnel.offset(m, n)
                                                      : exact.offset(m, n);
      const double turns = off * inv_lambda;
      entries(idx) = {scale * cos_turns(turns), -scale * sin_turns(turns)};
    }
  }
  return {std::move(entries), model};
}

double channel_gain(const ArrayConfig& cfg, const UserLocation& user) {
  return std::sqrt(static_cast<double>(cfg.size())) * cfg.wavelength /
         (4.0 * std::numbers::pi * user.r);
}

}  // namespace nfres
