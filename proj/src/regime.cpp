// SPDX-License-Identifier: Apache-2.0
#include "nfres/regime.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace nfres {

namespace {

constexpr double kZeroTol = 1e-12;  // |a|, |b| below this count as zero

double angle_factor(int m_max, int n_max, double theta, double phi) {
  const double sp2 = std::sin(phi) * std::sin(phi);
  const double ct2 = std::cos(theta) * std::cos(theta);
  const double vertical = static_cast<double>(m_max) * (m_max + 1) * sp2;
  const double horizontal =
      static_cast<double>(n_max) * (n_max + 1) * (1.0 - ct2 * sp2);
  return std::max(vertical, horizontal);
}

}  // namespace

std::string_view regime_name(Regime regime) {
  switch (regime) {
    case Regime::near_orthogonal:
      return "near_orthogonal";
    case Regime::intermediate:
      return "intermediate";
    case Regime::near_degenerate:
      return "near_degenerate";
  }
  return "unknown";
}

double angle_domain_bound_from_params(double a, double b, int m_max,
                                      int n_max) {
  const double t =
      static_cast<double>(2 * m_max + 1) * static_cast<double>(2 * n_max + 1);
  const double sa = std::sin(std::numbers::pi * a);
  const double sb = std::sin(std::numbers::pi * b);
  const double vertical =
      2.0 * m_max * (2 * m_max + 1) / (t * t * sb * sb);
  const double horizontal =
      2.0 * n_max * (2 * n_max + 1) / (t * t * sa * sa);
  return (1.0 + 2 * m_max + 2 * n_max) / t + std::max(vertical, horizontal);
}

std::optional<double> angle_domain_bound(const ArrayConfig& cfg,
                                         const UserLocation& u1,
                                         const UserLocation& u2) {
  const PairParams p = pair_params(cfg, u1, u2);
  if (std::abs(p.a) <= kZeroTol || std::abs(p.b) <= kZeroTol)
    return std::nullopt;
  return angle_domain_bound_from_params(p.a, p.b, cfg.m_max, cfg.n_max);
}

double distance_threshold(const ArrayConfig& cfg, double theta, double phi) {
  const double quad_scale = cfg.spacing * cfg.spacing / (2.0 * cfg.wavelength);
  return 8.0 * std::numbers::pi * quad_scale *
         angle_factor(cfg.m_max, cfg.n_max, theta, phi);
}

double beta_threshold_upa(int m_max, int n_max, double theta, double phi) {
  const double m2n2 =
      static_cast<double>(m_max) * m_max + static_cast<double>(n_max) * n_max;
  if (m2n2 <= 0.0)
    throw std::invalid_argument("beta_threshold_upa: needs m_max + n_max > 0");
  return std::numbers::pi / (2.0 * m2n2) *
         angle_factor(m_max, n_max, theta, phi);
}

double beta_threshold_upa_asymptotic(double aspect, double theta, double phi) {
  if (!std::isfinite(aspect))
    throw std::invalid_argument(
        "beta_threshold_upa_asymptotic: aspect must be finite (use the ULA "
        "form for m_max == 0)");
  const double sp2 = std::sin(phi) * std::sin(phi);
  const double ct2 = std::cos(theta) * std::cos(theta);
  const double l2 = aspect * aspect;
  return std::numbers::pi / 2.0 *
         std::max(l2 * sp2, 1.0 - ct2 * sp2) / (l2 + 1.0);
}

double beta_threshold_ula(double theta) {
  const double st = std::sin(theta);
  return std::numbers::pi * st * st / 2.0;
}

RegimeReport classify(const ArrayConfig& cfg, const UserLocation& u1,
                      const UserLocation& u2, RegimeThresholds cuts) {
  const ResolutionResult res = delta_closed_form(cfg, u1, u2);
  const PairParams p = pair_params(cfg, u1, u2);

  RegimeReport rep{res.delta,
                   std::nullopt,
                   distance_threshold(cfg, u1.theta, u1.phi),
                   std::numeric_limits<double>::quiet_NaN(),
                   0.0,
                   Regime::intermediate,
                   res.warnings};

  if (std::abs(p.a) > kZeroTol && std::abs(p.b) > kZeroTol)
    rep.angle_domain_bound =
        angle_domain_bound_from_params(p.a, p.b, cfg.m_max, cfg.n_max);

  // Thresholds are defined for the common-angle case; they are reported
  // from user 1's angles either way, with a note when the angles differ.
  if (std::abs(p.a) > kZeroTol || std::abs(p.b) > kZeroTol)
    rep.notes.emplace_back("thresholds_assume_common_angles");

  const double d_ray = cfg.rayleigh_distance();
  if (d_ray > 0.0) {
    rep.beta = std::min(u1.r, u2.r) / d_ray;
  } else {
    rep.notes.emplace_back("rayleigh_distance_zero");
  }

  const bool ula_like = cfg.m_max == 0 &&
                        std::abs(u1.phi - std::numbers::pi / 2.0) <= 1e-12 &&
                        std::abs(u2.phi - std::numbers::pi / 2.0) <= 1e-12;
  if (ula_like) {
    rep.beta_threshold = beta_threshold_ula(u1.theta);
  } else if (cfg.m_max + cfg.n_max > 0) {
    rep.beta_threshold =
        beta_threshold_upa(cfg.m_max, cfg.n_max, u1.theta, u1.phi);
  }
  if (rep.beta_threshold > 1.0)
    rep.notes.emplace_back("beta_threshold_exceeds_near_field");

  if (res.delta <= cuts.lo) {
    rep.classification = Regime::near_orthogonal;
  } else if (res.delta >= cuts.hi) {
    rep.classification = Regime::near_degenerate;
  }
  return rep;
}

}  // namespace nfres
