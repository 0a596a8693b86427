// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "nfres/resolution.hpp"

namespace nfres {

enum class Regime { near_orthogonal, intermediate, near_degenerate };
std::string_view regime_name(Regime regime);

// Classification cutoffs: delta <= lo is near_orthogonal (users separable by
// beamforming), delta >= hi is near_degenerate (users share a beam).
struct RegimeThresholds {
  double lo = 0.1;
  double hi = 0.9;
};

struct RegimeReport {
  double delta;
  // Angle-domain upper bound on delta; present only when both linear phase
  // scalars are non-zero (the users differ in both angle coordinates).
  std::optional<double> angle_domain_bound;
  // Common-angle distance threshold: with equal angles and
  // min(r1, r2) >= this, delta stays near 1.
  double distance_threshold_m;
  double beta;  // min(r1, r2) / rayleigh_distance; NaN for a single element
  double beta_threshold;  // normalised form of the distance threshold
  Regime classification;
  std::vector<std::string> notes;
};

// (1 + 2M + 2N)/t + max{2M(2M+1) / (t^2 sin^2(pi b)),
//                        2N(2N+1) / (t^2 sin^2(pi a))}.
// Decays to 0 as the aperture grows, so angle-separated users are always
// resolvable in the large-array limit.  Requires a != 0 and b != 0.
double angle_domain_bound_from_params(double a, double b, int m_max,
                                      int n_max);

// Applicability-checked variant: nullopt when either scalar is within 1e-12
// of zero.
std::optional<double> angle_domain_bound(const ArrayConfig& cfg,
                                         const UserLocation& u1,
                                         const UserLocation& u2);

// Equal-angle degenerate-regime radius: 8*pi*(d^2/(2*lambda)) *
// max{M(M+1) sin^2(phi), N(N+1)(1 - cos^2(theta) sin^2(phi))}.
double distance_threshold(const ArrayConfig& cfg, double theta, double phi);

// distance_threshold normalised by the Rayleigh distance (an exact algebraic
// identity: beta_threshold_upa * rayleigh_distance == distance_threshold).
double beta_threshold_upa(int m_max, int n_max, double theta, double phi);

// Large-aperture limit at fixed aspect ratio l = N/M.
double beta_threshold_upa_asymptotic(double aspect, double theta, double phi);

// Linear-array limit: pi * sin^2(theta) / 2.  Exceeds 1 near broadside,
// i.e. the degenerate condition is unreachable inside the near field there.
double beta_threshold_ula(double theta);

RegimeReport classify(const ArrayConfig& cfg, const UserLocation& u1,
                      const UserLocation& u2, RegimeThresholds cuts = {});

}  // namespace nfres
