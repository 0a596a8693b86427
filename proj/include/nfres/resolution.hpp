// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nfres/array_model.hpp"

namespace nfres {

// The four scalars that fully parameterise the Fresnel phase difference of
// a user pair: in turns, f(m, n) = -a*m - b*n + c*m^2 + z*n^2.  a and b are
// the linear (angle) coefficients, c and z the quadratic (curvature)
// coefficients.  All four vanish iff the two Fresnel phase profiles are
// identical.
struct PairParams {
  double a;
  double b;
  double c;
  double z;
};

PairParams pair_params(const ArrayConfig& cfg, const UserLocation& u1,
                       const UserLocation& u2);

enum class Method {
  oracle_exact,
  oracle_fresnel,
  sum_oracle,
  closed_form,
  closed_form_ula,
};

// Short tag used in CLI output and CSV headers.
std::string_view method_name(Method method);

struct ResolutionResult {
  double delta;      // reported value, clamped to [0, 1]
  double raw_delta;  // as computed; kept for equivalence checks
  Method method;
  ArrayConfig config;
  UserLocation user1;
  UserLocation user2;
  std::vector<std::string> warnings;  // e.g. "r1_beyond_rayleigh"
};

// Dirichlet-type kernel sin(2*pi*x*y*L) / sin(2*pi*x*y) with L = 2K - y + 1.
// Wherever |sin(2*pi*x*y)| < kPhiSingularEps the equivalent finite cosine
// sum  sum_{j=0}^{L-1} cos(2*pi*x*y*(2j - (L-1)))  is evaluated instead; it
// equals the ratio where both exist and its limit at the singular points,
// so callers never special-case.  Requires K >= 1 and 1 <= y <= 2K.
inline constexpr double kPhiSingularEps = 1e-6;
double phi_kernel(double x, int y, int K);

// Resolution of the pair from its phase scalars, in O(m_max + n_max) kernel
// evaluations.  Unclamped.
double closed_form_delta(const PairParams& p, int m_max, int n_max);

// Direct O(m_max * n_max) phase double-sum from the same scalars; the
// mid-level oracle between the steering vectors and the closed form.
// Unclamped.
double delta_sum_oracle(const PairParams& p, int m_max, int n_max);

ResolutionResult delta_closed_form(const ArrayConfig& cfg,
                                   const UserLocation& u1,
                                   const UserLocation& u2);

// Linear-array specialisation; requires m_max == 0 and phi1 == phi2 == pi/2
// (within 1e-12), otherwise throws std::invalid_argument.
ResolutionResult delta_ula(const ArrayConfig& cfg, const UserLocation& u1,
                           const UserLocation& u2);

// |b1^H b2|^2 on explicitly built steering vectors; O(t).
ResolutionResult delta_oracle(const ArrayConfig& cfg, const UserLocation& u1,
                              const UserLocation& u2, PhaseModel model);

}  // namespace nfres
