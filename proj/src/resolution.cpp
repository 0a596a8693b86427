// SPDX-License-Identifier: Apache-2.0
#include "nfres/resolution.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "nfres/numeric.hpp"

namespace nfres {

namespace {

// cos(2*pi*(hi + lo)*k) for a double-double turn count; keeps the kernel's
// two evaluation routes consistent near denominator zeros.
double cos_turns_scaled(double hi, double lo, double k) {
  const double a = hi * k;
  const double b = std::fma(hi, k, -a) + lo * k;
  return cos_turns(wrap_turns(a) + b);
}

double kernel_series(const PairParams& p, int m_max, int n_max, bool along_n) {
  // along_n: sum over column shifts s = 1..2N of Phi(z, s, N) cos(2*pi*b*s);
  // otherwise over row shifts r = 1..2M of Phi(c, r, M) cos(2*pi*a*r).
  const int half = along_n ? n_max : m_max;
  const double quad = along_n ? p.z : p.c;
  const double lin = along_n ? p.b : p.a;
  KahanSum acc;
  for (int s = 1; s <= 2 * half; ++s)
    acc.add(phi_kernel(quad, s, half) * cos_turns_prod(lin, s));
  return acc.value();
}

ResolutionResult make_result(double raw, Method method, const ArrayConfig& cfg,
                             const UserLocation& u1, const UserLocation& u2) {
  ResolutionResult res{std::clamp(raw, 0.0, 1.0), raw, method, cfg, u1, u2,
                       {}};
  const double d_ray = cfg.rayleigh_distance();
  if (u1.r > d_ray) res.warnings.emplace_back("r1_beyond_rayleigh");
  if (u2.r > d_ray) res.warnings.emplace_back("r2_beyond_rayleigh");
  return res;
}

bool is_half_pi(double x) {
  return std::abs(x - std::numbers::pi / 2.0) <= 1e-12;
}

}  // namespace

PairParams pair_params(const ArrayConfig& cfg, const UserLocation& u1,
                       const UserLocation& u2) {
  // d/lambda on the linear terms and d^2/(2 lambda) on the quadratic ones;
  // at d = lambda/2 these reduce to the familiar 1/2 and lambda/8 factors.
  const double lin_scale = cfg.spacing / cfg.wavelength;
  const double quad_scale = cfg.spacing * cfg.spacing / (2.0 * cfg.wavelength);

  const double ct1 = std::cos(u1.theta), ct2 = std::cos(u2.theta);
  const double sp1 = std::sin(u1.phi), sp2 = std::sin(u2.phi);
  const double cp1 = std::cos(u1.phi), cp2 = std::cos(u2.phi);

  PairParams p;
  p.a = lin_scale * (cp1 - cp2);
  p.b = lin_scale * (ct1 * sp1 - ct2 * sp2);
  p.c = quad_scale * (sp1 * sp1 / u1.r - sp2 * sp2 / u2.r);
  p.z = quad_scale * ((1.0 - ct1 * ct1 * sp1 * sp1) / u1.r -
                      (1.0 - ct2 * ct2 * sp2 * sp2) / u2.r);
  return p;
}

std::string_view method_name(Method method) {
  switch (method) {
    case Method::oracle_exact:
      return "oracle_exact";
    case Method::oracle_fresnel:
      return "oracle_fresnel";
    case Method::sum_oracle:
      return "sum_oracle";
    case Method::closed_form:
      return "closed_form";
    case Method::closed_form_ula:
      return "ula";
  }
  return "unknown";
}

double phi_kernel(double x, int y, int K) {
  if (K < 1) throw std::out_of_range("phi_kernel: K must be >= 1");
  if (y < 1 || y > 2 * K)
    throw std::out_of_range("phi_kernel: y must be in [1, 2K]");

  const int len = 2 * K - y + 1;
  const double p_hi = x * static_cast<double>(y);
  const double p_lo = std::fma(x, static_cast<double>(y), -p_hi);
  const double den = sin_turns(wrap_turns(p_hi) + p_lo);

  if (std::abs(den) >= kPhiSingularEps) {
    const double q_hi = p_hi * len;
    const double q_lo =
        std::fma(p_hi, static_cast<double>(len), -q_hi) + p_lo * len;
    return sin_turns(wrap_turns(q_hi) + q_lo) / den;
  }

  KahanSum acc;
  for (int j = 0; j < len; ++j)
    acc.add(cos_turns_scaled(p_hi, p_lo, 2 * j - (len - 1)));
  return acc.value();
}

double closed_form_delta(const PairParams& p, int m_max, int n_max) {
  const double t =
      static_cast<double>(2 * m_max + 1) * static_cast<double>(2 * n_max + 1);
  // Empty shift ranges contribute nothing (linear-array degenerations).
  const double along_n =
      n_max >= 1 ? 2.0 * (2 * m_max + 1) * kernel_series(p, m_max, n_max, true)
                 : 0.0;
  const double along_m =
      m_max >= 1 ? 2.0 * (2 * n_max + 1) * kernel_series(p, m_max, n_max, false)
                 : 0.0;
  return (t + along_n + along_m + along_n * along_m / t) / (t * t);
}

double delta_sum_oracle(const PairParams& p, int m_max, int n_max) {
  KahanSum re, im;
  for (int m = -m_max; m <= m_max; ++m) {
    const double fm =
        std::fma(p.c, static_cast<double>(m) * m, -p.a * m);
    for (int n = -n_max; n <= n_max; ++n) {
      const double f =
          fm + std::fma(p.z, static_cast<double>(n) * n, -p.b * n);
      re.add(cos_turns(f));
      im.add(sin_turns(f));
    }
  }
  const double t =
      static_cast<double>(2 * m_max + 1) * static_cast<double>(2 * n_max + 1);
  const double x = re.value() / t;
  const double y = im.value() / t;
  return x * x + y * y;
}

ResolutionResult delta_closed_form(const ArrayConfig& cfg,
                                   const UserLocation& u1,
                                   const UserLocation& u2) {
  const double raw =
      closed_form_delta(pair_params(cfg, u1, u2), cfg.m_max, cfg.n_max);
  return make_result(raw, Method::closed_form, cfg, u1, u2);
}

ResolutionResult delta_ula(const ArrayConfig& cfg, const UserLocation& u1,
                           const UserLocation& u2) {
  if (cfg.m_max != 0)
    throw std::invalid_argument("delta_ula: requires m_max == 0");
  if (!is_half_pi(u1.phi) || !is_half_pi(u2.phi))
    throw std::invalid_argument("delta_ula: requires phi1 == phi2 == pi/2");

  const PairParams p = pair_params(cfg, u1, u2);
  const double q = 2 * cfg.n_max + 1;
  const double series =
      cfg.n_max >= 1 ? kernel_series(p, 0, cfg.n_max, true) : 0.0;
  const double raw = 1.0 / q + 2.0 / (q * q) * series;
  return make_result(raw, Method::closed_form_ula, cfg, u1, u2);
}

ResolutionResult delta_oracle(const ArrayConfig& cfg, const UserLocation& u1,
                              const UserLocation& u2, PhaseModel model) {
  const SteeringVector b1 = steering_vector(cfg, u1, model);
  const SteeringVector b2 = steering_vector(cfg, u2, model);
  const std::complex<double> ip = b1.entries.dot(b2.entries);
  const Method method = model == PhaseModel::fresnel ? Method::oracle_fresnel
                                                     : Method::oracle_exact;
  return make_result(std::norm(ip), method, cfg, u1, u2);
}

}  // namespace nfres
