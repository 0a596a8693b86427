// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace nfres {

// Phases are carried as turns (whole cycles): sin_turns(x) == sin(2*pi*x).
// The argument is wrapped to [-1/2, 1/2] turns *before* the 2*pi scaling, so
// long phase ramps (thousands of cycles) keep full precision.  The fma
// residual recovers the part of 2*pi*u that the product rounds away.

inline constexpr double kTwoPiHi = 6.283185307179586;       // nearest double to 2*pi
inline constexpr double kTwoPiLo = 2.4492935982947064e-16;  // 2*pi - kTwoPiHi

inline double wrap_turns(double x) { return x - std::round(x); }

inline double sin_turns(double turns) {
  const double u = wrap_turns(turns);
  const double a = kTwoPiHi * u;
  const double e = std::fma(kTwoPiHi, u, -a) + kTwoPiLo * u;
  return std::sin(a) + e * std::cos(a);
}

inline double cos_turns(double turns) {
  const double u = wrap_turns(turns);
  const double a = kTwoPiHi * u;
  const double e = std::fma(kTwoPiHi, u, -a) + kTwoPiLo * u;
  return std::cos(a) - e * std::sin(a);
}

// sin/cos of 2*pi*u*v where u*v may span many turns.  The product is formed
// as a two-term sum so its integer part cancels exactly.
inline double sin_turns_prod(double u, double v) {
  const double hi = u * v;
  const double lo = std::fma(u, v, -hi);
  return sin_turns(wrap_turns(hi) + lo);
}

inline double cos_turns_prod(double u, double v) {
  const double hi = u * v;
  const double lo = std::fma(u, v, -hi);
  return cos_turns(wrap_turns(hi) + lo);
}

// Compensated (Kahan) accumulation.
class KahanSum {
 public:
  void add(double value) {
    const double y = value - carry_;
    const double t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace nfres
