// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nfres/resolution.hpp"

namespace nfres {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The swept quantity.  beta binds r1 = value * rayleigh_distance; r1 binds
// the first user's radius; N and M bind the array half-extents.
enum class SweepAxis { beta, r1, N, M };
std::string_view axis_name(SweepAxis axis);

struct SweepSpec {
  SweepAxis axis = SweepAxis::r1;
  std::vector<double> axis_values;  // non-empty, strictly increasing
  ArrayConfig config = ArrayConfig::half_wavelength(0, 128, 0.01);
  UserLocation user1{1.0, 1.5707963267948966, 1.5707963267948966};
  UserLocation user2{40.0, 1.5707963267948966, 1.5707963267948966};
  // When set and the axis is r1 or beta, user 2 tracks user 1:
  // r2 = r1 + r2_offset.
  std::optional<double> r2_offset;
  std::vector<Method> methods;  // closed_form, oracle_fresnel, oracle_exact, ula
  std::string output_path = "sweep.csv";
  std::string title = "sweep";
};

struct SweepRow {
  double axis_value;
  std::vector<double> deltas;  // one per method, in spec order
  std::vector<std::string> warnings;
};

// Named sweep families; "fig1".."fig4".  A family holds one spec per curve
// (fig1: three vertical extents; fig3: two fixed r2 values; fig4: two
// constant r2 - r1 offsets).  theta/phi override the default broadside
// angles.
std::vector<SweepSpec> preset(std::string_view name,
                              double theta = 1.5707963267948966,
                              double phi = 1.5707963267948966);

// Full up-front validation: grid shape, per-point constructibility and every
// method's preconditions at every grid point.  Throws std::invalid_argument
// naming the first offending point; run_sweep computes nothing on failure.
void validate(const SweepSpec& spec);

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads = 1);

// CSV bytes: header "axis,<method...>,warnings", LF endings, shortest
// round-trip decimals.  Identical rows produce identical bytes.
std::string csv_text(const std::vector<SweepRow>& rows, const SweepSpec& spec);
void emit_csv(const std::vector<SweepRow>& rows, const SweepSpec& spec);

// Self-contained gnuplot script rendering delta against the axis, one series
// per method column, referencing the CSV by relative path.
void emit_plot_script(const SweepSpec& spec, const std::string& csv_path,
                      const std::string& script_path);

// Line-oriented key=value sweep description; see README for the grammar.
SweepSpec parse_spec_file(const std::string& path);

}  // namespace nfres
