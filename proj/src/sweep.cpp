// SPDX-License-Identifier: Apache-2.0
#include "nfres/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

namespace nfres {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

std::string fmt_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

struct GridPoint {
  ArrayConfig config;
  UserLocation user1;
  UserLocation user2;
};

GridPoint bind_point(const SweepSpec& spec, double value) {
  ArrayConfig cfg = spec.config;
  UserLocation u1 = spec.user1;
  UserLocation u2 = spec.user2;
  switch (spec.axis) {
    case SweepAxis::beta: {
      const double r1 = value * cfg.rayleigh_distance();
      u1 = UserLocation(r1, u1.theta, u1.phi);
      if (spec.r2_offset)
        u2 = UserLocation(r1 + *spec.r2_offset, u2.theta, u2.phi);
      break;
    }
    case SweepAxis::r1: {
      u1 = UserLocation(value, u1.theta, u1.phi);
      if (spec.r2_offset)
        u2 = UserLocation(value + *spec.r2_offset, u2.theta, u2.phi);
      break;
    }
    case SweepAxis::N:
      cfg = ArrayConfig(cfg.m_max, static_cast<int>(value), cfg.wavelength,
                        cfg.spacing);
      break;
    case SweepAxis::M:
      cfg = ArrayConfig(static_cast<int>(value), cfg.n_max, cfg.wavelength,
                        cfg.spacing);
      break;
  }
  return {cfg, u1, u2};
}

ResolutionResult evaluate(Method method, const GridPoint& gp) {
  switch (method) {
    case Method::closed_form:
      return delta_closed_form(gp.config, gp.user1, gp.user2);
    case Method::oracle_fresnel:
      return delta_oracle(gp.config, gp.user1, gp.user2, PhaseModel::fresnel);
    case Method::oracle_exact:
      return delta_oracle(gp.config, gp.user1, gp.user2, PhaseModel::exact);
    case Method::closed_form_ula:
      return delta_ula(gp.config, gp.user1, gp.user2);
    case Method::sum_oracle:
      break;
  }
  throw std::invalid_argument("sweep: unsupported method");
}

SweepRow compute_row(const SweepSpec& spec, double value) {
  const GridPoint gp = bind_point(spec, value);
  SweepRow row{value, {}, {}};
  row.deltas.reserve(spec.methods.size());
  for (const Method method : spec.methods) {
    ResolutionResult res = evaluate(method, gp);
    row.deltas.push_back(res.delta);
    for (std::string& w : res.warnings)
      if (std::find(row.warnings.begin(), row.warnings.end(), w) ==
          row.warnings.end())
        row.warnings.push_back(std::move(w));
  }
  return row;
}

std::vector<double> beta_grid() {
  // 50 uniform points in (0.01, 1].
  std::vector<double> values;
  values.reserve(50);
  for (int k = 1; k <= 50; ++k) values.push_back(0.01 + k * (0.99 / 50.0));
  return values;
}

std::vector<double> uniform_grid(double step, int count) {
  std::vector<double> values;
  values.reserve(count);
  for (int k = 1; k <= count; ++k) values.push_back(step * k);
  return values;
}

std::vector<Method> ula_methods(double phi) {
  std::vector<Method> methods{Method::closed_form, Method::oracle_fresnel};
  if (std::abs(phi - kHalfPi) <= 1e-12)
    methods.push_back(Method::closed_form_ula);
  return methods;
}

// ---- spec-file parsing -----------------------------------------------------

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("spec file: bad number for '" + key +
                                "': " + s);
  }
}

int parse_int(const std::string& key, const std::string& s) {
  const double v = parse_double(key, s);
  if (v != std::floor(v))
    throw std::invalid_argument("spec file: '" + key + "' must be an integer");
  return static_cast<int>(v);
}

Method parse_method(const std::string& name) {
  if (name == "closed_form") return Method::closed_form;
  if (name == "oracle_fresnel") return Method::oracle_fresnel;
  if (name == "oracle_exact") return Method::oracle_exact;
  if (name == "ula") return Method::closed_form_ula;
  if (name == "sum_oracle") return Method::sum_oracle;
  throw std::invalid_argument("unknown method: " + name);
}

SweepAxis parse_axis(const std::string& name) {
  if (name == "beta") return SweepAxis::beta;
  if (name == "r1") return SweepAxis::r1;
  if (name == "N") return SweepAxis::N;
  if (name == "M") return SweepAxis::M;
  throw std::invalid_argument("unknown axis: " + name);
}

}  // namespace

std::string_view axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::beta:
      return "beta";
    case SweepAxis::r1:
      return "r1";
    case SweepAxis::N:
      return "N";
    case SweepAxis::M:
      return "M";
  }
  return "unknown";
}

std::vector<SweepSpec> preset(std::string_view name, double theta,
                              double phi) {
  const double lambda = 0.01;
  std::vector<SweepSpec> specs;

  if (name == "fig1") {
    // Planar array, delta against beta, one curve per vertical extent.
    for (const int m_max : {16, 64, 128}) {
      SweepSpec spec;
      spec.axis = SweepAxis::beta;
      spec.axis_values = beta_grid();
      spec.config = ArrayConfig::half_wavelength(m_max, 128, lambda);
      const double d_ray = spec.config.rayleigh_distance();
      spec.user1 = UserLocation(d_ray, theta, phi);
      spec.user2 = UserLocation(d_ray, theta, phi);
      spec.methods = {Method::closed_form, Method::oracle_fresnel};
      spec.title = "fig1_M" + std::to_string(m_max);
      spec.output_path = spec.title + ".csv";
      specs.push_back(std::move(spec));
    }
    return specs;
  }

  if (name == "fig2") {
    // Linear array, delta against beta, second user pinned at the Rayleigh
    // distance.
    SweepSpec spec;
    spec.axis = SweepAxis::beta;
    spec.axis_values = beta_grid();
    spec.config = ArrayConfig::half_wavelength(0, 128, lambda);
    const double d_ray = spec.config.rayleigh_distance();
    spec.user1 = UserLocation(d_ray, theta, phi);
    spec.user2 = UserLocation(d_ray, theta, phi);
    spec.methods = ula_methods(phi);
    spec.title = "fig2";
    spec.output_path = "fig2.csv";
    specs.push_back(std::move(spec));
    return specs;
  }

  if (name == "fig3") {
    // Linear array, delta against r1 with r2 fixed; one curve per r2.
    for (const double r2 : {40.0, 20.0}) {
      SweepSpec spec;
      spec.axis = SweepAxis::r1;
      spec.axis_values = uniform_grid(0.4, 200);  // 0.4 .. 80 m
      spec.config = ArrayConfig::half_wavelength(0, 128, lambda);
      spec.user1 = UserLocation(1.0, theta, phi);
      spec.user2 = UserLocation(r2, theta, phi);
      spec.methods = ula_methods(phi);
      spec.title = "fig3_r2_" + std::to_string(static_cast<int>(r2)) + "m";
      spec.output_path = spec.title + ".csv";
      specs.push_back(std::move(spec));
    }
    return specs;
  }

  if (name == "fig4") {
    // Linear array, delta against r1 with r2 - r1 held constant.
    for (const double offset : {20.0, 40.0}) {
      SweepSpec spec;
      spec.axis = SweepAxis::r1;
      spec.axis_values = uniform_grid(1.0, 200);  // 1 .. 200 m
      spec.config = ArrayConfig::half_wavelength(0, 128, lambda);
      spec.user1 = UserLocation(1.0, theta, phi);
      spec.user2 = UserLocation(1.0 + offset, theta, phi);
      spec.r2_offset = offset;
      spec.methods = ula_methods(phi);
      spec.title = "fig4_off_" + std::to_string(static_cast<int>(offset)) + "m";
      spec.output_path = spec.title + ".csv";
      specs.push_back(std::move(spec));
    }
    return specs;
  }

  throw std::invalid_argument("unknown preset: " + std::string(name));
}

void validate(const SweepSpec& spec) {
  if (spec.axis_values.empty())
    throw std::invalid_argument("sweep: axis_values must be non-empty");
  for (std::size_t i = 1; i < spec.axis_values.size(); ++i)
    if (!(spec.axis_values[i] > spec.axis_values[i - 1]))
      throw std::invalid_argument(
          "sweep: axis_values must be strictly increasing (index " +
          std::to_string(i) + ")");
  if (spec.methods.empty())
    throw std::invalid_argument("sweep: methods must be non-empty");
  for (const Method m : spec.methods)
    if (m == Method::sum_oracle)
      throw std::invalid_argument("sweep: sum_oracle is not a sweep method");

  if (spec.axis == SweepAxis::N || spec.axis == SweepAxis::M) {
    for (const double v : spec.axis_values)
      if (v < 0.0 || v != std::floor(v))
        throw std::invalid_argument(
            "sweep: axis " + std::string(axis_name(spec.axis)) +
            " requires non-negative integer values, got " + fmt_double(v));
  }

  for (const double v : spec.axis_values) {
    GridPoint gp = [&] {
      try {
        return bind_point(spec, v);
      } catch (const std::exception& e) {
        throw std::invalid_argument("sweep: grid point " + fmt_double(v) +
                                    " is invalid: " + e.what());
      }
    }();
    for (const Method m : spec.methods) {
      if (m != Method::closed_form_ula) continue;
      if (gp.config.m_max != 0 ||
          std::abs(gp.user1.phi - kHalfPi) > 1e-12 ||
          std::abs(gp.user2.phi - kHalfPi) > 1e-12)
        throw std::invalid_argument(
            "sweep: ula method preconditions fail at grid point " +
            fmt_double(v));
    }
  }
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, unsigned threads) {
  validate(spec);
  const std::size_t n = spec.axis_values.size();
  std::vector<SweepRow> rows(n);

  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i)
      rows[i] = compute_row(spec, spec.axis_values[i]);
    return rows;
  }

  // Rows are independent and pure; aggregation preserves axis order, so the
  // output is identical at every thread count.
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
      rows[i] = compute_row(spec, spec.axis_values[i]);
  };
  std::vector<std::thread> pool;
  const unsigned count = std::min<unsigned>(threads, n);
  pool.reserve(count);
  for (unsigned i = 0; i < count; ++i) pool.emplace_back(worker);
  for (std::thread& th : pool) th.join();
  return rows;
}

std::string csv_text(const std::vector<SweepRow>& rows,
                     const SweepSpec& spec) {
  if (rows.empty()) throw std::invalid_argument("emit_csv: no rows");
  std::string out = "axis";
  for (const Method m : spec.methods) {
    out += ',';
    out += method_name(m);
  }
  out += ",warnings\n";
  for (const SweepRow& row : rows) {
    out += fmt_double(row.axis_value);
    for (const double d : row.deltas) {
      out += ',';
      out += fmt_double(d);
    }
    out += ',';
    for (std::size_t i = 0; i < row.warnings.size(); ++i) {
      if (i) out += ';';
      out += row.warnings[i];
    }
    out += '\n';
  }
  return out;
}

void emit_csv(const std::vector<SweepRow>& rows, const SweepSpec& spec) {
  const std::string text = csv_text(rows, spec);
  std::ofstream file(spec.output_path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open for writing: " + spec.output_path);
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  file.flush();
  if (!file) throw IoError("write failed: " + spec.output_path);
}

void emit_plot_script(const SweepSpec& spec, const std::string& csv_path,
                      const std::string& script_path) {
  namespace fs = std::filesystem;
  std::string csv_ref;
  try {
    const fs::path script_dir = fs::path(script_path).parent_path();
    csv_ref = fs::proximate(csv_path, script_dir.empty() ? "." : script_dir)
                  .generic_string();
  } catch (const fs::filesystem_error&) {
    csv_ref = csv_path;
  }

  std::string xlabel{axis_name(spec.axis)};
  if (spec.axis == SweepAxis::r1) xlabel += " [m]";

  std::string out;
  out += "# " + spec.title + "\n";
  out += "set datafile separator \",\"\n";
  out += "set key autotitle columnhead\n";
  out += "set title \"" + spec.title + "\"\n";
  out += "set xlabel \"" + xlabel + "\"\n";
  out += "set ylabel \"delta\"\n";
  out += "set yrange [0:1.05]\n";
  out += "set grid\n";
  out += "set term pngcairo size 960,640\n";
  out += "set output \"" + spec.title + ".png\"\n";
  out += "plot";
  for (std::size_t i = 0; i < spec.methods.size(); ++i) {
    if (i) out += ",";
    out += " \"" + csv_ref + "\" using 1:" + std::to_string(i + 2) +
           " with lines lw 2";
  }
  out += "\n";

  std::ofstream file(script_path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open for writing: " + script_path);
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  file.flush();
  if (!file) throw IoError("write failed: " + script_path);
}

SweepSpec parse_spec_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open spec file: " + path);

  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("spec file: line " +
                                  std::to_string(line_no) +
                                  " is not key=value: " + stripped);
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (!kv.emplace(key, value).second)
      throw std::invalid_argument("spec file: duplicate key '" + key + "'");
  }

  static const char* known[] = {"axis",   "axis_values", "axis_range",
                                "M",      "N",           "lambda",
                                "d",      "r1",          "theta1",
                                "phi1",   "r2",          "theta2",
                                "phi2",   "r2_offset",   "methods",
                                "out",    "title"};
  for (const auto& [key, value] : kv) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) {
          return key == k;
        }) == std::end(known))
      throw std::invalid_argument("spec file: unknown key '" + key + "'");
  }

  auto get = [&](const char* key) -> const std::string* {
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  auto require = [&](const char* key) -> const std::string& {
    const std::string* v = get(key);
    if (!v)
      throw std::invalid_argument(std::string("spec file: missing key '") +
                                  key + "'");
    return *v;
  };

  SweepSpec spec;
  spec.axis = parse_axis(require("axis"));

  if (const std::string* values = get("axis_values")) {
    for (const std::string& item : split_list(*values))
      spec.axis_values.push_back(parse_double("axis_values", item));
  } else if (const std::string* range = get("axis_range")) {
    const auto parts = split_list(*range);
    if (parts.size() != 3)
      throw std::invalid_argument("spec file: axis_range wants lo,hi,count");
    const double lo = parse_double("axis_range", parts[0]);
    const double hi = parse_double("axis_range", parts[1]);
    const int count = parse_int("axis_range", parts[2]);
    if (count < 2 || !(hi > lo))
      throw std::invalid_argument("spec file: axis_range wants hi > lo and "
                                  "count >= 2");
    for (int k = 0; k < count; ++k)
      spec.axis_values.push_back(lo + (hi - lo) * k / (count - 1));
  } else {
    throw std::invalid_argument(
        "spec file: need axis_values or axis_range");
  }

  const double lambda = get("lambda") ? parse_double("lambda", *get("lambda"))
                                      : 0.01;
  const double d = get("d") ? parse_double("d", *get("d")) : lambda / 2.0;
  spec.config = ArrayConfig(parse_int("M", require("M")),
                            parse_int("N", require("N")), lambda, d);

  const double theta1 =
      get("theta1") ? parse_double("theta1", *get("theta1")) : kHalfPi;
  const double phi1 = get("phi1") ? parse_double("phi1", *get("phi1"))
                                  : kHalfPi;
  const double theta2 =
      get("theta2") ? parse_double("theta2", *get("theta2")) : kHalfPi;
  const double phi2 = get("phi2") ? parse_double("phi2", *get("phi2"))
                                  : kHalfPi;

  if (const std::string* off = get("r2_offset"))
    spec.r2_offset = parse_double("r2_offset", *off);

  const bool r1_bound =
      spec.axis == SweepAxis::r1 || spec.axis == SweepAxis::beta;
  const double r1 = get("r1") ? parse_double("r1", *get("r1"))
                              : (r1_bound ? 1.0 : 0.0);
  if (!get("r1") && !r1_bound)
    throw std::invalid_argument("spec file: missing key 'r1'");
  spec.user1 = UserLocation(r1, theta1, phi1);

  if (const std::string* r2 = get("r2")) {
    spec.user2 = UserLocation(parse_double("r2", *r2), theta2, phi2);
  } else if (spec.r2_offset && r1_bound) {
    spec.user2 = UserLocation(r1 + *spec.r2_offset, theta2, phi2);
  } else {
    throw std::invalid_argument("spec file: missing key 'r2'");
  }

  for (const std::string& name : split_list(require("methods")))
    spec.methods.push_back(parse_method(name));

  if (const std::string* out = get("out")) spec.output_path = *out;
  spec.title = get("title")
                   ? *get("title")
                   : std::filesystem::path(spec.output_path).stem().string();
  return spec;
}

}  // namespace nfres
