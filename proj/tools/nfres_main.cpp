// SPDX-License-Identifier: Apache-2.0
//
// nfres: near-field beamforming resolution toolkit.
//
//   nfres delta --N 128 --r1 5 --r2 10            single-pair resolution
//   nfres sweep --preset fig2 [--out PATH]        preset sweep -> CSV + gnuplot
//   nfres sweep --spec FILE                       sweep from a key=value file
//   nfres check --N 128 --r1 5 --r2 10            regime report
//   nfres bench --sizes 64,128,256,512            closed form vs oracle timing
//
// Exit codes: 0 success, 1 usage/validation error, 2 I/O error.

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nfres/bench.hpp"
#include "nfres/regime.hpp"
#include "nfres/resolution.hpp"
#include "nfres/sweep.hpp"

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

std::string fmt(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

struct PairArgs {
  int m_max = 0;
  int n_max = 128;
  double lambda = 0.01;
  double spacing = -1.0;  // < 0: default to lambda / 2
  double r1 = 0.0, theta1 = kHalfPi, phi1 = kHalfPi;
  double r2 = 0.0, theta2 = kHalfPi, phi2 = kHalfPi;

  void add_options(CLI::App& cmd) {
    cmd.add_option("--M", m_max, "vertical half-extent (rows -M..M)");
    cmd.add_option("--N", n_max, "horizontal half-extent (columns -N..N)");
    cmd.add_option("--lambda", lambda, "carrier wavelength [m]")
        ->capture_default_str();
    cmd.add_option("--d", spacing, "element spacing [m] (default lambda/2)");
    cmd.add_option("--r1", r1, "user 1 radius [m]")->required();
    cmd.add_option("--theta1", theta1, "user 1 theta [rad]")
        ->capture_default_str();
    cmd.add_option("--phi1", phi1, "user 1 phi [rad]")->capture_default_str();
    cmd.add_option("--r2", r2, "user 2 radius [m]")->required();
    cmd.add_option("--theta2", theta2, "user 2 theta [rad]")
        ->capture_default_str();
    cmd.add_option("--phi2", phi2, "user 2 phi [rad]")->capture_default_str();
  }

  nfres::ArrayConfig config() const {
    const double d = spacing > 0.0 ? spacing : lambda / 2.0;
    return nfres::ArrayConfig(m_max, n_max, lambda, d);
  }
  nfres::UserLocation user1() const { return {r1, theta1, phi1}; }
  nfres::UserLocation user2() const { return {r2, theta2, phi2}; }
};

std::string join(const std::vector<std::string>& items, char sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

int run_delta(const PairArgs& pair, const std::string& method_tag) {
  const nfres::ArrayConfig cfg = pair.config();
  const nfres::UserLocation u1 = pair.user1();
  const nfres::UserLocation u2 = pair.user2();

  if (method_tag == "sum_oracle") {
    const double raw =
        nfres::delta_sum_oracle(nfres::pair_params(cfg, u1, u2), cfg.m_max,
                                cfg.n_max);
    std::vector<std::string> warnings;
    const double d_ray = cfg.rayleigh_distance();
    if (u1.r > d_ray) warnings.emplace_back("r1_beyond_rayleigh");
    if (u2.r > d_ray) warnings.emplace_back("r2_beyond_rayleigh");
    std::cout << "delta = " << fmt(std::clamp(raw, 0.0, 1.0)) << '\n'
              << "method = sum_oracle\n"
              << "warnings = " << join(warnings, ';') << '\n';
    return 0;
  }

  nfres::ResolutionResult res = [&] {
    if (method_tag == "closed_form") return nfres::delta_closed_form(cfg, u1, u2);
    if (method_tag == "ula") return nfres::delta_ula(cfg, u1, u2);
    if (method_tag == "oracle_fresnel")
      return nfres::delta_oracle(cfg, u1, u2, nfres::PhaseModel::fresnel);
    if (method_tag == "oracle_exact")
      return nfres::delta_oracle(cfg, u1, u2, nfres::PhaseModel::exact);
    throw std::invalid_argument("unknown method: " + method_tag);
  }();

  std::cout << "delta = " << fmt(res.delta) << '\n'
            << "method = " << nfres::method_name(res.method) << '\n'
            << "warnings = " << join(res.warnings, ';') << '\n';
  return 0;
}

int run_check(const PairArgs& pair) {
  const nfres::RegimeReport rep =
      nfres::classify(pair.config(), pair.user1(), pair.user2());
  std::cout << "delta = " << fmt(rep.delta) << '\n'
            << "classification = " << nfres::regime_name(rep.classification)
            << '\n'
            << "beta = " << fmt(rep.beta) << '\n'
            << "beta_threshold = " << fmt(rep.beta_threshold) << '\n'
            << "distance_threshold_m = " << fmt(rep.distance_threshold_m)
            << '\n'
            << "angle_domain_bound = "
            << (rep.angle_domain_bound ? fmt(*rep.angle_domain_bound)
                                       : std::string("n/a"))
            << '\n'
            << "notes = " << join(rep.notes, ';') << '\n';
  return 0;
}

int run_sweep_cmd(const std::string& preset_name, const std::string& spec_path,
                  const std::string& out, double theta, double phi,
                  unsigned threads) {
  namespace fs = std::filesystem;
  std::vector<nfres::SweepSpec> specs;
  if (!preset_name.empty()) {
    specs = nfres::preset(preset_name, theta, phi);
  } else {
    specs.push_back(nfres::parse_spec_file(spec_path));
  }

  if (!out.empty()) {
    if (specs.size() == 1) {
      specs[0].output_path = out;
    } else {
      // Family presets: --out names a directory, files keep their names.
      for (nfres::SweepSpec& spec : specs)
        spec.output_path = (fs::path(out) / spec.output_path).string();
    }
  }

  for (const nfres::SweepSpec& spec : specs) {
    const std::vector<nfres::SweepRow> rows = nfres::run_sweep(spec, threads);
    nfres::emit_csv(rows, spec);
    const std::string script =
        fs::path(spec.output_path).replace_extension(".gp").string();
    nfres::emit_plot_script(spec, spec.output_path, script);
    std::cout << "wrote " << spec.output_path << " and " << script << '\n';
  }
  return 0;
}

int run_bench_cmd(const std::string& sizes_arg, int reps, std::uint64_t seed) {
  std::vector<nfres::BenchSize> sizes;
  std::stringstream ss(sizes_arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const int n = std::stoi(item);
    sizes.push_back({n, n});
  }

  const std::vector<nfres::BenchRow> table =
      nfres::run_bench(sizes, reps, seed);
  std::printf("%6s %6s %14s %14s %10s\n", "M", "N", "closed[s]", "oracle[s]",
              "speedup");
  for (const nfres::BenchRow& row : table)
    std::printf("%6d %6d %14.3e %14.3e %10.1f\n", row.m_max, row.n_max,
                row.closed_form_seconds, row.oracle_seconds, row.speedup);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"near-field beamforming resolution toolkit"};
  app.require_subcommand(1);

  PairArgs delta_pair;
  std::string method_tag = "closed_form";
  CLI::App* delta_cmd =
      app.add_subcommand("delta", "resolution of one user pair");
  delta_pair.add_options(*delta_cmd);
  delta_cmd
      ->add_option("--method", method_tag,
                   "closed_form|oracle_fresnel|oracle_exact|sum_oracle|ula")
      ->capture_default_str();

  std::string preset_name, spec_path, out_path;
  double theta = kHalfPi, phi = kHalfPi;
  unsigned threads = 1;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "run a parameter sweep, write CSV + plot");
  CLI::Option* preset_opt =
      sweep_cmd->add_option("--preset", preset_name, "fig1|fig2|fig3|fig4");
  CLI::Option* spec_opt =
      sweep_cmd->add_option("--spec", spec_path, "sweep spec file");
  preset_opt->excludes(spec_opt);
  spec_opt->excludes(preset_opt);
  sweep_cmd->add_option("--out", out_path,
                        "output CSV path (directory for multi-curve presets)");
  sweep_cmd->add_option("--theta", theta, "common theta [rad]")
      ->capture_default_str();
  sweep_cmd->add_option("--phi", phi, "common phi [rad]")
      ->capture_default_str();
  sweep_cmd->add_option("--threads", threads, "worker threads")
      ->capture_default_str();

  PairArgs check_pair;
  CLI::App* check_cmd =
      app.add_subcommand("check", "regime report for one user pair");
  check_pair.add_options(*check_cmd);

  std::string sizes_arg = "64,128,256,512";
  int reps = 21;
  std::uint64_t seed = 0x5eed1e5;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "closed form vs oracle timing");
  bench_cmd->add_option("--sizes", sizes_arg, "comma list of M=N sizes")
      ->capture_default_str();
  bench_cmd->add_option("--reps", reps, "repetitions per size")
      ->capture_default_str();
  bench_cmd->add_option("--seed", seed, "user-pair seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (delta_cmd->parsed()) return run_delta(delta_pair, method_tag);
    if (check_cmd->parsed()) return run_check(check_pair);
    if (sweep_cmd->parsed()) {
      if (preset_name.empty() && spec_path.empty()) {
        std::cerr << "error: sweep needs --preset or --spec\n";
        return 1;
      }
      return run_sweep_cmd(preset_name, spec_path, out_path, theta, phi,
                           threads);
    }
    if (bench_cmd->parsed())
      return run_bench_cmd(sizes_arg, reps, seed);
  } catch (const nfres::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
