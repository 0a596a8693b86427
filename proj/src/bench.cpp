// SPDX-License-Identifier: Apache-2.0
#include "nfres/bench.hpp"

#include <algorithm>
#include <chrono>
#include <numbers>
#include <random>
#include <stdexcept>

#include "nfres/resolution.hpp"

namespace nfres {

namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  return n % 2 ? samples[n / 2]
               : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
}

volatile double g_sink = 0.0;  // keeps the timed calls observable

}  // namespace

std::vector<BenchRow> run_bench(const std::vector<BenchSize>& sizes,
                                int repetitions, std::uint64_t seed) {
  if (sizes.empty()) throw std::invalid_argument("bench: sizes is empty");
  if (repetitions < 1) throw std::invalid_argument("bench: repetitions < 1");

  std::vector<BenchRow> table;
  table.reserve(sizes.size());

  for (const BenchSize& size : sizes) {
    const ArrayConfig cfg =
        ArrayConfig::half_wavelength(size.m_max, size.n_max, 0.01);
    std::mt19937_64 rng(seed);  // reseeded per size: same pair every run
    std::uniform_real_distribution<double> angle(0.05,
                                                 std::numbers::pi - 0.05);
    const double r_hi = std::max(0.5, cfg.rayleigh_distance());
    std::uniform_real_distribution<double> radius(0.5, r_hi);
    const UserLocation u1(radius(rng), angle(rng), angle(rng));
    const UserLocation u2(radius(rng), angle(rng), angle(rng));
    const PairParams params = pair_params(cfg, u1, u2);

    // A single closed-form call is microseconds; batch it per repetition so
    // the clock resolves, and report per-call time.
    const int batch =
        std::max(1, 65536 / (2 * (size.m_max + size.n_max) + 2));

    std::vector<double> closed_times, oracle_times;
    closed_times.reserve(repetitions);
    oracle_times.reserve(repetitions);
    for (int rep = 0; rep < repetitions; ++rep) {
      const auto t0 = Clock::now();
      double acc = 0.0;
      for (int i = 0; i < batch; ++i)
        acc += closed_form_delta(params, cfg.m_max, cfg.n_max);
      const auto t1 = Clock::now();
      g_sink = acc;
      closed_times.push_back(
          std::chrono::duration<double>(t1 - t0).count() / batch);

      const auto t2 = Clock::now();
      g_sink = delta_oracle(cfg, u1, u2, PhaseModel::fresnel).raw_delta;
      const auto t3 = Clock::now();
      oracle_times.push_back(std::chrono::duration<double>(t3 - t2).count());
    }

    BenchRow row;
    row.m_max = size.m_max;
    row.n_max = size.n_max;
    row.closed_form_seconds = median(closed_times);
    row.oracle_seconds = median(oracle_times);
    row.speedup = row.oracle_seconds / row.closed_form_seconds;
    table.push_back(row);
  }
  return table;
}

}  // namespace nfres
