#pragma once

// Test-only helpers: random instance generators and oracles that are coded
// independently of the library paths they check.

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include "chemodde/chemodde.hpp"

namespace chemodde::testing {

inline double rel_err(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

struct Instance {
  ChemostatParams params;
  InitialHistory init;
};

/// Random instance in the acceptance range: E in [0.05, 0.9], r in [0, 10],
/// Monod uptake with p'(0) * sup s0 <= 1, positive initial history scaled so
/// that s0 + x0 + y0 <= z0 in most draws.
inline Instance random_feasible_instance(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const double E = 0.05 + 0.85 * U(rng);
  const long r = std::uniform_int_distribution<long>(0, 10)(rng);

  InputSignal input = [&]() -> InputSignal {
    const double offset = 0.3 + 1.2 * U(rng);
    if (U(rng) < 0.4) return InputSignal(Constant{offset});
    const double amp = offset * 0.8 * U(rng);
    const long period = std::uniform_int_distribution<long>(2, 120)(rng);
    return InputSignal(Sinusoid{amp, period, offset});
  }();

  const double k_s = 0.2 + 2.0 * U(rng);
  const double slope0 = (0.3 + 0.7 * U(rng)) / input.upper_bound();  // p'(0)
  ChemostatParams params{E, r, UptakeFunction::monod(slope0 * k_s, k_s), input};

  const auto n = static_cast<std::size_t>(r + 1);
  InitialHistory init{std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t j = 0; j < n; ++j) {
    init.s_in[j] = 0.05 + input.upper_bound() * U(rng);
    init.x_in[j] = 0.01 + input.upper_bound() * U(rng);
  }
  // Shrink the whole history until the initial mass fits under z_0.
  const auto z = washout_sequence(params, r);
  for (int i = 0; i < 60; ++i) {
    const double mass = init.s0() + init.x0() + initial_stored_nutrient(params, init);
    if (mass <= z.at(0) * 0.999) break;
    for (auto& v : init.s_in) v *= 0.8;
    for (auto& v : init.x_in) v *= 0.8;
  }
  return {std::move(params), std::move(init)};
}

/// Plain recursion with a map-backed store; no shared code with simulate().
struct NaiveRun {
  std::map<long, double> s, x;
};

inline NaiveRun naive_simulate(const ChemostatParams& P, const InitialHistory& init, long horizon) {
  NaiveRun run;
  for (long j = -P.r; j <= 0; ++j) {
    run.s[j] = init.s_in[static_cast<std::size_t>(j + P.r)];
    run.x[j] = init.x_in[static_cast<std::size_t>(j + P.r)];
  }
  const double q = 1.0 - P.E;
  for (long t = 0; t < horizon; ++t) {
    run.s[t + 1] = P.E * P.input.value_at(t) + q * (run.s[t] - run.x[t] * P.uptake.evaluate(run.s[t]));
    run.x[t + 1] = q * run.x[t] + run.x[t - P.r] * P.uptake.evaluate(run.s[t - P.r]) * std::pow(q, P.r + 1);
  }
  return run;
}

/// y_{t} as the literal sum over k = 0..r-1 of x_{t-1-k} p(s_{t-1-k}) (1-E)^{k+1}.
inline double literal_y(const ChemostatParams& P, const NaiveRun& run, long t) {
  double y = 0.0;
  for (long k = 0; k <= P.r - 1; ++k)
    y += run.x.at(t - 1 - k) * P.uptake.evaluate(run.s.at(t - 1 - k)) * std::pow(1.0 - P.E, k + 1);
  return y;
}

/// z_t by direct truncated summation E * sum_{j=0}^{depth} (1-E)^j s0_{t-1-j}.
inline double washout_direct_sum(const ChemostatParams& P, long t, long depth) {
  double z = 0.0;
  for (long j = 0; j <= depth; ++j) z += P.E * std::pow(1.0 - P.E, j) * P.input.value_at(t - 1 - j);
  return z;
}

/// Extremal window geometric means by multiplying each window out.
struct BruteWindows {
  double lower = 0.0;
  double upper = 0.0;
};

inline BruteWindows brute_force_windows(const std::vector<double>& a, long T, long horizon) {
  BruteWindows b{INFINITY, -INFINITY};
  for (long t1 = T + 1; t1 <= horizon; ++t1)
    for (long t2 = t1 + T + 1; t2 <= horizon; ++t2) {
      long double prod = 1.0L;
      for (long k = t1 + 1; k <= t2; ++k) prod *= a[static_cast<std::size_t>(k)];
      const double mean = static_cast<double>(std::pow(prod, 1.0L / static_cast<long double>(t2 - t1)));
      b.lower = std::min(b.lower, mean);
      b.upper = std::max(b.upper, mean);
    }
  return b;
}

inline ChemostatParams fig2_params(double offset) {
  return {1.0 / 8.0, 5, UptakeFunction::monod(1.0, 1.0), InputSignal(Sinusoid{0.25, 500, offset})};
}

inline InitialHistory fig2_init() { return InitialHistory::constant(5, 0.5, 0.2); }

inline const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

}  // namespace chemodde::testing
