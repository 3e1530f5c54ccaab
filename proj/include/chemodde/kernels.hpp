#pragma once

// Data-parallel kernels. Every kernel has a serial reference used by the
// tests and the benchmark; the parallel versions use OpenMP when available
// and fall back to the serial code otherwise.

#include <span>
#include <vector>

#include "chemodde/core.hpp"
#include "chemodde/dynamics.hpp"

namespace chemodde::kernels {

/// Extremal window means of a log-growth sequence g[0..n-1]. A window (t1, t2]
/// covers g[t1+1..t2]; admissible windows have t1 >= min_t1,
/// min_len <= t2 - t1 <= max_len and t2 <= n-1.
struct WindowExtrema {
  double min_mean = 0.0;
  double max_mean = 0.0;
  long argmin_t1 = -1, argmin_t2 = -1;
  long argmax_t1 = -1, argmax_t2 = -1;
  long windows = 0;
};

/// prefix[i] = g[0] + ... + g[i-1], prefix[0] = 0.
std::vector<double> prefix_sums(std::span<const double> g);

WindowExtrema window_extrema_serial(std::span<const double> prefix, long min_t1, long min_len, long max_len);
WindowExtrema window_extrema_parallel(std::span<const double> prefix, long min_t1, long min_len, long max_len);

/// out[t] = g[floor(t/2)] + ... + g[t] for t = 0..n-1.
std::vector<double> half_window_sums_serial(std::span<const double> prefix);
std::vector<double> half_window_sums_parallel(std::span<const double> prefix);

/// Independent simulations of one parameter set from many initial histories.
std::vector<Trajectory> simulate_ensemble_serial(const ChemostatParams& params, std::span<const InitialHistory> inits,
                                                 long horizon);
std::vector<Trajectory> simulate_ensemble_parallel(const ChemostatParams& params,
                                                   std::span<const InitialHistory> inits, long horizon);

int max_threads();

}  // namespace chemodde::kernels
