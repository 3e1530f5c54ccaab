#include "chemodde/kernels.hpp"

#include <algorithm>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace chemodde::kernels {

std::vector<double> prefix_sums(std::span<const double> g) {
  std::vector<double> prefix(g.size() + 1, 0.0);
  // Compensated summation: prefix differences feed window means over
  // thousands of terms.
  double sum = 0.0;
  double carry = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double y = g[i] - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
    prefix[i + 1] = sum;
  }
  return prefix;
}

namespace {

// All admissible windows with left end t1.
inline void scan_row(std::span<const double> prefix, long t1, long min_len, long max_len, WindowExtrema& acc) {
  const long n = static_cast<long>(prefix.size()) - 1;
  const long t2_max = std::min(n - 1, t1 + max_len);
  const double base = prefix[static_cast<std::size_t>(t1 + 1)];
  for (long t2 = t1 + min_len; t2 <= t2_max; ++t2) {
    const double mean = (prefix[static_cast<std::size_t>(t2 + 1)] - base) / static_cast<double>(t2 - t1);
    if (mean < acc.min_mean) {
      acc.min_mean = mean;
      acc.argmin_t1 = t1;
      acc.argmin_t2 = t2;
    }
    if (mean > acc.max_mean) {
      acc.max_mean = mean;
      acc.argmax_t1 = t1;
      acc.argmax_t2 = t2;
    }
    ++acc.windows;
  }
}

WindowExtrema empty_extrema() {
  WindowExtrema e;
  e.min_mean = std::numeric_limits<double>::infinity();
  e.max_mean = -std::numeric_limits<double>::infinity();
  return e;
}

void merge(WindowExtrema& into, const WindowExtrema& from) {
  if (from.windows == 0) return;
  // Ties resolve to the smaller t1 so the parallel result matches the serial one.
  if (from.min_mean < into.min_mean || (from.min_mean == into.min_mean && from.argmin_t1 < into.argmin_t1)) {
    into.min_mean = from.min_mean;
    into.argmin_t1 = from.argmin_t1;
    into.argmin_t2 = from.argmin_t2;
  }
  if (from.max_mean > into.max_mean || (from.max_mean == into.max_mean && from.argmax_t1 < into.argmax_t1)) {
    into.max_mean = from.max_mean;
    into.argmax_t1 = from.argmax_t1;
    into.argmax_t2 = from.argmax_t2;
  }
  into.windows += from.windows;
}

}  // namespace

WindowExtrema window_extrema_serial(std::span<const double> prefix, long min_t1, long min_len, long max_len) {
  WindowExtrema acc = empty_extrema();
  const long n = static_cast<long>(prefix.size()) - 1;
  for (long t1 = min_t1; t1 + min_len <= n - 1; ++t1) scan_row(prefix, t1, min_len, max_len, acc);
  return acc;
}

WindowExtrema window_extrema_parallel(std::span<const double> prefix, long min_t1, long min_len, long max_len) {
#ifdef _OPENMP
  const long n = static_cast<long>(prefix.size()) - 1;
  const long last_t1 = n - 1 - min_len;
  WindowExtrema result = empty_extrema();
#pragma omp parallel
  {
    WindowExtrema local = empty_extrema();
    // Rows shrink with t1, so use dynamic scheduling.
#pragma omp for schedule(dynamic, 16) nowait
    for (long t1 = min_t1; t1 <= last_t1; ++t1) scan_row(prefix, t1, min_len, max_len, local);
#pragma omp critical
    merge(result, local);
  }
  return result;
#else
  return window_extrema_serial(prefix, min_t1, min_len, max_len);
#endif
}

std::vector<double> half_window_sums_serial(std::span<const double> prefix) {
  const std::size_t n = prefix.size() - 1;
  std::vector<double> out(n);
  for (std::size_t t = 0; t < n; ++t) out[t] = prefix[t + 1] - prefix[t / 2];
  return out;
}

std::vector<double> half_window_sums_parallel(std::span<const double> prefix) {
  const long n = static_cast<long>(prefix.size()) - 1;
  std::vector<double> out(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (long t = 0; t < n; ++t) {
    const auto i = static_cast<std::size_t>(t);
    out[i] = prefix[i + 1] - prefix[i / 2];
  }
  return out;
}

std::vector<Trajectory> simulate_ensemble_serial(const ChemostatParams& params, std::span<const InitialHistory> inits,
                                                 long horizon) {
  std::vector<Trajectory> out;
  out.reserve(inits.size());
  for (const auto& init : inits) out.push_back(simulate(params, init, horizon));
  return out;
}

std::vector<Trajectory> simulate_ensemble_parallel(const ChemostatParams& params,
                                                   std::span<const InitialHistory> inits, long horizon) {
  for (const auto& init : inits) init.validate(params.r);
  std::vector<std::optional<Trajectory>> slots(inits.size());
  const long n = static_cast<long>(inits.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    slots[k].emplace(simulate(params, inits[k], horizon));
  }
  std::vector<Trajectory> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace chemodde::kernels
