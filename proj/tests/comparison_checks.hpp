#pragma once

// Property suites for the comparison inequalities used in the persistence and
// extinction arguments. Each suite draws synthetic (f, g) pairs and returns
// the number of violations found; shared by the unit tests and the
// acceptance runner.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace chemodde::testing {

struct ComparisonSuiteResult {
  int cases = 0;
  long windows_checked = 0;
  int violations = 0;
};

// phi_{t+1} = prod_{k=t+1-r}^{t} (1 + phi_k f_k)^{-1} on indices 0..n-1; the
// first r entries are the seed.
inline std::vector<double> correction_recursion(const std::vector<double>& f, long r, const std::vector<double>& seed) {
  const auto n = f.size();
  std::vector<double> phi(n, 1.0);
  for (long i = 0; i < r; ++i) phi[static_cast<std::size_t>(i)] = seed[static_cast<std::size_t>(i)];
  for (std::size_t t = static_cast<std::size_t>(r); t < n; ++t) {
    double prod = 1.0;
    for (std::size_t k = t - static_cast<std::size_t>(r); k < t; ++k) prod *= 1.0 + phi[k] * f[k];
    phi[t] = 1.0 / prod;
  }
  return phi;
}

// Prefix sums of log(1 + phi_k f_k).
inline std::vector<double> log_factor_prefix(const std::vector<double>& phi, const std::vector<double>& f) {
  std::vector<double> p(f.size() + 1, 0.0);
  for (std::size_t k = 0; k < f.size(); ++k) p[k + 1] = p[k] + std::log1p(phi[k] * f[k]);
  return p;
}

// min over windows (t1, t2] with t1 >= min_t1, t2 - t1 >= min_len, t2 <= last
// of S[t2] - S[t1], in O(n) with a running maximum.
inline double min_window_sum(const std::vector<double>& S, long min_t1, long min_len, long last) {
  double best = INFINITY;
  double run_max = -INFINITY;
  for (long t2 = min_t1 + min_len; t2 <= last; ++t2) {
    run_max = std::max(run_max, S[static_cast<std::size_t>(t2 - min_len)]);
    best = std::min(best, S[static_cast<std::size_t>(t2)] - run_max);
  }
  return best;
}

inline long admissible_windows(long min_t1, long min_len, long last) {
  const long span = last - min_t1 - min_len + 1;
  return span > 0 ? span * (span + 1) / 2 : 0;
}

/// Extinction comparison: f >= g >= 0, M = max f, implies
///   (1+M)^{e} prod_{k=t1+1-r}^{t2-r} (1 + phi_k f_k) >= prod (1 + psi_k g_k)
/// for t2 > t1 >= t0. The nominal exponent is e = r-1; e = r is the one the
/// block argument supports (see the explicit r = 1 counterexample in the tests).
enum class SlackExponent { RMinusOne, R };

inline ComparisonSuiteResult extinction_comparison_suite(int cases, unsigned seed, SlackExponent exponent) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  ComparisonSuiteResult res;
  for (int c = 0; c < cases; ++c) {
    const long r = std::uniform_int_distribution<long>(1, 8)(rng);
    const std::size_t n = 1500;
    const double M = 0.2 + 3.0 * U(rng);
    std::vector<double> f(n), g(n);
    for (std::size_t k = 0; k < n; ++k) {
      f[k] = M * U(rng);
      g[k] = U(rng) < 0.3 ? f[k] : f[k] * U(rng);
    }
    f[0] = M;  // M is attained
    std::vector<double> s1(static_cast<std::size_t>(r)), s2(static_cast<std::size_t>(r));
    for (auto& v : s1) v = 0.05 + 0.95 * U(rng);
    for (auto& v : s2) v = 0.05 + 0.95 * U(rng);
    const auto phi = correction_recursion(f, r, s1);
    const auto psi = correction_recursion(g, r, s2);
    const auto pf = log_factor_prefix(phi, f);
    const auto pg = log_factor_prefix(psi, g);

    // Vector index i is time i - r + 1, so the recursion holds from t0 = 0.
    // The window sum over k = t1+1-r .. t2-r is D[t2+1] - D[t1+1] in index
    // terms, with D the prefix difference.
    std::vector<double> D(pf.size());
    for (std::size_t i = 0; i < D.size(); ++i) D[i] = pf[i] - pg[i];
    const double e = static_cast<double>(exponent == SlackExponent::R ? r : r - 1);
    const long last = static_cast<long>(n);  // t2 + 1 <= n
    const double worst = min_window_sum(D, 1, 1, last);
    res.windows_checked += admissible_windows(1, 1, last);
    if (worst + e * std::log1p(M) < -1e-12) ++res.violations;
    ++res.cases;
  }
  return res;
}

/// Constants of the persistence comparison: with f > g + eps, 0 <= f <= M,
///   m = (1+M)^{-a},  kappa = 1 + eps/(2M),
///   (1+eta)^3 = min{ ((kappa/m + M + eps)/(1/m + M))^{1/r}, 1 + (m eps/2)/(1+M) },
///   (1+eta)^{T - 3b} = (1+M)^{b},
/// the window product ratio over (t1, t2] exceeds (1+eta)^{2(t2-t1)} for
/// t1 >= T, t2 - t1 >= T. The nominal constants use a = b = r-1; phi only
/// obeys phi >= (1+M)^{-r}, which gives a = b = r.
struct ComparisonConstants {
  double eta = 0.0;
  long T = 0;
};

inline ComparisonConstants comparison_constants(double M, double eps, long r, SlackExponent exponent) {
  const double a = static_cast<double>(exponent == SlackExponent::R ? r : r - 1);
  const double m = std::pow(1.0 + M, -a);
  const double kappa = 1.0 + eps / (2.0 * M);
  const double first = std::pow((kappa / m + M + eps) / (1.0 / m + M), 1.0 / static_cast<double>(r));
  const double second = 1.0 + m * eps / 2.0 / (1.0 + M);
  ComparisonConstants k;
  k.eta = std::cbrt(std::min(first, second)) - 1.0;
  k.T = std::max(r, static_cast<long>(std::ceil(3.0 * a + a * std::log1p(M) / std::log1p(k.eta))));
  return k;
}

struct PersistenceComparison {
  ComparisonSuiteResult qualitative;        // some positive per-step rate, window T from the a = r constants
  ComparisonSuiteResult nominal_constants;   // (1+eta)^2 per step with a = b = r-1
  ComparisonSuiteResult corrected_constants;  // (1+eta)^2 per step with a = b = r
};

inline PersistenceComparison persistence_comparison_suite(int cases, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  PersistenceComparison res;
  for (int c = 0; c < cases; ++c) {
    const long r = std::uniform_int_distribution<long>(1, 6)(rng);
    const double M = 0.5 + 2.5 * U(rng);
    const double eps = (0.05 + 0.3 * U(rng)) * M;
    const auto ks = comparison_constants(M, eps, r, SlackExponent::RMinusOne);
    const auto kc = comparison_constants(M, eps, r, SlackExponent::R);
    const long n = 3 * std::max(ks.T, kc.T) + 400;
    std::vector<double> f(static_cast<std::size_t>(n)), g(static_cast<std::size_t>(n));
    for (auto k = 0UL; k < f.size(); ++k) {
      f[k] = eps * 1.001 + (M - eps * 1.001) * U(rng);
      g[k] = std::max(0.0, (f[k] - eps) * U(rng) - 1e-12);
    }
    f[0] = M;
    std::vector<double> s1(static_cast<std::size_t>(r)), s2(static_cast<std::size_t>(r));
    for (auto& v : s1) v = 0.05 + 0.95 * U(rng);
    for (auto& v : s2) v = 0.05 + 0.95 * U(rng);
    const auto phi = correction_recursion(f, r, s1);
    const auto psi = correction_recursion(g, r, s2);

    // Vector index i is time i - r + 1 (seed on [1-r, 0]). S[t] sums the
    // factor log-ratio at time k - r for k = 1..t, minus `rate` per step.
    const long last = n - r;
    auto window_min = [&](double rate, long T) {
      std::vector<double> S(static_cast<std::size_t>(last + 1), 0.0);
      for (long k = 1; k <= last; ++k) {
        const auto i = static_cast<std::size_t>(k - 1);
        S[static_cast<std::size_t>(k)] =
            S[static_cast<std::size_t>(k - 1)] + std::log1p(phi[i] * f[i]) - std::log1p(psi[i] * g[i]) - rate;
      }
      return min_window_sum(S, T, T, last);
    };
    auto tally = [&](ComparisonSuiteResult& out, double rate, long T) {
      out.cases++;
      out.windows_checked += admissible_windows(T, T, last);
      if (!(window_min(rate, T) > 0.0)) out.violations++;
    };
    tally(res.qualitative, 0.0, kc.T);
    tally(res.nominal_constants, 2.0 * std::log1p(ks.eta), ks.T);
    tally(res.corrected_constants, 2.0 * std::log1p(kc.eta), kc.T);
  }
  return res;
}

/// Ratio bound for paired delayed linear recursions
///   c_{t+1} = (1-E)(c_t + f_{t-r} c_{t-r}),  x_{t+1} = (1-E)(x_t + g_{t-r} x_{t-r}),
/// with |f - g| < eps < inf f:
///   c_t / x_t <= (inf f / (inf f - eps))^{(t - t0)/(r+1)} max_{t0 <= s <= t0+r} c_s / x_s.
inline ComparisonSuiteResult ratio_bound_suite(int cases, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  ComparisonSuiteResult res;
  for (int c = 0; c < cases; ++c) {
    const long r = std::uniform_int_distribution<long>(0, 8)(rng);
    const double E = 0.05 + 0.8 * U(rng);
    const long n = 800;
    const long t0 = r;  // recursion from t0; history on [0, t0]
    const double f_inf = 0.1 + 2.0 * U(rng);
    const double eps = f_inf * (0.05 + 0.9 * U(rng));
    std::vector<double> f(static_cast<std::size_t>(n)), g(static_cast<std::size_t>(n));
    for (auto k = 0UL; k < f.size(); ++k) {
      f[k] = f_inf + 1.5 * U(rng);
      g[k] = std::max(0.0, f[k] + eps * (2.0 * U(rng) - 1.0) * 0.999);
    }
    std::vector<double> cv(static_cast<std::size_t>(n)), xv(static_cast<std::size_t>(n));
    for (long t = 0; t <= t0; ++t) {
      cv[static_cast<std::size_t>(t)] = 0.1 + U(rng);
      xv[static_cast<std::size_t>(t)] = 0.1 + U(rng);
    }
    // Each sequence is rescaled every step by its newest value; the log of the
    // accumulated scale is kept so the ratio never overflows.
    const double q = 1.0 - E;
    std::vector<double> log_cv(static_cast<std::size_t>(n), 0.0), log_xv(static_cast<std::size_t>(n), 0.0);
    double oc = 0.0, ox = 0.0;
    for (long t = 0; t <= t0; ++t) {
      log_cv[static_cast<std::size_t>(t)] = std::log(cv[static_cast<std::size_t>(t)]);
      log_xv[static_cast<std::size_t>(t)] = std::log(xv[static_cast<std::size_t>(t)]);
    }
    for (long t = t0; t + 1 < n; ++t) {
      const auto i = static_cast<std::size_t>(t);
      const auto d = static_cast<std::size_t>(t - r);
      cv[i + 1] = q * (cv[i] + f[d] * cv[d]);
      xv[i + 1] = q * (xv[i] + g[d] * xv[d]);
      log_cv[i + 1] = std::log(cv[i + 1]) + oc;
      log_xv[i + 1] = std::log(xv[i + 1]) + ox;
      const double sc = cv[i + 1], sx = xv[i + 1];
      for (std::size_t j = d; j <= i + 1; ++j) {
        cv[j] /= sc;
        xv[j] /= sx;
      }
      oc += std::log(sc);
      ox += std::log(sx);
    }
    double log_base = -INFINITY;
    for (long s = t0; s <= t0 + r; ++s)
      log_base = std::max(log_base, log_cv[static_cast<std::size_t>(s)] - log_xv[static_cast<std::size_t>(s)]);
    const double log_growth = std::log(f_inf / (f_inf - eps));
    for (long t = t0; t < n; ++t) {
      const double lhs = log_cv[static_cast<std::size_t>(t)] - log_xv[static_cast<std::size_t>(t)];
      const double rhs = static_cast<double>(t - t0) / static_cast<double>(r + 1) * log_growth + log_base;
      ++res.windows_checked;
      if (lhs > rhs + 1e-12 * std::max(1.0, std::abs(rhs))) ++res.violations;
    }
    ++res.cases;
  }
  return res;
}

}  // namespace chemodde::testing
