#include "chemodde/exponents.hpp"

#include <algorithm>
#include <cmath>

#include "chemodde/errors.hpp"
#include "chemodde/kernels.hpp"

namespace chemodde {

namespace {

constexpr long kRenormalizeEvery = 64;

double rel_gap(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

}  // namespace

CorrectionSequences phi_sequence(const ChemostatParams& params, const WashoutSolution& z, long horizon,
                                 std::span<const double> c_seed) {
  params.validate();
  const long r = params.r;
  if (horizon < 0) throw UsageError("horizon must be nonnegative");
  if (!z.period && (!z.z.contains(-r) || !z.z.contains(horizon)))
    throw UsageError("washout solution must cover [-r, horizon] for phi_sequence");

  const double q = params.survival();
  const double qr = std::pow(q, static_cast<double>(r));
  const double qd = qr * q;
  const long last_c = horizon + r;

  // c_t is kept in a rescaled working copy; every kRenormalizeEvery steps the
  // live window [t-r, t] is divided by c_t and the factor moved into `offset`.
  Series c(-r, last_c, 1.0);
  if (!c_seed.empty()) {
    if (static_cast<long>(c_seed.size()) != r + 1) throw UsageError("c_seed must have r+1 entries");
    for (long k = -r; k <= 0; ++k) {
      c[k] = c_seed[static_cast<std::size_t>(k + r)];
      if (!(c[k] > 0.0)) throw UsageError("c_seed entries must be positive");
    }
  }
  Series pz(-r, horizon, 0.0);
  for (long k = -r; k <= horizon; ++k) pz[k] = params.uptake.evaluate(z.at(k));

  CorrectionSequences out;
  out.phi = Series(-r, horizon, 0.0);
  out.log_c = Series(-r, last_c, 0.0);
  double offset = 0.0;

  for (long t = 0; t <= last_c; ++t) {
    if (t > 0) {
      const long u = t - 1;  // c_{u+1} = q c_u + c_{u-r} p(z_{u-r}) q^{r+1}
      c[t] = q * c[u] + c[u - r] * pz[u - r] * qd;
    }
    out.log_c[t] = std::log(c[t]) + offset;
    out.phi[t - r] = c[t - r] / c[t] * qr;
    if (t % kRenormalizeEvery == 0 && t > 0) {
      const double scale = c[t];
      for (long j = t - r; j <= t; ++j) c[j] /= scale;
      offset += std::log(scale);
    }
  }

  if (r > 0) {
    std::vector<double> seed(static_cast<std::size_t>(r));
    for (long k = -r; k < 0; ++k) seed[static_cast<std::size_t>(k + r)] = out.phi[k];
    const Series direct = phi_recursion(params, z, seed, horizon);
    for (long t = 0; t <= horizon; ++t)
      out.cross_check_residual = std::max(out.cross_check_residual, rel_gap(direct[t], out.phi[t]));
  }
  return out;
}

Series phi_recursion(const ChemostatParams& params, const WashoutSolution& z, const std::vector<double>& seed,
                     long horizon) {
  const long r = params.r;
  if (static_cast<long>(seed.size()) != r) throw UsageError("phi_recursion seed must have r entries");
  Series phi(-r, horizon, 1.0);
  for (long k = -r; k < 0; ++k) phi[k] = seed[static_cast<std::size_t>(k + r)];
  for (long t = 0; t <= horizon; ++t) {
    double prod = 1.0;
    for (long k = t - r; k < t; ++k) prod *= 1.0 + phi[k] * params.uptake.evaluate(z.at(k));
    phi[t] = 1.0 / prod;
  }
  return phi;
}

Series psi_sequence(const Trajectory& traj) {
  const long r = traj.params.r;
  const long h = traj.horizon();
  if (h - r < -r) throw UsageError("trajectory too short for psi");
  for (long t = -r; t <= h; ++t)
    if (traj.x[t] == 0.0) throw DomainError("psi_sequence: zero biomass", t);
  const double qr = std::pow(traj.params.survival(), static_cast<double>(r));
  Series psi(-r, h - r, 1.0);
  if (r == 0) return psi;
  for (long t = -r; t <= h - r; ++t) psi[t] = traj.x[t] / traj.x[t + r] * qr;
  return psi;
}

Series reconstruct_biomass(const Trajectory& traj, const Series& psi) {
  const long r = traj.params.r;
  const long h = traj.horizon();
  if (h > 0 && (!psi.contains(-r) || !psi.contains(h - 1 - r)))
    throw UsageError("psi must cover [-r, horizon-1-r]");
  const double x0 = traj.x[0];
  Series out(0, h, 0.0);
  if (x0 == 0.0) return out;
  if (x0 < 0.0) throw DomainError("reconstruct_biomass: negative x_0", 0);

  const double log_q = std::log(traj.params.survival());
  double acc = std::log(x0);
  out[0] = x0;
  for (long t = 0; t < h; ++t) {
    const long k = t - r;
    const double factor = 1.0 + psi[k] * traj.params.uptake.evaluate(traj.s[k]);
    if (!(factor > 0.0)) throw DomainError("reconstruct_biomass: nonpositive growth factor", k);
    acc += log_q + std::log(factor);
    out[t + 1] = std::exp(acc);
  }
  return out;
}

Series reconstruct_biomass(const Trajectory& traj) {
  const long r = traj.params.r;
  bool all_zero = true;
  for (long j = -r; j <= 0; ++j) all_zero = all_zero && traj.x[j] == 0.0;
  if (all_zero) return Series(0, traj.horizon(), 0.0);
  if (traj.x[0] == 0.0) throw DomainError("reconstruct_biomass: x_0 = 0 with nonzero history", 0);
  return reconstruct_biomass(traj, psi_sequence(traj));
}

Series growth_sequence(const ChemostatParams& params, const WashoutSolution& z, const Series& phi, long last) {
  if (!phi.contains(0) || !phi.contains(last)) throw UsageError("phi does not cover the growth range");
  const double q = params.survival();
  Series a(0, last, 0.0);
  for (long k = 0; k <= last; ++k) a[k] = q * (1.0 + phi[k] * params.uptake.evaluate(z.at(k)));
  return a;
}

long default_window(long r) { return std::max(2 * r, 50L); }

BohlEstimate bohl_bounds(const Series& growth, long T, long horizon, long max_window, Execution exec) {
  if (growth.first() != 0) throw UsageError("growth sequence must start at index 0");
  if (T < 0) throw UsageError("window T must be nonnegative");
  if (horizon > growth.last()) throw UsageError("horizon exceeds the growth sequence");
  if (horizon < 2 * T + 2)
    throw UsageError("horizon " + std::to_string(horizon) + " admits no window with t1 > T and t2 - t1 > T (T = " +
                     std::to_string(T) + ")");
  if (max_window != 0 && max_window < T + 1) throw UsageError("max_window must exceed T");

  std::vector<double> logs(static_cast<std::size_t>(horizon + 1));
  for (long k = 0; k <= horizon; ++k) {
    if (!(growth[k] > 0.0)) throw DomainError("bohl_bounds: nonpositive growth factor", k);
    logs[static_cast<std::size_t>(k)] = std::log(growth[k]);
  }
  const auto prefix = kernels::prefix_sums(logs);
  const long max_len = max_window == 0 ? horizon : max_window;
  const auto ext = exec == Execution::Parallel ? kernels::window_extrema_parallel(prefix, T + 1, T + 1, max_len)
                                               : kernels::window_extrema_serial(prefix, T + 1, T + 1, max_len);

  BohlEstimate est;
  est.lower = std::exp(ext.min_mean);
  est.upper = std::exp(ext.max_mean);
  est.window_min = T;
  est.max_window = max_window;
  est.horizon = horizon;
  est.windows = ext.windows;
  est.lower_t1 = ext.argmin_t1;
  est.lower_t2 = ext.argmin_t2;
  est.upper_t1 = ext.argmax_t1;
  est.upper_t2 = ext.argmax_t2;
  return est;
}

PeriodicPhi periodic_phi(const ChemostatParams& params, const WashoutSolution& z_periodic, double tol,
                         long max_sweeps) {
  params.validate();
  if (!z_periodic.period) throw UsageError("periodic_phi requires a periodic washout solution");
  const long w = *z_periodic.period;
  const long r = params.r;
  const auto uw = static_cast<std::size_t>(w);

  PeriodicPhi out;
  if (r == 0) {
    out.profile.assign(uw, 1.0);
    out.sweeps = 1;
    return out;
  }

  std::vector<double> pz(uw);
  for (long k = 0; k < w; ++k) pz[static_cast<std::size_t>(k)] = params.uptake.evaluate(z_periodic.profile[static_cast<std::size_t>(k)]);
  auto pz_at = [&](long t) { return pz[static_cast<std::size_t>(((t % w) + w) % w)]; };

  // Ring of the r most recent (phi_k, p(z_k)) pairs, seeded with phi = 1 on [-r, -1].
  const auto ur = static_cast<std::size_t>(r);
  std::vector<double> ring_phi(ur, 1.0);
  std::vector<double> ring_pz(ur);
  for (long k = -r; k < 0; ++k) ring_pz[static_cast<std::size_t>(k + r)] = pz_at(k);
  std::size_t head = 0;  // oldest entry

  std::vector<double> prev(uw, 0.0);
  std::vector<double> cur(uw, 0.0);
  double residual = 0.0;
  for (long sweep = 1; sweep <= max_sweeps; ++sweep) {
    for (long k = 0; k < w; ++k) {
      double prod = 1.0;
      for (std::size_t j = 0; j < ur; ++j) prod *= 1.0 + ring_phi[j] * ring_pz[j];
      const double phi = 1.0 / prod;
      cur[static_cast<std::size_t>(k)] = phi;
      ring_phi[head] = phi;
      ring_pz[head] = pz[static_cast<std::size_t>(k)];
      head = (head + 1) % ur;
    }
    if (sweep > 1) {
      residual = 0.0;
      for (std::size_t k = 0; k < uw; ++k) residual = std::max(residual, std::abs(cur[k] - prev[k]));
      if (residual < tol) {
        out.profile = cur;
        out.sweeps = sweep;
        out.residual = residual;
        return out;
      }
    }
    std::swap(prev, cur);
  }
  throw ConvergenceError("periodic_phi did not converge in " + std::to_string(max_sweeps) + " sweeps", residual);
}

double periodic_mean(const ChemostatParams& params, const WashoutSolution& z_periodic,
                     const std::vector<double>& phi_periodic) {
  if (!z_periodic.period) throw UsageError("periodic_mean requires a periodic washout solution");
  const long w = *z_periodic.period;
  if (static_cast<long>(phi_periodic.size()) != w) throw UsageError("phi profile length differs from the period");
  const double log_q = std::log(params.survival());
  double sum = 0.0;
  for (long k = 0; k < w; ++k) {
    const auto i = static_cast<std::size_t>(k);
    sum += log_q + std::log1p(phi_periodic[i] * params.uptake.evaluate(z_periodic.profile[i]));
  }
  return std::exp(sum / static_cast<double>(w));
}

Series sliding_statistic(const ChemostatParams& params, const WashoutSolution& z, const Series& phi, long horizon,
                         Execution exec) {
  const long r = params.r;
  if (!phi.contains(-r) || !phi.contains(horizon - r)) throw UsageError("phi does not cover [-r, horizon-r]");
  const double log_q = std::log(params.survival());
  std::vector<double> g(static_cast<std::size_t>(horizon + 1));
  for (long k = 0; k <= horizon; ++k)
    g[static_cast<std::size_t>(k)] = log_q + std::log1p(phi[k - r] * params.uptake.evaluate(z.at(k - r)));
  const auto prefix = kernels::prefix_sums(g);
  const auto sums = exec == Execution::Parallel ? kernels::half_window_sums_parallel(prefix)
                                                : kernels::half_window_sums_serial(prefix);
  Series out(0, horizon, 0.0);
  for (long t = 0; t <= horizon; ++t) out[t] = std::exp(sums[static_cast<std::size_t>(t)]);
  return out;
}

}  // namespace chemodde
