#include "chemodde/washout.hpp"

#include <algorithm>
#include <cmath>

#include "chemodde/errors.hpp"

namespace chemodde {

double WashoutSolution::at(long t) const {
  if (period && !z.contains(t)) {
    const long w = *period;
    return profile[static_cast<std::size_t>(((t % w) + w) % w)];
  }
  return z.at(t);
}

long default_tail_depth(double E) { return static_cast<long>(std::ceil(60.0 / -std::log1p(-E))); }

namespace {

void fill_sup(WashoutSolution& sol) {
  const auto vals = sol.z.values();
  sol.z_sup = *std::max_element(vals.begin(), vals.end());
}

}  // namespace

WashoutSolution washout_sequence(const ChemostatParams& params, long horizon, std::optional<long> tail_depth) {
  params.validate();
  const long r = params.r;
  if (horizon < r) throw UsageError("washout horizon must be >= r");
  const long depth = tail_depth.value_or(default_tail_depth(params.E));
  if (depth < 0) throw UsageError("tail_depth must be nonnegative");

  const double E = params.E;
  const double q = 1.0 - E;
  const auto& s0 = params.input;

  // z_{-r} = E sum_{k <= -r-1} q^{-r-1-k} s0_k, truncated at k = -r-1-depth.
  // Seeding with s0 at the oldest index keeps every partial sum a convex
  // combination of input values.
  const long oldest = -r - 1 - depth;
  double acc = s0.value_at(oldest);
  for (long k = oldest; k <= -r - 1; ++k) acc = q * acc + E * s0.value_at(k);

  WashoutSolution sol;
  sol.z = Series(-r, horizon, 0.0);
  sol.z[-r] = acc;
  for (long t = -r; t < horizon; ++t) sol.z[t + 1] = q * sol.z[t] + E * s0.value_at(t);
  sol.tail_error_bound = std::pow(q, static_cast<double>(depth)) * s0.upper_bound();
  fill_sup(sol);
  return sol;
}

WashoutSolution washout_periodic(const ChemostatParams& params, long horizon) {
  params.validate();
  const auto w_opt = params.input.period();
  if (!w_opt) throw UsageError("washout_periodic requires a periodic input signal");
  const long w = *w_opt;
  const double E = params.E;
  const double q = 1.0 - E;
  const auto& s0 = params.input;

  // z_0 = E sum_{j<w} q^{w-1-j} s0_j / (1 - q^w), Horner form.
  double num = 0.0;
  for (long j = 0; j < w; ++j) num = q * num + s0.value_at(j);
  const double z0 = E * num / -std::expm1(static_cast<double>(w) * std::log1p(-E));

  WashoutSolution sol;
  sol.period = w;
  sol.profile.resize(static_cast<std::size_t>(w));
  sol.profile[0] = z0;
  for (long t = 0; t + 1 < w; ++t)
    sol.profile[static_cast<std::size_t>(t + 1)] = q * sol.profile[static_cast<std::size_t>(t)] + E * s0.value_at(t);

  const long r = params.r;
  const long last = std::max(horizon, w - 1);
  sol.z = Series(-r, last, 0.0);
  for (long t = -r; t <= last; ++t) sol.z[t] = sol.profile[static_cast<std::size_t>(((t % w) + w) % w)];
  sol.tail_error_bound = 0.0;
  fill_sup(sol);
  return sol;
}

}  // namespace chemodde
