#pragma once

#include <optional>
#include <vector>

#include "chemodde/core.hpp"
#include "chemodde/series.hpp"

namespace chemodde {

/// Substrate trajectory in the absence of biomass: the bounded solution of
/// z_{t+1} = (1-E) z_t + E s^0_t.
struct WashoutSolution {
  Series z;                    // materialized on [-r, horizon]
  double z_sup = 0.0;          // max over the stored range
  std::optional<long> period;  // set for periodic solutions
  std::vector<double> profile; // one period z_0..z_{w-1} when periodic
  double tail_error_bound = 0.0;

  /// z_t; periodic solutions answer for every t, others only on the stored range.
  double at(long t) const;
};

/// ceil(60 / -log(1-E)): makes (1-E)^depth fall below e^-60.
long default_tail_depth(double E);

/// Truncated backward sum for z_{-r}, then forward recursion up to `horizon`.
WashoutSolution washout_sequence(const ChemostatParams& params, long horizon, std::optional<long> tail_depth = {});

/// Exact periodic washout profile. The stored series covers [-r, max(horizon, w-1)].
WashoutSolution washout_periodic(const ChemostatParams& params, long horizon = 0);

}  // namespace chemodde
