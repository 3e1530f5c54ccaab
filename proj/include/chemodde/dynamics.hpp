#pragma once

#include <optional>

#include "chemodde/core.hpp"
#include "chemodde/series.hpp"
#include "chemodde/washout.hpp"

namespace chemodde {

struct Trajectory {
  ChemostatParams params;
  Series s;  // [-r, horizon]
  Series x;  // [-r, horizon]
  Series y;  // [0, horizon]
  std::optional<double> deficit0;  // s0 + x0 + y0 - z0, when z was supplied

  bool negative_s = false;
  std::optional<long> first_negative_s;

  long horizon() const { return s.last(); }
};

/// Integrates s_{t+1} = E s0_t + (1-E)(s_t - x_t p(s_t)),
///            x_{t+1} = (1-E) x_t + x_{t-r} p(s_{t-r}) (1-E)^{r+1}.
/// Negative substrate is recorded, not clamped.
Trajectory simulate(const ChemostatParams& params, const InitialHistory& init, long horizon);
Trajectory simulate(const ChemostatParams& params, const InitialHistory& init, long horizon,
                    const WashoutSolution& z);

/// y_t = sum_{k=0}^{r-1} x_{t-1-k} p(s_{t-1-k}) (1-E)^{k+1}, literal sum.
double stored_nutrient(const Trajectory& traj, long t);

/// y_0 from an initial history alone.
double initial_stored_nutrient(const ChemostatParams& params, const InitialHistory& init);

/// d_t = s_t + x_t + y_t - z_t on [0, horizon].
Series conservation_deficit(const Trajectory& traj, const WashoutSolution& z);

/// max_t |d_t - (1-E)^t d_0|.
double conservation_deviation(const Trajectory& traj, const WashoutSolution& z);

/// Maximum relative residual of x_t = (1-E)^r (x_{t-r} + y_{t-r}) over t >= r,
/// with the scale floored at the smallest normal double.
double r_step_identity_residual(const Trajectory& traj);

/// Maximum residual of both recursion lines, relative to max(|lhs|, scale).
double recursion_residual(const Trajectory& traj, double scale);

/// (a) p'(0) z_sup <= 1 and (b) s0 + x0 + y0 <= z0, reported independently.
FeasibilityReport check_positivity_preconditions(const ChemostatParams& params, const InitialHistory& init,
                                                 const WashoutSolution& z);

}  // namespace chemodde
