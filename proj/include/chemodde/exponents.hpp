#pragma once

#include <optional>
#include <span>
#include <vector>

#include "chemodde/core.hpp"
#include "chemodde/dynamics.hpp"
#include "chemodde/series.hpp"
#include "chemodde/washout.hpp"

namespace chemodde {

/// Delay corrections phi_t = (c_t / c_{t+r}) (1-E)^r built from the linear
/// solution c_{t+1} = (1-E) c_t + c_{t-r} p(z_{t-r}) (1-E)^{r+1}, c = 1 on [-r, 0].
struct CorrectionSequences {
  Series phi;                // [-r, horizon]
  std::optional<Series> psi; // filled by callers that also have a trajectory
  Series log_c;              // log c_t on [-r, horizon + r]
  double cross_check_residual = 0.0;  // max relative gap to the direct recursion, t >= 0
};

enum class Execution { Serial, Parallel };

/// `c_seed` overrides c on [-r, 0] (r+1 positive values); the default is all ones.
CorrectionSequences phi_sequence(const ChemostatParams& params, const WashoutSolution& z, long horizon,
                                 std::span<const double> c_seed = {});

/// phi_{t+1} = prod_{k=t+1-r}^{t} (1 + phi_k p(z_k))^{-1} for t+1 >= 0, seeded
/// on [-r, -1] by `seed` (size r).
Series phi_recursion(const ChemostatParams& params, const WashoutSolution& z, const std::vector<double>& seed,
                     long horizon);

/// psi_t = (x_t / x_{t+r}) (1-E)^r for t in [-r, horizon - r].
Series psi_sequence(const Trajectory& traj);

/// Product form x_{t+1} = x_0 (1-E)^{t+1} prod_{k=-r}^{t-r} (1 + psi_k p(s_k)) on [0, horizon].
Series reconstruct_biomass(const Trajectory& traj, const Series& psi);
Series reconstruct_biomass(const Trajectory& traj);

/// a_k = (1-E)(1 + phi_k p(z_k)) for k in [0, last].
Series growth_sequence(const ChemostatParams& params, const WashoutSolution& z, const Series& phi, long last);

struct BohlEstimate {
  double lower = 0.0;
  double upper = 0.0;
  long window_min = 0;  // T: t1 > T and t2 - t1 > T
  long max_window = 0;  // 0 = unlimited
  long horizon = 0;
  long windows = 0;
  long lower_t1 = 0, lower_t2 = 0;
  long upper_t1 = 0, upper_t2 = 0;
};

long default_window(long r);

/// Finite-horizon estimates of the lower/upper Bohl exponents: extremal
/// geometric means of a_{t1+1..t2} over admissible windows.
BohlEstimate bohl_bounds(const Series& growth, long T, long horizon, long max_window = 0,
                         Execution exec = Execution::Parallel);

struct PeriodicPhi {
  std::vector<double> profile;  // phi_0 .. phi_{w-1}
  long sweeps = 0;
  double residual = 0.0;
};

/// Iterates the phi recursion period after period from phi = 1 until two
/// consecutive periods agree to `tol` in sup norm.
PeriodicPhi periodic_phi(const ChemostatParams& params, const WashoutSolution& z_periodic, double tol = 1e-12,
                         long max_sweeps = 10000);

/// Geometric mean of (1-E)(1 + phi_k p(z_k)) over one period.
double periodic_mean(const ChemostatParams& params, const WashoutSolution& z_periodic,
                     const std::vector<double>& phi_periodic);

/// For each t in [0, horizon]: prod_{k=floor(t/2)}^{t} (1 + phi_{k-r} p(z_{k-r}))(1-E).
Series sliding_statistic(const ChemostatParams& params, const WashoutSolution& z, const Series& phi, long horizon,
                         Execution exec = Execution::Parallel);

}  // namespace chemodde
