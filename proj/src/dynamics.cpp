#include "chemodde/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chemodde/errors.hpp"

namespace chemodde {

namespace {

double pow_survival(double q, long n) { return std::pow(q, static_cast<double>(n)); }

}  // namespace

Trajectory simulate(const ChemostatParams& params, const InitialHistory& init, long horizon) {
  params.validate();
  init.validate(params.r);
  if (horizon < 0) throw UsageError("horizon must be nonnegative");

  const long r = params.r;
  const double E = params.E;
  const double q = 1.0 - E;
  const double q_delay = pow_survival(q, r + 1);
  const auto& p = params.uptake;

  Trajectory traj{params, Series(-r, horizon, 0.0), Series(-r, horizon, 0.0), Series(0, horizon, 0.0), {}, false, {}};
  for (long j = -r; j <= 0; ++j) {
    traj.s[j] = init.s_in[static_cast<std::size_t>(j + r)];
    traj.x[j] = init.x_in[static_cast<std::size_t>(j + r)];
  }

  // uptake[t] = x_t p(s_t), kept so the delayed term and y reuse it.
  Series uptake(-r, horizon, 0.0);
  for (long j = -r; j <= 0; ++j) uptake[j] = traj.x[j] * p.evaluate(traj.s[j]);

  for (long t = 0; t < horizon; ++t) {
    const double st = traj.s[t];
    const double xt = traj.x[t];
    traj.s[t + 1] = E * params.input.value_at(t) + q * (st - uptake[t]);
    traj.x[t + 1] = q * xt + uptake[t - r] * q_delay;
    uptake[t + 1] = traj.x[t + 1] * p.evaluate(traj.s[t + 1]);
    if (traj.s[t + 1] < 0.0 && !traj.negative_s) {
      traj.negative_s = true;
      traj.first_negative_s = t + 1;
    }
  }

  for (long t = 0; t <= horizon; ++t) {
    double y = 0.0;
    double w = q;
    for (long k = 0; k < r; ++k, w *= q) y += uptake[t - 1 - k] * w;
    traj.y[t] = y;
  }
  return traj;
}

Trajectory simulate(const ChemostatParams& params, const InitialHistory& init, long horizon,
                    const WashoutSolution& z) {
  Trajectory traj = simulate(params, init, horizon);
  traj.deficit0 = traj.s[0] + traj.x[0] + traj.y[0] - z.at(0);
  return traj;
}

double stored_nutrient(const Trajectory& traj, long t) {
  const long r = traj.params.r;
  if (t < 0 || t > traj.horizon())
    throw UsageError("stored_nutrient needs t in [0, horizon], got " + std::to_string(t));
  const double q = traj.params.survival();
  double y = 0.0;
  for (long k = 0; k < r; ++k) {
    const long j = t - 1 - k;
    y += traj.x[j] * traj.params.uptake.evaluate(traj.s[j]) * pow_survival(q, k + 1);
  }
  return y;
}

double initial_stored_nutrient(const ChemostatParams& params, const InitialHistory& init) {
  init.validate(params.r);
  const long r = params.r;
  const double q = params.survival();
  double y = 0.0;
  for (long k = 0; k < r; ++k) {
    const auto j = static_cast<std::size_t>(r - 1 - k);  // time -1-k
    y += init.x_in[j] * params.uptake.evaluate(init.s_in[j]) * pow_survival(q, k + 1);
  }
  return y;
}

Series conservation_deficit(const Trajectory& traj, const WashoutSolution& z) {
  const long h = traj.horizon();
  if (!z.period && (!z.z.contains(0) || !z.z.contains(h)))
    throw UsageError("washout solution does not cover the trajectory range");
  Series d(0, h, 0.0);
  for (long t = 0; t <= h; ++t) d[t] = traj.s[t] + traj.x[t] + traj.y[t] - z.at(t);
  return d;
}

double conservation_deviation(const Trajectory& traj, const WashoutSolution& z) {
  const Series d = conservation_deficit(traj, z);
  const double q = traj.params.survival();
  double decay = 1.0;
  double worst = 0.0;
  for (long t = 0; t <= d.last(); ++t, decay *= q) worst = std::max(worst, std::abs(d[t] - decay * d[0]));
  return worst;
}

double r_step_identity_residual(const Trajectory& traj) {
  const long r = traj.params.r;
  const double qr = pow_survival(traj.params.survival(), r);
  double worst = 0.0;
  for (long t = r; t <= traj.horizon(); ++t) {
    const double rhs = qr * (traj.x[t - r] + traj.y[t - r]);
    // Subnormal values carry no relative precision; measure them against the
    // smallest normal double instead.
    const double scale = std::max({std::abs(traj.x[t]), std::abs(rhs), std::numeric_limits<double>::min()});
    worst = std::max(worst, std::abs(traj.x[t] - rhs) / scale);
  }
  return worst;
}

double recursion_residual(const Trajectory& traj, double scale) {
  const auto& P = traj.params;
  const long r = P.r;
  const double q = P.survival();
  const double qd = pow_survival(q, r + 1);
  double worst = 0.0;
  for (long t = 0; t < traj.horizon(); ++t) {
    const double s_rhs = P.E * P.input.value_at(t) + q * (traj.s[t] - traj.x[t] * P.uptake.evaluate(traj.s[t]));
    const double x_rhs = q * traj.x[t] + traj.x[t - r] * P.uptake.evaluate(traj.s[t - r]) * qd;
    worst = std::max(worst, std::abs(traj.s[t + 1] - s_rhs) / std::max(std::abs(s_rhs), scale));
    worst = std::max(worst, std::abs(traj.x[t + 1] - x_rhs) / std::max(std::abs(x_rhs), scale));
  }
  return worst;
}

FeasibilityReport check_positivity_preconditions(const ChemostatParams& params, const InitialHistory& init,
                                                 const WashoutSolution& z) {
  FeasibilityReport rep = validate_standing_hypotheses(params, z.z_sup);
  init.validate(params.r);
  rep.z0 = z.at(0);
  rep.initial_mass = init.s0() + init.x0() + initial_stored_nutrient(params, init);
  rep.initial_mass_ok = rep.initial_mass <= rep.z0;
  return rep;
}

}  // namespace chemodde
