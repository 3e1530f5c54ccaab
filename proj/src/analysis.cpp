#include "chemodde/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chemodde/errors.hpp"

namespace chemodde {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Persistent: return "Persistent";
    case Verdict::Extinct: return "Extinct";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string to_string(Basis b) { return b == Basis::GeneralBohl ? "GeneralBohl" : "PeriodicMean"; }

// ---------------------------------------------------------------------------

ClassificationReport classify(const ChemostatParams& params, const ClassifyOptions& opts) {
  params.validate();
  ClassificationReport rep;

  if (params.input.period()) {
    const auto z = washout_periodic(params);
    const auto phi = periodic_phi(params, z, opts.phi_tol, opts.phi_max_sweeps);
    const double mean = periodic_mean(params, z, phi.profile);
    rep.basis = Basis::PeriodicMean;
    rep.lower = rep.upper = mean;
    rep.lower_margin = mean - 1.0;
    rep.upper_margin = 1.0 - mean;
    rep.phi_sweeps = phi.sweeps;
    rep.borderline = std::abs(mean - 1.0) <= kBorderlineBand;
    // A mean equal to 1 already forces extinction in the periodic case.
    rep.verdict = mean > 1.0 ? Verdict::Persistent : Verdict::Extinct;
    if (rep.borderline) rep.note = "mean within 1e-9 of the threshold; verdict sensitive to rounding";
    return rep;
  }

  const long T = opts.T.value_or(default_window(params.r));
  if (opts.horizon < 2 * T + params.r)
    throw UsageError("classify horizon must be at least 2T + r = " + std::to_string(2 * T + params.r));
  const auto z = washout_sequence(params, opts.horizon);
  const auto corr = phi_sequence(params, z, opts.horizon);
  const auto growth = growth_sequence(params, z, corr.phi, opts.horizon);
  const auto est = bohl_bounds(growth, T, opts.horizon, opts.max_window);

  rep.basis = Basis::GeneralBohl;
  rep.lower = est.lower;
  rep.upper = est.upper;
  rep.lower_margin = est.lower - 1.0;
  rep.upper_margin = 1.0 - est.upper;
  rep.windows = est;
  if (est.lower > 1.0)
    rep.verdict = Verdict::Persistent;
  else if (est.upper < 1.0)
    rep.verdict = Verdict::Extinct;
  else
    rep.verdict = Verdict::Inconclusive;
  rep.note = "finite-horizon window estimates of the Bohl exponents";
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

long phase_of(long t, long w) { return ((t % w) + w) % w; }

}  // namespace

OrbitResult find_periodic_orbit(const ChemostatParams& params, const InitialHistory& init, const OrbitOptions& opts) {
  params.validate();
  init.validate(params.r);
  const auto w_opt = params.input.period();
  if (!w_opt) throw UsageError("find_periodic_orbit requires a periodic input signal");
  const long w = *w_opt;
  const long r = params.r;
  const double q = params.survival();
  const double qd = std::pow(q, static_cast<double>(r + 1));
  const auto& p = params.uptake;
  const auto uw = static_cast<std::size_t>(w);

  const auto washout = washout_periodic(params);
  const double floor = opts.extinction_floor * washout.z_sup;

  // Sliding history of length r+1 for s, x and the uptake x p(s); index 0 is
  // the oldest entry (time t - r).
  const auto n = static_cast<std::size_t>(r + 1);
  std::vector<double> s_hist(init.s_in), x_hist(init.x_in), up_hist(n);
  for (std::size_t j = 0; j < n; ++j) up_hist[j] = x_hist[j] * p.evaluate(s_hist[j]);
  std::size_t head = 0;  // position of time t - r in the ring
  auto newest = [&] { return (head + n - 1) % n; };

  std::vector<double> s_prev(uw), x_prev(uw), s_cur(uw), x_cur(uw);
  double residual = std::numeric_limits<double>::infinity();
  long t = 0;
  for (long period = 1; period <= opts.max_periods; ++period) {
    double max_x = 0.0;
    for (long k = 0; k < w; ++k, ++t) {
      const std::size_t now = newest();
      // Record the state at time t (phase t mod w) before stepping.
      s_cur[static_cast<std::size_t>(phase_of(t, w))] = s_hist[now];
      x_cur[static_cast<std::size_t>(phase_of(t, w))] = x_hist[now];
      max_x = std::max(max_x, std::abs(x_hist[now]));

      const double s_next = params.E * params.input.value_at(t) + q * (s_hist[now] - up_hist[now]);
      const double x_next = q * x_hist[now] + up_hist[head] * qd;
      s_hist[head] = s_next;
      x_hist[head] = x_next;
      up_hist[head] = x_next * p.evaluate(s_next);
      head = (head + 1) % n;
    }

    if (!std::isfinite(max_x)) throw DomainError("find_periodic_orbit: biomass became non-finite", t);
    if (max_x < floor) {
      WashoutConvergence wc;
      wc.washout = washout;
      wc.periods_used = period;
      wc.final_max_x = max_x;
      return wc;
    }
    if (period > 1) {
      residual = 0.0;
      for (std::size_t i = 0; i < uw; ++i)
        residual = std::max({residual, std::abs(s_cur[i] - s_prev[i]), std::abs(x_cur[i] - x_prev[i])});
      // Require a small gap relative to the biomass level as well, so a slowly
      // vanishing x is not mistaken for a positive orbit.
      if (residual < opts.tol && residual / max_x < std::sqrt(opts.tol)) {
        PeriodicOrbit orbit;
        orbit.period = w;
        orbit.s = s_cur;
        orbit.x = x_cur;
        orbit.residual = residual;
        orbit.periods_used = period;
        orbit.delta = *std::min_element(x_cur.begin(), x_cur.end());

        // Closed loop: start from the profile's history window ending at phase 0
        // and integrate one period.
        InitialHistory hist{std::vector<double>(n), std::vector<double>(n)};
        for (long j = -r; j <= 0; ++j) {
          const auto ph = static_cast<std::size_t>(phase_of(j, w));
          hist.s_in[static_cast<std::size_t>(j + r)] = orbit.s[ph];
          hist.x_in[static_cast<std::size_t>(j + r)] = orbit.x[ph];
        }
        // The input phase at orbit time 0 is a multiple of w, so simulating
        // from t = 0 uses the same s^0 samples.
        const Trajectory loop = simulate(params, hist, w);
        double closure = 0.0;
        for (long tt = 1; tt <= w; ++tt) {
          const auto ph = static_cast<std::size_t>(phase_of(tt, w));
          closure = std::max({closure, std::abs(loop.s[tt] - orbit.s[ph]), std::abs(loop.x[tt] - orbit.x[ph])});
        }
        orbit.closure_residual = closure;
        return orbit;
      }
    }
    std::swap(s_prev, s_cur);
    std::swap(x_prev, x_cur);
  }
  throw ConvergenceError("find_periodic_orbit: no orbit or washout within " + std::to_string(opts.max_periods) +
                             " periods",
                         residual);
}

// ---------------------------------------------------------------------------

namespace {

struct LineFit {
  double slope = 0.0;
  double r_squared = 0.0;
  long points = 0;
  long first = 0, last = 0;
};

// Least-squares slope of log|gap_t| over [burn_in, end), stopping at the first
// gap that is zero, below 1e-300, or lost in round-off of the compared values.
std::optional<LineFit> fit_log_gap(const Series& a, const Series& b, long burn_in) {
  constexpr double kTiny = 1e-300;
  constexpr double kNoise = 64.0 * std::numeric_limits<double>::epsilon();
  const long last = std::min(a.last(), b.last());
  double st = 0, sy = 0, stt = 0, sty = 0, syy = 0;
  long n = 0;
  long t = burn_in;
  for (; t <= last; ++t) {
    const double gap = std::abs(a[t] - b[t]);
    const double mag = std::max(std::abs(a[t]), std::abs(b[t]));
    if (!(gap > kTiny) || gap <= kNoise * mag) break;
    const double y = std::log(gap);
    const auto x = static_cast<double>(t);
    st += x;
    sy += y;
    stt += x * x;
    sty += x * y;
    syy += y * y;
    ++n;
  }
  if (n < 2) return std::nullopt;
  const double dn = static_cast<double>(n);
  const double var_t = stt - st * st / dn;
  const double cov = sty - st * sy / dn;
  const double var_y = syy - sy * sy / dn;
  LineFit fit;
  fit.slope = cov / var_t;
  fit.r_squared = var_y > 0.0 ? (cov * cov) / (var_t * var_y) : 1.0;
  fit.points = n;
  fit.first = burn_in;
  fit.last = burn_in + n - 1;
  return fit;
}

bool identical_from(const Series& a, const Series& b, long burn_in) {
  for (long t = burn_in; t <= std::min(a.last(), b.last()); ++t)
    if (a[t] != b[t]) return false;
  return true;
}

}  // namespace

AttractionFit attraction_rate(const Trajectory& a, const Trajectory& b, long burn_in) {
  if (a.params.E != b.params.E || a.params.r != b.params.r)
    throw UsageError("attraction_rate needs trajectories of the same system");
  if (burn_in < 0 || burn_in > std::min(a.horizon(), b.horizon()))
    throw UsageError("burn_in outside the trajectory range");

  AttractionFit out;
  if (const auto sfit = fit_log_gap(a.s, b.s, burn_in)) out.s_rho = std::exp(sfit->slope);

  if (identical_from(a.x, b.x, burn_in)) {
    out.identical = true;
    out.rho = 0.0;
    return out;
  }
  const auto fit = fit_log_gap(a.x, b.x, burn_in);
  if (!fit) throw DomainError("attraction_rate: fewer than two usable gap samples after burn-in", burn_in);
  out.slope = fit->slope;
  out.rho = std::exp(fit->slope);
  out.r_squared = fit->r_squared;
  out.points = fit->points;
  out.fit_first = fit->first;
  out.fit_last = fit->last;
  return out;
}

// ---------------------------------------------------------------------------

NeitherNorReport neither_nor_demo(double E, long r, long n_max, std::optional<InitialHistory> init) {
  if (!(E > 0.0 && E < 1.0)) throw ParameterError("E", "must lie in (0, 1)");
  if (r < 0) throw ParameterError("r", "must be nonnegative");
  if (n_max < 1 || n_max > 28) throw UsageError("n_max must lie in [1, 28]");

  ChemostatParams params{E, r, UptakeFunction::linear(1.0), InputSignal(DyadicBlocks{E, r})};
  const InitialHistory hist = init.value_or(InitialHistory::constant(r, 0.1, 0.1));
  hist.validate(r);

  NeitherNorReport rep;
  rep.E = E;
  rep.r = r;
  rep.n_max = n_max;
  rep.horizon = (1L << (2 * n_max + 1)) + r;
  rep.x0 = hist.x0();
  rep.bound = std::pow(1.0 - E, 2.0 * static_cast<double>(r + 1)) * rep.x0;

  const auto z = washout_sequence(params, rep.horizon);
  rep.feasibility = check_positivity_preconditions(params, hist, z);
  rep.trajectory = simulate(params, hist, rep.horizon, z);
  rep.first_negative_s = rep.trajectory->first_negative_s;
  for (long t = 0; t <= rep.horizon; ++t) {
    if (!std::isfinite(rep.trajectory->x[t])) {
      rep.first_nonfinite_x = t;
      break;
    }
  }

  ClassifyOptions copts;
  copts.horizon = rep.horizon;
  // Short demos cannot host the default window; keep at least two blocks per window range.
  copts.T = std::min(default_window(r), std::max(1L, (rep.horizon - r) / 4));
  rep.classification = classify(params, copts);
  rep.check_inconclusive = rep.classification.verdict == Verdict::Inconclusive;

  bool all_zero = true;
  for (double v : hist.x_in) all_zero = all_zero && v == 0.0;
  if (all_zero) {
    rep.trivial = true;
    return rep;
  }

  const auto& x = rep.trajectory->x;
  rep.check_bound = true;
  for (long n = 0; n <= n_max; ++n) {
    const double v = x[1L << (2 * n + 1)];
    rep.x_at_block_end.push_back(v);
    // NaN fails the comparison as well.
    if (!(v >= rep.bound)) rep.check_bound = false;
  }
  for (long n = 0; n < n_max; ++n) {
    double lo = std::numeric_limits<double>::infinity();
    for (long t = 1L << (2 * n + 1); t < (1L << (2 * n + 2)); ++t) lo = std::min(lo, x[t]);
    if (std::isnan(x[1L << (2 * n + 1)])) lo = std::numeric_limits<double>::quiet_NaN();
    rep.low_block_min.push_back(lo);
  }
  rep.check_low_block_decreasing = true;
  for (std::size_t i = 1; i < rep.low_block_min.size(); ++i) {
    const double prev = rep.low_block_min[i - 1];
    const double cur = rep.low_block_min[i];
    // Diverging or undefined values do not count as a decrease toward zero.
    if (!(cur < prev) || !std::isfinite(cur) || !std::isfinite(prev) || cur < 0.0) rep.check_low_block_decreasing = false;
  }
  return rep;
}

}  // namespace chemodde
