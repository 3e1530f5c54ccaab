#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chemodde/core.hpp"
#include "chemodde/dynamics.hpp"
#include "chemodde/exponents.hpp"
#include "chemodde/washout.hpp"

namespace chemodde {

enum class Verdict { Persistent, Extinct, Inconclusive };
enum class Basis { GeneralBohl, PeriodicMean };

std::string to_string(Verdict v);
std::string to_string(Basis b);

/// Band around 1 inside which a periodic mean is flagged as borderline.
inline constexpr double kBorderlineBand = 1e-9;

struct ClassificationReport {
  Verdict verdict = Verdict::Inconclusive;
  Basis basis = Basis::GeneralBohl;
  double lower = 0.0;  // lower Bohl estimate, or the periodic mean
  double upper = 0.0;  // upper Bohl estimate, or the periodic mean
  double lower_margin = 0.0;  // lower - 1
  double upper_margin = 0.0;  // 1 - upper
  bool borderline = false;
  std::optional<BohlEstimate> windows;  // general case only
  long phi_sweeps = 0;                  // periodic case only
  std::string note;
};

struct ClassifyOptions {
  long horizon = 4096;
  std::optional<long> T;  // default: default_window(r)
  long max_window = 0;
  double phi_tol = 1e-12;
  long phi_max_sweeps = 10000;
};

ClassificationReport classify(const ChemostatParams& params, const ClassifyOptions& opts = {});

struct PeriodicOrbit {
  long period = 0;
  std::vector<double> s;  // phase 0..w-1
  std::vector<double> x;
  double residual = 0.0;          // sup-norm gap between the last two periods
  double closure_residual = 0.0;  // one-period re-integration from the profile
  double delta = 0.0;             // min x over the period
  long periods_used = 0;
};

struct WashoutConvergence {
  WashoutSolution washout;
  long periods_used = 0;
  double final_max_x = 0.0;
};

using OrbitResult = std::variant<PeriodicOrbit, WashoutConvergence>;

struct OrbitOptions {
  double tol = 1e-10;
  long max_periods = 10000;
  double extinction_floor = 1e-14;  // relative to z_sup
};

/// Forward iteration of the period map until the (s, x) profile repeats or
/// the biomass falls below the extinction floor.
OrbitResult find_periodic_orbit(const ChemostatParams& params, const InitialHistory& init,
                                const OrbitOptions& opts = {});

struct AttractionFit {
  bool identical = false;
  double rho = 0.0;  // exp(slope) of log|xA - xB| vs t
  double slope = 0.0;
  double r_squared = 0.0;
  long points = 0;
  long fit_first = 0, fit_last = 0;
  std::optional<double> s_rho;  // same fit on the substrate gap, diagnostic
};

AttractionFit attraction_rate(const Trajectory& a, const Trajectory& b, long burn_in);

struct NeitherNorReport {
  bool trivial = false;  // x_0 = 0: nothing to show
  double E = 0.0;
  long r = 0;
  long n_max = 0;
  long horizon = 0;
  double x0 = 0.0;
  double bound = 0.0;  // (1-E)^{2(r+1)} x0

  std::vector<double> x_at_block_end;  // x_{2^{2n+1}}, n = 0..n_max
  std::vector<double> low_block_min;   // min x over [2^{2n+1}, 2^{2n+2}), n = 0..n_max-1
  bool check_bound = false;            // (a)
  bool check_low_block_decreasing = false;  // (b)
  bool check_inconclusive = false;          // (c)

  FeasibilityReport feasibility;
  std::optional<long> first_negative_s;
  std::optional<long> first_nonfinite_x;
  ClassificationReport classification;
  std::optional<Trajectory> trajectory;
};

/// p(s) = s with the dyadic-block input; `init` defaults to s = x = 0.1. The
/// classification window is min(default_window(r), (horizon - r)/4).
NeitherNorReport neither_nor_demo(double E, long r, long n_max, std::optional<InitialHistory> init = {});

}  // namespace chemodde
