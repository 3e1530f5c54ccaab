#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace chemodde {

// ---------------------------------------------------------------------------
// Uptake functions p(s)
// ---------------------------------------------------------------------------

/// p(s) = p_max * s / (k_s + s)
struct Monod {
  double p_max = 1.0;
  double k_s = 1.0;
};

/// p(s) = slope * s. Unbounded; admitted for the dyadic demonstration.
struct Linear {
  double slope = 1.0;
};

/// Monotone piecewise-linear interpolation through (grid[i], values[i]).
/// grid[0] = 0, values[0] = 0; constant beyond the last grid point; linear
/// extrapolation with the first slope for s < 0.
struct Tabulated {
  std::vector<double> grid;
  std::vector<double> values;
};

class UptakeFunction {
 public:
  using Variant = std::variant<Monod, Linear, Tabulated>;

  UptakeFunction(Variant v);  // validates, throws ParameterError
  static UptakeFunction monod(double p_max, double k_s) { return UptakeFunction(Monod{p_max, k_s}); }
  static UptakeFunction linear(double slope) { return UptakeFunction(Linear{slope}); }

  double evaluate(double s) const;
  double derivative(double s) const;
  double derivative_at_zero() const { return derivative(0.0); }
  bool bounded() const { return !std::holds_alternative<Linear>(kind_); }

  const Variant& kind() const noexcept { return kind_; }
  std::string describe() const;

 private:
  Variant kind_;
};

// ---------------------------------------------------------------------------
// Input signals s^0_t
// ---------------------------------------------------------------------------

struct Constant {
  double value = 1.0;
};

/// amplitude * sin(2*pi*t/period) + offset, integer period.
struct Sinusoid {
  double amplitude = 0.0;
  long period = 1;
  double offset = 1.0;
};

struct Breakpoint {
  long t;
  double value;
};

/// Linear interpolation between breakpoints, clamped outside.
struct PiecewiseLinear {
  std::vector<Breakpoint> breakpoints;
};

/// Values for t = 0..n-1. Periodic sequences wrap; otherwise clamped to the
/// first value for t < 0 and the last for t >= n.
struct ExplicitSequence {
  std::vector<double> values;
  bool periodic = false;
};

/// High value E^-1 (1-E)^(-2r-2) on [2^(2n), 2^(2n+1)), n >= 0, and E/2
/// elsewhere. Demonstration only: it can violate the positivity hypothesis.
struct DyadicBlocks {
  double E = 0.5;
  long r = 0;
};

class InputSignal {
 public:
  using Variant = std::variant<Constant, Sinusoid, PiecewiseLinear, ExplicitSequence, DyadicBlocks>;

  InputSignal(Variant v);  // validates, throws ParameterError

  double value_at(long t) const;
  double lower_bound() const noexcept { return lower_; }
  double upper_bound() const noexcept { return upper_; }
  /// Period in steps for periodic variants (Constant has period 1).
  std::optional<long> period() const;
  bool demonstration_only() const { return std::holds_alternative<DyadicBlocks>(kind_); }

  const Variant& kind() const noexcept { return kind_; }
  std::string describe() const;

 private:
  Variant kind_;
  double lower_ = 0.0;
  double upper_ = 0.0;
};

// ---------------------------------------------------------------------------
// Problem statement
// ---------------------------------------------------------------------------

struct ChemostatParams {
  double E;
  long r;
  UptakeFunction uptake;
  InputSignal input;

  /// Throws ParameterError naming the offending field.
  void validate() const;
  double survival() const { return 1.0 - E; }
};

/// Initial history on t = -r..0; element j holds time j - r.
struct InitialHistory {
  std::vector<double> s_in;
  std::vector<double> x_in;

  static InitialHistory constant(long r, double s, double x);
  void validate(long r) const;  // throws UsageError
  double s0() const { return s_in.back(); }
  double x0() const { return x_in.back(); }
};

/// Outcome of the standing-hypothesis and initial-mass checks. Failure is
/// reported, not thrown.
struct FeasibilityReport {
  bool hypothesis_pz = false;
  double pz_product = 0.0;  // p'(0) * z_sup
  double z_sup = 0.0;

  std::optional<bool> initial_mass_ok;  // s0 + x0 + y0 <= z0
  double initial_mass = 0.0;
  double z0 = 0.0;

  bool all_hold() const { return hypothesis_pz && initial_mass_ok.value_or(false); }
};

FeasibilityReport validate_standing_hypotheses(const ChemostatParams& params, double z_sup);

}  // namespace chemodde
