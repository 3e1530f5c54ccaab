#include "chemodde/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "chemodde/errors.hpp"

namespace chemodde {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

long floor_mod(long t, long n) { return ((t % n) + n) % n; }

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

// ---------------------------------------------------------------------------
// UptakeFunction

UptakeFunction::UptakeFunction(Variant v) : kind_(std::move(v)) {
  std::visit(overloaded{
                 [](const Monod& m) {
                   if (!finite_positive(m.p_max)) throw ParameterError("uptake.p_max", "must be positive");
                   if (!finite_positive(m.k_s)) throw ParameterError("uptake.k_s", "must be positive");
                 },
                 [](const Linear& l) {
                   if (!finite_positive(l.slope)) throw ParameterError("uptake.slope", "must be positive");
                 },
                 [](const Tabulated& tab) {
                   const auto& g = tab.grid;
                   const auto& v = tab.values;
                   if (g.size() < 2 || g.size() != v.size())
                     throw ParameterError("uptake.grid", "need at least two points and matching values");
                   if (g[0] != 0.0 || v[0] != 0.0)
                     throw ParameterError("uptake.grid", "table must start at (0, 0)");
                   double first_slope = 0.0;
                   for (std::size_t i = 1; i < g.size(); ++i) {
                     if (!(g[i] > g[i - 1])) throw ParameterError("uptake.grid", "must be strictly increasing");
                     if (v[i] < v[i - 1]) throw ParameterError("uptake.values", "must be nondecreasing");
                     const double slope = (v[i] - v[i - 1]) / (g[i] - g[i - 1]);
                     if (i == 1) {
                       first_slope = slope;
                       if (!(slope > 0.0)) throw ParameterError("uptake.values", "first segment must be increasing");
                     } else if (slope > first_slope) {
                       throw ParameterError("uptake.values", "slopes may not exceed the slope at 0");
                     }
                   }
                 },
             },
             kind_);
}

double UptakeFunction::evaluate(double s) const {
  return std::visit(overloaded{
                        [s](const Monod& m) { return m.p_max * s / (m.k_s + s); },
                        [s](const Linear& l) { return l.slope * s; },
                        [s](const Tabulated& tab) {
                          const auto& g = tab.grid;
                          const auto& v = tab.values;
                          if (s <= 0.0) return s * (v[1] - v[0]) / (g[1] - g[0]);
                          if (s >= g.back()) return v.back();
                          const auto it = std::upper_bound(g.begin(), g.end(), s);
                          const auto i = static_cast<std::size_t>(it - g.begin());
                          const double w = (s - g[i - 1]) / (g[i] - g[i - 1]);
                          return v[i - 1] + w * (v[i] - v[i - 1]);
                        },
                    },
                    kind_);
}

double UptakeFunction::derivative(double s) const {
  return std::visit(overloaded{
                        [s](const Monod& m) { return m.p_max * m.k_s / ((m.k_s + s) * (m.k_s + s)); },
                        [](const Linear& l) { return l.slope; },
                        [s](const Tabulated& tab) {
                          const auto& g = tab.grid;
                          const auto& v = tab.values;
                          if (s < g[1]) return (v[1] - v[0]) / (g[1] - g[0]);
                          if (s >= g.back()) return 0.0;
                          const auto it = std::upper_bound(g.begin(), g.end(), s);
                          const auto i = static_cast<std::size_t>(it - g.begin());
                          return (v[i] - v[i - 1]) / (g[i] - g[i - 1]);
                        },
                    },
                    kind_);
}

std::string UptakeFunction::describe() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const Monod& m) { os << "monod(p_max=" << m.p_max << ", k_s=" << m.k_s << ")"; },
                 [&](const Linear& l) { os << "linear(slope=" << l.slope << ")"; },
                 [&](const Tabulated& t) { os << "tabulated(" << t.grid.size() << " points)"; },
             },
             kind_);
  return os.str();
}

// ---------------------------------------------------------------------------
// InputSignal

InputSignal::InputSignal(Variant v) : kind_(std::move(v)) {
  std::visit(overloaded{
                 [this](const Constant& c) {
                   if (!finite_positive(c.value)) throw ParameterError("input.value", "must be positive");
                   lower_ = upper_ = c.value;
                 },
                 [this](const Sinusoid& s) {
                   if (s.period < 1) throw ParameterError("input.period", "must be a positive integer");
                   if (!std::isfinite(s.amplitude) || !std::isfinite(s.offset))
                     throw ParameterError("input.amplitude", "must be finite");
                   const double amp = std::abs(s.amplitude);
                   if (!(s.offset - amp > 0.0))
                     throw ParameterError("input.offset", "offset - |amplitude| must be positive");
                   // Exact extrema over the integer sample points.
                   lower_ = upper_ = value_at(0);
                   for (long t = 1; t < s.period; ++t) {
                     const double v = value_at(t);
                     lower_ = std::min(lower_, v);
                     upper_ = std::max(upper_, v);
                   }
                 },
                 [this](const PiecewiseLinear& p) {
                   if (p.breakpoints.empty()) throw ParameterError("input.breakpoints", "must not be empty");
                   for (std::size_t i = 0; i < p.breakpoints.size(); ++i) {
                     if (!finite_positive(p.breakpoints[i].value))
                       throw ParameterError("input.breakpoints", "values must be positive");
                     if (i > 0 && !(p.breakpoints[i].t > p.breakpoints[i - 1].t))
                       throw ParameterError("input.breakpoints", "times must be strictly increasing");
                   }
                   const auto [lo, hi] = std::minmax_element(
                       p.breakpoints.begin(), p.breakpoints.end(),
                       [](const Breakpoint& a, const Breakpoint& b) { return a.value < b.value; });
                   lower_ = lo->value;
                   upper_ = hi->value;
                 },
                 [this](const ExplicitSequence& e) {
                   if (e.values.empty()) throw ParameterError("input.values", "must not be empty");
                   for (double v : e.values)
                     if (!finite_positive(v) && !(v == 0.0 && e.periodic))
                       throw ParameterError("input.values", "must be positive");
                   const auto [lo, hi] = std::minmax_element(e.values.begin(), e.values.end());
                   lower_ = *lo;
                   upper_ = *hi;
                 },
                 [this](const DyadicBlocks& d) {
                   if (!(d.E > 0.0 && d.E < 1.0)) throw ParameterError("input.E", "must lie in (0, 1)");
                   if (d.r < 0) throw ParameterError("input.r", "must be nonnegative");
                   const double high = std::pow(1.0 - d.E, -2.0 * static_cast<double>(d.r) - 2.0) / d.E;
                   if (!std::isfinite(high) || high > 1e300)
                     throw DomainError("dyadic high value E^-1 (1-E)^(-2r-2) overflows");
                   lower_ = d.E / 2.0;
                   upper_ = high;
                 },
             },
             kind_);
}

double InputSignal::value_at(long t) const {
  return std::visit(
      overloaded{
          [](const Constant& c) { return c.value; },
          [t](const Sinusoid& s) {
            const long phase = floor_mod(t, s.period);
            return s.amplitude *
                       std::sin(2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(s.period)) +
                   s.offset;
          },
          [t](const PiecewiseLinear& p) {
            const auto& b = p.breakpoints;
            if (t <= b.front().t) return b.front().value;
            if (t >= b.back().t) return b.back().value;
            const auto it = std::upper_bound(b.begin(), b.end(), t,
                                             [](long v, const Breakpoint& bp) { return v < bp.t; });
            const auto& hi = *it;
            const auto& lo = *(it - 1);
            const double w = static_cast<double>(t - lo.t) / static_cast<double>(hi.t - lo.t);
            return lo.value + w * (hi.value - lo.value);
          },
          [t](const ExplicitSequence& e) {
            const long n = static_cast<long>(e.values.size());
            if (e.periodic) return e.values[static_cast<std::size_t>(floor_mod(t, n))];
            if (t <= 0) return e.values.front();
            if (t >= n) return e.values.back();
            return e.values[static_cast<std::size_t>(t)];
          },
          [t](const DyadicBlocks& d) {
            const double low = d.E / 2.0;
            if (t < 1) return low;
            // floor(log2 t) even <=> t in [2^(2n), 2^(2n+1)).
            const int msb = 63 - __builtin_clzl(static_cast<unsigned long>(t));
            if (msb % 2 != 0) return low;
            return std::pow(1.0 - d.E, -2.0 * static_cast<double>(d.r) - 2.0) / d.E;
          },
      },
      kind_);
}

std::optional<long> InputSignal::period() const {
  return std::visit(overloaded{
                        [](const Constant&) -> std::optional<long> { return 1; },
                        [](const Sinusoid& s) -> std::optional<long> { return s.period; },
                        [](const PiecewiseLinear&) -> std::optional<long> { return std::nullopt; },
                        [](const ExplicitSequence& e) -> std::optional<long> {
                          if (e.periodic) return static_cast<long>(e.values.size());
                          return std::nullopt;
                        },
                        [](const DyadicBlocks&) -> std::optional<long> { return std::nullopt; },
                    },
                    kind_);
}

std::string InputSignal::describe() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const Constant& c) { os << "constant(" << c.value << ")"; },
                 [&](const Sinusoid& s) {
                   os << "sinusoid(amplitude=" << s.amplitude << ", period=" << s.period << ", offset=" << s.offset
                      << ")";
                 },
                 [&](const PiecewiseLinear& p) { os << "piecewise(" << p.breakpoints.size() << " breakpoints)"; },
                 [&](const ExplicitSequence& e) {
                   os << "sequence(" << e.values.size() << (e.periodic ? ", periodic)" : ")");
                 },
                 [&](const DyadicBlocks& d) { os << "dyadic(E=" << d.E << ", r=" << d.r << ")"; },
             },
             kind_);
  return os.str();
}

// ---------------------------------------------------------------------------

void ChemostatParams::validate() const {
  if (!(E > 0.0 && E < 1.0)) throw ParameterError("model.E", "must lie in (0, 1), got " + std::to_string(E));
  if (r < 0) throw ParameterError("model.r", "must be a nonnegative integer, got " + std::to_string(r));
}

InitialHistory InitialHistory::constant(long r, double s, double x) {
  const auto n = static_cast<std::size_t>(r + 1);
  return {std::vector<double>(n, s), std::vector<double>(n, x)};
}

void InitialHistory::validate(long r) const {
  const auto n = static_cast<std::size_t>(r + 1);
  if (s_in.size() != n || x_in.size() != n)
    throw UsageError("initial history must have r+1 = " + std::to_string(n) + " entries, got s:" +
                     std::to_string(s_in.size()) + " x:" + std::to_string(x_in.size()));
  for (std::size_t j = 0; j < n; ++j) {
    if (!(s_in[j] >= 0.0) || !(x_in[j] >= 0.0))
      throw UsageError("initial history entries must be nonnegative (index " +
                       std::to_string(static_cast<long>(j) - r) + ")");
  }
}

FeasibilityReport validate_standing_hypotheses(const ChemostatParams& params, double z_sup) {
  params.validate();
  FeasibilityReport rep;
  rep.z_sup = z_sup;
  rep.pz_product = params.uptake.derivative_at_zero() * z_sup;
  rep.hypothesis_pz = rep.pz_product > 0.0 && rep.pz_product <= 1.0;
  return rep;
}

}  // namespace chemodde
