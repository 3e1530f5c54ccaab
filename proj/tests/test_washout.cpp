#include <cmath>

#include "doctest.h"
#include "support.hpp"

using namespace chemodde;
using chemodde::testing::rel_err;

namespace {

ChemostatParams with_input(double E, long r, InputSignal in) {
  return {E, r, UptakeFunction::monod(1.0, 1.0), std::move(in)};
}

}  // namespace

TEST_CASE("constant input is its own washout") {
  for (double E : {0.05, 0.3, 0.9})
    for (long depth : {0L, 5L, 400L}) {
      const auto z = washout_sequence(with_input(E, 3, InputSignal(Constant{0.5})), 50, depth);
      for (long t = -3; t <= 50; ++t) CHECK(z.z[t] == doctest::Approx(0.5).epsilon(1e-15));
    }
  const auto zp = washout_periodic(with_input(0.3, 2, InputSignal(Constant{0.7})));
  CHECK(*zp.period == 1);
  CHECK(zp.profile[0] == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(zp.tail_error_bound == 0.0);
}

TEST_CASE("period-2 input solves the 2x2 periodic system") {
  // z0 = z1/2 + s1/2, z1 = z0/2 + s0/2 with s = (0, 1): z = (2/3, 1/3).
  const auto P = with_input(0.5, 0, InputSignal(ExplicitSequence{{0.0, 1.0}, true}));
  const auto zp = washout_periodic(P);
  CHECK(zp.profile[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(zp.profile[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  const auto zs = washout_sequence(P, 40);
  for (long t = 0; t <= 40; ++t) CHECK(zs.z[t] == doctest::Approx(t % 2 == 0 ? 2.0 / 3.0 : 1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("washout recursion, bounds and tail bound") {
  const auto P = with_input(1.0 / 8.0, 5, InputSignal(Sinusoid{0.25, 500, 0.6}));
  const auto z = washout_sequence(P, 3000);
  CHECK(z.z.first() == -5);
  for (long t = -5; t < 3000; ++t) {
    CHECK(rel_err(z.z[t + 1], (1 - P.E) * z.z[t] + P.E * P.input.value_at(t)) <= 1e-12);
    CHECK(z.z[t] >= 0.35 - 1e-15);
    CHECK(z.z[t] <= 0.85 + 1e-15);
  }
  CHECK(z.tail_error_bound < 1e-25);
  CHECK(default_tail_depth(P.E) == static_cast<long>(std::ceil(60.0 / -std::log(1.0 - P.E))));
}

TEST_CASE("periodic washout agrees with a deep-tail direct sum") {
  const auto P = with_input(1.0 / 8.0, 5, InputSignal(Sinusoid{0.25, 500, 0.6}));
  const auto zp = washout_periodic(P);
  const auto zs = washout_sequence(P, 1000, 1000);
  for (long t = 0; t <= 1000; ++t) {
    CHECK(std::abs(zp.at(t) - zs.z[t]) <= 1e-10 * zp.z_sup);
    CHECK(std::abs(zp.at(t) - zs.z[t]) <= zs.tail_error_bound + 1e-15);
  }
  // Independent oracle: direct summation without recursion.
  for (long t : {0L, 1L, 137L, 499L}) CHECK(zp.at(t) == doctest::Approx(chemodde::testing::washout_direct_sum(P, t, 1200)).epsilon(1e-13));
  for (long t = 0; t < 1500; ++t) CHECK(rel_err(zp.at(t + 500), zp.at(t)) <= 1e-10);
}

TEST_CASE("washout forgets its initial value at rate (1-E)") {
  const auto P = with_input(0.2, 3, InputSignal(Sinusoid{0.1, 17, 0.5}));
  const auto base = washout_sequence(P, 200);
  // A second solution started from a fabricated z_{-r}.
  const double dz = 0.3;
  double other = base.z[-3] + dz;
  for (long t = -3; t < 200; ++t) {
    const double expected = std::pow(1 - P.E, t + 3) * dz;
    CHECK(rel_err(other - base.z[t], expected) <= 1e-10 + 1e-14 / expected);
    other = (1 - P.E) * other + P.E * P.input.value_at(t);
  }
}

TEST_CASE("washout preconditions") {
  const auto P = with_input(0.2, 3, InputSignal(Constant{1.0}));
  CHECK_THROWS_AS(washout_sequence(P, 2), UsageError);
  CHECK_THROWS_AS(washout_sequence(P, 10, -1), UsageError);
  const auto np = with_input(0.2, 3, InputSignal(PiecewiseLinear{{{0, 1.0}, {10, 0.5}}}));
  CHECK_THROWS_AS(washout_periodic(np), UsageError);
  const auto z = washout_sequence(np, 10);
  CHECK_THROWS_AS(z.at(11), UsageError);
}
