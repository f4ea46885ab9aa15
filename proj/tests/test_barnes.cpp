// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "dirzeta/barnes.hpp"
#include "dirzeta/directional.hpp"
#include "dirzeta/exact.hpp"

using namespace dirzeta;

namespace {

Rational random_positive(std::mt19937& rng, long num_max, long den_max) {
  std::uniform_int_distribution<long> nd(1, num_max), dd(1, den_max);
  return rat(nd(rng), dd(rng));
}

// Q = 1 problem whose value at the target is zeta^B(R, -m, d | w).
Problem one_row(const MultiIndex& R, unsigned m, const std::vector<Rational>& d, const std::vector<Rational>& w) {
  const auto P = static_cast<unsigned>(d.size());
  Problem pr;
  pr.spec = {P, 1, {w}, d};
  pr.dir = {std::vector<Rational>(P, Rational(0)), {Rational(1)}};
  pr.target = {R, {m}};
  return pr;
}

}  // namespace

TEST_CASE("reduction examples") {
  const BarnesReduction id = barnes_reduce({{0, 0}, {rat(1), rat(1)}, {rat(1), rat(1)}});
  CHECK(id.wstar == 1);
  CHECK(id.factor == 1);
  CHECK(id.shifted.size() == 1);

  const BarnesReduction one = barnes_reduce({{3}, {rat(1, 2)}, {rat(2)}});
  CHECK(one.wstar == 2);
  CHECK(one.beta == std::vector<Integer>{1});
  CHECK(one.shifted == std::vector<std::vector<Rational>>{{rat(1, 2)}});

  const BarnesReduction two = barnes_reduce({{2, 0}, {rat(1), rat(1)}, {rat(1), rat(2)}});
  CHECK(two.wstar == 2);
  CHECK(two.beta == std::vector<Integer>{2, 1});
  CHECK(two.factor == 4);
  auto shifted = two.shifted;
  std::sort(shifted.begin(), shifted.end());
  CHECK(shifted == std::vector<std::vector<Rational>>{{rat(1, 2), rat(1)}, {rat(1), rat(1)}});

  const BarnesReduction frac = barnes_reduce({{0, 0}, {rat(1), rat(1)}, {rat(2, 3), rat(4, 9)}});
  CHECK(frac.wstar == rat(4, 3));
  CHECK(frac.beta == std::vector<Integer>{2, 3});
}

TEST_CASE("reduction matches the series") {
  // both sides summed directly at s = 5
  const BarnesSpec lhs{{0, 0}, {rat(1), rat(1)}, {rat(1), rat(2)}};
  const BarnesReduction red = barnes_reduce(lhs);
  double rhs = 0;
  for (const auto& sh : red.shifted) rhs += barnes_series({{0, 0}, sh, {rat(1), rat(1)}}, 5.0, 3000);
  rhs *= to_double(red.factor) * std::pow(to_double(red.wstar), -5.0);
  CHECK(barnes_series(lhs, 5.0, 3000) == doctest::Approx(rhs).epsilon(1e-9));
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(barnes_reduce({{0}, {rat(0)}, {rat(1)}}), DomainError);
  CHECK_THROWS_AS(barnes_reduce({{0}, {rat(1)}, {rat(-1)}}), DomainError);
  CHECK_THROWS_AS(barnes_reduce({{0, 0}, {rat(1)}, {rat(1)}}), DomainError);
  CHECK_THROWS_AS(barnes_one_value({}, 0, {}), DomainError);
  CHECK_THROWS_AS(barnes_unit_eval({0}, 1.0, {rat(1)}), DomainError);
}

TEST_CASE("one-coordinate collapse") {
  std::mt19937 rng(13);
  for (int t = 0; t < 20; ++t) {
    const Rational d = random_positive(rng, 12, 5), w = random_positive(rng, 9, 4);
    for (unsigned R = 0; R <= 4; ++R) {
      for (unsigned m = 0; m <= 4; ++m) {
        const Rational z = hurwitz_zeta_neg(m + R, d);
        CHECK(barnes_one_value({R}, m, {d}) == z);
        CHECK(barnes_value({R}, m, {d}, {w}) == ipow(w, m) * z);
        CHECK(barnes_derivative({R}, m, {d}, {w}) == ipow(w, m) * (kv_zph(m + R, d) - z * kv_ln_rational(w)));
      }
    }
  }
  CHECK(barnes_derivative({0}, 0, {rat(1)}, {rat(1)}) == KValue::of(Atom::zp(0)));
}

TEST_CASE("the literal subset convention disagrees once R > 0") {
  CHECK(barnes_one_value_printed({0}, 1, {rat(1)}) == barnes_one_value({0}, 1, {rat(1)}));
  int differ = 0;
  for (unsigned R = 1; R <= 3; ++R) {
    for (unsigned m = 0; m <= 2; ++m) differ += barnes_one_value_printed({R}, m, {rat(1)}) != hurwitz_zeta_neg(m + R, rat(1));
  }
  CHECK(differ > 0);
}

TEST_CASE("two independent value paths agree") {
  CHECK(barnes_one_value({0, 0}, 0, {rat(1), rat(1)}) == value_at(one_row({0, 0}, 0, {rat(1), rat(1)}, {rat(1), rat(1)})));
  CHECK(barnes_one_value({1, 0}, 1, {rat(1), rat(1)}) == value_at(one_row({1, 0}, 1, {rat(1), rat(1)}, {rat(1), rat(1)})));
  std::mt19937 rng(29);
  std::uniform_int_distribution<unsigned> Pd(1, 2), Rd(0, 2);
  for (int t = 0; t < 20; ++t) {
    const unsigned P = Pd(rng);
    MultiIndex R(P);
    std::vector<Rational> d(P), w(P);
    for (unsigned p = 0; p < P; ++p) {
      R[p] = Rd(rng);
      d[p] = random_positive(rng, 9, 4);
      w[p] = random_positive(rng, 7, 3);
    }
    const unsigned m = Rd(rng);
    CHECK(barnes_value(R, m, d, w) == value_at(one_row(R, m, d, w)));
  }
}

TEST_CASE("unit evaluation against the series") {
  const std::vector<Rational> d{rat(1), rat(3, 2)};
  // tail of the box of side n is O(n^-3) here
  const double series = barnes_series({{0, 1}, d, {rat(1), rat(1)}}, 6.0, 4000);
  CHECK(barnes_unit_eval({0, 1}, 6.0, d) == doctest::Approx(series).epsilon(1e-8));
  // at nonpositive integers the evaluator reproduces the exact value
  for (unsigned m = 0; m <= 3; ++m) {
    CHECK(barnes_unit_eval({1, 0}, -static_cast<double>(m), d) ==
          doctest::Approx(to_double(barnes_one_value({1, 0}, m, d))).epsilon(1e-12));
  }
}

TEST_CASE("scaling law of the derivative") {
  std::mt19937 rng(31);
  std::uniform_int_distribution<unsigned> Rd(0, 2);
  for (int t = 0; t < 10; ++t) {
    const MultiIndex R{Rd(rng), Rd(rng)};
    const unsigned m = Rd(rng);
    const std::vector<Rational> d{random_positive(rng, 5, 3), random_positive(rng, 5, 3)};
    const std::vector<Rational> w{random_positive(rng, 4, 3), random_positive(rng, 4, 3)};
    const Rational lambda = random_positive(rng, 5, 4);
    const std::vector<Rational> lw{w[0] * lambda, w[1] * lambda};
    const KValue lhs = barnes_derivative(R, m, d, lw);
    const KValue rhs = ipow(lambda, m) * (barnes_derivative(R, m, d, w) - barnes_value(R, m, d, w) * kv_ln_rational(lambda));
    CHECK(std::abs(static_cast<double>(kv_eval(lhs - rhs))) < 1e-10);
  }
}
