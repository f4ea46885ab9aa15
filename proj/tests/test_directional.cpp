// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <cmath>
#include <random>

#include "dirzeta/directional.hpp"

using namespace dirzeta;

namespace {

// Q = 1, P = 1, c = d = 1, mu = 0: the plain Riemann zeta in s'.
Problem zeta_shape() {
  Problem pr;
  pr.spec = {1, 1, {{rat(1)}}, {rat(1)}};
  pr.dir = {{rat(0)}, {rat(1)}};
  pr.target = TargetPoint::zero(1, 1);
  return pr;
}

// sum over m, n >= 1 of (m n (m + n))^-s
Problem sl3_shape() {
  Problem pr;
  pr.spec = {2, 1, {{rat(1), rat(1)}}, {rat(1), rat(1)}};
  pr.dir = Direction::ones(2, 1);
  pr.target = TargetPoint::zero(2, 1);
  return pr;
}

KValue atom(const Atom& a) { return KValue::of(a); }

// Frozen outputs; the s -> 0 continuation oracle reproduces these values and slopes.
const char* const kSo5Derivative = R"([{"atom":"ln:2","coeff":"-1/4"},{"atom":"zp:0","coeff":"-3"}])";
const char* const kG2Derivative =
    R"([{"atom":"ln:2","coeff":"-4/9"},{"atom":"ln:3","coeff":"-1/3"},{"atom":"zp:0","coeff":"-5"},)"
    R"({"atom":"zph:0:1/6","coeff":"-1/3"},{"atom":"zph:0:1/3","coeff":"2/3"}])";

}  // namespace

TEST_CASE("zeta shape") {
  const Problem pr = zeta_shape();
  CHECK(value_at(pr) == rat(-1, 2));
  CHECK(derivative_at(pr) == atom(Atom::zp(0)));
}

TEST_CASE("sl(3) shape") {
  const Problem pr = sl3_shape();
  CHECK(value_at(pr) == rat(1, 3));
  // zeta'(0) of the Witten function is ln(2^{4/3} pi); the weight ln 2 carries 1/3 of it
  const KValue want = kv_ln_rational(rat(2)) * rat(4, 3) + atom(Atom::ln_pi());
  CHECK(derivative_at(pr) + kv_ln_rational(rat(2)) * rat(1, 3) == want);
}

TEST_CASE("so5 and g2 at the origin") {
  const Problem so5 = preset_problem("so5");
  CHECK(value_at(so5) == rat(3, 8));
  CHECK(value_at_printed(so5) == rat(7, 18));
  CHECK(derivative_at(so5) == kv_from_json(kSo5Derivative));

  const Problem g2 = preset_problem("g2");
  CHECK(value_at(g2) == rat(5, 12));
  CHECK(value_at_printed(g2) == rat(29, 60));
  CHECK(derivative_at(g2) == kv_from_json(kG2Derivative));
}

TEST_CASE("derivative splits into four blocks") {
  for (const char* name : {"so5", "g2"}) {
    const Problem pr = preset_problem(name);
    ZBlocks b;
    const KValue d = derivative_at(pr, &b);
    CHECK(d == b.z1 + b.z2 + b.z3 - b.z4);
    const DirectionalResult r = evaluate(pr);
    CHECK(r.value == value_at(pr));
    CHECK(r.derivative == d);
    CHECK(r.blocks.z3 == b.z3);
  }
  // with N' = 0 and unit directions the gamma parts of the first and last blocks cancel
  ZBlocks b;
  derivative_at(preset_problem("g2"), &b);
  CHECK(b.z1 == atom(Atom::gamma()) * rat(11, 6));
  CHECK(b.z4 == b.z1);
}

TEST_CASE("determinism") {
  const Problem pr = preset_problem("g2");
  CHECK(kv_to_json(derivative_at(pr)) == kv_to_json(derivative_at(pr)));
  CHECK(continuation_eval(zeta_shape(), 0.5).value == continuation_eval(zeta_shape(), 0.5).value);
}

TEST_CASE("continuation of the zeta shape") {
  const Problem pr = zeta_shape();
  for (double s : {1.5, 0.5, -0.5, -1.5}) {
    const ContinuationResult r = continuation_eval(pr, s);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(zeta_em(s, 1.0)).epsilon(1e-10));
    ContinuationParams other;
    other.theta = theta_bound(pr.spec) / 2;
    CHECK(continuation_eval(pr, s, other).value == doctest::Approx(r.value).epsilon(1e-10));
  }
}

TEST_CASE("continuation of a random two-by-two spec is theta independent") {
  std::mt19937 rng(71);
  std::uniform_int_distribution<long> nd(1, 3), dd(1, 2);
  Problem pr;
  pr.spec.P = pr.spec.Q = 2;
  pr.spec.c = {{rat(nd(rng), dd(rng)), rat(nd(rng), dd(rng))}, {rat(nd(rng), dd(rng)), rat(nd(rng), dd(rng))}};
  pr.spec.d = {rat(1), rat(3, 2)};
  pr.dir = Direction::ones(2, 2);
  pr.target = TargetPoint::zero(2, 2);
  const double s = 0.7;
  REQUIRE(distance_to_singularities(pr, s) > 1e-3);
  ContinuationParams a, b;
  a.theta = theta_bound(pr.spec) / 4;
  b.theta = theta_bound(pr.spec) / 10;
  CHECK(continuation_eval(pr, s, a).value == doctest::Approx(continuation_eval(pr, s, b).value).epsilon(1e-8));
}

TEST_CASE("singular set") {
  const Problem pr = preset_problem("so5");
  const auto sing = singularities(pr, rat(0), rat(1));
  CHECK(std::find(sing.begin(), sing.end(), rat(1, 3)) != sing.end());
  CHECK(std::find(sing.begin(), sing.end(), rat(1, 2)) != sing.end());
  CHECK(std::find(sing.begin(), sing.end(), rat(0)) == sing.end());
  CHECK(std::is_sorted(sing.begin(), sing.end()));
  CHECK(distance_to_singularities(pr, 0.3) == doctest::Approx(1.0 / 30));

  // the proximity error fires exactly inside delta
  ContinuationParams prm;
  prm.delta = 1e-3;
  CHECK_THROWS_AS(continuation_eval(pr, 1.0 / 3 + 5e-4, prm), DomainError);
  CHECK_THROWS_AS(continuation_eval(pr, 2.0, prm), DomainError);
  CHECK_THROWS_AS(continuation_eval(pr, std::nan(""), prm), DomainError);
  CHECK_NOTHROW(continuation_eval(zeta_shape(), 1.0 + 2e-3, prm));
  CHECK_THROWS_AS(continuation_eval(zeta_shape(), 1.0 + 5e-4, prm), DomainError);

  const auto g2 = singularities(preset_problem("g2"), rat(1, 10), rat(1, 2));
  CHECK(g2 == std::vector<Rational>{rat(1, 6), rat(1, 5), rat(1, 3)});
}

TEST_CASE("theta must stay below the bound") {
  const Problem pr = preset_problem("so5");
  CHECK(theta_bound(pr.spec) == doctest::Approx(1.0 / 16));
  CHECK(default_theta(pr.spec) == doctest::Approx(theta_bound(pr.spec) / 4));
  ContinuationParams prm;
  prm.theta = theta_bound(pr.spec);
  CHECK_THROWS_AS(continuation_eval(pr, 0.7, prm), DomainError);
}

TEST_CASE("residues") {
  const ResidueResult r = residue_at(zeta_shape(), rat(1));
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(residue_at(zeta_shape(), rat(0)), DomainError);
  CHECK_THROWS_AS(residue_at(zeta_shape(), rat(1, 2)), DomainError);
}

TEST_CASE("h oracle") {
  // one row: h is a closed product with no integration variables
  Problem row;
  row.spec = {2, 1, {{rat(2), rat(3)}}, {rat(1), rat(1)}};
  row.dir = Direction::ones(2, 1);
  row.target = TargetPoint::zero(2, 1);
  const QContext ctx{&row, 0, {}, {1, 2}};
  const HOracle h = h_oracle(ctx);
  CHECK(h.h0 == doctest::Approx(to_double(q0(ctx))).epsilon(1e-8));
  CHECK(h.h0prime == doctest::Approx(0.0));

  const Problem so5 = preset_problem("so5");
  const HOracle o = h_oracle(QContext{&so5, 0, {}, {0, 0}});
  CHECK(o.h0 == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(o.h0prime == doctest::Approx(static_cast<double>(euler_gamma())).epsilon(1e-3));
  CHECK(o.samples == default_oracle_samples());

  Problem shifted = so5;
  shifted.target.Nprime = {0, 1};
  CHECK_THROWS_AS(h_oracle(QContext{&shifted, 0, {}, {0, 0}}), DomainError);
  CHECK_THROWS_AS(h_oracle(QContext{&so5, 0, {}, {0, 0}}, {0.1}), DomainError);
  CHECK_THROWS_AS(h_oracle(QContext{&so5, 0, {}, {0, 0}}, {0.1, 0.1}), DomainError);
  CHECK_THROWS_AS(h_oracle(QContext{&so5, 0, {}, {0, 0}}, {0.1, -0.1}), DomainError);
}
