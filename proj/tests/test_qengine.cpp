// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <random>

#include "dirzeta/exact.hpp"
#include "dirzeta/qengine.hpp"

using namespace dirzeta;

namespace {

Problem barnes_row(const std::vector<Rational>& row) {
  const unsigned P = static_cast<unsigned>(row.size());
  Problem pr;
  pr.spec.P = P;
  pr.spec.Q = 1;
  pr.spec.c = {row};
  pr.spec.d.assign(P, Rational(1));
  pr.dir = Direction::ones(P, 1);
  pr.target = TargetPoint::zero(P, 1);
  return pr;
}

MultiIndex unit(unsigned Q, unsigned at) {
  MultiIndex e(Q, 0);
  e[at] = 1;
  return e;
}

bool in_log_span(const KValue& v) {
  for (const auto& [atom, c] : v.terms()) {
    if (atom.kind != AtomKind::One && atom.kind != AtomKind::Gamma && atom.kind != AtomKind::LnPrime) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("q0 on the one-row shape") {
  const Problem pr = barnes_row({rat(3, 2), rat(5)});
  QContext ctx{&pr, 0, {}, {2, 1}};
  CHECK(q0(ctx) == rat(45, 4));
  CHECK(q1(ctx).is_zero());
  QContext single{&pr, 0, {1}, {3}};
  // coordinates in Pset contribute c_{j,p}^{-1}; the literal display drops it
  CHECK(q0(single) == rat(27, 40));
  CHECK(q0_printed(single) == rat(27, 8));
}

TEST_CASE("q0 on the one-row shape for random rows") {
  std::mt19937 rng(101);
  std::uniform_int_distribution<long> nd(1, 7), kd(0, 3), pd(1, 3);
  for (int t = 0; t < 100; ++t) {
    std::vector<Rational> row;
    const unsigned P = static_cast<unsigned>(pd(rng));
    for (unsigned p = 0; p < P; ++p) row.push_back(rat(nd(rng), nd(rng)));
    const Problem pr = barnes_row(row);
    MultiIndex k(P);
    Rational want = 1;
    for (unsigned p = 0; p < P; ++p) {
      k[p] = static_cast<unsigned>(kd(rng));
      want *= ipow(row[p], k[p]);
    }
    CHECK(q0(QContext{&pr, 0, {}, k}) == want);
    CHECK(q1(QContext{&pr, 0, {}, k}).is_zero());
  }
}

TEST_CASE("so5 contexts") {
  const Problem pr = preset_problem("so5");
  CHECK(q0(QContext{&pr, 0, {}, {1, 0}}) == 1);
  CHECK(q0(QContext{&pr, 0, {0}, {0}}) == 1);
  CHECK(q0(QContext{&pr, 0, {}, {0, 0}}) == 1);
  CHECK(q1(QContext{&pr, 0, {}, {0, 0}}) == KValue::of(Atom::gamma()));
}

TEST_CASE("gamma coefficient of q1 when only v = 0 contributes") {
  for (const char* name : {"so5", "g2"}) {
    const Problem pr = preset_problem(name);
    for (unsigned j = 0; j < pr.spec.Q; ++j) {
      const QContext ctx{&pr, j, {}, {0, 0}};
      Rational mu_sum = 0;
      for (unsigned q = 0; q < pr.spec.Q; ++q) {
        if (q != j) mu_sum += pr.dir.muprime[q];
      }
      CHECK(q1(ctx).coeff(Atom::gamma()) == mu_sum * q0(ctx));
    }
  }
}

TEST_CASE("outputs stay in the rational and logarithmic span") {
  for (const char* name : {"so5", "g2"}) {
    const Problem pr = preset_problem(name);
    for (unsigned j = 0; j < pr.spec.Q; ++j) {
      for (const auto& pset : std::vector<std::vector<unsigned>>{{}, {0}, {1}}) {
        const unsigned free = 2 - static_cast<unsigned>(pset.size());
        for (unsigned t = 0; t <= 2; ++t) {
          for (const auto& k : compositions(t, free)) CHECK(in_log_span(q1(QContext{&pr, j, pset, k})));
        }
      }
    }
  }
}

TEST_CASE("partial fraction constants") {
  const Problem so5 = preset_problem("so5");
  const unsigned Q = 2;
  // Pset empty: the function is x^-1, whose constant part vanishes.
  CHECK(f_constant(QContext{&so5, 0, {}, {0, 0}}, 1, {}, {MultiIndex(Q, 0), MultiIndex(Q, 0)}).is_zero());

  // Pset = {p}, w = e_f: (1/c_fp) ln(1 + c_fp/c_jp)
  const Problem g2 = preset_problem("g2");
  for (unsigned p = 0; p < 2; ++p) {
    for (unsigned j = 0; j < 4; ++j) {
      for (unsigned f = 0; f < 4; ++f) {
        if (f == j) continue;
        const QContext ctx{&g2, j, {p}, {0}};
        const Rational cj = g2.spec.c[j][p], cf = g2.spec.c[f][p];
        const KValue log_term = kv_ln_rational(1 + cf / cj);
        CHECK(f_constant(ctx, f, {MultiIndex(4, 0)}, {unit(4, f)}) == log_term * (1 / cf));
        CHECK(f_constant(ctx, f, {MultiIndex(4, 0)}, {unit(4, j)}) == log_term * (-1 / cj));
      }
    }
  }
  CHECK_THROWS_AS(partial_fractions(QContext{&so5, 0, {}, {0, 0}}, 0, {}, {MultiIndex(Q, 0), MultiIndex(Q, 0)}),
                  DomainError);
}

TEST_CASE("partial fraction recombination") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> nd(1, 6), ed(1, 3), nf(1, 4), ad(-3, 2);
  std::uniform_int_distribution<long> xn(-40, 40), xd(1, 9);
  for (int t = 0; t < 50; ++t) {
    const unsigned n = static_cast<unsigned>(nf(rng));
    std::vector<Rational> cj, cf;
    std::vector<unsigned> e;
    for (unsigned i = 0; i < n; ++i) {
      cj.push_back(rat(nd(rng), nd(rng)));
      cf.push_back(rat(nd(rng), nd(rng)));
      e.push_back(static_cast<unsigned>(ed(rng)));
    }
    // force a repeated root now and then
    if (n >= 2 && t % 3 == 0) {
      cj[1] = cj[0] * 2;
      cf[1] = cf[0] * 2;
    }
    const long a = ad(rng);
    const PartialFraction pf = decompose(a, cj, cf, e);
    int tested = 0;
    while (tested < 20) {
      const Rational x = rat(xn(rng), xd(rng));
      bool pole = x == 0;
      for (unsigned i = 0; i < n; ++i) pole |= cj[i] + cf[i] * x == 0;
      if (pole) continue;
      CHECK(pf.evaluate(x) == rational_source(a, cj, cf, e, x));
      ++tested;
    }
  }
  CHECK_THROWS_AS(decompose(0, {rat(1)}, {rat(0)}, {1}), DomainError);
  CHECK_THROWS_AS(decompose(0, {rat(1)}, {rat(1), rat(2)}, {1}), DomainError);
}

TEST_CASE("context validation") {
  const Problem pr = preset_problem("so5");
  CHECK_THROWS_AS(q0(QContext{&pr, 2, {}, {0, 0}}), DomainError);
  CHECK_THROWS_AS(q0(QContext{&pr, 0, {0, 1}, {}}), DomainError);
  CHECK_THROWS_AS(q0(QContext{&pr, 0, {1, 0}, {}}), DomainError);
  CHECK_THROWS_AS(q0(QContext{&pr, 0, {0}, {0, 0}}), DomainError);
  CHECK_THROWS_AS(q0(QContext{nullptr, 0, {}, {0, 0}}), DomainError);
  CHECK(complement_of({1, 3}, 5) == std::vector<unsigned>{0, 2, 4});
}
