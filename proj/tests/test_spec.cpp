// SPDX-License-Identifier: MIT
#include <doctest.h>

#include <filesystem>
#include <random>
#include <string>

#include "dirzeta/spec.hpp"

using namespace dirzeta;

namespace {

std::string message_of(const Problem& pr) {
  try {
    validate(pr);
  } catch (const DomainError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("presets") {
  const auto so5 = preset("so5");
  CHECK(so5.spec.P == 2);
  CHECK(so5.spec.Q == 2);
  CHECK(so5.weyl_denominator == 6);
  CHECK(so5.spec.dprime() == std::vector<Rational>{2, 3});

  const auto g2 = preset("g2");
  CHECK(g2.spec.Q == 4);
  CHECK(g2.weyl_denominator == 120);
  CHECK(g2.spec.dprime() == std::vector<Rational>{2, 3, 4, 5});

  const Problem pr = preset_problem("g2");
  CHECK(pr.dir == Direction::ones(2, 4));
  CHECK(pr.target == TargetPoint::zero(2, 4));
  CHECK_NOTHROW(validate(pr));

  try {
    preset("sl3");
    FAIL("expected an error");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()) == "unknown preset \"sl3\" (expected so5 or g2)");
  }
}

TEST_CASE("validation names the first violated constraint") {
  Problem pr = preset_problem("so5");
  pr.spec.c[1][0] = 0;
  CHECK(message_of(pr) == "c[2][1] not > 0");

  pr = preset_problem("so5");
  pr.spec.d[1] = rat(-1, 2);
  CHECK(message_of(pr) == "d[2] not > 0");

  pr = preset_problem("so5");
  pr.dir.mu[0] = -1;
  CHECK(message_of(pr) == "mu[1] not >= 0");

  pr = preset_problem("so5");
  pr.dir.mu[0] = 0;
  CHECK(message_of(pr).empty());

  pr = preset_problem("so5");
  pr.dir.muprime[1] = 0;
  CHECK(message_of(pr) == "muprime[2] not > 0");

  pr = preset_problem("so5");
  pr.target.N = {1};
  CHECK(message_of(pr) == "N has length 1, expected 2");

  pr = preset_problem("so5");
  pr.spec.c.pop_back();
  CHECK(message_of(pr) == "c has length 1, expected 2");

  HurwitzSpec empty;
  CHECK_THROWS_WITH_AS(validate(empty), "P must be >= 1", DomainError);
}

TEST_CASE("json defaults") {
  const Problem pr = parse_problem(R"({"P":2,"Q":1,"c":[["1","1/2"]],"d":["1/3",2]})");
  CHECK(pr.spec.c[0][1] == rat(1, 2));
  CHECK(pr.spec.d == std::vector<Rational>{rat(1, 3), rat(2)});
  CHECK(pr.dir == Direction::ones(2, 1));
  CHECK(pr.target == TargetPoint::zero(2, 1));
}

TEST_CASE("json round trip on random problems") {
  std::mt19937 rng(41);
  std::uniform_int_distribution<long> nd(1, 9), dim(1, 4), small(0, 3);
  for (int t = 0; t < 40; ++t) {
    Problem pr;
    pr.spec.P = static_cast<unsigned>(dim(rng));
    pr.spec.Q = static_cast<unsigned>(dim(rng));
    pr.spec.c.assign(pr.spec.Q, {});
    for (auto& row : pr.spec.c) {
      for (unsigned p = 0; p < pr.spec.P; ++p) row.push_back(rat(nd(rng), nd(rng)));
    }
    for (unsigned p = 0; p < pr.spec.P; ++p) {
      pr.spec.d.push_back(rat(nd(rng), nd(rng)));
      pr.dir.mu.push_back(rat(small(rng), nd(rng)));
      pr.target.N.push_back(static_cast<unsigned>(small(rng)));
    }
    for (unsigned q = 0; q < pr.spec.Q; ++q) {
      pr.dir.muprime.push_back(rat(nd(rng), nd(rng)));
      pr.target.Nprime.push_back(static_cast<unsigned>(small(rng)));
    }
    CHECK(parse_problem(problem_to_json(pr)) == pr);
  }
}

TEST_CASE("file round trip") {
  const auto path = std::filesystem::temp_directory_path() / "dirzeta_spec_roundtrip.json";
  const Problem pr = preset_problem("g2");
  save_spec(path.string(), pr);
  CHECK(load_spec(path.string()) == pr);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_spec(path.string()), ParseError);
}

TEST_CASE("malformed configs") {
  CHECK_THROWS_AS(parse_problem("{"), ParseError);
  CHECK_THROWS_AS(parse_problem("[]"), ParseError);
  CHECK_THROWS_AS(parse_problem(R"({"Q":1,"c":[["1"]],"d":["1"]})"), ParseError);
  CHECK_THROWS_AS(parse_problem(R"({"P":0,"Q":1,"c":[["1"]],"d":["1"]})"), ParseError);
  CHECK_THROWS_AS(parse_problem(R"({"P":1,"Q":1,"c":[["x"]],"d":["1"]})"), ParseError);
  CHECK_THROWS_AS(parse_problem(R"({"P":1,"Q":1,"c":[["1"]]})"), ParseError);
  CHECK_THROWS_AS(parse_problem(R"({"P":1,"Q":1,"c":[["1"]],"d":["1"],"N":[-1]})"), ParseError);
  // well-formed but outside the domain
  CHECK_THROWS_AS(parse_problem(R"({"P":1,"Q":1,"c":[["0"]],"d":["1"]})"), DomainError);
  CHECK_THROWS_AS(parse_problem(R"({"P":2,"Q":1,"c":[["1"]],"d":["1","1"]})"), DomainError);
}
