// SPDX-License-Identifier: MIT
#include "dirzeta/spec.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace dirzeta {

using nlohmann::json;

std::vector<Rational> HurwitzSpec::dprime() const {
  std::vector<Rational> out(Q, Rational(0));
  for (unsigned q = 0; q < Q; ++q) {
    for (unsigned p = 0; p < P; ++p) out[q] += c[q][p] * d[p];
  }
  return out;
}

Direction Direction::ones(unsigned P, unsigned Q) {
  return {std::vector<Rational>(P, Rational(1)), std::vector<Rational>(Q, Rational(1))};
}

TargetPoint TargetPoint::zero(unsigned P, unsigned Q) { return {MultiIndex(P, 0), MultiIndex(Q, 0)}; }

namespace {

std::string idx(unsigned i) { return "[" + std::to_string(i + 1) + "]"; }

void expect_len(const std::string& what, std::size_t got, std::size_t want) {
  if (got != want) {
    throw DomainError(what + " has length " + std::to_string(got) + ", expected " + std::to_string(want));
  }
}

}  // namespace

void validate(const HurwitzSpec& s) {
  if (s.P == 0) throw DomainError("P must be >= 1");
  if (s.Q == 0) throw DomainError("Q must be >= 1");
  expect_len("c", s.c.size(), s.Q);
  for (unsigned q = 0; q < s.Q; ++q) {
    expect_len("c" + idx(q), s.c[q].size(), s.P);
    for (unsigned p = 0; p < s.P; ++p) {
      if (!(s.c[q][p] > 0)) throw DomainError("c" + idx(q) + idx(p) + " not > 0");
    }
  }
  expect_len("d", s.d.size(), s.P);
  for (unsigned p = 0; p < s.P; ++p) {
    if (!(s.d[p] > 0)) throw DomainError("d" + idx(p) + " not > 0");
  }
}

void validate(const Problem& pr) {
  validate(pr.spec);
  const auto P = pr.spec.P, Q = pr.spec.Q;
  expect_len("mu", pr.dir.mu.size(), P);
  expect_len("muprime", pr.dir.muprime.size(), Q);
  expect_len("N", pr.target.N.size(), P);
  expect_len("Nprime", pr.target.Nprime.size(), Q);
  for (unsigned p = 0; p < P; ++p) {
    if (pr.dir.mu[p] < 0) throw DomainError("mu" + idx(p) + " not >= 0");
  }
  for (unsigned q = 0; q < Q; ++q) {
    if (!(pr.dir.muprime[q] > 0)) throw DomainError("muprime" + idx(q) + " not > 0");
  }
}

WittenPreset preset(const std::string& name) {
  auto row = [](long a, long b) { return std::vector<Rational>{Rational(a), Rational(b)}; };
  WittenPreset w;
  w.name = name;
  w.spec.P = 2;
  w.spec.d = {Rational(1), Rational(1)};
  if (name == "so5") {
    w.spec.Q = 2;
    w.spec.c = {row(1, 1), row(1, 2)};
    w.weyl_denominator = 6;
  } else if (name == "g2") {
    w.spec.Q = 4;
    w.spec.c = {row(1, 1), row(1, 2), row(1, 3), row(2, 3)};
    w.weyl_denominator = 120;
  } else {
    throw DomainError("unknown preset \"" + name + "\" (expected so5 or g2)");
  }
  return w;
}

Problem preset_problem(const std::string& name) {
  auto w = preset(name);
  return {w.spec, Direction::ones(w.spec.P, w.spec.Q), TargetPoint::zero(w.spec.P, w.spec.Q)};
}

namespace {

Rational field_rational(const json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(v.get<long long>());
  throw ParseError(where + ": expected a rational string \"p/q\"");
}

std::vector<Rational> field_rationals(const json& root, const std::string& key) {
  const json& v = root.at(key);
  if (!v.is_array()) throw ParseError("field \"" + key + "\": expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(field_rational(v[i], key + idx(unsigned(i))));
  return out;
}

MultiIndex field_index(const json& root, const std::string& key) {
  const json& v = root.at(key);
  if (!v.is_array()) throw ParseError("field \"" + key + "\": expected an array");
  MultiIndex out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer() || v[i].get<long long>() < 0) {
      throw ParseError("field \"" + key + idx(unsigned(i)) + "\": expected a nonnegative integer");
    }
    out.push_back(v[i].get<unsigned>());
  }
  return out;
}

unsigned field_positive(const json& root, const std::string& key) {
  if (!root.contains(key)) throw ParseError("missing field \"" + key + "\"");
  const json& v = root[key];
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw ParseError("field \"" + key + "\": expected a positive integer");
  }
  return v.get<unsigned>();
}

json rationals_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(to_string(r));
  return a;
}

}  // namespace

Problem parse_problem(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("config: expected a JSON object");
  Problem pr;
  auto& s = pr.spec;
  s.P = field_positive(root, "P");
  s.Q = field_positive(root, "Q");
  if (!root.contains("c") || !root["c"].is_array()) throw ParseError("field \"c\": expected an array of rows");
  for (std::size_t q = 0; q < root["c"].size(); ++q) {
    const json& r = root["c"][q];
    if (!r.is_array()) throw ParseError("field \"c" + idx(unsigned(q)) + "\": expected an array");
    std::vector<Rational> row;
    for (std::size_t p = 0; p < r.size(); ++p) {
      row.push_back(field_rational(r[p], "c" + idx(unsigned(q)) + idx(unsigned(p))));
    }
    s.c.push_back(std::move(row));
  }
  if (!root.contains("d")) throw ParseError("missing field \"d\"");
  s.d = field_rationals(root, "d");
  pr.dir = root.contains("mu") ? Direction{field_rationals(root, "mu"), {}} : Direction{std::vector<Rational>(s.P, 1), {}};
  pr.dir.muprime =
      root.contains("muprime") ? field_rationals(root, "muprime") : std::vector<Rational>(s.Q, Rational(1));
  pr.target.N = root.contains("N") ? field_index(root, "N") : MultiIndex(s.P, 0);
  pr.target.Nprime = root.contains("Nprime") ? field_index(root, "Nprime") : MultiIndex(s.Q, 0);
  validate(pr);
  return pr;
}

std::string problem_to_json(const Problem& pr) {
  json root;
  root["P"] = pr.spec.P;
  root["Q"] = pr.spec.Q;
  json c = json::array();
  for (const auto& row : pr.spec.c) c.push_back(rationals_json(row));
  root["c"] = c;
  root["d"] = rationals_json(pr.spec.d);
  root["mu"] = rationals_json(pr.dir.mu);
  root["muprime"] = rationals_json(pr.dir.muprime);
  root["N"] = pr.target.N;
  root["Nprime"] = pr.target.Nprime;
  return root.dump();
}

Problem load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config \"" + path + "\"");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

void save_spec(const std::string& path, const Problem& pr) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write config \"" + path + "\"");
  out << problem_to_json(pr) << "\n";
}

}  // namespace dirzeta
