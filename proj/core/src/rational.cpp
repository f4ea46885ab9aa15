// SPDX-License-Identifier: MIT
#include "dirzeta/rational.hpp"

#include <cctype>
#include <numeric>

namespace dirzeta {

unsigned total(const MultiIndex& k) { return std::accumulate(k.begin(), k.end(), 0u); }

Rational rat(long p, long q) {
  if (q == 0) throw DomainError("rat: zero denominator");
  return Rational(Integer(p), Integer(q));
}

namespace {

Integer parse_digits(std::string_view s, std::string_view whole) {
  if (s.empty()) throw ParseError("malformed rational \"" + std::string(whole) + "\"");
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("malformed rational \"" + std::string(whole) + "\"");
    }
  }
  return Integer(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  Integer p, q = 1;
  auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    p = parse_digits(s, text);
  } else {
    p = parse_digits(s.substr(0, slash), text);
    q = parse_digits(s.substr(slash + 1), text);
    if (q == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  }
  Rational r(p, q);
  return neg ? Rational(-r) : r;
}

std::string to_string(const Rational& r) {
  if (den(r) == 1) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

Integer factorial(unsigned n) {
  Integer f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

Rational ipow(const Rational& r, long e) {
  if (e < 0) {
    if (r == 0) throw DomainError("ipow: zero to a negative power");
    return ipow(Rational(1) / r, -e);
  }
  Rational out = 1, base = r;
  auto k = static_cast<unsigned long>(e);
  while (k) {
    if (k & 1u) out *= base;
    base *= base;
    k >>= 1u;
  }
  return out;
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace dirzeta
