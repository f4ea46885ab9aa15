// SPDX-License-Identifier: MIT
// Exact scalars and multi-indices.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace dirzeta {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Thrown when an argument lies outside an operation's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown for malformed textual input (rationals, config files).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Entries are nonnegative; |k| is the entry sum.
using MultiIndex = std::vector<unsigned>;

unsigned total(const MultiIndex& k);

Rational rat(long p, long q = 1);

/// Parses "p/q", "p" or "-p/q" (also accepts a leading '+').
Rational parse_rational(std::string_view text);

/// Canonical form: "p/q", or "p" when q = 1.
std::string to_string(const Rational& r);

Integer factorial(unsigned n);

/// r^e for any integer e; r must be nonzero when e < 0.
Rational ipow(const Rational& r, long e);

inline Integer num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return den(r) == 1; }

double to_double(const Rational& r);

}  // namespace dirzeta
