// SPDX-License-Identifier: MIT
// Rational linear combinations of transcendental constants in canonical form.
//
// Canonical atoms: 1, gamma, ln p (p prime), zeta'(-n) and zeta'(-n, d) with
// d in (0, 1) whose reduced denominator m satisfies d != (m-1)/m.  Every other
// input (ln pi, d outside (0, 1), d = (m-1)/m) is rewritten on entry:
//   ln pi              = -2 zeta'(0) - ln 2
//   zeta'(-n, d + 1)   = zeta'(-n, d) + d^n ln d
//   sum over a coprime to m of zeta'(-n, a/m)
//                      = zeta'(-n) S0 + zeta(-n) S1,
//   S0 = sum_{e | m} mu(e) (m/e)^{-n},  S1 = sum_{e | m} mu(e) (m/e)^{-n} ln(m/e).
// With these rules two KValues are equal iff their coefficient maps are.
#pragma once

#include <map>
#include <string>

#include "dirzeta/numeric.hpp"
#include "dirzeta/rational.hpp"

namespace dirzeta {

enum class AtomKind { One, Gamma, LnPrime, LnPi, ZetaPrime, ZetaPrimeHurwitz };

struct Atom {
  AtomKind kind = AtomKind::One;
  unsigned n = 0;  ///< prime for LnPrime, order for the zeta' atoms
  Rational d = 0;  ///< argument for ZetaPrimeHurwitz

  static Atom one() { return {}; }
  static Atom gamma() { return {AtomKind::Gamma, 0, 0}; }
  static Atom ln_prime(unsigned p) { return {AtomKind::LnPrime, p, 0}; }
  static Atom ln_pi() { return {AtomKind::LnPi, 0, 0}; }
  static Atom zp(unsigned n) { return {AtomKind::ZetaPrime, n, 0}; }
  static Atom zph(unsigned n, const Rational& d) { return {AtomKind::ZetaPrimeHurwitz, n, d}; }

  /// "1", "gamma", "ln:2", "ln:pi", "zp:1", "zph:1:1/3".
  std::string encode() const;
  static Atom decode(const std::string& text);

  friend bool operator<(const Atom& a, const Atom& b);
  friend bool operator==(const Atom& a, const Atom& b);
};

class KValue {
 public:
  KValue() = default;
  explicit KValue(const Rational& r);

  /// The canonical expansion of a single atom.
  static KValue of(const Atom& atom);

  const std::map<Atom, Rational>& terms() const { return terms_; }
  Rational coeff(const Atom& atom) const;
  bool is_zero() const { return terms_.empty(); }
  /// True when only the ONE atom (or nothing) is present.
  bool is_rational() const;

  KValue& operator+=(const KValue& o);
  KValue& operator-=(const KValue& o);
  KValue& operator*=(const Rational& r);

  friend KValue operator+(KValue a, const KValue& b) { return a += b; }
  friend KValue operator-(KValue a, const KValue& b) { return a -= b; }
  friend KValue operator*(KValue a, const Rational& r) { return a *= r; }
  friend KValue operator*(const Rational& r, KValue a) { return a *= r; }
  friend KValue operator-(KValue a) { return a *= Rational(-1); }
  friend bool operator==(const KValue& a, const KValue& b) { return a.terms_ == b.terms_; }

 private:
  void add_canonical(const Atom& atom, const Rational& c);
  std::map<Atom, Rational> terms_;
};

/// Sum of e_p ln p over the factorization of r > 0.
KValue kv_ln_rational(const Rational& r);

/// zeta'(-n, d) for d > 0 in canonical form.
KValue kv_zph(unsigned n, const Rational& d);

inline KValue kv_add(const KValue& a, const KValue& b) { return a + b; }
inline KValue kv_scale(const KValue& a, const Rational& r) { return a * r; }
inline bool kv_equals(const KValue& a, const KValue& b) { return a == b; }

Real kv_eval(const KValue& v, const Precision& prec = {});
Real atom_eval(const Atom& a, const Precision& prec = {});

/// JSON array of {"atom": ..., "coeff": "p/q"}.
std::string kv_to_json(const KValue& v);
KValue kv_from_json(const std::string& text);

/// Human readable, e.g. "1/6*gamma - 11/24*ln:2".
std::string kv_to_text(const KValue& v);

/// Prime factorization of a positive integer as (prime, exponent) pairs.
std::map<Integer, unsigned> factorize(const Integer& n);

}  // namespace dirzeta
