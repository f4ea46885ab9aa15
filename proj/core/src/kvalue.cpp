// SPDX-License-Identifier: MIT
#include "dirzeta/kvalue.hpp"

#include <limits>
#include <sstream>

#include <boost/multiprecision/miller_rabin.hpp>
#include <json.hpp>

#include "dirzeta/exact.hpp"

namespace dirzeta {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Atoms

std::string Atom::encode() const {
  switch (kind) {
    case AtomKind::One:
      return "1";
    case AtomKind::Gamma:
      return "gamma";
    case AtomKind::LnPrime:
      return "ln:" + std::to_string(n);
    case AtomKind::LnPi:
      return "ln:pi";
    case AtomKind::ZetaPrime:
      return "zp:" + std::to_string(n);
    case AtomKind::ZetaPrimeHurwitz:
      return "zph:" + std::to_string(n) + ":" + to_string(d);
  }
  return "?";
}

namespace {

unsigned parse_unsigned(const std::string& s, const std::string& whole) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("malformed atom \"" + whole + "\"");
  }
  unsigned long v = std::stoul(s);
  if (v > std::numeric_limits<unsigned>::max()) throw ParseError("atom index too large in \"" + whole + "\"");
  return static_cast<unsigned>(v);
}

}  // namespace

Atom Atom::decode(const std::string& text) {
  if (text == "1") return one();
  if (text == "gamma") return gamma();
  if (text == "ln:pi") return ln_pi();
  if (text.rfind("ln:", 0) == 0) {
    unsigned p = parse_unsigned(text.substr(3), text);
    if (p < 2 || !boost::multiprecision::miller_rabin_test(Integer(p), 25)) {
      throw ParseError("atom \"" + text + "\": " + std::to_string(p) + " is not prime");
    }
    return ln_prime(p);
  }
  if (text.rfind("zph:", 0) == 0) {
    auto rest = text.substr(4);
    auto colon = rest.find(':');
    if (colon == std::string::npos) throw ParseError("malformed atom \"" + text + "\"");
    return zph(parse_unsigned(rest.substr(0, colon), text), parse_rational(rest.substr(colon + 1)));
  }
  if (text.rfind("zp:", 0) == 0) return zp(parse_unsigned(text.substr(3), text));
  throw ParseError("unknown atom \"" + text + "\"");
}

bool operator<(const Atom& a, const Atom& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.n != b.n) return a.n < b.n;
  return a.d < b.d;
}

bool operator==(const Atom& a, const Atom& b) { return a.kind == b.kind && a.n == b.n && a.d == b.d; }

// ---------------------------------------------------------------------------
// Factorization

std::map<Integer, unsigned> factorize(const Integer& n) {
  if (n < 1) throw DomainError("factorize: " + n.str() + " not >= 1");
  std::map<Integer, unsigned> out;
  Integer m = n;
  auto strip = [&](const Integer& p) {
    while (m % p == 0) {
      ++out[p];
      m /= p;
    }
  };
  strip(2);
  strip(3);
  // 6k +- 1 wheel
  for (Integer p = 5; p * p <= m; p += 6) {
    strip(p);
    strip(p + 2);
    if (p > Integer(10'000'000) && boost::multiprecision::miller_rabin_test(m, 25)) break;
  }
  if (m > 1) {
    if (!boost::multiprecision::miller_rabin_test(m, 25)) {
      throw DomainError("factorize: cofactor " + m.str() + " too large to factor");
    }
    ++out[m];
  }
  return out;
}

namespace {

unsigned small_prime(const Integer& p) {
  if (p > std::numeric_limits<unsigned>::max()) {
    throw DomainError("prime " + p.str() + " exceeds the supported atom range");
  }
  return p.convert_to<unsigned>();
}

// Moebius function and divisors of a small positive integer.
std::vector<std::pair<Integer, int>> squarefree_divisors(const Integer& m) {
  std::vector<std::pair<Integer, int>> out{{Integer(1), 1}};
  for (const auto& [p, e] : factorize(m)) {
    (void)e;
    auto cur = out.size();
    for (std::size_t i = 0; i < cur; ++i) out.emplace_back(out[i].first * p, -out[i].second);
  }
  return out;
}

Integer gcd_int(Integer a, Integer b) {
  while (b != 0) {
    Integer t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

KValue kv_ln_rational(const Rational& r) {
  if (r <= 0) throw DomainError("kv_ln_rational: " + to_string(r) + " not > 0");
  KValue out;
  for (const auto& [p, e] : factorize(num(r))) out += KValue::of(Atom::ln_prime(small_prime(p))) * Rational(e);
  for (const auto& [p, e] : factorize(den(r))) out -= KValue::of(Atom::ln_prime(small_prime(p))) * Rational(e);
  return out;
}

KValue kv_zph(unsigned n, const Rational& d_in) {
  if (d_in <= 0) throw DomainError("kv_zph: d = " + to_string(d_in) + " not > 0");
  KValue out;
  Rational d = d_in;
  // zeta'(-n, d + 1) = zeta'(-n, d) + d^n ln d
  while (d > 1) {
    d -= 1;
    out += kv_ln_rational(d) * ipow(d, n);
  }
  if (d == 1) return out + KValue::of(Atom::zp(n));
  const Integer m = den(d);
  if (num(d) != m - 1) return out + KValue::of(Atom::zph(n, d));
  // d = (m-1)/m: eliminate through the primitive distribution relation.
  Rational s0 = 0;
  KValue s1;
  for (const auto& [e, mu] : squarefree_divisors(m)) {
    Rational q(m / e);
    Rational w = ipow(q, -static_cast<long>(n)) * mu;
    s0 += w;
    s1 += kv_ln_rational(q) * w;
  }
  out += KValue::of(Atom::zp(n)) * s0;
  out += s1 * hurwitz_zeta_neg(n, 1);
  for (Integer a = 1; a < m - 1; ++a) {
    if (gcd_int(a, m) == 1) out -= KValue::of(Atom::zph(n, Rational(a, m)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// KValue

KValue::KValue(const Rational& r) {
  if (r != 0) terms_[Atom::one()] = r;
}

KValue KValue::of(const Atom& atom) {
  KValue out;
  switch (atom.kind) {
    case AtomKind::LnPi:
      // zeta'(0) = -ln(2 pi)/2
      out.add_canonical(Atom::zp(0), -2);
      out.add_canonical(Atom::ln_prime(2), -1);
      return out;
    case AtomKind::LnPrime:
      if (atom.n < 2 || !boost::multiprecision::miller_rabin_test(Integer(atom.n), 25)) {
        throw DomainError("ln atom requires a prime, got " + std::to_string(atom.n));
      }
      break;
    case AtomKind::ZetaPrimeHurwitz: {
      const Rational& d = atom.d;
      if (d <= 0 || d >= 1 || num(d) == den(d) - 1) return kv_zph(atom.n, d);
      break;
    }
    default:
      break;
  }
  out.add_canonical(atom, 1);
  return out;
}

Rational KValue::coeff(const Atom& atom) const {
  auto it = terms_.find(atom);
  return it == terms_.end() ? Rational(0) : it->second;
}

bool KValue::is_rational() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.kind == AtomKind::One);
}

void KValue::add_canonical(const Atom& atom, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(atom, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

KValue& KValue::operator+=(const KValue& o) {
  for (const auto& [a, c] : o.terms_) add_canonical(a, c);
  return *this;
}

KValue& KValue::operator-=(const KValue& o) {
  for (const auto& [a, c] : o.terms_) add_canonical(a, -c);
  return *this;
}

KValue& KValue::operator*=(const Rational& r) {
  if (r == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [a, c] : terms_) c *= r;
  return *this;
}

// ---------------------------------------------------------------------------
// Evaluation and I/O

Real atom_eval(const Atom& a, const Precision& prec) {
  switch (a.kind) {
    case AtomKind::One:
      return Real(1);
    case AtomKind::Gamma:
      return euler_gamma(prec);
    case AtomKind::LnPrime:
      return log(Real(a.n));
    case AtomKind::LnPi:
      return ln_pi(prec);
    case AtomKind::ZetaPrime:
      return zeta_em_deriv(-Real(a.n), Real(1), prec);
    case AtomKind::ZetaPrimeHurwitz:
      return zeta_em_deriv(-Real(a.n), to_real(a.d), prec);
  }
  throw DomainError("atom_eval: unknown atom");
}

Real kv_eval(const KValue& v, const Precision& prec) {
  prec.validate();
  Real acc = 0;
  for (const auto& [a, c] : v.terms()) acc += to_real(c) * atom_eval(a, prec);
  return acc;
}

std::string kv_to_json(const KValue& v) {
  json arr = json::array();
  for (const auto& [a, c] : v.terms()) arr.push_back({{"atom", a.encode()}, {"coeff", to_string(c)}});
  return arr.dump();
}

KValue kv_from_json(const std::string& text) {
  json arr;
  try {
    arr = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("KValue JSON: ") + e.what());
  }
  if (!arr.is_array()) throw ParseError("KValue JSON: expected an array");
  KValue out;
  for (const auto& item : arr) {
    if (!item.is_object() || !item.contains("atom") || !item.contains("coeff") || !item["atom"].is_string() ||
        !item["coeff"].is_string()) {
      throw ParseError("KValue JSON: each entry needs string fields \"atom\" and \"coeff\"");
    }
    out += KValue::of(Atom::decode(item["atom"].get<std::string>())) *
           parse_rational(item["coeff"].get<std::string>());
  }
  return out;
}

std::string kv_to_text(const KValue& v) {
  if (v.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [a, c] : v.terms()) {
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (a.kind == AtomKind::One) {
      os << to_string(mag);
    } else {
      if (mag != 1) os << to_string(mag) << "*";
      os << a.encode();
    }
  }
  return os.str();
}

}  // namespace dirzeta
