// SPDX-License-Identifier: MIT
#include "dirzeta/barnes.hpp"

#include <cmath>

#include "dirzeta/exact.hpp"

namespace dirzeta {

void validate(const BarnesSpec& spec) {
  const auto P = spec.R.size();
  if (P == 0) throw DomainError("Barnes spec needs at least one coordinate");
  if (spec.d.size() != P || spec.w.size() != P) throw DomainError("Barnes spec: R, d and w lengths differ");
  for (std::size_t p = 0; p < P; ++p) {
    if (!(spec.d[p] > 0)) throw DomainError("Barnes spec: d[" + std::to_string(p + 1) + "] not > 0");
    if (!(spec.w[p] > 0)) throw DomainError("Barnes spec: w[" + std::to_string(p + 1) + "] not > 0");
  }
}

BarnesReduction barnes_reduce(const BarnesSpec& spec) {
  validate(spec);
  const auto P = spec.R.size();
  Integer l = 1, g = 0;
  for (const auto& w : spec.w) {
    l = boost::multiprecision::lcm(l, num(w));
    g = boost::multiprecision::gcd(g, den(w));
  }
  BarnesReduction red;
  red.wstar = Rational(l, g);
  red.factor = 1;
  for (std::size_t p = 0; p < P; ++p) {
    Rational b = red.wstar / spec.w[p];
    if (!is_integer(b)) throw DomainError("barnes_reduce: non-integral beta");  // cannot happen
    red.beta.push_back(num(b));
    red.factor *= ipow(b, spec.R[p]);
  }
  Integer count = 1;
  for (const auto& b : red.beta) count *= b;
  if (count > 1'000'000) throw DomainError("barnes_reduce: shift lattice too large (" + count.str() + " terms)");
  std::vector<Integer> u(P, 0);
  while (true) {
    std::vector<Rational> sh(P);
    for (std::size_t p = 0; p < P; ++p) sh[p] = (spec.d[p] + Rational(u[p])) / Rational(red.beta[p]);
    red.shifted.push_back(std::move(sh));
    std::size_t p = 0;
    while (p < P && ++u[p] == red.beta[p]) u[p++] = 0;
    if (p == P) break;
  }
  return red;
}

namespace {

// Splits [0, P) by bitmask; `in` gets the set bits.
void split_mask(unsigned mask, std::size_t P, std::vector<unsigned>& in, std::vector<unsigned>& out) {
  in.clear();
  out.clear();
  for (unsigned p = 0; p < P; ++p) ((mask >> p) & 1U ? in : out).push_back(p);
}

// sum over k over `set` with |k| = kk of (-1)^kk prod zeta(-R_p - k_p, d_p)/k_p!
Rational inner_sum(const std::vector<unsigned>& set, unsigned kk, const MultiIndex& R, const std::vector<Rational>& d) {
  Rational acc = 0;
  if (set.empty()) return kk == 0 ? Rational(1) : Rational(0);
  for_each_composition(kk, static_cast<unsigned>(set.size()), [&](const MultiIndex& k) {
    Rational t = 1;
    for (std::size_t i = 0; i < set.size(); ++i) {
      const unsigned p = set[i];
      t *= hurwitz_zeta_neg(R[p] + k[i], d[p]) / Rational(factorial(k[i]));
    }
    acc += t;
    return true;
  });
  return (kk % 2) ? Rational(-acc) : acc;
}

void check_unit(const MultiIndex& R, const std::vector<Rational>& d) {
  if (R.empty() || R.size() != d.size()) throw DomainError("Barnes: R and d must have the same positive length");
  if (R.size() > 16) throw DomainError("Barnes: at most 16 coordinates supported");
  for (const auto& x : d) {
    if (!(x > 0)) throw DomainError("Barnes: d entries must be > 0");
  }
}

}  // namespace

std::vector<Rational> barnes_unit_coefficients(const MultiIndex& R, const std::vector<Rational>& d) {
  check_unit(R, d);
  const auto P = R.size();
  std::vector<Rational> a(total(R) + P, Rational(0));
  std::vector<unsigned> in, out;
  for (unsigned mask = 0; mask + 1 < (1U << P); ++mask) {
    split_mask(mask, P, in, out);
    Rational fact = 1;
    unsigned T = static_cast<unsigned>(out.size()) - 1;
    for (unsigned p : out) {
      fact *= Rational(factorial(R[p]));
      T += R[p];
    }
    for (unsigned kp = 0; kp <= T; ++kp) {
      a[kp] += fact * inner_sum(in, T - kp, R, d) / Rational(factorial(kp));
    }
  }
  return a;
}

namespace {

Rational abs_d(const std::vector<Rational>& d) {
  Rational s = 0;
  for (const auto& x : d) s += x;
  return s;
}

}  // namespace

Rational barnes_one_value(const MultiIndex& R, unsigned m, const std::vector<Rational>& d) {
  const auto a = barnes_unit_coefficients(R, d);
  const Rational D = abs_d(d);
  Rational acc = 0;
  for (unsigned kp = 0; kp < a.size(); ++kp) {
    if (a[kp] != 0) acc += a[kp] * hurwitz_zeta_neg(m + kp, D);
  }
  return acc;
}

Rational barnes_one_value_printed(const MultiIndex& R, unsigned m, const std::vector<Rational>& d) {
  check_unit(R, d);
  const auto P = R.size();
  const Rational D = abs_d(d);
  Rational acc = 0;
  std::vector<unsigned> in, out;
  for (unsigned mask = 0; mask + 1 < (1U << P); ++mask) {
    split_mask(mask, P, in, out);
    Rational fact = (in.size() % 2) ? -1 : 1;
    unsigned T = static_cast<unsigned>(out.size()) - 1;
    for (unsigned p : in) {
      fact *= Rational(factorial(R[p]));
      T += R[p];
    }
    for (unsigned kp = 0; kp <= T; ++kp) {
      acc += fact * inner_sum(in, T - kp, R, d) * hurwitz_zeta_neg(m + kp, D) / Rational(factorial(kp));
    }
  }
  return acc;
}

Rational barnes_value(const MultiIndex& R, unsigned m, const std::vector<Rational>& d,
                      const std::vector<Rational>& w) {
  const auto red = barnes_reduce({R, d, w});
  Rational acc = 0;
  for (const auto& sh : red.shifted) acc += barnes_one_value(R, m, sh);
  return acc * red.factor * ipow(red.wstar, m);
}

KValue barnes_derivative(const MultiIndex& R, unsigned m, const std::vector<Rational>& d,
                         const std::vector<Rational>& w) {
  const auto red = barnes_reduce({R, d, w});
  Rational value_part = 0;
  KValue deriv_part;
  for (const auto& sh : red.shifted) {
    const auto a = barnes_unit_coefficients(R, sh);
    const Rational D = abs_d(sh);
    for (unsigned kp = 0; kp < a.size(); ++kp) {
      if (a[kp] == 0) continue;
      value_part += a[kp] * hurwitz_zeta_neg(m + kp, D);
      deriv_part += kv_zph(m + kp, D) * a[kp];
    }
  }
  const Rational scale = red.factor * ipow(red.wstar, m);
  return (deriv_part - kv_ln_rational(red.wstar) * value_part) * scale;
}

double barnes_unit_eval(const MultiIndex& R, double s, const std::vector<Rational>& d) {
  const auto a = barnes_unit_coefficients(R, d);
  const Real D = to_real(abs_d(d));
  double acc = 0;
  for (unsigned kp = 0; kp < a.size(); ++kp) {
    if (a[kp] == 0) continue;
    if (s - kp == 1.0) throw DomainError("barnes_unit_eval: s is a pole");
    acc += to_double(a[kp]) * zeta_em(Real(s - kp), D).convert_to<double>();
  }
  return acc;
}

double barnes_series(const BarnesSpec& spec, double s, unsigned n_max) {
  validate(spec);
  const auto P = spec.R.size();
  std::vector<double> d(P), w(P);
  for (std::size_t p = 0; p < P; ++p) {
    d[p] = to_double(spec.d[p]);
    w[p] = to_double(spec.w[p]);
  }
  // Odometer over the box, innermost coordinate summed in a tight loop.
  std::vector<unsigned> n(P, 0);
  double acc = 0;
  while (true) {
    double num_outer = 1, lin_outer = 0;
    for (std::size_t p = 1; p < P; ++p) {
      num_outer *= std::pow(n[p] + d[p], static_cast<double>(spec.R[p]));
      lin_outer += w[p] * (n[p] + d[p]);
    }
    double row = 0;
    for (unsigned n0 = n_max; n0-- > 0;) {
      const double x = n0 + d[0];
      row += std::pow(x, static_cast<double>(spec.R[0])) * std::pow(w[0] * x + lin_outer, -s);
    }
    acc += num_outer * row;
    std::size_t p = 1;
    while (p < P && ++n[p] == n_max) n[p++] = 0;
    if (p >= P) break;
  }
  return acc;
}

}  // namespace dirzeta
