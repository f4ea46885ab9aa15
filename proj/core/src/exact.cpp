// SPDX-License-Identifier: MIT
#include "dirzeta/exact.hpp"

#include <mutex>

namespace dirzeta {

namespace {

Rational binomial_int(unsigned n, unsigned k) {
  return Rational(factorial(n), factorial(k) * factorial(n - k));
}

// Memoised B_0..B_n from sum_{k<m} C(m+1,k) B_k = -(m+1) B_m.
class BernoulliTable {
 public:
  Rational get(unsigned n) {
    std::lock_guard lock(mu_);
    while (table_.size() <= n) {
      auto m = static_cast<unsigned>(table_.size());
      if (m == 0) {
        table_.emplace_back(1);
        continue;
      }
      Rational acc = 0;
      for (unsigned k = 0; k < m; ++k) acc += binomial_int(m + 1, k) * table_[k];
      table_.push_back(-acc / (m + 1));
    }
    return table_[n];
  }

 private:
  std::mutex mu_;
  std::vector<Rational> table_;
};

BernoulliTable& bernoulli_table() {
  static BernoulliTable t;
  return t;
}

bool next_composition(MultiIndex& k) {
  // Lexicographic successor among indices with the same length and sum.
  const auto n = k.size();
  if (n < 2) return false;
  std::size_t i = n - 1;
  while (i > 0 && k[i] == 0) --i;
  if (i == 0) return false;
  // k[i] > 0 and everything to its right is zero: move one unit left.
  const unsigned tail = k[i] - 1;
  k[i] = 0;
  ++k[i - 1];
  k[n - 1] = tail;
  return true;
}

}  // namespace

Rational bernoulli_number(unsigned n) { return bernoulli_table().get(n); }

Rational bernoulli_poly(unsigned n, const Rational& x) {
  Rational acc = 0;
  Rational xp = 1;  // x^(n-k), accumulated from k = n downward
  for (unsigned k = n + 1; k-- > 0;) {
    acc += binomial_int(n, k) * bernoulli_number(k) * xp;
    xp *= x;
  }
  return acc;
}

Rational hurwitz_zeta_neg(unsigned n, const Rational& d) {
  if (d <= 0) throw DomainError("hurwitz_zeta_neg: d = " + to_string(d) + " not > 0");
  return -bernoulli_poly(n + 1, d) / (n + 1);
}

Rational binom_shifted(const Rational& s, long i) {
  if (i < 0) return 0;
  Rational acc = 1;
  for (long l = 0; l < i; ++l) acc *= (s - l) / (l + 1);
  return acc;
}

Rational multinomial(unsigned n, const MultiIndex& k) {
  if (total(k) != n) {
    throw DomainError("multinomial: |k| = " + std::to_string(total(k)) + " differs from n = " +
                      std::to_string(n));
  }
  Integer d = 1;
  for (auto kp : k) d *= factorial(kp);
  return Rational(factorial(n), d);
}

Rational harmonic(unsigned n) {
  Rational h = 0;
  for (unsigned k = 1; k <= n; ++k) h += Rational(1, k);
  return h;
}

void for_each_composition(unsigned total_sum, unsigned parts,
                          const std::function<bool(const MultiIndex&)>& fn) {
  if (parts == 0) {
    if (total_sum == 0) fn(MultiIndex{});
    return;
  }
  MultiIndex k(parts, 0);
  k.back() = total_sum;
  do {
    if (!fn(k)) return;
  } while (next_composition(k));
}

std::vector<MultiIndex> compositions(unsigned total_sum, unsigned parts) {
  std::vector<MultiIndex> out;
  for_each_composition(total_sum, parts, [&](const MultiIndex& k) {
    out.push_back(k);
    return true;
  });
  return out;
}

}  // namespace dirzeta
