// SPDX-License-Identifier: MIT
#include "dirzeta/witten.hpp"

#include <cmath>

#include <boost/math/constants/constants.hpp>

namespace dirzeta {

Rational witten_value0(const std::string& name) { return value_at(preset_problem(name)); }

KValue witten_derivative0(const std::string& name) {
  const auto wp = preset(name);
  const auto pr = preset_problem(name);
  const Rational v = value_at(pr);
  return kv_ln_rational(Rational(wp.weyl_denominator)) * v + derivative_at(pr);
}

ContinuationParams g2_residue_params() {
  ContinuationParams p;
  p.theta = 0.02;
  return p;
}

ResiduesG2 residues_g2(const ContinuationParams& params) {
  const auto pr = preset_problem("g2");
  const auto a = residue_at(pr, rat(1, 3), params);
  const auto b = residue_at(pr, rat(1, 5), params);
  const double wa = std::pow(120.0, 1.0 / 3), wb = std::pow(120.0, 1.0 / 5);
  ResiduesG2 r;
  r.omega_alpha = wa * a.value;
  r.omega_beta = wb * b.value;
  r.err_alpha = wa * std::abs(a.value - a.coarse);
  r.err_beta = wb * std::abs(b.value - b.coarse);
  return r;
}

MeinardusData meinardus_constants(const ContinuationParams& params) {
  MeinardusData m;
  const auto res = residues_g2(params);
  m.omega_alpha = res.omega_alpha;
  m.omega_beta = res.omega_beta;
  m.zeta0 = witten_value0("g2");
  m.zeta_prime0 = kv_eval(witten_derivative0("g2")).convert_to<double>();
  const double z0 = to_double(m.zeta0);
  const double g43 = std::tgamma(4.0 / 3), g65 = std::tgamma(6.0 / 5);
  const double z43 = zeta_em(4.0 / 3, 1.0), z65 = zeta_em(6.0 / 5, 1.0);
  m.c1 = m.omega_alpha * g43 * z43;
  m.c2 = m.omega_beta * g65 * z65;
  m.K2 = 0.75 * m.c2 / std::pow(m.c1, 3.0 / 20);
  m.K3 = -3.0 / 160 * m.c2 * m.c2 / std::pow(m.c1, 21.0 / 20);
  m.A1 = 4 * std::pow(m.c1, 0.75);
  // omega_beta Gamma(1/5) zeta(6/5) = 5 c2
  m.A2 = 5 * m.c2 / std::pow(m.c1, 3.0 / 20);
  m.A2_display = m.omega_beta * std::tgamma(0.2) * z65 / std::pow(m.omega_alpha * std::tgamma(1.0 / 3) * z43, 3.0 / 20);
  m.A3 = 2 * m.K2 * m.K2 / (3 * std::pow(m.c1, 0.75)) - m.c2 / std::pow(m.c1, 18.0 / 20) * m.K2;
  const double pi = boost::math::constants::pi<double>();
  m.C = std::exp(m.zeta_prime0) * std::pow(m.c1, (1 - 6 * z0) / 8) * std::sqrt(3.0) / std::sqrt(8 * pi);
  m.b = (Rational(7) - 6 * m.zeta0) / 8;
  return m;
}

Integer g2_dimension(unsigned long i, unsigned long j) {
  const Integer I(i), J(j);
  return I * J * (I + J) * (I + 2 * J) * (I + 3 * J) * (2 * I + 3 * J) / 120;
}

unsigned PartsTable::at(unsigned long n) const {
  const auto it = f.find(n);
  return it == f.end() ? 0U : it->second;
}

unsigned long PartsTable::total() const {
  unsigned long t = 0;
  for (const auto& [n, c] : f) t += c;
  return t;
}

PartsTable parts_table(unsigned long n_max) {
  if (n_max < 1) throw DomainError("parts_table: n_max must be >= 1");
  PartsTable t;
  t.n_max = n_max;
  const Integer cap(n_max);
  // P is increasing in each argument, so both loops stop at the first overshoot.
  for (unsigned long j = 1; g2_dimension(1, j) <= cap; ++j) {
    for (unsigned long i = 1;; ++i) {
      const Integer v = g2_dimension(i, j);
      if (v > cap) break;
      ++t.f[v.convert_to<unsigned long>()];
    }
  }
  return t;
}

std::vector<Integer> rg2_exact(unsigned long n_max) {
  const auto t = parts_table(n_max);
  std::vector<Integer> r(n_max + 1, Integer(0));
  r[0] = 1;
  for (const auto& [v, mult] : t.f) {
    for (unsigned c = 0; c < mult; ++c) {
      for (unsigned long n = v; n <= n_max; ++n) r[n] += r[n - v];
    }
  }
  return r;
}

double rg2_log_asymptotic(double n, const MeinardusData& d) {
  if (!(n >= 1)) throw DomainError("rg2_asymptotic: n must be >= 1");
  return std::log(d.C) - to_double(d.b) * std::log(n) + d.A1 * std::pow(n, 0.25) + d.A2 * std::pow(n, 0.15) +
         d.A3 * std::pow(n, 0.05);
}

double rg2_asymptotic(double n, const MeinardusData& d) { return std::exp(rg2_log_asymptotic(n, d)); }

}  // namespace dirzeta
