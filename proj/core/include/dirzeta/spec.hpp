// SPDX-License-Identifier: MIT
// Problem data: the multizeta configuration, direction, target point, presets.
#pragma once

#include <string>
#include <vector>

#include "dirzeta/rational.hpp"

namespace dirzeta {

/// Sum over n in N_0^P of prod_p (n_p + d_p)^{-s_p} prod_q (l_q(n) + d'_q)^{-s'_q},
/// l_q(n) = sum_p c[q][p] n_p and d'_q = l_q(d).
struct HurwitzSpec {
  unsigned P = 0;
  unsigned Q = 0;
  std::vector<std::vector<Rational>> c;  ///< Q rows of length P
  std::vector<Rational> d;               ///< length P

  std::vector<Rational> dprime() const;

  friend bool operator==(const HurwitzSpec&, const HurwitzSpec&) = default;
};

struct Direction {
  std::vector<Rational> mu;       ///< length P, entries >= 0
  std::vector<Rational> muprime;  ///< length Q, entries > 0

  static Direction ones(unsigned P, unsigned Q);
  friend bool operator==(const Direction&, const Direction&) = default;
};

struct TargetPoint {
  MultiIndex N;       ///< length P
  MultiIndex Nprime;  ///< length Q

  static TargetPoint zero(unsigned P, unsigned Q);
  friend bool operator==(const TargetPoint&, const TargetPoint&) = default;
};

struct Problem {
  HurwitzSpec spec;
  Direction dir;
  TargetPoint target;

  friend bool operator==(const Problem&, const Problem&) = default;
};

struct WittenPreset {
  std::string name;
  HurwitzSpec spec;
  unsigned weyl_denominator = 1;
};

/// Throws DomainError naming the first violated constraint (1-based indices).
void validate(const HurwitzSpec& spec);
void validate(const Problem& problem);

/// "so5" or "g2"; throws DomainError otherwise.
WittenPreset preset(const std::string& name);

/// Preset spec with unit direction and zero target.
Problem preset_problem(const std::string& name);

/// JSON config; mu, muprime default to ones and N, Nprime to zeros.
Problem parse_problem(const std::string& json_text);
std::string problem_to_json(const Problem& problem);

Problem load_spec(const std::string& path);
void save_spec(const std::string& path, const Problem& problem);

}  // namespace dirzeta
