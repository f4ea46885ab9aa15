// SPDX-License-Identifier: MIT
// Independent oracles for the library, grouped into numbered acceptance
// criteria.  Shared by the `oracle` subcommand and the acceptance binary.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dirzeta/kvalue.hpp"
#include "dirzeta/spec.hpp"

namespace dirzeta::checks {

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_deviation = 0;
  double tolerance = 0;
  std::string detail;
};

struct Criterion {
  int id = 0;
  std::string title;
  std::vector<CheckResult> checks;
  double seconds = 0;

  bool passed() const;
};

// Tolerances.
inline constexpr double kRuntimeValue = 10.0;       // seconds per Witten value
inline constexpr double kRuntimeDerivative = 60.0;  // seconds per Witten derivative
inline constexpr double kDisplayEval = 1e-10;
inline constexpr double kSeries = 1e-8;
inline constexpr double kTheta = 1e-8;
inline constexpr double kQ0 = 1e-4;
inline constexpr double kQ1 = 1e-3;
inline constexpr double kBarnesReduction = 1e-10;
inline constexpr double kBarnesDerivative = 1e-5;
inline constexpr double kShapeResidue = 1e-8;
inline constexpr double kResidueMesh = 1e-4;
inline constexpr double kResidueSlope = 1e-3;
inline constexpr double kSplitting = 1e-10;
inline constexpr double kZetaDeriv = 1e-6;
inline constexpr double kHurwitz = 1e-10;
inline constexpr double kExtrapolation = 1e-4;
inline constexpr double kExtrapolationSlope = 1e-3;

// Closed forms stated in the literature for the two Witten presets.
Rational reference_value0(const std::string& name);
/// The zeta_g'(0) display with zeta(0) = -1/2, zeta(-1) = -1/12 substituted.
KValue reference_derivative0(const std::string& name);
/// The same display evaluated term by term from the numeric kernels.
double reference_derivative0_numeric(const std::string& name);

// Criterion 1-2.
CheckResult check_witten_value(const std::string& name);
CheckResult check_witten_derivative_exact(const std::string& name);
CheckResult check_witten_derivative_numeric(const std::string& name);
CheckResult check_reference_reduction(const std::string& name);

// Criterion 3.
double direct_series(const Problem& problem, double s, unsigned box);
CheckResult check_series(const std::string& name, double s, double theta);
CheckResult check_theta_independence(const std::string& name, double s, double theta_a, double theta_b);

// Criterion 4.
CheckResult check_q0_oracle(const std::string& name);
CheckResult check_q1_oracle(const std::string& name);

// Criterion 5.
CheckResult check_barnes_collapse();
CheckResult check_barnes_reduction();
CheckResult check_barnes_derivative();
CheckResult check_barnes_value_paths();

// Criterion 6.
CheckResult check_shape_residue();
CheckResult check_residue_mesh();
CheckResult check_residue_slope();

// Criterion 7.
CheckResult check_partitions_dual();
CheckResult check_partitions_brute();
CheckResult check_b_exponent();
CheckResult check_trend();

// Criterion 8.
CheckResult check_splitting();
CheckResult check_zeta_deriv();
CheckResult check_hurwitz();

// Further oracles, exposed through `oracle --check`.
CheckResult check_extrapolation(const std::string& name);
CheckResult check_parts_totals();
CheckResult check_p1_sequences();
CheckResult check_saddle();
CheckResult check_euler_gamma();

Criterion criterion(int id);
inline constexpr int kCriteria = 8;

/// Names accepted by run_named(); "all" runs every criterion.
std::vector<std::string> check_names();
/// preset is used by the checks that take one (default so5).
std::vector<CheckResult> run_named(const std::string& name, const std::string& preset);

std::string format_line(const CheckResult& r);

}  // namespace dirzeta::checks
