// SPDX-License-Identifier: MIT
#include "dirzeta/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <queue>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

#include "dirzeta/exact.hpp"

namespace dirzeta {

void Precision::validate() const {
  if (digits < 15 || digits > kMaxDigits) {
    throw DomainError("precision: digits = " + std::to_string(digits) + " outside [15, " +
                      std::to_string(kMaxDigits) + "]");
  }
}

Real Precision::tolerance() const {
  validate();
  // Working precision is at least twice the target.
  return pow(Real(10), -Real(2 * digits));
}

Real to_real(const Rational& r) { return Real(num(r)) / Real(den(r)); }

namespace {

template <class T>
T from_rational(const Rational& r);
template <>
Real from_rational<Real>(const Rational& r) {
  return to_real(r);
}
template <>
double from_rational<double>(const Rational& r) {
  return to_double(r);
}

// B_{2i}/(2i)! for i = 1..n.
template <class T>
const std::vector<T>& em_coefficients(std::size_t n) {
  static std::mutex mu;
  static std::vector<T> table;
  std::lock_guard lock(mu);
  while (table.size() < n) {
    auto i = static_cast<unsigned>(table.size() + 1);
    table.push_back(from_rational<T>(bernoulli_number(2 * i) / Rational(factorial(2 * i))));
  }
  return table;
}

template <class T>
struct ZetaPair {
  T value;
  T deriv;
};

template <class T>
ZetaPair<T> zeta_em_impl(const T& s, const T& d, const T& tol, int extra_shift) {
  using std::abs;
  using std::ceil;
  using std::log;
  using std::pow;
  if (!(d > 0)) throw DomainError("zeta_em: d not > 0");
  if (s == 1) throw DomainError("zeta_em: pole at s = 1");
  const double as = abs(static_cast<double>(s));
  for (int attempt = 0; attempt < 6; ++attempt) {
    // Shift d -> a = d + M with a >= 10 + |s| (+ headroom for extended precision).
    const double target = (10.0 + as + extra_shift) * std::pow(2.0, attempt);
    long M = std::max(0L, static_cast<long>(std::ceil(target - static_cast<double>(d))));
    T val = 0, der = 0;
    for (long k = 0; k < M; ++k) {
      T x = d + k;
      T lx = log(x);
      T term = pow(x, -s);
      val += term;
      der -= lx * term;
    }
    const T a = d + M;
    const T la = log(a);
    const T a_ms = pow(a, -s);
    const T a_1ms = a_ms * a;
    val += a_1ms / (s - 1) + a_ms / 2;
    der += -la * a_1ms / (s - 1) - a_1ms / ((s - 1) * (s - 1)) - la * a_ms / 2;

    const auto order = static_cast<std::size_t>(2 * std::ceil(as) + 16 + 2 * extra_shift);
    const auto& coef = em_coefficients<T>(order);
    T poch = s, dpoch = 1;  // (s)_{2i-1} and its s-derivative, i = 1
    T apow = a_ms / a;      // a^{-s-2i+1}
    const T a2 = a * a;
    T prev = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (std::size_t i = 1; i <= order; ++i) {
      T tv = coef[i - 1] * poch * apow;
      T td = coef[i - 1] * (dpoch - la * poch) * apow;
      val += tv;
      der += td;
      T mag = abs(tv) + abs(td);
      if (mag <= tol * (abs(val) + abs(der))) {
        converged = true;
        break;
      }
      if (i > 3 && mag > prev) break;  // asymptotic series started to diverge
      prev = mag;
      // advance (s)_{2i-1} -> (s)_{2i+1}
      for (int step = 0; step < 2; ++step) {
        T f = s + static_cast<double>(2 * i - 1 + step);
        dpoch = dpoch * f + poch;
        poch *= f;
      }
      apow /= a2;
    }
    if (converged) return {val, der};
  }
  throw DomainError("zeta_em: Euler-Maclaurin failed to converge");
}

}  // namespace

Real zeta_em(const Real& s, const Real& d, const Precision& prec) {
  return zeta_em_impl<Real>(s, d, prec.tolerance(), prec.digits).value;
}

Real zeta_em_deriv(const Real& s, const Real& d, const Precision& prec) {
  return zeta_em_impl<Real>(s, d, prec.tolerance(), prec.digits).deriv;
}

double zeta_em(double s, double d) { return zeta_em_impl<double>(s, d, 1e-17, 0).value; }

double zeta_em_deriv(double s, double d) { return zeta_em_impl<double>(s, d, 1e-17, 0).deriv; }

namespace {

template <class T>
T ln_gamma_impl(const T& x, const T& tol, int extra_shift, const T& half_ln_2pi) {
  using std::abs;
  using std::log;
  if (!(x > 0)) throw DomainError("ln_gamma: x not > 0");
  const double target = 10.0 + extra_shift;
  long M = std::max(0L, static_cast<long>(std::ceil(target - static_cast<double>(x))));
  T prod = 1;
  for (long k = 0; k < M; ++k) prod *= (x + k);
  const T z = x + M;
  T acc = (z - T(0.5)) * log(z) - z + half_ln_2pi;
  T zpow = 1 / z;
  const T z2 = z * z;
  for (unsigned i = 1; i < 400; ++i) {
    T term = from_rational<T>(bernoulli_number(2 * i) / Rational(2 * i * (2 * i - 1))) * zpow;
    acc += term;
    if (abs(term) <= tol * abs(acc) + tol) break;
    zpow /= z2;
  }
  return acc - log(prod);
}

}  // namespace

Real ln_gamma(const Real& x, const Precision& prec) {
  static const Real h = log(2 * boost::math::constants::pi<Real>()) / 2;
  return ln_gamma_impl<Real>(x, prec.tolerance(), prec.digits, h);
}

double ln_gamma(double x) {
  return ln_gamma_impl<double>(x, 1e-17, 0, 0.91893853320467274178032973640562);
}

Real euler_gamma(const Precision& prec) {
  prec.validate();
  static const Real g("0.57721566490153286060651209008240243104215933593992");
  return g;
}

Real ln_pi(const Precision& prec) {
  prec.validate();
  return log(boost::math::constants::pi<Real>());
}

double rgamma(double x) {
  if (x > 0) return 1.0 / std::tgamma(x);
  // Reflection: 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi, exact zero at integers.
  return boost::math::sin_pi(x) * std::tgamma(1.0 - x) / M_PI;
}

namespace {

// Legendre continued fraction for Gamma(a, x), modified Lentz.
double upper_gamma_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x)) * h;
}

}  // namespace

double upper_gamma_classic(double a, double x) {
  if (!(x > 0)) throw DomainError("upper_gamma_classic: x not > 0");
  if (x >= 2.0 && x >= a - 1.0) return upper_gamma_cf(a, x);
  if (a > 0) return boost::math::tgamma(a, x);
  // a <= 0: start from a + m in (0, 1] (or Gamma(0, x) = E1(x)) and recur down with
  // Gamma(b, x) = (Gamma(b + 1, x) - x^b e^{-x}) / b.
  const double m = std::ceil(-a);
  double b = a + m;
  double g;
  if (std::fabs(b) < 1e-15) {
    b = 0.0;
    g = boost::math::expint(1, x);
  } else {
    g = boost::math::tgamma(b, x);
  }
  const double ex = std::exp(-x);
  for (int i = 0; i < static_cast<int>(m); ++i) {
    b -= 1.0;
    g = (g - std::pow(x, b) * ex) / b;
  }
  return g;
}

// --------------------------------------------------------------------------
// Hypercube quadrature

namespace {

struct Rule {
  std::vector<double> x;   // nodes on [0, 1]
  std::vector<double> wk;  // Kronrod weights
  std::vector<double> wg;  // embedded Gauss weights (0 off the Gauss nodes)
};

const Rule& rule() {
  static const Rule r = [] {
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    using G = boost::math::quadrature::gauss<double, 7>;
    Rule out;
    const auto& ka = GK::abscissa();
    const auto& kw = GK::weights();
    const auto& ga = G::abscissa();
    const auto& gw = G::weights();
    auto gauss_weight = [&](double x) {
      for (std::size_t i = 0; i < ga.size(); ++i) {
        if (std::fabs(ga[i] - x) < 1e-13) return gw[i];
      }
      return 0.0;
    };
    for (std::size_t i = ka.size(); i-- > 0;) {
      double xa = ka[i];
      // node -xa on [-1, 1]
      if (xa != 0.0) {
        out.x.push_back((1.0 - xa) / 2);
        out.wk.push_back(kw[i] / 2);
        out.wg.push_back(gauss_weight(xa) / 2);
      }
    }
    for (std::size_t i = 0; i < ka.size(); ++i) {
      double xa = ka[i];
      out.x.push_back((1.0 + xa) / 2);
      out.wk.push_back(kw[i] / 2);
      out.wg.push_back(gauss_weight(xa) / 2);
    }
    return out;
  }();
  return r;
}

struct Cell {
  std::vector<double> lo, hi;
  std::vector<double> value, error;
  double priority = 0;
  int worst_axis = 0;
  bool operator<(const Cell& o) const { return priority < o.priority; }
};

class CubeIntegrator {
 public:
  CubeIntegrator(const VecIntegrand& g, int m, const std::vector<double>& exps)
      : g_(g), m_(m), k_(static_cast<int>(exps.size())), inv_(exps.size()), pow_(exps.size()), scale_(1.0) {
    // Only singular weights (e < 0) are substituted away; x^e with e >= 0 is
    // integrated as is, since t^{1/(1+e)} would create a new corner.
    for (std::size_t q = 0; q < exps.size(); ++q) {
      const bool sub = exps[q] < 0;
      inv_[q] = sub ? 1.0 / (1.0 + exps[q]) : 1.0;
      pow_[q] = sub ? 0.0 : exps[q];
      scale_ *= inv_[q];
    }
  }

  long evaluations() const { return evals_; }

  // Tensor Kronrod estimate plus per-axis Gauss-substituted estimates.
  void estimate(Cell& c) {
    const Rule& r = rule();
    const int n = static_cast<int>(r.x.size());
    long npts = 1;
    for (int a = 0; a < k_; ++a) npts *= n;
    c.value.assign(m_, 0.0);
    std::vector<std::vector<double>> axis_est(k_, std::vector<double>(m_, 0.0));
    std::vector<int> idx(k_, 0);
    std::vector<double> t(k_), x(k_), out(m_);
    double vol = 1;
    for (int a = 0; a < k_; ++a) vol *= (c.hi[a] - c.lo[a]);
    for (long p = 0; p < npts; ++p) {
      long rem = p;
      double wk = vol;
      for (int a = 0; a < k_; ++a) {
        idx[a] = static_cast<int>(rem % n);
        rem /= n;
        t[a] = c.lo[a] + (c.hi[a] - c.lo[a]) * r.x[idx[a]];
        x[a] = inv_[a] == 1.0 ? t[a] : std::pow(t[a], inv_[a]);
        wk *= r.wk[idx[a]];
        if (pow_[a] != 0.0) wk *= std::pow(x[a], pow_[a]);
      }
      if (k_ == 0) wk = 1;
      g_(x.data(), out.data());
      ++evals_;
      for (int i = 0; i < m_; ++i) c.value[i] += wk * out[i];
      for (int a = 0; a < k_; ++a) {
        double wg = r.wg[idx[a]];
        if (wg == 0.0) continue;
        double w = wk / r.wk[idx[a]] * wg;
        for (int i = 0; i < m_; ++i) axis_est[a][i] += w * out[i];
      }
    }
    c.error.assign(m_, 0.0);
    double worst = -1;
    c.worst_axis = 0;
    for (int a = 0; a < k_; ++a) {
      double amax = 0;
      for (int i = 0; i < m_; ++i) {
        double e = std::fabs(axis_est[a][i] - c.value[i]);
        c.error[i] += e;
        amax = std::max(amax, e);
      }
      if (amax > worst) {
        worst = amax;
        c.worst_axis = a;
      }
    }
  }

  QuadVecResult run(const QuadOptions& opt) {
    QuadVecResult res;
    Cell root;
    root.lo.assign(k_, 0.0);
    root.hi.assign(k_, 1.0);
    estimate(root);
    if (k_ == 0) {
      res.value = root.value;
      res.error.assign(m_, 0.0);
      res.evaluations = evals_;
      res.converged = true;
      return res;
    }
    std::vector<double> tot = root.value, err = root.error;
    auto prio = [&](const Cell& c) {
      double p = 0;
      for (int i = 0; i < m_; ++i) {
        double tol = opt.abs_tol + opt.rel_tol * std::fabs(tot[i]);
        p = std::max(p, c.error[i] / tol);
      }
      return p;
    };
    root.priority = prio(root);
    std::priority_queue<Cell> heap;
    heap.push(std::move(root));
    auto done = [&] {
      for (int i = 0; i < m_; ++i) {
        if (err[i] > opt.abs_tol + opt.rel_tol * std::fabs(tot[i])) return false;
      }
      return true;
    };
    while (!done() && evals_ < opt.max_evaluations) {
      Cell c = heap.top();
      heap.pop();
      const int a = c.worst_axis;
      const double mid = 0.5 * (c.lo[a] + c.hi[a]);
      Cell left = c, right = c;
      left.hi[a] = mid;
      right.lo[a] = mid;
      estimate(left);
      estimate(right);
      for (int i = 0; i < m_; ++i) {
        tot[i] += left.value[i] + right.value[i] - c.value[i];
        err[i] += left.error[i] + right.error[i] - c.error[i];
      }
      left.priority = prio(left);
      right.priority = prio(right);
      heap.push(std::move(left));
      heap.push(std::move(right));
    }
    // Re-sum to limit accumulated rounding in the running totals.
    std::vector<double> sum(m_, 0.0), esum(m_, 0.0);
    while (!heap.empty()) {
      const Cell& c = heap.top();
      for (int i = 0; i < m_; ++i) {
        sum[i] += c.value[i];
        esum[i] += c.error[i];
      }
      heap.pop();
    }
    for (int i = 0; i < m_; ++i) {
      sum[i] *= scale_;
      esum[i] *= scale_;
    }
    res.value = std::move(sum);
    res.error = std::move(esum);
    res.evaluations = evals_;
    res.converged = done();
    return res;
  }

 private:
  const VecIntegrand& g_;
  int m_;
  int k_;
  std::vector<double> inv_;
  std::vector<double> pow_;
  double scale_;
  long evals_ = 0;
};

}  // namespace

QuadVecResult quad_cube_weighted(const VecIntegrand& g, int m, const std::vector<double>& exps,
                                 const QuadOptions& opt) {
  if (exps.size() > 4) throw DomainError("quad_cube: dimension " + std::to_string(exps.size()) + " > 4");
  for (std::size_t q = 0; q < exps.size(); ++q) {
    if (!(exps[q] > -1.0)) {
      throw DomainError("quad_cube: exponent e[" + std::to_string(q) + "] <= -1 (divergent)");
    }
  }
  CubeIntegrator integ(g, m, exps);
  return integ.run(opt);
}

QuadResult quad_cube(const std::function<double(const double*)>& f,
                     const std::vector<double>& singular_exponents, const Precision& prec) {
  prec.validate();
  const auto k = singular_exponents.size();
  VecIntegrand g = [&](const double* x, double* out) {
    // Regular part f / prod x^e; a flushed-to-zero abscissa is nudged to the
    // smallest normal double.
    double xs[4];
    double w = 1;
    for (std::size_t q = 0; q < k; ++q) {
      xs[q] = std::max(x[q], std::numeric_limits<double>::min());
      w *= std::pow(xs[q], -singular_exponents[q]);
    }
    out[0] = f(xs) * w;
  };
  QuadOptions opt;
  auto r = quad_cube_weighted(g, 1, singular_exponents, opt);
  return {r.value[0], r.error[0], r.evaluations, r.converged};
}

double inc_gamma_upper(double s, double theta, double nu, const Precision& prec) {
  prec.validate();
  if (!(theta > 0)) throw DomainError("inc_gamma_upper: theta not > 0");
  if (!(nu > 0)) throw DomainError("inc_gamma_upper: nu not > 0");
  // y = theta + t/nu: e^{-nu theta}/nu * int_0^inf e^{-t} (theta + t/nu)^{s-1} dt,
  // truncated where the integrand is below 1e-18 of its value at t = 0.
  double T = 40.0 + 2.0 * std::max(0.0, s - 1.0);
  auto logf = [&](double t) { return -t + (s - 1.0) * std::log(theta + t / nu); };
  const double lf0 = logf(0.0);
  double peak = lf0;
  if (s > 1) peak = std::max(peak, logf(std::max(0.0, s - 1.0 - nu * theta)));
  while (logf(T) - peak > std::log(1e-18)) T *= 1.5;
  VecIntegrand g = [&](const double* u, double* out) {
    double t = T * u[0];
    out[0] = T * std::exp(logf(t) - peak);
  };
  QuadOptions opt;
  opt.abs_tol = 1e-300;
  opt.rel_tol = 1e-13;
  auto r = quad_cube_weighted(g, 1, {0.0}, opt);
  return std::exp(-nu * theta + peak) / nu * r.value[0];
}

double inc_gamma_lower(double s, double theta, double nu, const Precision& prec) {
  prec.validate();
  if (!(s > 0)) throw DomainError("inc_gamma_lower: s not > 0");
  if (!(theta > 0)) throw DomainError("inc_gamma_lower: theta not > 0");
  if (!(nu > 0)) throw DomainError("inc_gamma_lower: nu not > 0");
  // y = theta t^{1/s}: theta^s/s * int_0^1 exp(-nu theta t^{1/s}) dt.
  VecIntegrand g = [&](const double* t, double* out) {
    out[0] = std::exp(-nu * theta * std::pow(t[0], 1.0 / s));
  };
  QuadOptions opt;
  opt.abs_tol = 1e-300;
  opt.rel_tol = 1e-13;
  auto r = quad_cube_weighted(g, 1, {0.0}, opt);
  return std::pow(theta, s) / s * r.value[0];
}

}  // namespace dirzeta
