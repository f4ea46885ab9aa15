// SPDX-License-Identifier: MIT
#include "dirzeta/directional.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "dirzeta/barnes.hpp"
#include "dirzeta/exact.hpp"
#include "dirzeta/parallel.hpp"

namespace dirzeta {

namespace {

constexpr unsigned kMaxDim = 16;

struct Split {
  std::vector<unsigned> in, out;
};

Split split(unsigned mask, unsigned P) {
  Split s;
  for (unsigned p = 0; p < P; ++p) ((mask >> p) & 1U ? s.in : s.out).push_back(p);
  return s;
}

Rational sign(unsigned long e) { return (e % 2) ? Rational(-1) : Rational(1); }

Rational rsum(const std::vector<Rational>& v) {
  Rational a = 0;
  for (const auto& x : v) a += x;
  return a;
}

void check_dims(const HurwitzSpec& s) {
  if (s.P > kMaxDim || s.Q > kMaxDim) throw DomainError("at most 16 coordinates per side are supported");
}

// One (P, k) term of the closed formulas.
struct Cell {
  unsigned mask = 0;
  MultiIndex k;
};

std::vector<Cell> closed_cells(const Problem& pr) {
  const auto& t = pr.target;
  const unsigned P = pr.spec.P;
  std::vector<Cell> cells;
  for (unsigned mask = 0; mask + 1 < (1U << P); ++mask) {
    const auto sp = split(mask, P);
    unsigned B = total(t.Nprime) + static_cast<unsigned>(sp.in.size());
    for (unsigned p : sp.in) B += t.N[p];
    for_each_composition(B, static_cast<unsigned>(sp.out.size()), [&](const MultiIndex& k) {
      cells.push_back({mask, k});
      return true;
    });
  }
  return cells;
}

// Rational prefactor shared by the value and by Z1/Z2 without the j part.
struct CellData {
  Split sp;
  unsigned B = 0;
  Rational factN = 1;
  Rational A = 0;
  Rational zprod = 1;
};

CellData cell_data(const Problem& pr, const Cell& c) {
  const auto& t = pr.target;
  CellData cd;
  cd.sp = split(c.mask, pr.spec.P);
  cd.B = total(t.Nprime) + static_cast<unsigned>(cd.sp.in.size());
  cd.A = rsum(pr.dir.muprime);
  for (unsigned p : cd.sp.in) {
    cd.B += t.N[p];
    cd.factN *= Rational(factorial(t.N[p]));
    cd.A += pr.dir.mu[p];
  }
  for (std::size_t i = 0; i < cd.sp.out.size(); ++i) {
    const unsigned p = cd.sp.out[i];
    cd.zprod *= hurwitz_zeta_neg(t.N[p] + c.k[i], pr.spec.d[p]) / Rational(factorial(c.k[i]));
  }
  return cd;
}

}  // namespace

// ---------------------------------------------------------------------------
// Closed formulas

namespace {

Rational value_sum(const Problem& pr, Rational (*q0fn)(const QContext&)) {
  validate(pr);
  check_dims(pr.spec);
  const auto cells = closed_cells(pr);
  std::vector<Rational> parts(cells.size(), Rational(0));
  const auto& t = pr.target;
  parallel_for(cells.size(), [&](std::size_t i) {
    const auto cd = cell_data(pr, cells[i]);
    if (cd.zprod == 0) return;
    QContext ctx{&pr, 0, cd.sp.in, cells[i].k};
    Rational js = 0;
    for (unsigned j = 0; j < pr.spec.Q; ++j) {
      ctx.j = j;
      js += sign(t.Nprime[j]) * pr.dir.muprime[j] * Rational(factorial(t.Nprime[j])) * q0fn(ctx);
    }
    parts[i] = sign(cd.B) * cd.factN * cd.zprod * js / cd.A;
  });
  return std::accumulate(parts.begin(), parts.end(), Rational(0));
}

}  // namespace

Rational value_at(const Problem& pr) { return value_sum(pr, &q0); }

Rational value_at_printed(const Problem& pr) { return value_sum(pr, &q0_printed); }

namespace {

// Enumerates u = (u_q)_{q != j}, |u_q| = N'_q, with weight
// prod_q multinom(N'_q; u_q) prod_p c_{q,p}^{u_{q,p}} and R = N + u(.).
template <class Fn>
void for_each_u(const Problem& pr, unsigned j, Fn&& fn) {
  const auto& s = pr.spec;
  const auto& t = pr.target;
  std::vector<unsigned> qs;
  for (unsigned q = 0; q < s.Q; ++q) {
    if (q != j) qs.push_back(q);
  }
  MultiIndex R = t.N;
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t i, const Rational& w) {
    if (i == qs.size()) {
      fn(R, w);
      return;
    }
    const unsigned q = qs[i];
    for_each_composition(t.Nprime[q], s.P, [&](const MultiIndex& u) {
      Rational wq = w * multinomial(t.Nprime[q], u);
      for (unsigned p = 0; p < s.P; ++p) {
        wq *= ipow(s.c[q][p], u[p]);
        R[p] += u[p];
      }
      rec(i + 1, wq);
      for (unsigned p = 0; p < s.P; ++p) R[p] -= u[p];
      return true;
    });
  };
  rec(0, Rational(1));
}

// Value part of the Barnes derivative in the j-th linear form, as in Z4.
Rational barnes_shape_value(const Problem& pr, unsigned j, const MultiIndex& R) {
  const auto& s = pr.spec;
  const unsigned m = pr.target.Nprime[j];
  Rational acc = 0;
  for (unsigned mask = 0; mask + 1 < (1U << s.P); ++mask) {
    const auto sp = split(mask, s.P);
    unsigned B = m + static_cast<unsigned>(sp.in.size());
    Rational pre = 1;
    for (unsigned p : sp.in) {
      B += R[p];
      pre *= ipow(s.c[j][p], -static_cast<long>(R[p]) - 1) * Rational(factorial(R[p]));
    }
    pre *= sign(B - m);
    Rational inner = 0;
    for_each_composition(B, static_cast<unsigned>(sp.out.size()), [&](const MultiIndex& k) {
      Rational t = 1;
      for (std::size_t i = 0; i < sp.out.size(); ++i) {
        const unsigned p = sp.out[i];
        t *= ipow(s.c[j][p], k[i]) * hurwitz_zeta_neg(R[p] + k[i], s.d[p]) / Rational(factorial(k[i]));
      }
      inner += t;
      return true;
    });
    acc += pre * inner;
  }
  return acc;
}

}  // namespace

KValue derivative_at(const Problem& pr, ZBlocks* blocks) {
  validate(pr);
  check_dims(pr.spec);
  const auto& s = pr.spec;
  const auto& t = pr.target;
  const auto& dir = pr.dir;
  const KValue gamma = KValue::of(Atom::gamma());

  // Z1 and Z2 over the closed cells.
  const auto cells = closed_cells(pr);
  std::vector<KValue> z1p(cells.size()), z2p(cells.size());
  parallel_for(cells.size(), [&](std::size_t i) {
    const auto& cell = cells[i];
    const auto cd = cell_data(pr, cell);
    // sum_i mu_i zeta'(-N_i - k_i, d_i)/k_i! prod_{others} zeta/k!
    KValue zderiv;
    for (std::size_t a = 0; a < cd.sp.out.size(); ++a) {
      const unsigned pa = cd.sp.out[a];
      if (dir.mu[pa] == 0) continue;
      Rational others = 1;
      for (std::size_t b = 0; b < cd.sp.out.size(); ++b) {
        if (b == a) continue;
        const unsigned pb = cd.sp.out[b];
        others *= hurwitz_zeta_neg(t.N[pb] + cell.k[b], s.d[pb]) / Rational(factorial(cell.k[b]));
      }
      if (others == 0) continue;
      zderiv += kv_zph(t.N[pa] + cell.k[a], s.d[pa]) * (dir.mu[pa] * others / Rational(factorial(cell.k[a])));
    }
    KValue pbracket;  // sum_{p in P} mu_p (gamma - h_{N_p})
    for (unsigned p : cd.sp.in) pbracket += (gamma - KValue(harmonic(t.N[p]))) * dir.mu[p];

    QContext ctx{&pr, 0, cd.sp.in, cell.k};
    for (unsigned j = 0; j < s.Q; ++j) {
      ctx.j = j;
      const Rational w = sign(cd.B + t.Nprime[j]) * cd.factN * dir.muprime[j] * Rational(factorial(t.Nprime[j])) / cd.A;
      const Rational q0v = q0(ctx);
      if (cd.zprod != 0) {
        KValue bracket = q1(ctx) + (pbracket + (gamma - KValue(harmonic(t.Nprime[j]))) * dir.muprime[j]) * q0v;
        z1p[i] += bracket * (w * cd.zprod);
      }
      if (q0v != 0 && !zderiv.is_zero()) z2p[i] += zderiv * (w * q0v);
    }
  });
  ZBlocks zb;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    zb.z1 += z1p[i];
    zb.z2 += z2p[i];
  }

  // Z3 and Z4 from the Barnes-shaped part.
  std::vector<KValue> z3p(s.Q), z4p(s.Q);
  parallel_for(s.Q, [&](std::size_t jj) {
    const auto j = static_cast<unsigned>(jj);
    std::map<MultiIndex, std::pair<KValue, Rational>> cache;
    KValue z3, z4;
    for_each_u(pr, j, [&](const MultiIndex& R, const Rational& w) {
      auto it = cache.find(R);
      if (it == cache.end()) {
        it = cache
                 .emplace(R, std::make_pair(barnes_derivative(R, t.Nprime[j], s.d, s.c[j]), barnes_shape_value(pr, j, R)))
                 .first;
      }
      z3 += it->second.first * (dir.muprime[j] * w);
      z4 += (gamma - KValue(harmonic(t.Nprime[j]))) *
            (dir.muprime[j] * Rational(factorial(t.Nprime[j])) * w * it->second.second);
    });
    z3p[j] = std::move(z3);
    z4p[j] = std::move(z4);
  });
  for (unsigned j = 0; j < s.Q; ++j) {
    zb.z3 += z3p[j];
    zb.z4 += z4p[j];
  }
  KValue out = zb.z1 + zb.z2 + zb.z3 - zb.z4;
  if (blocks != nullptr) *blocks = std::move(zb);
  return out;
}

DirectionalResult evaluate(const Problem& pr) {
  DirectionalResult r;
  r.value = value_at(pr);
  r.derivative = derivative_at(pr, &r.blocks);
  return r;
}

// ---------------------------------------------------------------------------
// Singular set

namespace {

Integer floor_q(const Rational& r) {
  const Integer n = num(r), d = den(r);
  Integer q = n / d;
  if (n % d != 0 && n < 0) q -= 1;
  return q;
}

Integer ceil_q(const Rational& r) { return -floor_q(-r); }

bool in_first_family(const Problem& pr, const Rational& s0) {
  for (unsigned p = 0; p < pr.spec.P; ++p) {
    if (pr.dir.mu[p] == 0) continue;
    const Rational m = s0 * pr.dir.mu[p];
    if (is_integer(m) && m >= Rational(pr.target.N[p] + 1)) return true;
  }
  return false;
}

}  // namespace

std::vector<Rational> singularities(const Problem& pr, const Rational& lo, const Rational& hi) {
  validate(pr);
  check_dims(pr.spec);
  const auto& t = pr.target;
  std::vector<Rational> pts;
  for (unsigned p = 0; p < pr.spec.P; ++p) {
    const Rational& mu = pr.dir.mu[p];
    if (mu == 0) continue;
    Integer a = std::max(Integer(t.N[p] + 1), ceil_q(lo * mu));
    for (Integer m = a; m <= floor_q(hi * mu); ++m) pts.push_back(Rational(m) / mu);
  }
  const Rational mup = rsum(pr.dir.muprime);
  for (unsigned mask = 0; mask < (1U << pr.spec.P); ++mask) {
    const auto sp = split(mask, pr.spec.P);
    Rational A = mup;
    long B = static_cast<long>(total(t.Nprime) + sp.in.size());
    for (unsigned p : sp.in) {
      A += pr.dir.mu[p];
      B += t.N[p];
    }
    const Integer top = std::min(Integer(B), floor_q(hi * A));
    for (Integer m = ceil_q(lo * A); m <= top; ++m) {
      if (m != 0) pts.push_back(Rational(m) / A);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double distance_to_singularities(const Problem& pr, double s) {
  if (!std::isfinite(s)) throw DomainError("s must be finite");
  const long f = static_cast<long>(std::floor(s));
  double best = 2;
  for (const auto& x : singularities(pr, Rational(f - 3), Rational(f + 4))) best = std::min(best, std::abs(s - to_double(x)));
  return best;
}

double theta_bound(const HurwitzSpec& spec) {
  validate(spec);
  double M = 0, dmax = 0, dmin = 1e300;
  for (const auto& row : spec.c) {
    for (const auto& x : row) M = std::max(M, to_double(x));
  }
  for (const auto& x : spec.d) {
    dmax = std::max(dmax, to_double(x));
    dmin = std::min(dmin, to_double(x));
  }
  const double r = std::max({2.0, dmax, 1.0 / dmin});
  return 1.0 / (spec.Q * M * r * r);
}

double default_theta(const HurwitzSpec& spec) { return theta_bound(spec) / 4; }

// ---------------------------------------------------------------------------
// h-functions

HValues h_eval(const Problem& pr, const std::vector<unsigned>& pset, unsigned j, const std::vector<MultiIndex>& ks,
               double s, const QuadOptions& opt, const std::vector<double>& scales) {
  validate(pr);
  check_dims(pr.spec);
  const auto& sp = pr.spec;
  const unsigned P = sp.P, Q = sp.Q;
  if (j >= Q) throw DomainError("h_eval: j out of range");
  const auto out = complement_of(pset, P);
  if (ks.empty()) throw DomainError("h_eval: no k requested");
  for (const auto& k : ks) {
    if (k.size() != out.size()) throw DomainError("h_eval: k must be indexed by the complement of Pset");
  }
  if (!scales.empty() && scales.size() != ks.size()) throw DomainError("h_eval: scales length mismatch");

  std::vector<unsigned> axes;
  for (unsigned q = 0; q < Q; ++q) {
    if (q != j) axes.push_back(q);
  }
  const std::size_t dim = axes.size();
  if (dim > 4) throw DomainError("h_eval: at most 4 integration variables are supported");
  std::vector<double> inv(dim, 1.0), exps(dim, 0.0);
  double pref = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    const unsigned q = axes[i];
    const double sq = -static_cast<double>(pr.target.Nprime[q]) + to_double(pr.dir.muprime[q]) * s;
    if (!(sq > 0)) {
      std::ostringstream os;
      os << "h-function integral diverges: exponent of x" << q + 1 << " is " << sq - 1 << " at s = " << s;
      throw DomainError(os.str());
    }
    if (sq < 1) {
      inv[i] = 1 / sq;
      pref /= std::tgamma(sq + 1);
    } else {
      exps[i] = sq - 1;
      pref *= rgamma(sq);
    }
  }
  std::vector<double> ein;
  for (unsigned p : pset) ein.push_back(-static_cast<double>(pr.target.N[p]) + to_double(pr.dir.mu[p]) * s - 1);
  unsigned kmax = 0;
  for (const auto& k : ks) {
    for (unsigned e : k) kmax = std::max(kmax, e);
  }
  std::vector<std::vector<double>> c(Q, std::vector<double>(P));
  for (unsigned q = 0; q < Q; ++q) {
    for (unsigned p = 0; p < P; ++p) c[q][p] = to_double(sp.c[q][p]);
  }
  const std::size_t m = ks.size();

  auto g = [&](const double* t, double* res) {
    std::array<double, kMaxDim> xh{}, l{};
    xh[j] = 1;
    for (std::size_t i = 0; i < dim; ++i) xh[axes[i]] = inv[i] == 1.0 ? t[i] : std::pow(t[i], inv[i]);
    for (unsigned p = 0; p < P; ++p) {
      double v = 0;
      for (unsigned q = 0; q < Q; ++q) v += c[q][p] * xh[q];
      l[p] = v;
    }
    double base = 1;
    for (std::size_t i = 0; i < pset.size(); ++i) base *= std::pow(l[pset[i]], ein[i]);
    thread_local std::vector<double> pw;
    pw.assign(out.size() * (kmax + 1), 1.0);
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (unsigned e = 1; e <= kmax; ++e) pw[i * (kmax + 1) + e] = pw[i * (kmax + 1) + e - 1] * l[out[i]];
    }
    for (std::size_t r = 0; r < m; ++r) {
      double v = base;
      for (std::size_t i = 0; i < out.size(); ++i) v *= pw[i * (kmax + 1) + ks[r][i]];
      res[r] = scales.empty() ? v : v * scales[r];
    }
  };

  HValues hv;
  if (dim == 0) {
    hv.value.assign(m, 0.0);
    g(nullptr, hv.value.data());
    hv.error.assign(m, 0.0);
    hv.converged = true;
  } else {
    auto res = quad_cube_weighted(g, static_cast<int>(m), exps, opt);
    hv.value = std::move(res.value);
    hv.error = std::move(res.error);
    hv.converged = res.converged;
  }
  for (std::size_t r = 0; r < m; ++r) {
    const double sc = scales.empty() ? 1.0 : scales[r];
    hv.value[r] *= pref / sc;
    hv.error[r] *= std::abs(pref / sc);
  }
  return hv;
}

std::vector<double> default_oracle_samples() { return {0.4, 0.2, 0.1, 0.05, 0.025}; }

HOracle h_oracle(const QContext& ctx, const std::vector<double>& samples) {
  ctx.validate();
  for (unsigned n : ctx.problem->target.Nprime) {
    if (n != 0) throw DomainError("h_oracle requires N' = 0");
  }
  if (samples.size() < 2) throw DomainError("h_oracle needs at least two samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i] > 0)) throw DomainError("h_oracle samples must be > 0");
    for (std::size_t k = 0; k < i; ++k) {
      if (samples[k] == samples[i]) throw DomainError("h_oracle samples must be distinct");
    }
  }
  HOracle o;
  o.samples = samples;
  QuadOptions opt{1e-15, 1e-13, 40'000'000};
  for (double s : samples) {
    auto hv = h_eval(*ctx.problem, ctx.pset, ctx.j, {ctx.k}, s, opt);
    o.values.push_back(hv.value[0]);
  }
  // Lagrange basis at x = 0 and its derivative.
  const std::size_t n = samples.size();
  for (std::size_t i = 0; i < n; ++i) {
    double li = 1, dsum = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      li *= -samples[k] / (samples[i] - samples[k]);
      dsum += -1.0 / samples[k];
    }
    const double dli = li * dsum;
    o.h0 += li * o.values[i];
    o.h0prime += dli * o.values[i];
    o.condition += std::abs(dli);
  }
  return o;
}

// ---------------------------------------------------------------------------
// Continuation

namespace {

struct Setup {
  const Problem& pr;
  unsigned P, Q;
  std::vector<double> mu, mup, N, Np, d;
  std::vector<std::vector<double>> c;
  double s;
  std::vector<double> sp, sq;  // s_p = -N_p + mu_p s, s'_q = -N'_q + mu'_q s

  Setup(const Problem& p, double s_) : pr(p), P(p.spec.P), Q(p.spec.Q), s(s_) {
    for (unsigned i = 0; i < P; ++i) {
      mu.push_back(to_double(p.dir.mu[i]));
      N.push_back(p.target.N[i]);
      d.push_back(to_double(p.spec.d[i]));
      sp.push_back(-N[i] + mu[i] * s);
    }
    for (unsigned q = 0; q < Q; ++q) {
      mup.push_back(to_double(p.dir.muprime[q]));
      Np.push_back(p.target.Nprime[q]);
      sq.push_back(-Np[q] + mup[q] * s);
      std::vector<double> row;
      for (unsigned i = 0; i < P; ++i) row.push_back(to_double(p.spec.c[q][i]));
      c.push_back(std::move(row));
    }
  }
};

double zeta_real(double s, double d) { return zeta_em(Real(s), Real(d)).convert_to<double>(); }

struct JOut {
  double value = 0;
  unsigned k_terms = 0;
  double tail = 0;
  bool converged = true;
};

JOut j_part(const Setup& su, double theta, const ContinuationParams& prm) {
  const double pi = boost::math::constants::pi<double>();
  double M = 0;
  for (const auto& row : su.c) {
    for (double x : row) M = std::max(M, x);
  }
  const double ratio = theta * su.Q * M / (2 * pi);
  unsigned kmax = static_cast<unsigned>(std::ceil(std::log(prm.tol) / std::log(ratio))) + 3;
  kmax = std::min(kmax, prm.k_max);

  // zeta(s_p - k, d_p)/k! for p in any complement
  std::vector<std::vector<double>> zt(su.P, std::vector<double>(kmax + 1));
  for (unsigned p = 0; p < su.P; ++p) {
    double kf = 1;
    for (unsigned k = 0; k <= kmax; ++k) {
      if (k > 0) kf *= k;
      zt[p][k] = zeta_real(su.sp[p] - k, su.d[p]) / kf;
    }
  }
  const double mup_tot = std::accumulate(su.mup.begin(), su.mup.end(), 0.0);
  const double np_tot = std::accumulate(su.Np.begin(), su.Np.end(), 0.0);
  std::vector<double> shell(kmax + 1, 0.0);
  JOut jo;
  double full = 0;
  for (unsigned mask = 0; mask < (1U << su.P); ++mask) {
    const auto spl = split(mask, su.P);
    double A = mup_tot, B = np_tot + spl.in.size(), gam = 1;
    for (unsigned p : spl.in) {
      A += su.mu[p];
      B += su.N[p];
      gam *= std::tgamma(1 + su.N[p] - su.mu[p] * su.s);
    }
    const bool is_full = spl.out.empty();
    std::vector<MultiIndex> ks;
    std::vector<double> scales;
    if (is_full) {
      ks.push_back({});
    } else {
      for (unsigned K = 0; K <= kmax; ++K) {
        for_each_composition(K, static_cast<unsigned>(spl.out.size()), [&](const MultiIndex& k) {
          ks.push_back(k);
          scales.push_back(std::pow(theta, K));
          return true;
        });
      }
    }
    for (unsigned j = 0; j < su.Q; ++j) {
      const double rg = rgamma(su.sq[j]);
      if (rg == 0) continue;
      auto hv = h_eval(su.pr, spl.in, j, ks, su.s, prm.quad, scales);
      if (!hv.converged) jo.converged = false;
      for (std::size_t r = 0; r < ks.size(); ++r) {
        const unsigned K = total(ks[r]);
        const double e = A * su.s - B + K;
        double term = gam * std::pow(theta, e) * hv.value[r] * rg / e;
        if (is_full) {
          full += term;
          continue;
        }
        for (std::size_t i = 0; i < spl.out.size(); ++i) term *= zt[spl.out[i]][ks[r][i]];
        if (K % 2) term = -term;
        shell[K] += term;
      }
    }
  }
  jo.value = full;
  for (double x : shell) jo.value += x;
  jo.k_terms = kmax;
  jo.tail = std::abs(shell[kmax]) + (kmax > 0 ? std::abs(shell[kmax - 1]) : 0.0);
  if (jo.tail > 10 * prm.tol * std::max(1.0, std::abs(jo.value))) jo.converged = false;
  return jo;
}

struct KOut {
  double value = 0;
  unsigned shells = 0;
  bool converged = true;
};

KOut k_part(const Setup& su, double theta, const ContinuationParams& prm) {
  const unsigned P = su.P, Q = su.Q;
  std::vector<double> rg(Q), dq(Q, 0.0), cmin(Q, 1e300);
  double smax = 0;
  for (unsigned q = 0; q < Q; ++q) {
    rg[q] = rgamma(su.sq[q]);
    for (unsigned p = 0; p < P; ++p) {
      dq[q] += su.c[q][p] * su.d[p];
      cmin[q] = std::min(cmin[q], su.c[q][p]);
    }
    smax = std::max(smax, std::abs(su.sq[q]));
  }
  for (double x : su.sp) smax = std::max(smax, std::abs(x));

  auto point = [&](const MultiIndex& n) {
    double base = 1;
    for (unsigned p = 0; p < P; ++p) base *= std::pow(n[p] + su.d[p], -su.sp[p]);
    double prod_a = 1, tele = 0, carry = 1;
    for (unsigned q = 0; q < Q; ++q) {
      double nu = 0;
      for (unsigned p = 0; p < P; ++p) nu += su.c[q][p] * (n[p] + su.d[p]);
      prod_a *= std::pow(nu, -su.sq[q]);
      const double x = nu * theta;
      const double g = (rg[q] == 0 || x > 745) ? 0.0 : upper_gamma_classic(su.sq[q], x) * rg[q];
      tele += carry * g;
      carry *= 1 - g;
    }
    return base * prod_a * tele;
  };
  auto shell_sum = [&](unsigned L) {
    double acc = 0;
    for_each_composition(L, P, [&](const MultiIndex& n) {
      acc += point(n);
      return true;
    });
    return acc;
  };

  KOut ko;
  constexpr unsigned kBatch = 16;
  std::vector<double> part(kBatch);
  for (unsigned L0 = 0;; L0 += kBatch) {
    parallel_for(kBatch, [&](std::size_t i) { part[i] = shell_sum(L0 + static_cast<unsigned>(i)); });
    for (double x : part) ko.value += x;
    ko.shells = L0 + kBatch;
    double xmin = 1e300;
    for (unsigned q = 0; q < Q; ++q) xmin = std::min(xmin, theta * (cmin[q] * ko.shells + dq[q]));
    // bound on the remaining shells: e^{-x} x^{smax + P} dominates every tail term
    const double bound = std::exp(-xmin) * std::pow(xmin, smax + P + 1);
    if (xmin > 1 && bound < prm.tol * std::max(std::abs(ko.value), 1e-30)) break;
    if (ko.shells >= prm.n_max) {
      ko.converged = false;
      break;
    }
  }
  return ko;
}

ContinuationResult direct_eval(const Problem& pr, double s, double theta, const ContinuationParams& prm) {
  Setup su(pr, s);
  const auto jo = j_part(su, theta, prm);
  const auto ko = k_part(su, theta, prm);
  ContinuationResult r;
  r.j_part = jo.value;
  r.k_part = ko.value;
  r.value = jo.value + ko.value;
  r.theta = theta;
  r.k_terms = jo.k_terms;
  r.shells = ko.shells;
  r.error = jo.tail;
  r.converged = jo.converged && ko.converged;
  return r;
}

void check_admissible(const Problem& pr, double s) {
  if (pr.spec.Q < 2) return;
  for (unsigned q = 0; q < pr.spec.Q; ++q) {
    const double sq = -static_cast<double>(pr.target.Nprime[q]) + to_double(pr.dir.muprime[q]) * s;
    if (!(sq > 0)) {
      std::ostringstream os;
      os << "s = " << s << " makes the h-function integrals diverge (-N'" << q + 1 << " + mu'" << q + 1
         << " s <= 0); choose a larger s";
      throw DomainError(os.str());
    }
  }
}

}  // namespace

ContinuationResult continuation_eval(const Problem& pr, double s, const ContinuationParams& prm) {
  validate(pr);
  check_dims(pr.spec);
  if (!std::isfinite(s)) throw DomainError("s must be finite");
  const double bound = theta_bound(pr.spec);
  const double theta = prm.theta > 0 ? prm.theta : default_theta(pr.spec);
  if (!(theta < bound)) {
    std::ostringstream os;
    os << "theta = " << theta << " is not below the convergence bound " << bound;
    throw DomainError(os.str());
  }
  if (!(prm.tol > 0) || !(prm.delta > 0)) throw DomainError("tol and delta must be > 0");
  const double dist = distance_to_singularities(pr, s);
  if (dist >= prm.delta) {
    check_admissible(pr, s);
    return direct_eval(pr, s, theta, prm);
  }
  if (!prm.finite_part) {
    std::ostringstream os;
    os.precision(17);
    os << "s = " << s << " lies within " << prm.delta << " of the singular set (distance " << dist << ")";
    throw DomainError(os.str());
  }
  // Symmetric finite part: average f(s + h), f(s - h), Richardson in h^2.
  const long f = static_cast<long>(std::floor(s));
  double other = 2;
  for (const auto& x : singularities(pr, Rational(f - 3), Rational(f + 4))) {
    const double dx = std::abs(s - to_double(x));
    if (dx > dist) other = std::min(other, dx);
  }
  const double h0 = std::min(0.1, other / 8);
  constexpr int kLevels = 4;
  std::array<std::array<double, kLevels>, kLevels> T{};
  ContinuationResult r;
  r.converged = true;
  r.theta = theta;
  for (int i = 0; i < kLevels; ++i) {
    const double h = h0 / std::ldexp(1.0, i);
    check_admissible(pr, s - h);
    const auto a = direct_eval(pr, s + h, theta, prm);
    const auto b = direct_eval(pr, s - h, theta, prm);
    r.converged = r.converged && a.converged && b.converged;
    r.k_terms = std::max({r.k_terms, a.k_terms, b.k_terms});
    r.shells = std::max({r.shells, a.shells, b.shells});
    T[i][0] = (a.value + b.value) / 2;
    if (i == kLevels - 1) {
      r.j_part = (a.j_part + b.j_part) / 2;
      r.k_part = (a.k_part + b.k_part) / 2;
    }
    double f4 = 1;
    for (int m = 1; m <= i; ++m) {
      f4 *= 4;
      T[i][m] = (f4 * T[i][m - 1] - T[i - 1][m - 1]) / (f4 - 1);
    }
  }
  r.value = T[kLevels - 1][kLevels - 1];
  r.error = std::abs(r.value - T[kLevels - 1][kLevels - 2]);
  r.finite_part = true;
  return r;
}

// ---------------------------------------------------------------------------
// Residues

ResidueResult residue_at(const Problem& pr, const Rational& s0, const ContinuationParams& prm) {
  validate(pr);
  check_dims(pr.spec);
  if (s0 == 0) throw DomainError("s0 = 0 is a regular point");
  if (in_first_family(pr, s0)) {
    throw DomainError("s0 = " + to_string(s0) + " meets a Gamma/zeta pole family; only simple poles of the second family are supported");
  }
  const double s = to_double(s0);
  check_admissible(pr, s);
  Setup su(pr, s);
  const auto& t = pr.target;
  const Rational mup = rsum(pr.dir.muprime);

  struct Job {
    std::vector<unsigned> in, out;
    MultiIndex k;
    double A;
    double gam;
  };
  std::vector<Job> jobs;
  for (unsigned mask = 0; mask < (1U << su.P); ++mask) {
    const auto spl = split(mask, su.P);
    Rational A = mup;
    long B = static_cast<long>(total(t.Nprime) + spl.in.size());
    double gam = 1;
    for (unsigned p : spl.in) {
      A += pr.dir.mu[p];
      B += t.N[p];
      gam *= std::tgamma(1 + su.N[p] - su.mu[p] * s);
    }
    const Rational kk = Rational(B) - A * s0;  // |k| making the denominator vanish
    if (!is_integer(kk) || kk < 0) continue;
    if (spl.out.empty()) {
      if (kk == 0) jobs.push_back({spl.in, spl.out, {}, to_double(A), gam});
      continue;
    }
    for_each_composition(num(kk).convert_to<unsigned>(), static_cast<unsigned>(spl.out.size()), [&](const MultiIndex& k) {
      jobs.push_back({spl.in, spl.out, k, to_double(A), gam});
      return true;
    });
  }
  if (jobs.empty()) throw DomainError("s0 = " + to_string(s0) + " is not a pole of the continuation");

  auto run = [&](const QuadOptions& opt, std::vector<ResidueTerm>* terms) {
    double total_v = 0;
    for (const auto& jb : jobs) {
      double zp = 1;
      for (std::size_t i = 0; i < jb.out.size(); ++i) {
        const unsigned p = jb.out[i];
        zp *= zeta_real(su.sp[p] - jb.k[i], su.d[p]) / std::tgamma(jb.k[i] + 1.0);
      }
      if (total(jb.k) % 2) zp = -zp;
      for (unsigned j = 0; j < su.Q; ++j) {
        const double rg = rgamma(su.sq[j]);
        if (rg == 0) continue;
        const auto hv = h_eval(pr, jb.in, j, {jb.k}, s, opt);
        if (!hv.converged) throw DomainError("residue_at: quadrature did not converge");
        const double v = zp * jb.gam * hv.value[0] * rg / jb.A;
        total_v += v;
        if (terms != nullptr) terms->push_back({jb.in, j, jb.k, v});
      }
    }
    return total_v;
  };
  ResidueResult rr;
  QuadOptions coarse = prm.quad;
  coarse.abs_tol = std::max(coarse.abs_tol * 1e3, 1e-11);
  coarse.rel_tol = std::max(coarse.rel_tol * 1e3, 1e-9);
  rr.coarse = run(coarse, nullptr);
  rr.value = run(prm.quad, &rr.terms);
  return rr;
}

}  // namespace dirzeta
