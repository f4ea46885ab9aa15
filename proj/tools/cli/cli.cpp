// SPDX-License-Identifier: MIT
#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "../checks/checks.hpp"
#include "dirzeta/barnes.hpp"
#include "dirzeta/directional.hpp"
#include "dirzeta/parallel.hpp"
#include "dirzeta/qengine.hpp"
#include "dirzeta/witten.hpp"

namespace dirzeta::cli {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string spec;
  std::string preset;
  int digits = 30;
  std::string format = "json";
  std::string out;
};

void add_common(CLI::App* sub, Common& c, bool with_input) {
  if (with_input) {
    auto* s = sub->add_option("--spec", c.spec, "JSON configuration file");
    auto* p = sub->add_option("--preset", c.preset, "so5 or g2");
    s->excludes(p);
  }
  sub->add_option("--digits", c.digits, "significant digits of numeric output (15..50)")->check(CLI::Range(15, 50));
  sub->add_option("--format", c.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--out", c.out, "write the result to this file");
}

Problem load_input(const Common& c) {
  if (c.spec.empty() && c.preset.empty()) throw UsageError("one of --spec or --preset is required");
  return c.spec.empty() ? preset_problem(c.preset) : load_spec(c.spec);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  if (text.empty()) return parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  return parts;
}

std::vector<Rational> rational_list(const std::string& flag, const std::string& text) {
  std::vector<Rational> v;
  for (const auto& s : split_list(text)) {
    try {
      v.push_back(parse_rational(s));
    } catch (const ParseError& e) {
      throw UsageError(flag + ": " + e.what());
    }
  }
  return v;
}

MultiIndex index_list(const std::string& flag, const std::string& text) {
  MultiIndex v;
  for (const auto& r : rational_list(flag, text)) {
    if (!is_integer(r) || r < 0) throw UsageError(flag + ": entries must be nonnegative integers");
    v.push_back(num(r).convert_to<unsigned>());
  }
  return v;
}

double number_arg(const std::string& flag, const std::string& text) {
  try {
    return to_double(parse_rational(text));
  } catch (const ParseError&) {
  }
  try {
    std::size_t pos = 0;
    const double x = std::stod(text, &pos);
    if (pos == text.size() && std::isfinite(x)) return x;
  } catch (const std::exception&) {
  }
  throw UsageError(flag + ": expected a number or p/q, got '" + text + "'");
}

std::string real_text(const Real& x, int digits) { return x.str(digits, std::ios_base::fmtflags(0)); }

std::string double_text(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", std::min(digits, 17), x);
  return buf;
}

// Emits either the JSON document or its text rendering.
void emit(const Common& c, std::ostream& out, const json& doc, const std::string& text) {
  const std::string body = (c.format == "json" ? doc.dump() : text) + "\n";
  if (c.out.empty()) {
    out << body;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw DomainError("cannot open '" + c.out + "' for writing");
  f << body;
}

json kv_json(const KValue& v) { return json::parse(kv_to_json(v)); }

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Special values of generalized Hurwitz multizeta functions", "dirzeta"};
  app.require_subcommand(1);

  Common c;
  bool numeric = false, blocks = false, finite_part = false, want_value = false, want_derivative = false,
       constants = false;
  std::string s_text, theta_text, at_text, pset_text, k_text, R_text, d_text, w_text, algebra, what, mode = "exact",
                                                                                               check = "all";
  unsigned j_index = 1, m_value = 0;
  unsigned long n_value = 0, stride = 0;

  auto* value = app.add_subcommand("value", "directional value at -(N, N')");
  add_common(value, c, true);

  auto* derivative = app.add_subcommand("derivative", "directional derivative value in the canonical basis");
  add_common(derivative, c, true);
  derivative->add_flag("--numeric", numeric, "include the numeric value");
  derivative->add_flag("--blocks", blocks, "include the four blocks of the sum");

  auto* cont = app.add_subcommand("continue", "analytic continuation at real s");
  add_common(cont, c, true);
  cont->add_option("--s", s_text, "real s")->required();
  cont->add_option("--theta", theta_text, "splitting parameter, p/q or decimal");
  cont->add_flag("--finite-part", finite_part, "symmetric finite part near a singular point");

  auto* residue = app.add_subcommand("residue", "residue at a simple pole");
  add_common(residue, c, true);
  residue->add_option("--at", at_text, "pole p/q")->required();
  residue->add_option("--theta", theta_text, "splitting parameter, p/q or decimal");

  auto* qcoeff = app.add_subcommand("qcoeff", "Q0 and Q1 for one (j, P, k)");
  add_common(qcoeff, c, true);
  qcoeff->add_option("--j", j_index, "1-based linear form index")->required();
  qcoeff->add_option("--pset", pset_text, "comma list of 1-based indices (may be empty)");
  qcoeff->add_option("--k", k_text, "comma list over the complement of --pset");

  auto* barnes = app.add_subcommand("barnes", "generalized Barnes zeta at s = -m");
  add_common(barnes, c, false);
  barnes->add_option("--R", R_text, "numerator exponents")->required();
  barnes->add_option("--m", m_value, "nonnegative integer m")->required();
  barnes->add_option("--d", d_text, "shifts")->required();
  barnes->add_option("--w", w_text, "weights (default all 1)");
  auto* bv = barnes->add_flag("--value", want_value, "value (default)");
  auto* bd = barnes->add_flag("--derivative", want_derivative, "derivative in the canonical basis");
  bv->excludes(bd);

  auto* witten = app.add_subcommand("witten", "Witten zeta function at s = 0");
  add_common(witten, c, false);
  witten->add_option("--algebra", algebra, "so5 or g2")->required();
  witten->add_option("--what", what, "value0 or derivative0")
      ->required()
      ->check(CLI::IsMember({"value0", "derivative0"}));

  auto* residues = app.add_subcommand("residues", "residues of the g2 Witten zeta function at 1/3 and 1/5");
  add_common(residues, c, false);
  residues->add_option("--algebra", algebra, "g2")->required();
  residues->add_flag("--constants", constants, "include the asymptotic constants");

  auto* rg2 = app.add_subcommand("rg2", "number of g2 representations of dimension n");
  add_common(rg2, c, false);
  rg2->add_option("--n", n_value, "n >= 1")->required()->check(CLI::PositiveNumber);
  rg2->add_option("--mode", mode, "exact, asymptotic or compare")
      ->check(CLI::IsMember({"exact", "asymptotic", "compare"}));
  rg2->add_option("--stride", stride, "row spacing for compare (default n/200)");

  auto* oracle = app.add_subcommand("oracle", "run independent oracle checks");
  add_common(oracle, c, false);
  oracle->add_option("--check", check, "check name or 'all'")->check(CLI::IsMember(checks::check_names()));
  oracle->add_option("--preset", c.preset, "preset used by preset-specific checks (default so5)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    std::unique_ptr<ThreadLimit> limit;
    try {
      limit = thread_limit_from_env();
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    Precision prec{c.digits};
    prec.validate();

    if (value->parsed()) {
      const Rational v = value_at(load_input(c));
      emit(c, out, json{{"value", to_string(v)}}, to_string(v));
    } else if (derivative->parsed()) {
      ZBlocks zb;
      const KValue d = derivative_at(load_input(c), &zb);
      json doc{{"derivative", kv_json(d)}};
      std::string text = kv_to_text(d);
      if (blocks) {
        doc["blocks"] = json{{"z1", kv_json(zb.z1)}, {"z2", kv_json(zb.z2)}, {"z3", kv_json(zb.z3)},
                             {"z4", kv_json(zb.z4)}};
        text += "\nz1: " + kv_to_text(zb.z1) + "\nz2: " + kv_to_text(zb.z2) + "\nz3: " + kv_to_text(zb.z3) +
                "\nz4: " + kv_to_text(zb.z4);
      }
      if (numeric) {
        const std::string n = real_text(kv_eval(d, prec), c.digits);
        doc["numeric"] = n;
        text += "\n= " + n;
      }
      emit(c, out, doc, text);
    } else if (cont->parsed()) {
      const Problem pr = load_input(c);
      ContinuationParams prm;
      if (!theta_text.empty()) prm.theta = number_arg("--theta", theta_text);
      prm.finite_part = finite_part;
      const double s = number_arg("--s", s_text);
      const auto r = continuation_eval(pr, s, prm);
      json doc{{"s", s},           {"value", r.value},         {"j_part", r.j_part},
               {"k_part", r.k_part}, {"theta", r.theta},       {"k_terms", r.k_terms},
               {"shells", r.shells}, {"error", r.error},       {"converged", r.converged},
               {"finite_part", r.finite_part}};
      emit(c, out, doc, double_text(r.value, c.digits));
    } else if (residue->parsed()) {
      const Problem pr = load_input(c);
      Rational at;
      try {
        at = parse_rational(at_text);
      } catch (const ParseError& e) {
        throw UsageError(std::string("--at: ") + e.what());
      }
      ContinuationParams prm;
      if (!theta_text.empty()) prm.theta = number_arg("--theta", theta_text);
      const auto r = residue_at(pr, at, prm);
      json terms = json::array();
      for (const auto& t : r.terms) {
        json ps = json::array();
        for (unsigned p : t.pset) ps.push_back(p + 1);
        terms.push_back({{"pset", ps}, {"j", t.j + 1}, {"k", t.k}, {"value", t.value}});
      }
      json doc{{"at", to_string(at)}, {"residue", r.value}, {"coarse", r.coarse}, {"terms", terms}};
      emit(c, out, doc, double_text(r.value, c.digits));
    } else if (qcoeff->parsed()) {
      const Problem pr = load_input(c);
      if (j_index < 1) throw UsageError("--j: indices are 1-based");
      QContext ctx{&pr, j_index - 1, {}, index_list("--k", k_text)};
      for (unsigned p : index_list("--pset", pset_text)) {
        if (p < 1) throw UsageError("--pset: indices are 1-based");
        ctx.pset.push_back(p - 1);
      }
      ctx.validate();
      const Rational a = q0(ctx);
      const KValue b = q1(ctx);
      json doc{{"q0", to_string(a)}, {"q1", kv_json(b)}, {"q1_numeric", real_text(kv_eval(b, prec), c.digits)}};
      emit(c, out, doc, "Q0 = " + to_string(a) + "\nQ1 = " + kv_to_text(b));
    } else if (barnes->parsed()) {
      const MultiIndex R = index_list("--R", R_text);
      const auto d = rational_list("--d", d_text);
      auto w = rational_list("--w", w_text);
      if (w.empty()) w.assign(d.size(), Rational(1));
      if (want_derivative) {
        const KValue v = barnes_derivative(R, m_value, d, w);
        const std::string n = real_text(kv_eval(v, prec), c.digits);
        emit(c, out, json{{"derivative", kv_json(v)}, {"numeric", n}}, kv_to_text(v) + "\n= " + n);
      } else {
        const Rational v = barnes_value(R, m_value, d, w);
        emit(c, out, json{{"value", to_string(v)}}, to_string(v));
      }
    } else if (witten->parsed()) {
      if (what == "value0") {
        const Rational v = witten_value0(algebra);
        emit(c, out, json{{"value", to_string(v)}}, to_string(v));
      } else {
        const KValue v = witten_derivative0(algebra);
        const std::string n = real_text(kv_eval(v, prec), c.digits);
        emit(c, out, json{{"derivative", kv_json(v)}, {"numeric", n}}, kv_to_text(v) + "\n= " + n);
      }
    } else if (residues->parsed()) {
      if (algebra != "g2") throw DomainError("residues: only the g2 algebra has tabulated poles");
      json doc;
      std::ostringstream text;
      if (constants) {
        const auto m = meinardus_constants();
        doc = json{{"omega_alpha", m.omega_alpha}, {"omega_beta", m.omega_beta}, {"alpha", to_string(m.alpha)},
                   {"beta", to_string(m.beta)},     {"zeta0", to_string(m.zeta0)}, {"zeta_prime0", m.zeta_prime0},
                   {"c1", m.c1},                    {"c2", m.c2},                  {"K2", m.K2},
                   {"K3", m.K3},                    {"A1", m.A1},                  {"A2", m.A2},
                   {"A3", m.A3},                    {"C", m.C},                    {"b", to_string(m.b)}};
        for (const auto& [k, v] : doc.items()) text << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      } else {
        const auto r = residues_g2();
        doc = json{{"omega_alpha", r.omega_alpha}, {"omega_beta", r.omega_beta}, {"err_alpha", r.err_alpha},
                   {"err_beta", r.err_beta}};
        text << "omega_alpha = " << double_text(r.omega_alpha, c.digits) << "\nomega_beta = "
             << double_text(r.omega_beta, c.digits) << "\n";
      }
      std::string t = text.str();
      t.pop_back();
      emit(c, out, doc, t);
    } else if (rg2->parsed()) {
      if (mode == "exact") {
        const auto r = rg2_exact(n_value);
        emit(c, out, json{{"n", n_value}, {"r", r[n_value].str()}}, r[n_value].str());
      } else if (mode == "asymptotic") {
        const auto m = meinardus_constants();
        const double a = rg2_asymptotic(static_cast<double>(n_value), m);
        emit(c, out, json{{"n", n_value}, {"asymptotic", a}, {"note", "leading factor only, no B_j corrections"}},
             double_text(a, c.digits));
      } else {
        const auto m = meinardus_constants();
        const auto r = rg2_exact(n_value);
        const unsigned long step = stride ? stride : std::max<unsigned long>(1, n_value / 200);
        std::ostringstream csv;
        csv << "# leading factor only, no B_j corrections\nn,exact,asymptotic,log_error";
        for (unsigned long n = step; n <= n_value; n += step) {
          const double le = log(Real(r[n])).convert_to<double>() - rg2_log_asymptotic(static_cast<double>(n), m);
          csv << "\n" << n << "," << r[n].str() << "," << double_text(rg2_asymptotic(static_cast<double>(n), m), 12)
              << "," << double_text(le, 12);
        }
        Common raw = c;
        raw.format = "text";
        emit(raw, out, json{}, csv.str());
      }
    } else if (oracle->parsed()) {
      const auto results = checks::run_named(check, c.preset.empty() ? "so5" : c.preset);
      json arr = json::array();
      std::string text;
      bool all = true;
      for (const auto& r : results) {
        all = all && r.passed;
        arr.push_back({{"name", r.name},
                       {"passed", r.passed},
                       {"max_deviation", r.max_deviation},
                       {"tolerance", r.tolerance},
                       {"detail", r.detail}});
        text += (text.empty() ? "" : "\n") + checks::format_line(r);
      }
      emit(c, out, arr, text);
      return all ? kOk : kDomainError;
    }
    return kOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
}

}  // namespace dirzeta::cli
