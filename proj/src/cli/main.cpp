// Command-line surface. Every subcommand delegates to a library operation,
// prints exactly one JSON object (sorted keys) or a plain-text rendering,
// and maps errors to exit codes: 0 success, 2 domain errors, 1 usage.

#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qsl2/basis2.hpp"
#include "qsl2/config.hpp"
#include "qsl2/errors.hpp"
#include "qsl2/expr.hpp"
#include "qsl2/format.hpp"
#include "qsl2/harish.hpp"
#include "qsl2/indmodule.hpp"
#include "qsl2/limit.hpp"
#include "qsl2/pbw.hpp"
#include "qsl2/uqirrep.hpp"

using json = nlohmann::json;
using namespace qsl2;

namespace {

struct Options {
  Config cfg;
  std::string output = "json";

  bool json_mode() const { return output == "json"; }
  void validated() const { cfg.validate(); }
};

void emit(const Options& opt, const json& j, const std::string& text) {
  if (opt.json_mode()) {
    std::cout << j.dump() << "\n";
  } else {
    std::cout << text << "\n";
  }
}

// ---------------------------------------------------------------------------
// Input plumbing
// ---------------------------------------------------------------------------

GaussRat as_const_gauss(const RatFunc& f) {
  if (f.is_zero()) return GaussRat(0);
  if (f.den_is_one() && f.num.c.size() == 1 && f.num.c.begin()->first == 0)
    return f.num.c.begin()->second;
  throw err("NotInDomain", "expected an exact Gaussian rational, not a function of q");
}

GaussRat parse_gauss(const std::string& s) {
  return as_const_gauss(eval_scalar(parse(s)));
}

Rational parse_q0(const std::string& s) {
  GaussRat g = parse_gauss(s);
  if (g.im != 0) throw err("InvalidParameter", "q must be a real rational");
  return g.re;
}

std::vector<std::pair<int, std::string>> split_vector(const std::string& s) {
  std::vector<std::pair<int, std::string>> out;
  std::size_t k = 0;
  while (k < s.size()) {
    std::size_t comma = s.find(',', k);
    if (comma == std::string::npos) comma = s.size();
    std::string item = s.substr(k, comma - k);
    std::size_t colon = item.find(':');
    if (colon == std::string::npos)
      throw err("InvalidParameter", "vector entries must look like n:coeff");
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(item.substr(0, colon), &used);
    } catch (...) {
      throw err("InvalidParameter", "vector K-type is not an integer");
    }
    if (used != colon)
      throw err("InvalidParameter", "vector K-type is not an integer");
    out.emplace_back(n, item.substr(colon + 1));
    k = comma + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON rendering
// ---------------------------------------------------------------------------

json element1_json(const Element1& e) {
  json arr = json::array();
  for (const auto& [m, c] : e.terms)
    arr.push_back({{"coeff", format_ratfunc(c)}, {"m1", m.m1}, {"m2", m.m2}, {"n", m.n}});
  return arr;
}

json element2_json(const Element2& e) {
  json arr = json::array();
  for (const auto& [m, c] : e.terms)
    arr.push_back({{"coeff", format_ratfunc(c)},
                   {"d", m.d},
                   {"m", m.m},
                   {"n", m.n},
                   {"p", m.p}});
  return arr;
}

json tlaurent_json(const TLaurent& t) {
  json arr = json::array();
  for (const auto& [k, c] : t.c) arr.push_back(json::array({k, format_ratfunc(c)}));
  return arr;
}

json lattice_json(const std::vector<SubmoduleDescriptor>& lat) {
  json arr = json::array();
  for (const auto& d : lat) arr.push_back({{"kind", d.kind}, {"n", d.n}});
  return arr;
}

std::string lattice_text(const std::vector<SubmoduleDescriptor>& lat) {
  std::string s;
  for (const auto& d : lat) {
    if (!s.empty()) s += ", ";
    s += d.kind;
    if (d.kind != "Zero" && d.kind != "All") s += ":" + std::to_string(d.n);
  }
  return s;
}

template <class S, class F>
json series_json(const std::vector<SimpleClass<S>>& series, F&& fmt) {
  json arr = json::array();
  for (const auto& sc : series) {
    json e;
    e["class"] = sc.variant;
    if (sc.variant == "Principal") {
      e["eps"] = sc.eps;
      e["lambda"] = fmt(sc.lambda);
    } else {
      e["n"] = sc.n;
      e["sigma"] = sc.sigma;
    }
    e["unitarizable"] = sc.unitarizable ? json(*sc.unitarizable) : json(nullptr);
    if (!sc.unitary_type.empty()) e["unitary_type"] = sc.unitary_type;
    arr.push_back(std::move(e));
  }
  return arr;
}

template <class S, class F>
std::string series_text(const std::vector<SimpleClass<S>>& series, F&& fmt) {
  std::ostringstream os;
  for (const auto& sc : series) {
    os << "\n  " << sc.variant;
    if (sc.variant == "Principal") {
      os << " eps=" << sc.eps << " lambda=" << fmt(sc.lambda);
    } else {
      os << " sigma=" << sc.sigma << " n=" << sc.n;
    }
    if (sc.unitarizable)
      os << " unitarizable=" << (*sc.unitarizable ? "yes" : "no");
    else
      os << " unitarizable=?";
    if (!sc.unitary_type.empty()) os << " type=" << sc.unitary_type;
  }
  return os.str();
}

template <class S, class F>
void render_classification(const Options& opt, const Classification<S>& c, F&& fmt) {
  json j;
  j["eps"] = c.eps;
  j["lambda"] = fmt(c.lambda);
  j["special"] = c.special ? json({{"n", c.special->second},
                                   {"sigma", c.special->first}})
                           : json(nullptr);
  j["submodules"] = lattice_json(c.lattice);
  j["composition_series"] = series_json(c.series, fmt);

  std::ostringstream os;
  os << "eps=" << c.eps << " lambda=" << fmt(c.lambda) << "\n";
  if (c.special)
    os << "special: sigma=" << c.special->first
       << " exponent=" << c.special->second << "\n";
  else
    os << "special: none\n";
  os << "lattice: " << lattice_text(c.lattice) << "\n";
  os << "series:" << series_text(c.series, fmt);
  emit(opt, j, os.str());
}

json jet_json(const Jet& jt) {
  json coeffs = json::array();
  for (int k = jt.val; k < jt.end(); ++k) coeffs.push_back(format_gauss(jt.at(k)));
  return {{"coeffs", std::move(coeffs)}, {"valuation", jt.is_zero() ? 0 : jt.val}};
}

template <class S, class F>
std::string kvector_text(const KVector<S>& v, F&& fmt) {
  if (v.is_zero()) return "0";
  std::string s;
  for (const auto& [n, c] : v.entries) {
    if (!s.empty()) s += ",";
    s += std::to_string(n) + ":" + fmt(c);
  }
  return s;
}

template <class S, class F>
json kvector_json(const KVector<S>& v, F&& fmt) {
  json arr = json::array();
  for (const auto& [n, c] : v.entries)
    arr.push_back({{"coeff", fmt(c)}, {"n", n}});
  return arr;
}

// ---------------------------------------------------------------------------
// Subcommand bodies
// ---------------------------------------------------------------------------

void run_nf(const Options& opt, int basis, const std::string& expr_s) {
  Expr e = parse(expr_s);
  json j;
  j["basis"] = basis;
  if (basis == 1) {
    Element1 v = eval1(e);
    j["monomials"] = element1_json(v);
    emit(opt, j, format_element1(v));
  } else {
    Element2 v = eval2(e);
    j["monomials"] = element2_json(v);
    emit(opt, j, format_element2(v));
  }
}

void run_comm(const Options& opt, int basis, const std::string& a_s,
              const std::string& b_s) {
  json j;
  j["basis"] = basis;
  if (basis == 1) {
    Element1 a = eval1(parse(a_s)), b = eval1(parse(b_s));
    Element1 v = multiply1(a, b) - multiply1(b, a);
    j["monomials"] = element1_json(v);
    emit(opt, j, format_element1(v));
  } else {
    Element2 a = eval2(parse(a_s)), b = eval2(parse(b_s));
    Element2 v = multiply2(a, b) - multiply2(b, a);
    j["monomials"] = element2_json(v);
    emit(opt, j, format_element2(v));
  }
}

void run_star(const Options& opt, const std::string& expr_s) {
  Element1 v = star1(eval1(parse(expr_s)));
  json j;
  j["basis"] = 1;
  j["monomials"] = element1_json(v);
  emit(opt, j, format_element1(v));
}

void run_central(const Options& opt, const std::string& expr_s) {
  Element1 v = eval1(parse(expr_s));
  json j;
  if (!is_central(v)) {
    j["central"] = false;
    emit(opt, j, "not central");
    return;
  }
  CenterWitness w = center_express(v);
  json poly = json::array();
  std::string text = "central; polynomial in Omega, ascending:";
  for (const RatFunc& c : w.casimir_poly) {
    poly.push_back(format_ratfunc(c));
    text += " " + format_ratfunc(c);
  }
  j["central"] = true;
  j["omega_poly"] = std::move(poly);
  emit(opt, j, text);
}

void run_hc(const Options& opt, const std::string& expr_s) {
  TLaurent t = gamma_tilde(eval1(parse(expr_s)));
  json j;
  j["t_poly"] = tlaurent_json(t);
  emit(opt, j, format_tlaurent(t));
}

void run_act(const Options& opt, int eps, const std::string& lambda_s,
             const std::string& q_s, const std::string& vec_s,
             const std::string& expr_s) {
  Element1 e = eval1(parse(expr_s));
  RatFunc lam = eval_scalar(parse(lambda_s));
  json j;
  if (q_s.empty()) {
    auto chi = character(eps, make_symbolic(lam));
    KVector<RatFunc> v;
    for (const auto& [n, cs] : split_vector(vec_s))
      v.add_term(n, eval_scalar(parse(cs)));
    KVector<RatFunc> out = act_element(chi, e, v);
    j["vector"] = kvector_json(out, format_ratfunc);
    emit(opt, j, kvector_text(out, format_ratfunc));
  } else {
    Rational q0 = parse_q0(q_s);
    auto chi = character(eps, make_concrete(lam.eval_q(q0), q0));
    KVector<GaussRat> v;
    for (const auto& [n, cs] : split_vector(vec_s))
      v.add_term(n, eval_scalar(parse(cs)).eval_q(q0));
    KVector<GaussRat> out = act_element(chi, e, v);
    j["vector"] = kvector_json(out, format_gauss);
    emit(opt, j, kvector_text(out, format_gauss));
  }
}

void run_classify(const Options& opt, int eps, const std::string& lambda_s,
                  const std::string& q_s) {
  RatFunc lam = eval_scalar(parse(lambda_s));
  if (q_s.empty()) {
    render_classification(opt, classify(character(eps, make_symbolic(lam))),
                          format_ratfunc);
  } else {
    Rational q0 = parse_q0(q_s);
    render_classification(
        opt,
        classify(character(eps, make_concrete(lam.eval_q(q0), q0)), opt.cfg.n_max),
        format_gauss);
  }
}

void run_intertwine(const Options& opt, int eps, const std::string& from_s,
                    const std::string& to_s, int window) {
  auto chi1 = character(eps, make_symbolic(eval_scalar(parse(from_s))));
  auto chi2 = character(eps, make_symbolic(eval_scalar(parse(to_s))));
  IntertwinerSpace<RatFunc> sp = intertwiners(chi1, chi2, window);
  json basis = json::array();
  std::ostringstream os;
  os << "dim " << sp.dim;
  for (const auto& vec : sp.basis) {
    json f = json::array();
    std::string line;
    for (const auto& [n, c] : vec.f) {
      f.push_back({{"coeff", format_ratfunc(c)}, {"n", n}});
      if (!line.empty()) line += ",";
      line += std::to_string(n) + ":" + format_ratfunc(c);
    }
    basis.push_back({{"anchor", vec.anchor}, {"f", std::move(f)}});
    os << "\nanchor " << vec.anchor << ": " << line;
  }
  json j;
  j["basis"] = std::move(basis);
  j["dim"] = sp.dim;
  emit(opt, j, os.str());
}

void run_weights(const Options& opt, int n) {
  KrawtchoukFamily fam = krawtchouk(n);
  json nodes = json::array(), weights = json::array(), polys = json::array();
  std::ostringstream os;
  os << "n=" << n;
  for (int jx = 0; jx <= n; ++jx) {
    nodes.push_back(format_ratfunc(fam.t[jx]));
    weights.push_back(format_ratfunc(fam.w[jx]));
    polys.push_back(tlaurent_json(fam.P[jx]));
    os << "\nt_" << jx << " = " << format_ratfunc(fam.t[jx])
       << "   w_" << jx << " = " << format_ratfunc(fam.w[jx]);
  }
  json j;
  j["n"] = n;
  j["nodes"] = std::move(nodes);
  j["polynomials"] = std::move(polys);
  j["weights"] = std::move(weights);
  emit(opt, j, os.str());
}

void run_adjoint(const Options& opt, int eps, const std::string& lambda_s,
                 const std::string& q_s, int window) {
  Rational q0 = parse_q0(q_s);
  GaussRat mu = eval_scalar(parse(lambda_s)).eval_q(q0);
  AdjointnessReport rep = adjointness_residuals(eps, mu, q0, window);
  json j;
  j["eps"] = eps;
  j["lambda"] = format_gauss(mu);
  j["nonzero_count"] = rep.nonzero.size();
  j["ok"] = rep.ok;
  j["q"] = format_rat(q0);
  j["window"] = window;
  std::ostringstream os;
  os << (rep.ok ? "adjoint: all residuals vanish"
                : "adjoint: " + std::to_string(rep.nonzero.size()) +
                      " nonzero residuals");
  emit(opt, j, os.str());
}

void run_simple(const Options& opt, int eps, const std::string& lambda_s,
                const std::string& q_s) {
  Rational q0 = parse_q0(q_s);
  GaussRat mu = eval_scalar(parse(lambda_s)).eval_q(q0);
  auto series = simple_classify(eps, mu, q0, opt.cfg.n_max);
  json j;
  j["classes"] = series_json(series, format_gauss);
  j["eps"] = eps;
  j["lambda"] = format_gauss(mu);
  j["q"] = format_rat(q0);
  emit(opt, j, "classes:" + series_text(series, format_gauss));
}

TKind kind_from(const std::string& s) {
  if (s == "t+") return TKind::TPlus;
  if (s == "t-") return TKind::TMinus;
  if (s == "t0") return TKind::TZero;
  return TKind::Theta;
}

void run_limit_coeff(const Options& opt, const std::string& kind_s, int n,
                     const std::string& lam_s, const std::string& at_s) {
  GaussRat lam = parse_gauss(lam_s);
  AFormCoeff c = aform_coeff(kind_from(kind_s), n, ExponentLambda{lam},
                             opt.cfg.jet_order);
  json j;
  j["ev1"] = format_gauss(c.ev1());
  j["jet"] = jet_json(c.jet);
  j["kind"] = kind_s;
  j["lam"] = format_gauss(lam);
  j["n"] = n;
  std::ostringstream os;
  os << kind_s << " n=" << n << " lam=" << format_gauss(lam)
     << "\njet valuation " << (c.jet.is_zero() ? 0 : c.jet.val) << ":";
  for (int k = c.jet.val; k < c.jet.end(); ++k)
    os << " " << format_gauss(c.jet.at(k));
  os << "\nvalue at q=1: " << format_gauss(c.ev1());
  if (!at_s.empty()) {
    Rational q0 = parse_q0(at_s);
    auto k = detail::small_integer(lam);
    if (!k)
      throw err("NotInDomain",
                "evaluation at a base point needs an integer lambda");
    GaussRat value = c.eval_at(q0, gpow(GaussRat(q0), *k));
    j["at"] = format_rat(q0);
    j["value"] = format_gauss(value);
    os << "\nvalue at q=" << format_rat(q0) << ": " << format_gauss(value);
  }
  emit(opt, j, os.str());
}

void run_limit_classical(const Options& opt, int eps, const std::string& lambda_s) {
  render_classification(opt, classical_classify(eps, parse_gauss(lambda_s)),
                        format_gauss);
}

void run_limit_compare(const Options& opt, int eps, const std::string& lambda_s,
                       const std::string& q_s) {
  GaussRat lam = parse_gauss(lambda_s);
  auto k = detail::small_integer(lam);
  if (!k)
    throw err("NotInDomain",
              "lambda must be an integer for the q -> 1 comparison");
  Rational q0 = parse_q0(q_s);
  CorrespondenceResult r = correspondence_check(eps, GaussRat(*k), q0);
  json j;
  j["classical_lattice"] = lattice_json(r.classical_lattice);
  j["eps"] = eps;
  j["lambda"] = *k;
  j["match"] = r.match;
  j["q"] = format_rat(q0);
  j["q_lattice"] = lattice_json(r.q_lattice);
  std::ostringstream os;
  os << (r.match ? "match" : "MISMATCH") << "\nq lattice:         "
     << lattice_text(r.q_lattice) << "\nclassical lattice: "
     << lattice_text(r.classical_lattice);
  emit(opt, j, os.str());
}

void run_spectrum(const Options& opt, int dim) {
  bool ok = spectrum_check(dim);
  json eig = json::array();
  std::string line;
  for (const RatFunc& v : theta_eigenvalues(dim)) {
    eig.push_back(format_ratfunc(v));
    if (!line.empty()) line += ", ";
    line += format_ratfunc(v);
  }
  json j;
  j["dim"] = dim;
  j["eigenvalues"] = std::move(eig);
  j["ok"] = ok;
  emit(opt, j, "dim " + std::to_string(dim) + (ok ? " ok: " : " FAIL: ") + line);
}

// ---------------------------------------------------------------------------
// Self test: cheap end-to-end sweep over every module's headline invariant.
// ---------------------------------------------------------------------------

int run_selftest(const Options& opt) {
  std::vector<std::pair<std::string, bool>> checks;
  auto add = [&](const std::string& name, bool ok) { checks.emplace_back(name, ok); };

  auto zero1 = [](const char* s) { return eval1(parse(s)).is_zero(); };
  auto zero2 = [](const char* s) { return eval2(parse(s)).is_zero(); };

  add("defining relations, first basis",
      zero1("X*Z - q^2*Z*X") && zero1("Z*Y - q^2*Y*Z") &&
          zero1("X*Y + q^2*Z^2 - 1") && zero1("Y*X + q^-2*Z^2 - 1") &&
          zero1("q*X*theta - q^-1*theta*X - (q+q^-1)*Z") &&
          zero1("q*theta*Y - q^-1*Y*theta - (q+q^-1)*Z") &&
          zero1("theta*Z - Z*theta - Y + X"));

  add("defining relations, second basis",
      zero2("X*Z - q^2*Z*X") && zero2("X*Y + q^2*Z^2 - 1") &&
          zero2("Y*X + q^-2*Z^2 - 1") && zero2("theta*Z - Z*theta - Y + X") &&
          zero2("z*theta - theta*z + y - x"));

  {
    Element1 c = casimir();
    add("basis conversion roundtrip",
        convert_2to1(convert_1to2(c)) == c &&
            convert_2to1(convert_1to2(eval1(parse("theta*X*Z^2")))) ==
                eval1(parse("theta*X*Z^2")));
    add("Casimir is central",
        is_central(c) && zero1("Omega*theta - theta*Omega") &&
            zero1("Omega*X - X*Omega") && star1(c) == c);
    TLaurent want = TLaurent::term(1, RatFunc::one()) +
                    TLaurent::term(-1, RatFunc::one());
    add("Harish-Chandra image of the Casimir", gamma_tilde(c) == want);
    Element1 p = multiply1(c, c).scaled(RatFunc::q_pow(1)) + c.scaled(qint(2)) +
                 Element1::unit().scaled(RatFunc::from_int(7));
    add("center polynomial roundtrip", center_express(p).casimir_poly.size() == 3);
  }

  {
    auto chi = character(1, FormalCtx{});
    auto vec = KVector<TLaurent>::unit(0, TLaurent::one());
    bool rel = true;
    for (const char* s : {"X*Y + q^2*Z^2 - 1", "Y*X + q^-2*Z^2 - 1",
                          "X*Z - q^2*Z*X", "theta*Z - Z*theta - Y + X"})
      rel = rel && act_element(chi, eval1(parse(s)), vec).is_zero();
    add("module relations at a formal character", rel);
    TLaurent om = TLaurent::var() + TLaurent::term(-1, RatFunc::one());
    add("Casimir acts by lam + 1/lam",
        act_element(chi, casimir(), vec) == vec.scaled(om));
  }

  {
    auto cls = classify(character(1, make_symbolic(RatFunc::q_pow(3))));
    add("submodule lattice at a special point",
        cls.lattice.size() == 5 && cls.series.size() == 3);
    auto sp = intertwiners(character(1, make_symbolic(RatFunc::q_pow(-3))),
                           character(1, make_symbolic(RatFunc::q_pow(3))), 16);
    auto gen = intertwiners(character(1, make_symbolic(RatFunc::q_pow(2))),
                            character(1, make_symbolic(RatFunc::q_pow(-2))), 16);
    add("intertwiner dimensions", sp.dim == 2 && gen.dim == 1);
  }

  {
    bool ok = true;
    for (int d = 1; d <= 4; ++d) ok = ok && spectrum_check(d);
    add("finite-dimensional theta spectra", ok);
    bool orth = true;
    for (int n = 1; n <= 3; ++n)
      orth = orth && orthogonality_check(n, Rational(1, 2));
    add("dual q-Krawtchouk orthogonality", orth);
  }

  {
    bool reg = true, ev = true;
    for (int n : {-2, 0, 2}) {
      for (TKind k : {TKind::TPlus, TKind::TMinus, TKind::TZero, TKind::Theta}) {
        Jet jt = aform_coeff(k, n, ExponentLambda{GaussRat(2)}).jet;
        reg = reg && (jt.is_zero() || jt.val >= 0);
      }
      ev = ev &&
           aform_coeff(TKind::TPlus, n, ExponentLambda{GaussRat(2)}).ev1() ==
               GaussRat(3 + n) &&
           aform_coeff(TKind::TMinus, n, ExponentLambda{GaussRat(2)}).ev1() ==
               GaussRat(3 - n);
    }
    add("analytic family regular at q = 1", reg);
    add("classical transition values", ev);
    add("q to 1 correspondence",
        correspondence_check(1, GaussRat(2), Rational(2)).match &&
            correspondence_check(-1, GaussRat(3), Rational(2)).match);
  }

  add("adjointness on the unitary axis",
      adjointness_residuals(1, GaussRat(Rational(3, 5), Rational(4, 5)),
                            Rational(4), 10)
              .ok &&
          !adjointness_residuals(1, GaussRat(4), Rational(4), 10).ok);

  bool all = true;
  std::ostringstream os;
  json arr = json::array();
  for (const auto& [name, ok] : checks) {
    all = all && ok;
    arr.push_back({{"name", name}, {"ok", ok}});
    os << (ok ? "[ ok ] " : "[FAIL] ") << name << "\n";
  }
  os << (all ? "all checks passed" : "SOME CHECKS FAILED");
  json j;
  j["checks"] = std::move(arr);
  j["ok"] = all;
  emit(opt, j, os.str());
  return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  int rc = 0;

  CLI::App app{"Exact computations in a q-deformed enveloping algebra"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--output", opt.output, "Output mode")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--jet-order", opt.cfg.jet_order,
                 "Tracked Taylor coefficients at q = 1")
      ->envname("QSL2_JET_ORDER");
  app.add_option("--window", opt.cfg.window, "K-type truncation half-width")
      ->envname("QSL2_WINDOW");
  app.add_option("--nmax", opt.cfg.n_max, "Exponent search bound")
      ->envname("QSL2_NMAX");

  int basis = 1, eps = 1, n = 0, dim = 1, window = 0;
  std::string expr_s, b_s, lambda_s, q_s, vec_s, from_s, to_s, kind_s, at_s;

  auto* nf = app.add_subcommand("nf", "Normal form of an expression");
  nf->add_option("--basis", basis)->check(CLI::IsMember({1, 2}));
  nf->add_option("expr", expr_s)->required();
  nf->callback([&] { opt.validated(); run_nf(opt, basis, expr_s); });

  auto* comm = app.add_subcommand("comm", "Commutator of two expressions");
  comm->add_option("--basis", basis)->check(CLI::IsMember({1, 2}));
  comm->add_option("a", expr_s)->required();
  comm->add_option("b", b_s)->required();
  comm->callback([&] { opt.validated(); run_comm(opt, basis, expr_s, b_s); });

  auto* star = app.add_subcommand("star", "Star involution of an expression");
  star->add_option("expr", expr_s)->required();
  star->callback([&] { opt.validated(); run_star(opt, expr_s); });

  auto* central = app.add_subcommand("central", "Centrality test and Casimir polynomial");
  central->add_option("expr", expr_s)->required();
  central->callback([&] { opt.validated(); run_central(opt, expr_s); });

  auto* hc = app.add_subcommand("hc", "Harish-Chandra style character image");
  hc->add_option("expr", expr_s)->required();
  hc->callback([&] { opt.validated(); run_hc(opt, expr_s); });

  auto* act = app.add_subcommand("act", "Act on a vector in the induced module");
  act->add_option("--eps", eps)->required();
  act->add_option("--lambda", lambda_s)->required();
  act->add_option("--q", q_s);
  act->add_option("--vector", vec_s)->required();
  act->add_option("expr", expr_s)->required();
  act->callback([&] { opt.validated(); run_act(opt, eps, lambda_s, q_s, vec_s, expr_s); });

  auto* classify_c = app.add_subcommand("classify", "Submodule lattice and composition series");
  classify_c->add_option("--eps", eps)->required();
  classify_c->add_option("--lambda", lambda_s)->required();
  classify_c->add_option("--q", q_s);
  classify_c->callback([&] { opt.validated(); run_classify(opt, eps, lambda_s, q_s); });

  auto* inter = app.add_subcommand("intertwine", "Space of intertwining operators");
  inter->add_option("--eps", eps)->required();
  inter->add_option("--from", from_s)->required();
  inter->add_option("--to", to_s)->required();
  inter->add_option("--window", window);
  inter->callback([&] {
    opt.validated();
    run_intertwine(opt, eps, from_s, to_s, window > 0 ? window : opt.cfg.window);
  });

  auto* weights = app.add_subcommand("weights", "Dual q-Krawtchouk nodes and weights");
  weights->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  weights->callback([&] { opt.validated(); run_weights(opt, n); });

  auto* adjoint = app.add_subcommand("adjoint", "Adjointness residuals of the pairing");
  adjoint->add_option("--eps", eps)->required();
  adjoint->add_option("--lambda", lambda_s)->required();
  adjoint->add_option("--q", q_s)->required();
  adjoint->add_option("--window", window);
  adjoint->callback([&] {
    opt.validated();
    run_adjoint(opt, eps, lambda_s, q_s, window > 0 ? window : opt.cfg.window);
  });

  auto* simple = app.add_subcommand("simple", "Catalog entry for a concrete character");
  simple->add_option("--eps", eps)->required();
  simple->add_option("--lambda", lambda_s)->required();
  simple->add_option("--q", q_s)->required();
  simple->callback([&] { opt.validated(); run_simple(opt, eps, lambda_s, q_s); });

  auto* limit = app.add_subcommand("limit", "The analytic family and its q = 1 limit");
  limit->require_subcommand(1);

  auto* coeff = limit->add_subcommand("coeff", "Transition coefficient of the analytic family");
  coeff->add_option("--kind", kind_s)
      ->required()
      ->check(CLI::IsMember({"t+", "t-", "t0", "theta"}));
  coeff->add_option("--n", n)->required();
  coeff->add_option("--lam", lambda_s)->required();
  coeff->add_option("--at", at_s);
  coeff->callback([&] { opt.validated(); run_limit_coeff(opt, kind_s, n, lambda_s, at_s); });

  auto* clc = limit->add_subcommand("classical-classify", "Classify the q = 1 module");
  clc->add_option("--eps", eps)->required();
  clc->add_option("--lambda", lambda_s)->required();
  clc->callback([&] { opt.validated(); run_limit_classical(opt, eps, lambda_s); });

  auto* cmp = limit->add_subcommand("compare", "Compare q and q = 1 submodule lattices");
  cmp->add_option("--eps", eps)->required();
  cmp->add_option("--lambda", lambda_s)->required();
  cmp->add_option("--q", q_s)->required();
  cmp->callback([&] { opt.validated(); run_limit_compare(opt, eps, lambda_s, q_s); });

  auto* spectrum = app.add_subcommand("spectrum", "Theta spectrum of the finite irrep");
  spectrum->add_option("--dim", dim)->required()->check(CLI::PositiveNumber);
  spectrum->callback([&] { opt.validated(); run_spectrum(opt, dim); });

  auto* selftest = app.add_subcommand("selftest", "Run the invariant suite");
  selftest->callback([&] { opt.validated(); rc = run_selftest(opt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    if (e.code() == "ConfigError") {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
    if (opt.json_mode()) {
      json j;
      j["error"] = e.code();
      j["message"] = e.what();
      std::cout << j.dump() << "\n";
    } else {
      std::cerr << "error: " << e.code() << ": " << e.what() << "\n";
    }
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
