#include "fflab/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <ostream>
#include <sstream>

#include "fflab/config.hpp"
#include "fflab/numtheory.hpp"
#include "fflab/report.hpp"
#include "fflab/text.hpp"

namespace fflab::cli {

namespace {

using report::Json;
using report::to_json;
namespace u = fflab::ultra;

struct Options {
  std::uint64_t seed = kDefaultSeed;
  std::string format;
  std::string config;
  std::uint64_t cap = kDefaultUnitCap;

  std::uint64_t q = 0;
  std::string a, b, f, x, P, Q;
  std::int64_t e = 0;
  unsigned h = 1, n = 1, m = 1, qmaxdeg = 1;

  // ultra
  std::string family = "dirichlet";
  unsigned N = 8, tail_start = 1;
  std::string mode = "strict";
  double theta = 1.0;
  std::string table;
  std::string predicate, poly, minpoly;
  long degree = 0;
  std::uint64_t expect_order = 0;
  bool expect_noncyclic = false;
  unsigned nmax = 1, B = 1, nest = 0;
  bool allow_repeated = false;
};

struct Outcome {
  Json body;
  bool partial = false;
  std::string default_format = "json";
};

struct Leaf {
  std::string name;
  CLI::App* app;
  std::function<Outcome(const Options&)> fn;
};

// ---- argument helpers ----

Field field_of(const Options& o) {
  if (o.q < 2) raise(ErrorCode::InvalidArgument, "--q must be a prime power >= 2");
  return FieldSpec::of_order(o.q);
}

Poly poly_arg(const Field& F, const std::string& text, const char* flag) {
  if (text.empty()) raise(ErrorCode::InvalidArgument, std::string("missing ") + flag);
  return parse_poly(F, text);
}

std::vector<std::int64_t> int_poly_arg(const std::string& text, const char* flag) {
  if (text.empty()) raise(ErrorCode::InvalidArgument, std::string("missing ") + flag);
  return text::parse_int_poly(text, 't');
}

u::Truncation truncation_of(const Options& o) {
  u::TailMode mode;
  if (o.mode == "strict") mode = u::TailMode::Strict;
  else if (o.mode == "density") mode = u::TailMode::Density;
  else raise(ErrorCode::InvalidArgument, "--mode must be strict or density");
  return u::Truncation::make(o.N, o.tail_start, mode, o.theta);
}

u::UltraFieldFamily family_of(const Options& o) {
  const auto tr = truncation_of(o);
  if (o.family == "table") {
    if (o.table.empty()) raise(ErrorCode::InvalidArgument, "family table needs --table q1,q2,...");
    std::vector<std::uint64_t> orders;
    std::istringstream in(o.table);
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        orders.push_back(std::stoull(item));
      } catch (const std::exception&) {
        raise(ErrorCode::ParseError, "bad field order '" + item + "' in --table");
      }
    }
    return u::table_family(orders, tr);
  }
  return u::family_by_name(o.family, tr);
}

Json optional_json(bool present, Json value) { return present ? std::move(value) : Json(nullptr); }

Json ultra_header(const u::UltraFieldFamily& fam, std::vector<std::string> citations) {
  Json j;
  j["disclaimer"] = u::kDisclaimer;
  j["citations"] = std::move(citations);
  j["family"] = to_json(fam);
  return j;
}

void merge(Json& into, const Json& from) {
  for (const auto& [k, v] : from.items()) into[k] = v;
}

// ---- commands ----

Outcome field_ops(const Options& o) {
  const Field F = field_of(o);
  if (o.a.empty()) raise(ErrorCode::InvalidArgument, "missing --a");
  const Elem a = F->parse(o.a);
  Json j;
  j["field"] = F->describe();
  j["a"] = F->format(a);
  if (!o.b.empty()) {
    const Elem b = F->parse(o.b);
    j["b"] = F->format(b);
    j["sum"] = F->format(F->add(a, b));
    j["difference"] = F->format(F->sub(a, b));
    j["product"] = F->format(F->mul(a, b));
    j["quotient"] = optional_json(b != 0, b != 0 ? Json(F->format(F->mul(a, F->inv(b)))) : Json());
  }
  j["inverse"] = optional_json(a != 0, a != 0 ? Json(F->format(F->inv(a))) : Json());
  j["order"] = optional_json(a != 0, a != 0 ? Json(F->mult_order(a)) : Json());
  j["frobenius"] = F->format(F->frobenius(a));
  if (o.e != 0) {
    if (o.e < 0 && a == 0) raise(ErrorCode::DivisionByZero, "negative power of 0");
    const Elem base = o.e < 0 ? F->inv(a) : a;
    j["power"] = Json{{"e", o.e}, {"value", F->format(F->pow(base, static_cast<std::uint64_t>(o.e < 0 ? -o.e : o.e)))}};
  }
  return {j};
}

bool mentions_x(const std::string& s) { return s.find('x') != std::string::npos; }

Outcome poly_factor(const Options& o) {
  const Field F = field_of(o);
  const Poly f = poly_arg(F, o.f, "--f");
  Rng rng(o.seed);
  Json j;
  j["field"] = F->describe();
  j["f"] = to_string(f);
  merge(j, to_json(factor_ff(f, rng), F));
  return {j};
}

Outcome poly_irred(const Options& o) {
  const Field F = field_of(o);
  if (o.f.empty()) raise(ErrorCode::InvalidArgument, "missing --f");
  Json j;
  j["field"] = F->describe();
  if (mentions_x(o.f)) {
    const BivarPoly f = parse_bivar(F, o.f);
    j["f"] = to_string(f);
    j["over"] = "F_q(t)";
    merge(j, to_json(certify_irreducible(f)));
  } else {
    const Poly f = parse_poly(F, o.f);
    j["f"] = to_string(f);
    j["over"] = "F_q";
    j["verdict"] = is_irreducible_ff(f) ? "irreducible" : "reducible";
  }
  return {j};
}

Outcome carlitz_eval_cmd(const Options& o) {
  const Field F = field_of(o);
  const Poly a = poly_arg(F, o.a, "--a");
  const CarlitzImage c = carlitz_of(a);
  Json j = to_json(c);
  if (!o.x.empty()) {
    const Poly x = parse_poly(F, o.x);
    Poly acc(F);
    Poly frob = x;
    for (std::size_t i = 0; i < c.twisted.coeffs().size(); ++i) {
      if (i > 0) frob = pow(frob, static_cast<unsigned>(F->order()));
      acc += c.twisted.coeffs()[i] * frob;
    }
    j["x"] = to_string(x);
    j["value"] = to_string(acc);
  }
  return {j};
}

Outcome carlitz_cyclo(const Options& o) {
  const Field F = field_of(o);
  const Poly p = poly_arg(F, o.P, "--P");
  if (!p.is_monic() || p.degree() < 1 || !is_irreducible_ff(p)) {
    raise(ErrorCode::NotPrime, to_string(p) + " is not a monic prime of A");
  }
  const BivarPoly psi = cyclo_poly(p, o.h);
  Json j;
  j["P"] = to_string(p);
  j["h"] = o.h;
  j["psi"] = to_string(psi);
  j["degree"] = psi.degree();
  j["phi"] = unit_group_order(pow(p, o.h));
  j["eisenstein"] = eisenstein_check(psi, p);
  return {j};
}

Outcome carlitz_galois(const Options& o) {
  const Field F = field_of(o);
  const Poly a = poly_arg(F, o.a, "--a");
  return {to_json(build_cyclotomic(a, o.cap))};
}

Outcome carlitz_rn(const Options& o) {
  Json j{{"q", o.q}, {"n", o.n}};
  merge(j, to_json(infinity_twist_rn(o.q, o.n, o.cap)));
  return {j};
}

Outcome split_table_cmd(const Options& o) {
  const Field F = field_of(o);
  const Poly a = poly_arg(F, o.a, "--a");
  Json j;
  j["a"] = to_string(a);
  j["rows"] = Json::array();
  for (const auto& row : split_table(a, o.qmaxdeg, o.cap)) j["rows"].push_back(to_json(row));
  return {j, false, "tsv"};
}

Outcome split_oracle_cmd(const Options& o) {
  const Field F = field_of(o);
  const PrimeOfA q = PrimeOfA::certify(poly_arg(F, o.Q, "--Q"));
  const Poly a = poly_arg(F, o.a, "--a");
  const SplittingData d = split_in_cyclotomic(q, a);
  Json j;
  j["Q"] = to_string(q.poly());
  j["a"] = to_string(a);
  merge(j, to_json(d));
  try {
    const auto degrees = factor_pattern_oracle(q, a, o.cap);
    j["oracle_degrees"] = degrees;
    j["agree"] = oracle_agrees(d, degrees);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::RamifiedCase && e.code() != ErrorCode::UseCompositum) throw;
    j["oracle_degrees"] = nullptr;
    j["agree"] = nullptr;
    j["oracle_note"] = std::string(to_string(e.code())) + ": " + e.what();
  }
  return {j};
}

Outcome split_geom(const Options& o) {
  const Field F = field_of(o);
  const PrimeOfA p = PrimeOfA::certify(poly_arg(F, o.P, "--P"));
  return {to_json(geometric_check(p, o.m))};
}

Outcome kummer_verify(const Options& o) {
  const Field F = field_of(o);
  const Poly p = poly_arg(F, o.P, "--P");
  return {to_json(kummer_witness(p, o.n, o.cap))};
}

// ---- ultra ----

Outcome ultra_los(const Options& o) {
  const auto fam = family_of(o);
  if (o.poly.empty()) raise(ErrorCode::InvalidArgument, "missing --poly");
  const auto pf = mentions_x(o.poly) ? u::UltraPolyFamily::from_integers(fam, parse_int_bivar(o.poly))
                                     : u::UltraPolyFamily::from_integers(fam, text::parse_int_poly(o.poly, 't'));
  if (o.predicate.empty()) raise(ErrorCode::InvalidArgument, "missing --predicate");
  const auto rep = u::los_check(o.predicate, pf);
  Json j = ultra_header(fam, {"transfer of first-order properties between the factors and the diagonal object",
                              "tail model of almost-all statements"});
  j["predicate"] = o.predicate;
  j["poly"] = o.poly;
  merge(j, to_json(rep));
  if (o.predicate == "is_irreducible") j["consistency_guard"] = to_json(u::los_consistency_guard(pf));
  return {j};
}

Outcome ultra_lift(const Options& o) {
  const auto fam = family_of(o);
  const auto lp = u::lift_prime(int_poly_arg(o.P, "--P"), fam);
  Json j = ultra_header(fam, {"reduction of a prime of Z[t] is a prime of the same degree for almost all factors"});
  j["P"] = o.P;
  j["degree"] = lp.degree;
  merge(j, to_json(lp.report));
  return {j};
}

Outcome ultra_transfer(const Options& o) {
  const auto fam = family_of(o);
  if (o.poly.empty()) raise(ErrorCode::InvalidArgument, "missing --poly");
  const auto rep = u::irreducibility_transfer_report(parse_int_bivar(o.poly), fam);
  Json j = ultra_header(fam, {"irreducibility transfer with the Newton-polygon coefficient bound M(2n-1)/n"});
  j["poly"] = o.poly;
  merge(j, to_json(rep));
  return {j};
}

Outcome ultra_shadow(const Options& o) {
  const auto fam = family_of(o);
  if (o.minpoly.empty()) raise(ErrorCode::InvalidArgument, "missing --minpoly");
  const auto sh = u::shadow_build(parse_int_bivar(o.minpoly), fam,
                                  o.degree > 0 ? std::optional<long>(o.degree) : std::nullopt);
  Json j = ultra_header(fam, {"shadows of a diagonal extension given by one minimal polynomial",
                              "Galois groups of shadows agree with the diagonal Galois group"});
  j["minpoly"] = o.minpoly;
  if (o.expect_order > 0) {
    const auto audit = u::shadow_galois_audit(sh, {o.expect_order, !o.expect_noncyclic});
    j["expected"] = Json{{"order", o.expect_order}, {"cyclic", !o.expect_noncyclic}};
    j["verdict"] = u::to_string(audit.verdict);
    j["audit"] = to_json(audit);
  } else {
    std::vector<std::optional<bool>> ok;
    for (const auto& e : sh.entries) ok.push_back(e.round_trip);
    j["verdict"] = u::to_string(fam.trunc.judge(ok));
  }
  merge(j, to_json(sh));
  return {j};
}

Outcome ultra_ramify(const Options& o) {
  const auto fam = family_of(o);
  if (o.minpoly.empty()) raise(ErrorCode::InvalidArgument, "missing --minpoly");
  const auto prime = int_poly_arg(o.P, "--P");
  const auto sh = u::shadow_build(parse_int_bivar(o.minpoly), fam);
  const auto rep = u::ramification_correspondence(prime, sh);
  Json j = ultra_header(fam, {"stabilization of (e, f, g) with e f g = m on a large set of indices",
                              "ramification in the shadows for almost all indices versus the diagonal extension"});
  j["minpoly"] = o.minpoly;
  j["P"] = o.P;
  j["verdict"] = u::to_string(rep.stabilization.verdict);
  merge(j, to_json(rep));
  return {j};
}

Outcome ultra_tower(const Options& o) {
  const auto fam = family_of(o);
  const auto prime = int_poly_arg(o.P, "--P");
  const auto rep = u::zhat_tower_demo(prime, o.nmax, fam, o.cap);
  Json j = ultra_header(fam, {"Kummer subfields F((epsilon P)^(1/n)) of the Carlitz cyclotomic field of P",
                              "compatible cyclic quotients Z/n as finite evidence for a procyclic group"});
  j["P"] = o.P;
  j["nmax"] = o.nmax;
  j["verdict"] = u::to_string(rep.overall);
  j["per_index"] = Json::array();
  for (unsigned s = 1; s <= fam.trunc.n; ++s) {
    j["per_index"].push_back(Json{{"s", s},
                                  {"q", fam.field(s)->order()},
                                  {"P_s", to_string(Poly::from_ints(fam.field(s), prime))}});
  }
  merge(j, to_json(rep));
  return {j};
}

u::UltraFieldFamily nested_family(const u::UltraFieldFamily& outer, unsigned k) {
  std::vector<u::UltraFieldFamily> inner;
  for (const auto& F : outer.fields) {
    std::vector<std::uint64_t> orders;
    for (unsigned i = 1; i <= k; ++i) orders.push_back(nt::checked_pow(F->characteristic(), i));
    inner.push_back(u::table_family(orders, u::Truncation::make(k, 1)));
  }
  return u::nest(std::move(inner), outer.trunc);
}

Outcome ultra_mae(const Options& o) {
  auto fam = family_of(o);
  if (o.nest > 0) fam = nested_family(fam, o.nest);
  const auto rep = u::mae_tower_report(fam, o.B, o.cap);
  Json j = ultra_header(fam, {"maximal abelian extension as constants times Q_t times R_infinity",
                              "R_n of degree q^n from the 1/t-twisted Carlitz module"});
  j["B"] = o.B;
  j["verdict"] = u::to_string(rep.partial ? u::Verdict::Mixed : u::Verdict::HoldsOnTail);
  merge(j, to_json(rep));
  if (rep.depth == 2) j["per_index"] = j["nested"];
  return {j, rep.partial};
}

Outcome ultra_dirichlet(const Options& o) {
  const auto fam = u::dirichlet_family(truncation_of(o));
  Json j = ultra_header(fam, {"primes p_s = s! r_s + 1, so n divides q_s - 1 for all s >= n"});
  const auto q1 = fam.icard().plus(-1);
  std::uint64_t fact = 1;
  j["per_index"] = Json::array();
  for (unsigned s = 1; s <= fam.trunc.n; ++s) {
    fact *= s;
    const auto p = static_cast<std::uint64_t>(fam.icard().at(s));
    j["per_index"].push_back(Json{{"s", s}, {"p", p}, {"r", (p - 1) / fact}});
  }
  j["divisibility"] = Json::array();
  bool all = true;
  for (unsigned n = 1; n <= fam.trunc.n; ++n) {
    const auto tr = fam.trunc.with_tail(std::max(fam.trunc.tail_start, n));
    const auto v = u::hyper_divides(n, q1, tr);
    all = all && v == u::Verdict::HoldsOnTail;
    j["divisibility"].push_back(Json{{"n", n}, {"tail_start", tr.tail_start}, {"verdict", u::to_string(v)}});
  }
  j["verdict"] = u::to_string(all ? u::Verdict::HoldsOnTail : u::Verdict::Mixed);
  return {j};
}

Outcome ultra_artin_schreier(const Options& o) {
  const auto fam = family_of(o);
  const auto a = int_poly_arg(o.a, "--a");
  const auto rep = u::artin_schreier_demo(fam, a, !o.allow_repeated);
  Json j = ultra_header(fam, {"Artin-Schreier shadows x^p - x - a of degree p_s",
                              "an algebraic element has bounded shadow degree on a large set"});
  j["a"] = o.a;
  j["verdict"] = u::to_string(rep.divisors == std::vector<std::int64_t>{1} ? u::Verdict::HoldsOnTail
                                                                           : u::Verdict::FailsOnTail);
  merge(j, to_json(rep));
  return {j};
}

// ---- rendering ----

std::string cell(const Json& v) {
  if (v.is_null()) return "-";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& x) { return x.is_primitive(); })) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + cell(v[i]);
    return s;
  }
  return v.dump();
}

void render_tsv(const Json& doc, std::ostream& out) {
  for (const char* key : {"rows", "per_index", "factors"}) {
    if (!doc.contains(key) || !doc[key].is_array() || doc[key].empty() || !doc[key][0].is_object()) continue;
    const Json& rows = doc[key];
    bool first = true;
    for (const auto& [k, _] : rows[0].items()) {
      out << (first ? "" : "\t") << k;
      first = false;
    }
    out << "\n";
    for (const auto& row : rows) {
      first = true;
      for (const auto& [k, _] : rows[0].items()) {
        out << (first ? "" : "\t") << (row.contains(k) ? cell(row[k]) : "-");
        first = false;
      }
      out << "\n";
    }
    return;
  }
  for (const auto& [k, v] : doc.items()) out << k << "\t" << cell(v) << "\n";
}

void render_pretty(const Json& v, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) {
      const bool numbers = x.is_array() && std::all_of(x.begin(), x.end(), [](const Json& y) { return y.is_number(); });
      if (x.is_structured() && !x.empty() && !numbers) {
        out << pad << k << ":\n";
        render_pretty(x, out, indent + 2);
      } else {
        out << pad << k << ": " << cell(x) << "\n";
      }
    }
  } else if (v.is_array()) {
    for (const auto& x : v) {
      if (x.is_structured()) {
        out << pad << "-\n";
        render_pretty(x, out, indent + 2);
      } else {
        out << pad << "- " << cell(x) << "\n";
      }
    }
  } else {
    out << pad << cell(v) << "\n";
  }
}

void emit(const Json& doc, const std::string& format, std::ostream& out) {
  if (format == "json") out << doc.dump(2) << "\n";
  else if (format == "tsv") render_tsv(doc, out);
  else render_pretty(doc, out, 0);
}

void apply_config(Options& o, const Config& c, const std::function<bool(const char*)>& given) {
  if (!given("--seed")) o.seed = c.get_uint("seed").value_or(o.seed);
  if (!given("--cap")) o.cap = c.get_uint("cap").value_or(o.cap);
  if (!given("--format")) o.format = c.get("format").value_or(o.format);
  if (!given("--family")) o.family = c.get("family").value_or(o.family);
  if (!given("--N")) o.N = static_cast<unsigned>(c.get_uint("N").value_or(o.N));
  if (!given("--tail-start")) o.tail_start = static_cast<unsigned>(c.get_uint("tail_start").value_or(o.tail_start));
  if (!given("--mode")) o.mode = c.get("mode").value_or(o.mode);
  if (!given("--theta")) o.theta = c.get_double("theta").value_or(o.theta);
  if (!given("--table")) o.table = c.get("table").value_or(o.table);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Carlitz modules, cyclotomic function fields and truncated ultraproducts", "fflab"};
  app.fallthrough();
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);
  app.add_option("--seed", o.seed, "seed for randomized factorization");
  app.add_option("--format", o.format, "json, tsv or pretty")->check(CLI::IsMember({"json", "tsv", "pretty"}));
  app.add_option("--config", o.config, "key = value settings file (default: $FFLAB_CONFIG)");
  app.add_option("--cap", o.cap, "enumeration cap on unit groups");

  std::vector<Leaf> leaves;
  auto group = [&](const char* name, const char* help) {
    auto* g = app.add_subcommand(name, help);
    g->require_subcommand(1);
    return g;
  };
  auto leaf = [&](CLI::App* g, const char* name, const char* help, std::function<Outcome(const Options&)> fn) {
    auto* l = g->add_subcommand(name, help);
    leaves.push_back({g->get_name() + " " + name, l, std::move(fn)});
    return l;
  };
  auto q_opt = [&](CLI::App* l) { l->add_option("--q", o.q, "constant field order")->required(); };

  auto* field = group("field", "finite field arithmetic");
  auto* ops = leaf(field, "ops", "arithmetic on elements of GF(q)", field_ops);
  q_opt(ops);
  ops->add_option("--a", o.a, "element, e.g. z^2+1")->required();
  ops->add_option("--b", o.b, "second element");
  ops->add_option("--e", o.e, "exponent for a^e");

  auto* poly = group("poly", "polynomials over GF(q)");
  auto* pf = leaf(poly, "factor", "factor a polynomial in t", poly_factor);
  q_opt(pf);
  pf->add_option("--f", o.f, "polynomial in t")->required();
  auto* pi = leaf(poly, "irred", "irreducibility over GF(q), or over GF(q)(t) when x occurs", poly_irred);
  q_opt(pi);
  pi->add_option("--f", o.f, "polynomial in t, or in x with parenthesized t-coefficients")->required();

  auto* carlitz = group("carlitz", "Carlitz module");
  auto* ce = leaf(carlitz, "eval", "C_a as a twisted polynomial, optionally evaluated", carlitz_eval_cmd);
  q_opt(ce);
  ce->add_option("--a", o.a, "element of A")->required();
  ce->add_option("--x", o.x, "element of A to evaluate C_a at");
  auto* cc = leaf(carlitz, "cyclo", "psi_{P^h} = C_{P^h}/C_{P^(h-1)}", carlitz_cyclo);
  q_opt(cc);
  cc->add_option("--P", o.P, "monic prime of A")->required();
  cc->add_option("--h", o.h, "exponent")->check(CLI::PositiveNumber);
  auto* cg = leaf(carlitz, "galois", "Galois table of Q_a for a prime power a", carlitz_galois);
  q_opt(cg);
  cg->add_option("--a", o.a, "prime power of A")->required();
  auto* cr = leaf(carlitz, "rn", "degree of R_n", carlitz_rn);
  q_opt(cr);
  cr->add_option("--n", o.n, "n")->required()->check(CLI::PositiveNumber);

  auto* split = group("split", "splitting of primes");
  auto* st = leaf(split, "table", "splitting of every prime Q of bounded degree in Q_a", split_table_cmd);
  q_opt(st);
  st->add_option("--a", o.a, "modulus")->required();
  st->add_option("--Qmaxdeg", o.qmaxdeg, "largest deg Q")->required();
  auto* so = leaf(split, "oracle", "formula against the factorization of psi_a mod Q", split_oracle_cmd);
  q_opt(so);
  so->add_option("--Q", o.Q, "prime of A")->required();
  so->add_option("--a", o.a, "modulus")->required();
  auto* sg = leaf(split, "geom", "psi_P after extending constants to GF(q^m)", split_geom);
  q_opt(sg);
  sg->add_option("--P", o.P, "prime of A")->required();
  sg->add_option("--m", o.m, "constant extension degree")->required()->check(CLI::PositiveNumber);

  auto* kummer = group("kummer", "Kummer subfields");
  auto* kv = leaf(kummer, "verify", "degree-n subfield of Q_P against F((epsilon P)^(1/n))", kummer_verify);
  q_opt(kv);
  kv->add_option("--P", o.P, "prime of A")->required();
  kv->add_option("--n", o.n, "n dividing q^deg(P) - 1")->required()->check(CLI::PositiveNumber);

  auto* ultra = group("ultra", "truncated ultraproduct reports");
  ultra->add_option("--family", o.family, "dirichlet, primes, constant(q) or table");
  ultra->add_option("--N", o.N, "number of indices");
  ultra->add_option("--tail-start", o.tail_start, "first index of the tail");
  ultra->add_option("--mode", o.mode, "strict or density");
  ultra->add_option("--theta", o.theta, "density threshold");
  ultra->add_option("--table", o.table, "field orders for family table");
  auto* ul = leaf(ultra, "los", "named predicate per index and on the tail", ultra_los);
  ul->add_option("--predicate", o.predicate, "is_irreducible, has_root_in_base, degree_equals(d), ...")->required();
  ul->add_option("--poly", o.poly, "integer polynomial in t, or in x with t-coefficients")->required();
  auto* ulift = leaf(ultra, "lift", "per-index reductions of a prime of Z[t]", ultra_lift);
  ulift->add_option("--P", o.P, "monic integer polynomial in t")->required();
  auto* utr = leaf(ultra, "transfer", "irreducibility over F_s(t) per index with bound audits", ultra_transfer);
  utr->add_option("--poly", o.poly, "integer polynomial in x with t-coefficients")->required();
  auto* us = leaf(ultra, "shadow", "shadows F_s(t)[x]/(P_s) and their Galois audit", ultra_shadow);
  us->add_option("--minpoly", o.minpoly, "monic integer polynomial in x")->required();
  us->add_option("--degree", o.degree, "required shared degree");
  us->add_option("--expect-order", o.expect_order, "expected Galois group order");
  us->add_flag("--expect-noncyclic", o.expect_noncyclic, "expected group is not cyclic");
  auto* ur = leaf(ultra, "ramify", "splitting of a lifted prime in the shadows", ultra_ramify);
  ur->add_option("--minpoly", o.minpoly, "monic integer polynomial in x")->required();
  ur->add_option("--P", o.P, "monic integer polynomial in t")->required();
  auto* ut = leaf(ultra, "tower", "Kummer tower x^n - epsilon P for n <= nmax", ultra_tower);
  ut->add_option("--P", o.P, "monic integer polynomial in t")->required();
  ut->add_option("--nmax", o.nmax, "largest n")->required()->check(CLI::PositiveNumber);
  auto* um = leaf(ultra, "mae", "abelian tower degrees per index", ultra_mae);
  um->add_option("--B", o.B, "degree bound")->required();
  um->add_option("--nest", o.nest, "second level: GF(p_s^k), k <= nest, inside index s");
  leaf(ultra, "dirichlet", "the primes p_s = s! r_s + 1", ultra_dirichlet);
  auto* ua = leaf(ultra, "artin-schreier", "x^p - x - a per index", ultra_artin_schreier);
  ua->add_option("--a", o.a, "integer polynomial in t")->required();
  ua->add_flag("--allow-repeated", o.allow_repeated, "report repeated characteristics instead of failing");

  std::vector<std::string> argv_store{"fflab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (const auto& l : leaves) {
      if (l.app->parsed()) target = l.app;
    }
    out << target->help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "fflab: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  const Leaf* chosen = nullptr;
  for (const auto& l : leaves) {
    if (l.app->parsed()) chosen = &l;
  }
  if (!chosen) {
    err << app.help();
    return kExitUsage;
  }

  auto given = [&](const char* flag) {
    for (const CLI::App* a : {static_cast<const CLI::App*>(&app), static_cast<const CLI::App*>(ultra)}) {
      try {
        if (a->get_option(flag)->count() > 0) return true;
      } catch (const CLI::OptionNotFound&) {
      }
    }
    return false;
  };

  try {
    std::string config_path = o.config;
    if (config_path.empty()) {
      if (const char* env = std::getenv("FFLAB_CONFIG")) config_path = env;
    }
    if (!config_path.empty()) apply_config(o, Config::load(config_path), given);
    if (!o.format.empty() && o.format != "json" && o.format != "tsv" && o.format != "pretty") {
      raise(ErrorCode::InvalidArgument, "format must be json, tsv or pretty");
    }

    Outcome res = chosen->fn(o);
    Json doc;
    doc["command"] = chosen->name;
    doc["seed"] = o.seed;
    doc["partial"] = res.partial;
    merge(doc, res.body);
    emit(doc, o.format.empty() ? res.default_format : o.format, out);
    if (res.partial) err << "fflab: cap exceeded at some indices; output is partial\n";
    return res.partial ? kExitPartial : kExitOk;
  } catch (const Error& e) {
    Json doc;
    doc["command"] = chosen->name;
    doc["seed"] = o.seed;
    doc["partial"] = false;
    doc["error"] = Json{{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    out << doc.dump(2) << "\n";
    err << "fflab: " << to_string(e.code()) << ": " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace fflab::cli
