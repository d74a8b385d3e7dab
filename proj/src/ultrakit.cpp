#include "fflab/ultrakit.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "fflab/numtheory.hpp"
#include "fflab/text.hpp"

namespace fflab::ultra {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::HoldsOnTail: return "HoldsOnTail";
    case Verdict::FailsOnTail: return "FailsOnTail";
    case Verdict::Mixed: return "Mixed";
  }
  return "Mixed";
}

Verdict complement(Verdict v) {
  switch (v) {
    case Verdict::HoldsOnTail: return Verdict::FailsOnTail;
    case Verdict::FailsOnTail: return Verdict::HoldsOnTail;
    case Verdict::Mixed: return Verdict::Mixed;
  }
  return Verdict::Mixed;
}

// ---- truncation ------------------------------------------------------------

Truncation Truncation::make(unsigned n, unsigned tail_start, TailMode mode, double theta) {
  if (n < 1) raise(ErrorCode::InvalidArgument, "truncation needs N >= 1");
  if (tail_start < 1 || tail_start > n) {
    raise(ErrorCode::InvalidArgument, "tail_start must lie in 1.." + std::to_string(n));
  }
  if (!(theta > 0.0 && theta <= 1.0)) raise(ErrorCode::InvalidArgument, "theta must lie in (0, 1]");
  return Truncation{n, tail_start, mode, theta};
}

Truncation Truncation::with_tail(unsigned t) const { return make(n, t, mode, theta); }

Verdict Truncation::judge(const std::vector<std::optional<bool>>& values) const {
  if (values.size() != n) raise(ErrorCode::InvalidArgument, "value table does not match the truncation");
  unsigned yes = 0, no = 0;
  for (unsigned s = tail_start; s <= n; ++s) {
    const auto& v = values[s - 1];
    if (!v) return Verdict::Mixed;
    (*v ? yes : no) += 1;
  }
  const unsigned total = tail_size();
  if (mode == TailMode::Strict) {
    if (yes == total) return Verdict::HoldsOnTail;
    if (no == total) return Verdict::FailsOnTail;
    return Verdict::Mixed;
  }
  if (static_cast<double>(yes) >= theta * total) return Verdict::HoldsOnTail;
  if (static_cast<double>(no) >= theta * total) return Verdict::FailsOnTail;
  return Verdict::Mixed;
}

Verdict Truncation::judge(const std::vector<bool>& values) const {
  return judge(std::vector<std::optional<bool>>(values.begin(), values.end()));
}

double Truncation::tail_density(const std::vector<bool>& members) const {
  if (members.size() != n) raise(ErrorCode::InvalidArgument, "membership vector does not match the truncation");
  unsigned c = 0;
  for (unsigned s = tail_start; s <= n; ++s) c += members[s - 1] ? 1 : 0;
  return static_cast<double>(c) / tail_size();
}

bool Truncation::is_large(const std::vector<bool>& members) const {
  const double d = tail_density(members);
  return mode == TailMode::Strict ? d == 1.0 : d >= theta;
}

// ---- hyperintegers ---------------------------------------------------------

namespace {

void require_same_length(const Hyperinteger& a, const Hyperinteger& b) {
  if (a.size() != b.size()) raise(ErrorCode::InvalidArgument, "hyperintegers over different truncations");
}

template <class Op>
Hyperinteger zip(const Hyperinteger& a, const Hyperinteger& b, Op op) {
  require_same_length(a, b);
  Hyperinteger r;
  r.v.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r.v[i] = op(a.v[i], b.v[i]);
  return r;
}

bool divides(std::int64_t a, std::int64_t b) {
  if (a == 0) return b == 0;
  return b % a == 0;
}

void require_length(const Hyperinteger& h, const Truncation& tr) {
  if (h.size() != tr.n) raise(ErrorCode::InvalidArgument, "hyperinteger does not match the truncation");
}

}  // namespace

Hyperinteger operator+(const Hyperinteger& a, const Hyperinteger& b) { return zip(a, b, std::plus<>{}); }
Hyperinteger operator-(const Hyperinteger& a, const Hyperinteger& b) { return zip(a, b, std::minus<>{}); }
Hyperinteger operator*(const Hyperinteger& a, const Hyperinteger& b) { return zip(a, b, std::multiplies<>{}); }

Hyperinteger Hyperinteger::plus(std::int64_t c) const {
  Hyperinteger r = *this;
  for (auto& x : r.v) x += c;
  return r;
}

Verdict hyper_divides(std::int64_t m, const Hyperinteger& h, const Truncation& tr) {
  if (m < 1) raise(ErrorCode::InvalidArgument, "divisor must be >= 1");
  require_length(h, tr);
  std::vector<bool> v(tr.n);
  for (unsigned s = 1; s <= tr.n; ++s) v[s - 1] = divides(m, h.at(s));
  return tr.judge(v);
}

Verdict hyper_divides(const Hyperinteger& a, const Hyperinteger& b, const Truncation& tr) {
  require_same_length(a, b);
  require_length(a, tr);
  std::vector<bool> v(tr.n);
  for (unsigned s = 1; s <= tr.n; ++s) v[s - 1] = divides(a.at(s), b.at(s));
  return tr.judge(v);
}

std::vector<std::int64_t> divisor_set(const Hyperinteger& h, const Truncation& tr, std::int64_t bound) {
  std::vector<std::int64_t> out;
  for (std::int64_t m = 1; m <= bound; ++m) {
    if (hyper_divides(m, h, tr) == Verdict::HoldsOnTail) out.push_back(m);
  }
  return out;
}

UnionMember union_member_lemma(const std::vector<bool>& a, const std::vector<std::vector<bool>>& parts,
                               const Truncation& tr) {
  if (!tr.is_large(a)) raise(ErrorCode::PreconditionFailed, "the covered set is not large on the tail");
  for (unsigned s = 1; s <= tr.n; ++s) {
    const bool covered = std::any_of(parts.begin(), parts.end(), [&](const auto& p) { return p.at(s - 1); });
    if (covered != a.at(s - 1)) {
      raise(ErrorCode::PreconditionFailed, "parts do not cover the set exactly at index " + std::to_string(s));
    }
  }
  UnionMember r{Verdict::Mixed, std::nullopt, {}};
  for (const auto& p : parts) r.densities.push_back(tr.tail_density(p));
  if (parts.empty()) return r;
  if (tr.mode == TailMode::Strict) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (r.densities[i] == 1.0) {
        r.verdict = Verdict::HoldsOnTail;
        r.part = i + 1;
        break;
      }
    }
    return r;
  }
  const auto best = std::max_element(r.densities.begin(), r.densities.end()) - r.densities.begin();
  r.part = static_cast<std::size_t>(best) + 1;
  r.verdict = r.densities[best] >= tr.theta ? Verdict::HoldsOnTail : Verdict::Mixed;
  return r;
}

// ---- field families --------------------------------------------------------

Hyperinteger UltraFieldFamily::icard() const {
  if (depth() != 1) raise(ErrorCode::PreconditionFailed, "icard of a nested family is a sequence of hyperintegers");
  Hyperinteger h;
  for (const auto& f : fields) h.v.push_back(static_cast<std::int64_t>(f->order()));
  return h;
}

std::vector<Hyperinteger> UltraFieldFamily::icard_nested() const {
  if (depth() != 2) raise(ErrorCode::PreconditionFailed, "not a nested family");
  std::vector<Hyperinteger> out;
  for (const auto& f : inner) out.push_back(f.icard());
  return out;
}

std::uint64_t dirichlet_prime(unsigned s) {
  if (s < 1) raise(ErrorCode::InvalidArgument, "index starts at 1");
  if (s > 12) raise(ErrorCode::TooLarge, "dirichlet primes are tabulated for s <= 12");
  std::uint64_t fact = 1;
  for (unsigned i = 2; i <= s; ++i) fact *= i;
  for (std::uint64_t r = 1;; ++r) {
    if (nt::is_prime(fact * r + 1)) return fact * r + 1;
  }
}

UltraFieldFamily dirichlet_family(const Truncation& tr) {
  if (tr.n > 12) raise(ErrorCode::TooLarge, "dirichlet family supports N <= 12");
  UltraFieldFamily fam{"dirichlet", tr, {}, {}};
  for (unsigned s = 1; s <= tr.n; ++s) fam.fields.push_back(FieldSpec::prime_field(dirichlet_prime(s)));
  return fam;
}

UltraFieldFamily primes_family(const Truncation& tr) {
  UltraFieldFamily fam{"primes", tr, {}, {}};
  for (std::uint64_t p = 2; fam.fields.size() < tr.n; ++p) {
    if (nt::is_prime(p)) fam.fields.push_back(FieldSpec::prime_field(p));
  }
  return fam;
}

UltraFieldFamily constant_family(std::uint64_t q, const Truncation& tr) {
  UltraFieldFamily fam{"constant(" + std::to_string(q) + ")", tr, {}, {}};
  const Field F = FieldSpec::of_order(q);
  fam.fields.assign(tr.n, F);
  return fam;
}

UltraFieldFamily table_family(const std::vector<std::uint64_t>& orders, const Truncation& tr) {
  if (orders.size() != tr.n) raise(ErrorCode::InvalidArgument, "table family needs exactly N field orders");
  UltraFieldFamily fam{"table", tr, {}, {}};
  for (auto q : orders) fam.fields.push_back(FieldSpec::of_order(q));
  return fam;
}

UltraFieldFamily nest(std::vector<UltraFieldFamily> inner, const Truncation& outer) {
  if (inner.size() != outer.n) raise(ErrorCode::InvalidArgument, "nested family needs one inner family per index");
  for (const auto& f : inner) {
    if (f.depth() != 1) {
      raise(ErrorCode::NestingTooDeep, "nesting depth is capped at " + std::to_string(kMaxNesting));
    }
  }
  return UltraFieldFamily{"nested", outer, {}, std::move(inner)};
}

UltraFieldFamily family_by_name(const std::string& name, const Truncation& tr) {
  if (name == "dirichlet") return dirichlet_family(tr);
  if (name == "primes") return primes_family(tr);
  if (name.rfind("constant(", 0) == 0 && name.back() == ')') {
    const std::string inner = name.substr(9, name.size() - 10);
    if (inner.empty() || !std::all_of(inner.begin(), inner.end(), [](unsigned char c) { return std::isdigit(c); })) {
      raise(ErrorCode::ParseError, "bad field order in " + name);
    }
    return constant_family(std::stoull(inner), tr);
  }
  raise(ErrorCode::InvalidArgument, "unknown family '" + name + "' (dirichlet, primes, constant(q))");
}

// ---- Frobenius-fixed check -------------------------------------------------

TailReport frobenius_fixed_check(const UltraFieldFamily& fam, const std::vector<FieldElement>& elems,
                                 const std::optional<Hyperinteger>& exponent) {
  if (fam.depth() != 1) raise(ErrorCode::PreconditionFailed, "depth-1 check on a nested family");
  const Truncation& tr = fam.trunc;
  if (elems.size() != tr.n) raise(ErrorCode::InvalidArgument, "need one element per index");
  const Hyperinteger e = exponent ? *exponent : fam.icard();
  require_length(e, tr);
  TailReport rep;
  std::vector<std::optional<bool>> values;
  for (unsigned s = 1; s <= tr.n; ++s) {
    const FieldElement& a = elems[s - 1];
    require_same_owner(*a.owner(), *fam.field(s));
    const std::int64_t k = e.at(s);
    IndexEntry entry{s, std::nullopt, ""};
    if (k < 0 && a.is_zero()) {
      entry.detail = "negative exponent on 0";
    } else {
      const FieldElement base = k < 0 ? ff_inv(a) : a;
      const FieldElement lhs = base.pow(static_cast<std::uint64_t>(k < 0 ? -k : k));
      entry.value = lhs == a;
      entry.detail = a.to_string() + "^" + std::to_string(k) + " = " + lhs.to_string();
    }
    values.push_back(entry.value);
    if (!entry.value) rep.unknown.push_back(s);
    else if (!*entry.value && tr.in_tail(s)) rep.violating.push_back(s);
    rep.per_index.push_back(std::move(entry));
  }
  rep.verdict = tr.judge(values);
  return rep;
}

TailReport frobenius_fixed_check(const UltraFieldFamily& fam, const std::vector<std::vector<FieldElement>>& elems) {
  if (fam.depth() != 2) raise(ErrorCode::PreconditionFailed, "nested check on a depth-1 family");
  const Truncation& tr = fam.trunc;
  if (elems.size() != tr.n) raise(ErrorCode::InvalidArgument, "need one element table per outer index");
  TailReport rep;
  std::vector<std::optional<bool>> values;
  for (unsigned s = 1; s <= tr.n; ++s) {
    const TailReport in = frobenius_fixed_check(fam.inner[s - 1], elems[s - 1]);
    IndexEntry entry{s, std::nullopt, "inner " + to_string(in.verdict)};
    if (in.verdict == Verdict::HoldsOnTail) entry.value = true;
    else if (in.verdict == Verdict::FailsOnTail) entry.value = false;
    values.push_back(entry.value);
    if (!entry.value) rep.unknown.push_back(s);
    else if (!*entry.value && tr.in_tail(s)) rep.violating.push_back(s);
    rep.per_index.push_back(std::move(entry));
  }
  rep.verdict = tr.judge(values);
  return rep;
}

// ---- polynomial families ---------------------------------------------------

namespace {

void require_depth1(const UltraFieldFamily& fam) {
  if (fam.depth() != 1) raise(ErrorCode::PreconditionFailed, "operation needs a depth-1 family");
}

// Collects an optional<bool> per index into a TailReport.
template <class Fn>
TailReport tabulate(const Truncation& tr, Fn fn) {
  TailReport rep;
  std::vector<std::optional<bool>> values;
  for (unsigned s = 1; s <= tr.n; ++s) {
    IndexEntry entry = fn(s);
    values.push_back(entry.value);
    if (!entry.value) rep.unknown.push_back(s);
    else if (!*entry.value && tr.in_tail(s)) rep.violating.push_back(s);
    rep.per_index.push_back(std::move(entry));
  }
  rep.verdict = tr.judge(values);
  return rep;
}

long template_degree(const IntBivar& rows) {
  for (std::size_t i = rows.size(); i-- > 0;) {
    if (std::any_of(rows[i].begin(), rows[i].end(), [](std::int64_t c) { return c != 0; })) return static_cast<long>(i);
  }
  return Poly::kNegInfinity;
}

long int_degree(const std::vector<std::int64_t>& c) {
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] != 0) return static_cast<long>(i);
  }
  return Poly::kNegInfinity;
}

}  // namespace

UltraPolyFamily UltraPolyFamily::from_integers(const UltraFieldFamily& base, const std::vector<std::int64_t>& coeffs) {
  require_depth1(base);
  UltraPolyFamily fam;
  fam.mode = SpecMode::IntegerSpec;
  fam.base = base;
  fam.integer_template = {coeffs};
  fam.formal_degree = int_degree(coeffs);
  for (const auto& F : base.fields) fam.uni.push_back(Poly::from_ints(F, coeffs));
  return fam;
}

UltraPolyFamily UltraPolyFamily::from_integers(const UltraFieldFamily& base, const IntBivar& rows) {
  require_depth1(base);
  UltraPolyFamily fam;
  fam.mode = SpecMode::IntegerSpec;
  fam.base = base;
  fam.bivariate = true;
  fam.integer_template = rows;
  fam.formal_degree = template_degree(rows);
  for (const auto& F : base.fields) fam.bi.push_back(reduce_int_bivar(F, rows));
  return fam;
}

UltraPolyFamily UltraPolyFamily::from_table(const UltraFieldFamily& base, std::vector<Poly> polys) {
  require_depth1(base);
  if (polys.size() != base.trunc.n) raise(ErrorCode::InvalidArgument, "need one polynomial per index");
  for (unsigned s = 1; s <= base.trunc.n; ++s) require_same_owner(*polys[s - 1].field(), *base.field(s));
  UltraPolyFamily fam;
  fam.mode = SpecMode::TableSpec;
  fam.base = base;
  fam.uni = std::move(polys);
  return fam;
}

UltraPolyFamily UltraPolyFamily::from_table(const UltraFieldFamily& base, std::vector<BivarPoly> polys) {
  require_depth1(base);
  if (polys.size() != base.trunc.n) raise(ErrorCode::InvalidArgument, "need one polynomial per index");
  for (unsigned s = 1; s <= base.trunc.n; ++s) require_same_owner(*polys[s - 1].field(), *base.field(s));
  UltraPolyFamily fam;
  fam.mode = SpecMode::TableSpec;
  fam.base = base;
  fam.bivariate = true;
  fam.bi = std::move(polys);
  return fam;
}

std::string UltraPolyFamily::describe(unsigned s) const {
  return bivariate ? to_string(bi.at(s - 1)) : to_string(uni.at(s - 1));
}

TailReport diagonal_membership(const UltraPolyFamily& fam, long bound) {
  return tabulate(fam.trunc(), [&](unsigned s) {
    const long d = fam.bivariate ? fam.bi[s - 1].max_t_degree() : fam.uni[s - 1].degree();
    return IndexEntry{s, d <= bound, "degree " + (d == Poly::kNegInfinity ? std::string("-inf") : std::to_string(d))};
  });
}

LiftedPrime lift_prime(const std::vector<std::int64_t>& coeffs, const UltraFieldFamily& fam) {
  const long d = int_degree(coeffs);
  if (d < 1) raise(ErrorCode::DegreeTooSmall, "a prime of A has degree >= 1");
  if (coeffs[static_cast<std::size_t>(d)] != 1) {
    raise(ErrorCode::DegeneratedLeadingCoefficient, "lifted primes are given monic");
  }
  LiftedPrime out{UltraPolyFamily::from_integers(fam, coeffs), static_cast<unsigned>(d), {}};
  out.report = tabulate(fam.trunc, [&](unsigned s) {
    const Poly& p = out.family.uni[s - 1];
    const bool irr = p.degree() == d && is_irreducible_ff(p);
    return IndexEntry{s, irr, to_string(p) + (irr ? " prime" : " not prime")};
  });
  return out;
}

namespace {

std::optional<unsigned> parse_degree_predicate(const std::string& pred) {
  const std::string head = "degree_equals(";
  if (pred.rfind(head, 0) != 0 || pred.back() != ')') return std::nullopt;
  const std::string num = pred.substr(head.size(), pred.size() - head.size() - 1);
  if (num.empty() || num.size() > 9 || !std::all_of(num.begin(), num.end(), [](unsigned char c) { return std::isdigit(c); })) {
    raise(ErrorCode::ParseError, "bad degree in " + pred);
  }
  return static_cast<unsigned>(std::stoul(num));
}

std::optional<bool> certify_value(const IrreducibilityCertificate& c) {
  if (c.verdict == Irreducibility::Irreducible) return true;
  if (c.verdict == Irreducibility::Reducible) return false;
  return std::nullopt;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

}  // namespace

TailReport los_check(const std::string& predicate, const UltraPolyFamily& fam) {
  enum class Pred { Irreducible, Root, Degree, Separable, Primitive } kind;
  unsigned target = 0;
  if (predicate == "is_irreducible") kind = Pred::Irreducible;
  else if (predicate == "has_root_in_base") kind = Pred::Root;
  else if (predicate == "is_separable") kind = Pred::Separable;
  else if (predicate == "is_primitive") kind = Pred::Primitive;
  else if (auto d = parse_degree_predicate(predicate)) {
    kind = Pred::Degree;
    target = *d;
  } else {
    raise(ErrorCode::UnknownPredicate,
          "unknown predicate '" + predicate +
              "' (is_irreducible, has_root_in_base, degree_equals(d), is_separable, is_primitive)");
  }
  return tabulate(fam.trunc(), [&](unsigned s) -> IndexEntry {
    if (fam.bivariate) {
      const BivarPoly& f = fam.bi[s - 1];
      switch (kind) {
        case Pred::Irreducible: {
          const auto c = certify_irreducible(f);
          return {s, certify_value(c), join(c.evidence, ", ")};
        }
        case Pred::Root: {
          const auto r = f.is_zero() ? std::vector<RatFunc>{} : rational_roots(f);
          return {s, !r.empty(), std::to_string(r.size()) + " roots in F(t)"};
        }
        case Pred::Degree:
          return {s, f.degree() == static_cast<long>(target), "x-degree " + std::to_string(f.degree())};
        case Pred::Separable: {
          if (f.degree() < 1) return {s, std::nullopt, "constant"};
          const bool sep = is_separable(f);
          return {s, sep, sep ? "gcd(f, f') = 1" : "repeated factor or f' = 0"};
        }
        case Pred::Primitive: {
          if (f.is_zero()) return {s, false, "zero"};
          const auto pr = biv_primitive_check(f);
          return {s, pr.primitive, "content " + to_string(pr.content)};
        }
      }
    }
    const Poly& f = fam.uni[s - 1];
    switch (kind) {
      case Pred::Irreducible: return {s, is_irreducible_ff(f), to_string(f)};
      case Pred::Root: {
        if (f.is_zero()) return {s, true, "zero polynomial"};
        const auto r = roots(f);
        return {s, !r.empty(), std::to_string(r.size()) + " roots in F_q"};
      }
      case Pred::Degree: return {s, f.degree() == static_cast<long>(target), "degree " + std::to_string(f.degree())};
      case Pred::Separable: {
        if (f.degree() < 1) return {s, std::nullopt, "constant"};
        const bool sep = gcd(f, derivative(f)).degree() == 0;
        return {s, sep, sep ? "gcd(f, f') = 1" : "repeated factor or f' = 0"};
      }
      case Pred::Primitive: return {s, !f.is_zero(), f.is_zero() ? "zero" : "nonzero"};
    }
    return {s, std::nullopt, ""};
  });
}

GuardResult los_consistency_guard(const UltraPolyFamily& fam) {
  GuardResult g;
  const TailReport route_a = los_check("is_irreducible", fam);
  for (unsigned s = 1; s <= fam.trunc().n; ++s) {
    const auto& a = route_a.per_index[s - 1].value;
    std::optional<bool> b;
    if (fam.bivariate) {
      const BivarPoly& f = fam.bi[s - 1];
      if (f.degree() == 1) {
        b = true;
      } else if (f.degree() == 2 || f.degree() == 3) {
        b = rational_roots(primitive_part(f)).empty();
        // A nonunit content makes the polynomial reducible in A[x].
        if (*b && !content(f).is_one()) b = false;
      }
    } else {
      const Poly& f = fam.uni[s - 1];
      if (f.degree() >= 1) {
        const auto fac = factor_ff(f);
        b = fac.factors.size() == 1 && fac.factors[0].multiplicity == 1;
      } else {
        b = false;
      }
    }
    if (!a || !b) continue;
    ++g.compared;
    if (*a != *b) {
      ++g.disagreements;
      g.disagreeing.push_back(s);
    }
  }
  return g;
}

TransferReport irreducibility_transfer_report(const IntBivar& p, const UltraFieldFamily& fam) {
  require_depth1(fam);
  const Truncation& tr = fam.trunc;
  TransferReport rep;
  std::vector<std::optional<bool>> values;
  for (unsigned s = 1; s <= tr.n; ++s) {
    const BivarPoly f = reduce_int_bivar(fam.field(s), p);
    if (f.is_zero() || !biv_primitive_check(f).primitive) {
      raise(ErrorCode::NotPrimitive, format_int_bivar(p) + " is not primitive over F_" +
                                         std::to_string(fam.field(s)->order()) + "[t] (index " + std::to_string(s) + ")");
    }
    const auto cert = certify_irreducible(f);
    TransferEntry e{s, cert.verdict, cert.evidence, std::nullopt};
    if (cert.factorization) {
      e.bound_audit = verify_factor_bound(f, cert.factorization->first, cert.factorization->second);
      rep.bound_audits_pass = rep.bound_audits_pass && e.bound_audit->pass;
    }
    values.push_back(certify_value(cert));
    if (!values.back()) rep.unknown.push_back(s);
    rep.per_index.push_back(std::move(e));
  }
  rep.verdict = tr.judge(values);
  return rep;
}

// ---- shadows ---------------------------------------------------------------

namespace {

// Smallest-code element of exact multiplicative order n.
Elem primitive_root_of_unity(const Field& F, std::uint64_t n) {
  for (Elem a = 1; a < F->order(); ++a) {
    if (F->mult_order(a) == n) return a;
  }
  raise(ErrorCode::InternalError, "no root of unity of order " + std::to_string(n));
}

ShadowFamily build_shadows(std::vector<BivarPoly> polys, const UltraFieldFamily& fam, SpecMode mode,
                           std::optional<long> shared_degree) {
  require_depth1(fam);
  const Truncation& tr = fam.trunc;
  if (polys.size() != tr.n) raise(ErrorCode::InvalidArgument, "need one minimal polynomial per index");
  // IntegerSpec shares the formal degree; TableSpec checks a degree only when one is requested.
  std::optional<long> m = shared_degree;
  if (!m && mode == SpecMode::IntegerSpec) m = polys[tr.tail_start - 1].degree();
  if (m && *m < 1) raise(ErrorCode::DegreeTooSmall, "shadow degree must be >= 1");
  ShadowFamily sh{fam, mode, m.value_or(0), {}, {}};
  for (unsigned s = 1; s <= tr.n; ++s) {
    BivarPoly& f = polys[s - 1];
    require_same_owner(*f.field(), *fam.field(s));
    if (!f.is_monic()) raise(ErrorCode::InvalidArgument, "shadow minimal polynomials must be monic in x");
    ShadowEntry e{s, f, certify_irreducible(f), std::nullopt, false};
    const bool field_ok = e.certificate.verdict == Irreducibility::Irreducible && (!m || f.degree() == *m);
    if (field_ok) {
      e.galois = galois_descriptor(f);
      const QuotientAlgebra alg(f);
      e.round_trip = alg.minimal_polynomial(alg.generator()) == f;
    } else {
      sh.outside.push_back(s);
      if (tr.in_tail(s)) {
        const std::string what = m ? "a degree-" + std::to_string(*m) + " field" : "a field";
        raise(ErrorCode::NoShadow, to_string(f) + " does not present " + what + " over F_" +
                                       std::to_string(fam.field(s)->order()) + "(t) at tail index " +
                                       std::to_string(s));
      }
    }
    sh.entries.push_back(std::move(e));
  }
  return sh;
}

}  // namespace

ShadowFamily shadow_build(const IntBivar& minpoly, const UltraFieldFamily& fam, std::optional<long> shared_degree) {
  require_depth1(fam);
  std::vector<BivarPoly> polys;
  for (const auto& F : fam.fields) polys.push_back(reduce_int_bivar(F, minpoly));
  return build_shadows(std::move(polys), fam, SpecMode::IntegerSpec, shared_degree);
}

ShadowFamily shadow_build(std::vector<BivarPoly> minpolys, const UltraFieldFamily& fam,
                          std::optional<long> shared_degree) {
  return build_shadows(std::move(minpolys), fam, SpecMode::TableSpec, shared_degree);
}

std::optional<GaloisDescriptor> galois_descriptor(const BivarPoly& minpoly) {
  if (!minpoly.is_monic() || minpoly.degree() < 1) return std::nullopt;
  const Field& F = minpoly.field();
  const std::uint64_t q = F->order();
  const long n = minpoly.degree();
  if (n == 1) {
    return GaloisDescriptor{GaloisDescriptor::Kind::Trivial, 1, true, true, "x -> x", 0, std::nullopt, std::nullopt};
  }
  // Binomial x^n + c.
  bool binomial = !minpoly.coeff(0).is_zero();
  for (long i = 1; i < n && binomial; ++i) binomial = minpoly.coeff(static_cast<std::size_t>(i)).is_zero();
  if (binomial && (q - 1) % static_cast<std::uint64_t>(n) == 0) {
    if (certify_irreducible(minpoly).verdict != Irreducibility::Irreducible) return std::nullopt;
    const Elem zeta = primitive_root_of_unity(F, static_cast<std::uint64_t>(n));
    GaloisDescriptor d{GaloisDescriptor::Kind::Kummer, static_cast<std::uint64_t>(n), true, true,
                       "x -> " + F->format(zeta) + "*x", static_cast<unsigned>(n), -minpoly.coeff(0), std::nullopt};
    return d;
  }
  // psi_{P^h}: the constant term is P.
  const Poly p = minpoly.coeff(0);
  if (p.degree() < 1 || !p.is_monic() || !is_irreducible_ff(p)) return std::nullopt;
  const std::uint64_t base = nt::checked_pow(q, static_cast<unsigned>(p.degree()));
  std::uint64_t phi = base - 1;
  for (unsigned h = 1; phi <= static_cast<std::uint64_t>(n); ++h) {
    if (phi == static_cast<std::uint64_t>(n)) {
      if (cyclo_poly(p, h) != minpoly) return std::nullopt;
      const Poly a = pow(p, h);
      bool cyclic = true;
      if (h > 1) {
        try {
          cyclic = unit_group(a).generator.has_value();
        } catch (const Error& e) {
          if (e.code() != ErrorCode::TooLarge) throw;
          return std::nullopt;
        }
      }
      return GaloisDescriptor{GaloisDescriptor::Kind::Cyclotomic, phi, cyclic, true,
                              "lambda -> C_b(lambda), b in (A/" + to_string(a) + ")^x", 0, std::nullopt, a};
    }
    if (phi > std::numeric_limits<std::uint64_t>::max() / base) break;
    phi *= base;
  }
  return std::nullopt;
}

TailReport shadow_galois_audit(const ShadowFamily& sh, const ExpectedGroup& expected) {
  return tabulate(sh.base.trunc, [&](unsigned s) -> IndexEntry {
    const auto& g = sh.entries[s - 1].galois;
    if (!g) return {s, std::nullopt, "descriptor unavailable"};
    const bool ok = g->order == expected.order && g->cyclic == expected.cyclic && g->abelian;
    return {s, ok,
            "order " + std::to_string(g->order) + (g->cyclic ? ", cyclic" : ", not cyclic") + ", " + g->action};
  });
}

// ---- Artin-Schreier --------------------------------------------------------

ArtinSchreierReport artin_schreier_demo(const UltraFieldFamily& fam, const std::vector<std::int64_t>& a,
                                        bool require_distinct) {
  require_depth1(fam);
  const Truncation& tr = fam.trunc;
  ArtinSchreierReport rep;
  std::set<std::uint64_t> seen;
  rep.distinct = true;
  for (unsigned s = 1; s <= tr.n; ++s) {
    const Field& F = fam.field(s);
    const std::uint64_t p = F->characteristic();
    rep.degrees.v.push_back(static_cast<std::int64_t>(p));
    if (tr.in_tail(s) && !seen.insert(p).second) rep.distinct = false;
    const Poly as = Poly::from_ints(F, a);
    IndexEntry e{s, std::nullopt, ""};
    const std::string shape = "x^" + std::to_string(p) + " - x - (" + to_string(as) + ")";
    if (as.degree() >= 1 && as.degree() % static_cast<long>(p) != 0) {
      e.value = true;
      e.detail = shape + " irreducible: pole order " + std::to_string(as.degree()) + " at infinity is prime to " +
                 std::to_string(p);
    } else {
      e.detail = shape + ": no certificate";
    }
    rep.per_index.push_back(std::move(e));
  }
  if (!rep.distinct && require_distinct) {
    raise(ErrorCode::PreconditionFailed, "characteristics repeat on the tail");
  }
  rep.divisors = divisor_set(rep.degrees, tr, tr.n);
  rep.reasoning = {
      "an element algebraic of degree h over the diagonal field has shadows of degree h at almost all indices",
      "the Artin-Schreier shadows have degree p_s, so h divides p_s on the tail",
      "divisors common to the tail: {" +
          join([&] {
            std::vector<std::string> v;
            for (auto d : rep.divisors) v.push_back(std::to_string(d));
            return v;
          }(), ", ") + "}",
  };
  rep.conclusion_drawn = rep.distinct && rep.divisors == std::vector<std::int64_t>{1};
  if (rep.conclusion_drawn) {
    rep.reasoning.push_back("the characteristics are pairwise distinct primes, so h = 1");
    rep.conclusion = "algebraic part trivial";
  } else {
    rep.conclusion = "no conclusion: the divisor set is not {1}";
  }
  return rep;
}

// ---- Zhat tower ------------------------------------------------------------

TowerReport zhat_tower_demo(const std::vector<std::int64_t>& prime, unsigned nmax, const UltraFieldFamily& fam,
                            std::uint64_t cap) {
  require_depth1(fam);
  const Truncation& tr = fam.trunc;
  if (nmax < 1 || nmax > tr.n) raise(ErrorCode::PreconditionFailed, "need 1 <= nmax <= N");
  const LiftedPrime lp = lift_prime(prime, fam);
  TowerReport rep{prime, lp.degree, {}, Verdict::HoldsOnTail};
  const int eps = lp.degree % 2 == 0 ? 1 : -1;
  std::map<unsigned, std::optional<CyclotomicField>> cyclo;  // per index, built lazily
  const Hyperinteger q1 = fam.icard().plus(-1);
  bool all_agree = true;
  for (unsigned n = 1; n <= nmax; ++n) {
    TowerLevel lv;
    lv.n = n;
    lv.epsilon = eps;
    lv.trunc = tr.with_tail(std::max(tr.tail_start, n));
    lv.divides = hyper_divides(static_cast<std::int64_t>(n), q1, lv.trunc);
    lv.shadow_poly.assign(n + 1, {});
    for (auto c : prime) lv.shadow_poly[0].push_back(-eps * c);
    lv.shadow_poly[n] = {1};
    UltraFieldFamily sub = fam;
    sub.trunc = lv.trunc;
    const ShadowFamily sh = shadow_build(lv.shadow_poly, sub, static_cast<long>(n));
    lv.audit_report = shadow_galois_audit(sh, ExpectedGroup{n, true});
    lv.audit = lv.audit_report.verdict;
    lv.agreement = true;
    for (unsigned s = lv.trunc.tail_start; s <= tr.n; ++s) {
      const Poly& ps = lp.family.uni[s - 1];
      CrossCheck cc{s, std::nullopt, false, ""};
      if (lp.report.per_index[s - 1].value != true) {
        cc.note = "P_s is not prime";
        lv.skipped.push_back(s);
        lv.cross_checks.push_back(std::move(cc));
        continue;
      }
      const std::uint64_t phi = unit_group_order(ps);
      if (phi % n != 0) {
        cc.note = std::to_string(n) + " does not divide " + std::to_string(phi);
        lv.skipped.push_back(s);
        lv.cross_checks.push_back(std::move(cc));
        continue;
      }
      if (phi > cap) {
        cc.note = "Phi = " + std::to_string(phi) + " exceeds cap " + std::to_string(cap);
        lv.skipped.push_back(s);
        lv.cross_checks.push_back(std::move(cc));
        continue;
      }
      auto& slot = cyclo[s];
      if (!slot) slot.emplace(build_cyclotomic(ps, cap));
      const KummerWitness w = kummer_witness(*slot, n);
      const bool witness_ok = w.power_in_base && w.ratio_is_unit && w.minpoly_degree == n;
      const bool audit_ok = lv.audit_report.per_index[s - 1].value == true;
      cc.agree = witness_ok == audit_ok;
      cc.note = w.exact_equality ? "eta^n = epsilon P exactly up to an n-th power"
                                 : "eta^n / (epsilon P) is a unit that is not an n-th power; flagged for review";
      if (!witness_ok) cc.note = "witness failed";
      cc.witness = w;
      lv.agreement = lv.agreement && cc.agree;
      lv.cross_checks.push_back(std::move(cc));
    }
    all_agree = all_agree && lv.agreement;
    if (lv.audit != Verdict::HoldsOnTail || lv.divides != Verdict::HoldsOnTail) {
      rep.overall = lv.audit == Verdict::FailsOnTail ? Verdict::FailsOnTail : Verdict::Mixed;
    }
    rep.levels.push_back(std::move(lv));
  }
  if (!all_agree && rep.overall == Verdict::HoldsOnTail) rep.overall = Verdict::Mixed;
  return rep;
}

// ---- ramification ----------------------------------------------------------

RamificationReport ramification_correspondence(const std::vector<std::int64_t>& prime, const ShadowFamily& sh) {
  const Truncation& tr = sh.base.trunc;
  RamificationReport rep;
  for (unsigned s = 1; s <= tr.n; ++s) {
    const Field& F = sh.base.field(s);
    const Poly qs = Poly::from_ints(F, prime);
    const ShadowEntry& e = sh.entries[s - 1];
    RamifyEntry r{s, std::nullopt, ""};
    if (qs.degree() < 1 || !qs.is_monic() || !is_irreducible_ff(qs)) {
      r.detail = to_string(qs) + " is not a monic prime of A";
    } else if (!e.galois) {
      r.detail = "no Galois descriptor";
    } else {
      const PrimeOfA Q = PrimeOfA::certify(qs);
      switch (e.galois->kind) {
        case GaloisDescriptor::Kind::Trivial:
          r.data = SplittingData::make(1, 1, 1, 1);
          r.detail = "trivial extension";
          break;
        case GaloisDescriptor::Kind::Kummer: {
          const auto k = kummer_splitting_report(Q, e.galois->kummer_n, *e.galois->radicand);
          r.data = k.data;
          r.detail = "Kummer, v_Q(radicand) = " + std::to_string(k.valuation);
          break;
        }
        case GaloisDescriptor::Kind::Cyclotomic:
          r.data = split_in_cyclotomic(Q, *e.galois->cyclotomic_modulus);
          r.detail = "cyclotomic modulus " + to_string(*e.galois->cyclotomic_modulus);
          break;
      }
    }
    rep.per_index.push_back(std::move(r));
  }
  // Cover of the computable indices by the triple they carry.
  std::vector<bool> computable(tr.n);
  for (unsigned s = 1; s <= tr.n; ++s) {
    const auto& d = rep.per_index[s - 1].data;
    computable[s - 1] = d.has_value();
    if (d && std::find(rep.distinct_triples.begin(), rep.distinct_triples.end(), *d) == rep.distinct_triples.end()) {
      rep.distinct_triples.push_back(*d);
    }
  }
  std::vector<std::vector<bool>> parts;
  for (const auto& t : rep.distinct_triples) {
    std::vector<bool> p(tr.n);
    for (unsigned s = 1; s <= tr.n; ++s) p[s - 1] = rep.per_index[s - 1].data == t;
    parts.push_back(std::move(p));
  }
  rep.stabilization = UnionMember{Verdict::Mixed, std::nullopt, {}};
  if (tr.is_large(computable)) {
    rep.stabilization = union_member_lemma(computable, parts, tr);
    if (rep.stabilization.verdict == Verdict::HoldsOnTail) {
      rep.stabilized = rep.distinct_triples[*rep.stabilization.part - 1];
    }
  }
  std::vector<std::optional<bool>> unram;
  for (const auto& r : rep.per_index) unram.push_back(r.data ? std::optional<bool>(r.data->e == 1) : std::nullopt);
  rep.unramified = tr.judge(unram);

  if (rep.stabilized) {
    const SplittingData& d = *rep.stabilized;
    if (d.e * d.f * d.g != d.m) raise(ErrorCode::InternalError, "stabilized triple violates e*f*g = m");
    const std::string triple =
        "(e, f, g) = (" + std::to_string(d.e) + ", " + std::to_string(d.f) + ", " + std::to_string(d.g) + ")";
    if (d.e == 1) {
      rep.cases.push_back("unramified");
      if (d.f == 1) rep.cases.push_back("totally split");
      if (d.g == 1 && d.m > 1) rep.cases.push_back("inert");
    } else {
      rep.cases.push_back("ramified");
      if (d.e == d.m) rep.cases.push_back("totally ramified");
    }
    rep.conclusions.push_back("stabilized " + triple +
                              " on the tail, so the diagonal prime has the same splitting data in the diagonal "
                              "extension [direction used: per-index splitting constant on a large set => diagonal]");
    for (const auto& c : rep.cases) {
      rep.conclusions.push_back("case '" + c + "' holds for almost all shadows, hence for the diagonal extension "
                                "[direction used: shadows => diagonal]");
    }
  } else if (rep.unramified == Verdict::HoldsOnTail) {
    rep.cases.push_back("unramified");
    rep.conclusions.push_back("e_s = 1 on the tail, so the prime is unramified in the diagonal extension "
                              "[direction used: shadows => diagonal]");
  } else {
    rep.conclusions.push_back("no stabilized splitting data on the tail; nothing is concluded");
  }
  return rep;
}

// ---- maximal abelian tower -------------------------------------------------

namespace {

MaeIndex mae_index(unsigned s, const Field& F, unsigned bound, std::uint64_t cap) {
  MaeIndex mi{s, F->order(), {}, {}, {}, {}, std::nullopt, {}};
  const std::uint64_t q = F->order();
  for (unsigned m = 1; m <= bound; ++m) mi.constant_degrees.push_back(m);
  const Poly t = Poly::identity(F);
  bool complete = true;
  for (unsigned k = 1; k <= bound; ++k) {
    try {
      mi.carlitz_t_degrees.push_back(unit_group_order(pow(t, k)));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TooLarge) throw;
      mi.skipped.push_back("Q_{t^" + std::to_string(k) + "}: " + e.what());
      complete = false;
      break;
    }
  }
  for (unsigned n = 1; n <= bound; ++n) {
    try {
      mi.rn_degrees.push_back(infinity_twist_rn_degree(q, n, cap));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TooLarge) throw;
      mi.skipped.push_back("R_" + std::to_string(n) + ": " + e.what());
      complete = false;
      break;
    }
  }
  std::uint64_t count = 0;
  bool overflow = false;
  for (unsigned d = 1; d <= bound && !overflow; ++d) {
    try {
      count += nt::checked_pow(q, d);
    } catch (const Error&) {
      overflow = true;
    }
  }
  if (overflow || count > cap) {
    mi.skipped.push_back("Q_a for monic a with 1 <= deg a <= " + std::to_string(bound) + ": more than " +
                         std::to_string(cap) + " moduli");
  } else {
    for (unsigned d = 1; d <= bound; ++d) {
      for (const auto& a : monic_polys(F, d)) mi.all_moduli.emplace_back(to_string(a), unit_group_order(a));
    }
  }
  if (bound == 0) {
    mi.compositum_degree = 1;
  } else if (complete) {
    const nt::u128 deg = static_cast<nt::u128>(bound) * mi.carlitz_t_degrees.back() * mi.rn_degrees.back();
    if (deg <= std::numeric_limits<std::uint64_t>::max()) {
      mi.compositum_degree = static_cast<std::uint64_t>(deg);
    } else {
      mi.skipped.push_back("compositum degree overflows 64 bits");
    }
  }
  return mi;
}

}  // namespace

MaeReport mae_tower_report(const UltraFieldFamily& fam, unsigned bound, std::uint64_t cap) {
  MaeReport rep{bound, fam.depth(), {}, {}, false};
  if (fam.depth() == 2) {
    for (const auto& inner : fam.inner) {
      rep.nested.push_back(mae_tower_report(inner, bound, cap));
      rep.partial = rep.partial || rep.nested.back().partial;
    }
    return rep;
  }
  for (unsigned s = 1; s <= fam.trunc.n; ++s) {
    rep.per_index.push_back(mae_index(s, fam.field(s), bound, cap));
    rep.partial = rep.partial || !rep.per_index.back().skipped.empty();
  }
  return rep;
}

}  // namespace fflab::ultra
