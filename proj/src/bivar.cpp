#include "fflab/bivar.hpp"

#include <algorithm>
#include <cctype>

#include "fflab/text.hpp"

namespace fflab {

BivarPoly::BivarPoly(Field field, std::vector<Poly> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  for (auto& c : c_) {
    if (!c.field()) c = Poly(field_);
    require_same_owner(*field_, *c.field());
  }
  normalize();
}

void BivarPoly::normalize() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

BivarPoly BivarPoly::monomial(const Poly& c, std::size_t k) {
  std::vector<Poly> v(k + 1, Poly(c.field()));
  v[k] = c;
  return BivarPoly(c.field(), std::move(v));
}

BivarPoly BivarPoly::from_ints(Field field, const std::vector<std::vector<std::int64_t>>& coeffs) {
  std::vector<Poly> v;
  for (const auto& row : coeffs) v.push_back(Poly::from_ints(field, row));
  return BivarPoly(std::move(field), std::move(v));
}

long BivarPoly::max_t_degree() const {
  long m = Poly::kNegInfinity;
  for (const auto& c : c_) m = std::max(m, c.degree());
  return m;
}

BivarPoly& BivarPoly::operator+=(const BivarPoly& o) {
  if (!field_) field_ = o.field_;
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Poly(field_));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  normalize();
  return *this;
}

BivarPoly& BivarPoly::operator-=(const BivarPoly& o) {
  if (!field_) field_ = o.field_;
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Poly(field_));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  normalize();
  return *this;
}

BivarPoly BivarPoly::operator-() const {
  BivarPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

BivarPoly BivarPoly::scaled(const Poly& s) const {
  if (s.is_zero()) return BivarPoly(field_);
  BivarPoly r = *this;
  for (auto& c : r.c_) c = c * s;
  r.normalize();
  return r;
}

BivarPoly BivarPoly::shifted(std::size_t k) const {
  if (c_.empty()) return *this;
  BivarPoly r = *this;
  r.c_.insert(r.c_.begin(), k, Poly(field_));
  return r;
}

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
  const Field& F = a.field_ ? a.field_ : b.field_;
  if (a.is_zero() || b.is_zero()) return BivarPoly(F);
  std::vector<Poly> out(a.c_.size() + b.c_.size() - 1, Poly(F));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (!b.c_[j].is_zero()) out[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return BivarPoly(F, std::move(out));
}

BivarPoly derivative_x(const BivarPoly& f) {
  if (f.degree() <= 0) return BivarPoly(f.field());
  std::vector<Poly> out;
  for (std::size_t i = 1; i < f.coeffs().size(); ++i) {
    out.push_back(f.coeffs()[i].scaled(f.field()->from_int(static_cast<std::int64_t>(i % f.field()->characteristic()))));
  }
  return BivarPoly(f.field(), std::move(out));
}

std::pair<BivarPoly, BivarPoly> divmod_monic(const BivarPoly& f, const BivarPoly& g) {
  if (g.is_zero()) raise(ErrorCode::DivisionByZero, "division by zero in A[x]");
  if (!g.is_monic()) raise(ErrorCode::InvalidArgument, "divisor must be monic in x");
  const Field& F = g.field();
  std::vector<Poly> r = f.coeffs();
  const std::size_t dg = g.coeffs().size() - 1;
  if (r.size() <= dg) return {BivarPoly(F), f};
  std::vector<Poly> q(r.size() - dg, Poly(F));
  for (std::size_t i = r.size(); i-- > dg;) {
    if (r[i].is_zero()) continue;
    Poly c = r[i];
    q[i - dg] = c;
    for (std::size_t j = 0; j <= dg; ++j) {
      if (!g.coeffs()[j].is_zero()) r[i - dg + j] -= c * g.coeffs()[j];
    }
  }
  r.resize(dg, Poly(F));
  return {BivarPoly(F, std::move(q)), BivarPoly(F, std::move(r))};
}

std::optional<BivarPoly> try_div_exact(const BivarPoly& f, const BivarPoly& g) {
  if (g.is_zero()) raise(ErrorCode::DivisionByZero, "division by zero in A[x]");
  const Field& F = g.field();
  BivarPoly r = f;
  BivarPoly q(F);
  while (!r.is_zero() && r.degree() >= g.degree()) {
    auto [c, rem] = poly_divmod(r.lead(), g.lead());
    if (!rem.is_zero()) return std::nullopt;
    auto shift = static_cast<std::size_t>(r.degree() - g.degree());
    BivarPoly term = BivarPoly::monomial(c, shift);
    q += term;
    r -= term * g;
  }
  if (!r.is_zero()) return std::nullopt;
  return q;
}

BivarPoly pseudo_remainder(const BivarPoly& f, const BivarPoly& g) {
  if (g.is_zero()) raise(ErrorCode::DivisionByZero, "pseudo-division by zero");
  BivarPoly r = f;
  const Poly& lg = g.lead();
  while (!r.is_zero() && r.degree() >= g.degree()) {
    auto shift = static_cast<std::size_t>(r.degree() - g.degree());
    Poly lr = r.lead();
    r = r.scaled(lg) - g.scaled(lr).shifted(shift);
  }
  return r;
}

Poly content(const BivarPoly& f) {
  if (f.is_zero()) raise(ErrorCode::ZeroInput, "content of zero");
  Poly g(f.field());
  for (const auto& c : f.coeffs()) {
    if (!c.is_zero()) g = g.is_zero() ? monic(c) : gcd(g, c);
  }
  return g;
}

BivarPoly primitive_part(const BivarPoly& f) {
  Poly c = content(f);
  std::vector<Poly> out;
  for (const auto& a : f.coeffs()) out.push_back(div_exact(a, c));
  return BivarPoly(f.field(), std::move(out));
}

namespace {

BivarPoly normalized_primitive(const BivarPoly& f) {
  BivarPoly p = primitive_part(f);
  Elem lc = p.lead().lead();
  if (lc != 1) p = p.scaled(Poly::constant(p.field(), p.field()->inv(lc)));
  return p;
}

}  // namespace

BivarPoly gcd_over_fraction_field(const BivarPoly& f, const BivarPoly& g) {
  if (f.is_zero() && g.is_zero()) raise(ErrorCode::UndefinedGcd, "gcd(0, 0) is undefined");
  if (f.is_zero()) return normalized_primitive(g);
  if (g.is_zero()) return normalized_primitive(f);
  BivarPoly a = primitive_part(f), b = primitive_part(g);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    BivarPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    b = r.is_zero() ? r : primitive_part(r);
  }
  return normalized_primitive(a);
}

bool is_separable(const BivarPoly& f) {
  BivarPoly d = derivative_x(f);
  if (d.is_zero()) return f.degree() == 0;
  return gcd_over_fraction_field(f, d).degree() == 0;
}

RatFunc eval(const BivarPoly& f, const RatFunc& r) {
  RatFunc acc(Poly(f.field()));
  for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = acc * r + RatFunc(f.coeffs()[i]);
  return acc;
}

PrimitivityResult biv_primitive_check(const BivarPoly& p) {
  Poly c = content(p);
  return {c.is_one(), c};
}

bool eisenstein_check(const BivarPoly& p, const Poly& pi) {
  if (pi.degree() < 1 || !is_irreducible_ff(pi)) raise(ErrorCode::NotPrime, to_string(pi) + " is not prime in A");
  if (p.degree() < 1) raise(ErrorCode::DegreeTooSmall, "Eisenstein test needs x-degree >= 1");
  if ((p.lead() % pi).is_zero()) return false;
  for (std::size_t i = 0; i + 1 < p.coeffs().size(); ++i) {
    if (!(p.coeffs()[i] % pi).is_zero()) return false;
  }
  const Poly& a0 = p.coeffs()[0];
  if (a0.is_zero()) return false;
  return !(a0 % (pi * pi)).is_zero();
}

unsigned long newton_factor_bound(unsigned long m, unsigned long n) {
  if (n < 2) raise(ErrorCode::DegreeTooSmall, "factor bound needs x-degree n >= 2");
  return m * (2 * n - 1) / n;
}

FactorBoundReport verify_factor_bound(const BivarPoly& p, const BivarPoly& f, const BivarPoly& g) {
  if (!(f * g == p)) raise(ErrorCode::NotAFactorization, "F*G differs from P");
  if (!biv_primitive_check(p).primitive) raise(ErrorCode::NotPrimitive, "P is not primitive in A[x]");
  FactorBoundReport rep;
  rep.max_degree = p.max_t_degree();
  rep.x_degree = p.degree();
  rep.bound = newton_factor_bound(static_cast<unsigned long>(std::max(0L, rep.max_degree)),
                                  static_cast<unsigned long>(rep.x_degree));
  rep.pass = true;
  for (auto [name, poly] : {std::pair<char, const BivarPoly*>{'F', &f}, std::pair<char, const BivarPoly*>{'G', &g}}) {
    for (std::size_t i = 0; i < poly->coeffs().size(); ++i) {
      const Poly& c = poly->coeffs()[i];
      if (c.is_zero()) continue;
      bool ok = c.degree() <= static_cast<long>(rep.bound);
      rep.entries.push_back({name, i, c.degree(), ok});
      rep.pass = rep.pass && ok;
    }
  }
  return rep;
}

namespace {

std::vector<Poly> monic_divisors(const Poly& a) {
  std::vector<Poly> divs{Poly::constant(a.field(), 1)};
  for (const auto& fac : factor_ff(a).factors) {
    std::vector<Poly> next;
    for (const auto& d : divs) {
      Poly pw = d;
      for (unsigned e = 0; e <= fac.multiplicity; ++e) {
        next.push_back(pw);
        pw = pw * fac.poly;
      }
    }
    divs = std::move(next);
  }
  std::sort(divs.begin(), divs.end(), canonical_less);
  return divs;
}

}  // namespace

std::vector<RatFunc> rational_roots(const BivarPoly& f0) {
  if (f0.is_zero()) raise(ErrorCode::ZeroInput, "every element is a root of zero");
  const Field& F = f0.field();
  std::vector<RatFunc> out;
  BivarPoly f = f0;
  if (f.degree() < 1) return out;
  if (f.coeffs()[0].is_zero()) {
    out.emplace_back(Poly(F));
    std::size_t k = 0;
    while (f.coeffs()[k].is_zero()) ++k;
    f = BivarPoly(F, std::vector<Poly>(f.coeffs().begin() + static_cast<long>(k), f.coeffs().end()));
    if (f.degree() < 1) return out;
  }
  const std::size_t n = static_cast<std::size_t>(f.degree());
  // Root c*u/v with u | a_0, v | a_n monic and coprime, c in F_q^x. The
  // condition sum a_i u^i v^(n-i) c^i = 0 is polynomial in c.
  for (const auto& u : monic_divisors(f.coeffs()[0])) {
    for (const auto& v : monic_divisors(f.lead())) {
      if (!gcd(u, v).is_one()) continue;
      std::vector<Poly> b(n + 1);
      long maxdeg = 0;
      for (std::size_t i = 0; i <= n; ++i) {
        b[i] = f.coeffs()[i] * pow(u, static_cast<unsigned>(i)) * pow(v, static_cast<unsigned>(n - i));
        maxdeg = std::max(maxdeg, b[i].degree());
      }
      Poly g(F);
      for (long j = 0; j <= maxdeg; ++j) {
        std::vector<Elem> cj(n + 1);
        for (std::size_t i = 0; i <= n; ++i) cj[i] = b[i].coeff(static_cast<std::size_t>(j));
        Poly ej(F, std::move(cj));
        if (ej.is_zero()) continue;
        g = g.is_zero() ? monic(ej) : gcd(g, ej);
        if (g.is_one()) break;
      }
      if (g.is_zero() || g.degree() < 1) continue;
      for (Elem c : roots(g)) {
        if (c == 0) continue;
        out.emplace_back(u.scaled(c), v);
      }
    }
  }
  return out;
}

IrreducibilityCertificate certify_irreducible(const BivarPoly& p0) {
  if (p0.degree() < 1) raise(ErrorCode::DegreeTooSmall, "irreducibility needs x-degree >= 1");
  IrreducibilityCertificate cert;
  BivarPoly p = primitive_part(p0);
  if (p.degree() == 1) {
    cert.verdict = Irreducibility::Irreducible;
    cert.evidence.push_back("linear");
    return cert;
  }
  const Poly& a0 = p.coeffs()[0];
  if (!a0.is_zero() && a0.degree() >= 1) {
    for (const auto& fac : factor_ff(a0).factors) {
      if (eisenstein_check(p, fac.poly)) {
        cert.verdict = Irreducibility::Irreducible;
        cert.evidence.push_back("eisenstein(" + to_string(fac.poly) + ")");
        break;
      }
    }
  }
  auto rts = rational_roots(p);
  if (!rts.empty()) {
    const RatFunc& r = rts.front();
    // Linear factor den*x - num is primitive, so it divides p in A[x].
    BivarPoly lin(p.field(), {-r.num(), r.den()});
    auto cof = try_div_exact(p, lin);
    if (!cof) raise(ErrorCode::InternalError, "rational root does not give an A[x] factor");
    cert.verdict = Irreducibility::Reducible;
    cert.evidence.push_back("rational-root(" + r.to_string() + ")");
    cert.factorization = std::make_pair(lin, *cof);
    return cert;
  }
  if (p.degree() <= 3) {
    cert.verdict = Irreducibility::Irreducible;
    cert.evidence.push_back("no-rational-root");
  }
  return cert;
}

ResidueField ResidueField::make(const Poly& prime, unsigned extra_degree) {
  if (prime.degree() < 1 || !is_irreducible_ff(prime)) raise(ErrorCode::NotPrime, to_string(prime) + " is not prime in A");
  ResidueField rf;
  rf.prime = monic(prime);
  rf.field = construct_extension(prime.field(), static_cast<unsigned>(prime.degree()) * extra_degree);
  auto rts = roots(embed(rf.prime, rf.field));
  if (rts.empty()) raise(ErrorCode::InternalError, "prime has no root in its residue field");
  rf.t_image = rts.front();
  return rf;
}

Elem ResidueField::reduce(const Poly& a) const {
  Elem acc = 0;
  for (std::size_t i = a.coeffs().size(); i-- > 0;) {
    acc = field->add(field->mul(acc, t_image), field->embed_from_base(a.coeffs()[i]));
  }
  return acc;
}

Poly ResidueField::reduce(const BivarPoly& f) const {
  std::vector<Elem> out;
  for (const auto& c : f.coeffs()) out.push_back(reduce(c));
  return Poly(field, std::move(out));
}

BivarPoly embed(const BivarPoly& f, const Field& target) {
  std::vector<Poly> out;
  for (const auto& c : f.coeffs()) out.push_back(embed(c, target));
  return BivarPoly(target, std::move(out));
}

std::string to_string(const BivarPoly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (std::size_t k = f.coeffs().size(); k-- > 0;) {
    const Poly& c = f.coeffs()[k];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (k == 0) {
      out += "(" + to_string(c) + ")";
    } else {
      if (!c.is_one()) out += "(" + to_string(c) + ")*";
      out += text::monomial('x', k);
    }
  }
  return out;
}

namespace {

[[noreturn]] void bivar_fail(std::string_view input, const std::string& why) {
  raise(ErrorCode::ParseError, "cannot parse '" + std::string(input) + "': " + why);
}

unsigned read_exponent(const std::string& s, std::size_t& i, std::string_view input) {
  if (i < s.size() && s[i] == '^') {
    ++i;
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) bivar_fail(input, "missing exponent");
    unsigned e = static_cast<unsigned>(std::stoul(s.substr(i, j - i)));
    i = j;
    return e;
  }
  return 1;
}


// Shared term grammar: products of integers, t^a, x^b and parenthesized
// t-polynomials joined by '*', terms separated by '+' or '-'. The coefficient
// ring R supplies one(), integer(n), paren(text), shift(c, k), mul, neg and
// add; the result is indexed by the power of x.
template <class R>
std::vector<typename R::Coef> parse_terms(std::string_view input, const R& ring) {
  using Coef = typename R::Coef;
  std::string s;
  for (char c : input) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) bivar_fail(input, "empty polynomial");
  std::vector<Coef> acc;
  std::size_t i = 0;
  bool first = true;
  while (i < s.size()) {
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') {
      negative = s[i] == '-';
      ++i;
    } else if (!first) {
      bivar_fail(input, "expected '+' or '-' between terms");
    }
    first = false;
    Coef coef = ring.one();
    unsigned xpow = 0;
    bool need_factor = true;
    while (need_factor) {
      if (i >= s.size()) bivar_fail(input, "dangling operator");
      char c = s[i];
      if (c == '(') {
        int depth = 0;
        std::size_t j = i;
        for (; j < s.size(); ++j) {
          if (s[j] == '(') ++depth;
          if (s[j] == ')' && --depth == 0) break;
        }
        if (j >= s.size()) bivar_fail(input, "unbalanced parenthesis");
        coef = ring.mul(coef, ring.paren(s.substr(i + 1, j - i - 1)));
        i = j + 1;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j - i > 15) bivar_fail(input, "integer literal too long");
        coef = ring.mul(coef, ring.integer(std::stoll(s.substr(i, j - i))));
        i = j;
      } else if (c == 't') {
        ++i;
        coef = ring.shift(coef, read_exponent(s, i, input));
      } else if (c == 'x') {
        ++i;
        xpow += read_exponent(s, i, input);
      } else {
        bivar_fail(input, std::string("unexpected character '") + c + "'");
      }
      if (i < s.size() && s[i] == '*') {
        ++i;
      } else {
        need_factor = false;
      }
    }
    if (i < s.size() && s[i] != '+' && s[i] != '-') bivar_fail(input, "factors must be joined with '*'");
    if (negative) coef = ring.neg(coef);
    if (acc.size() <= xpow) acc.resize(xpow + 1, ring.zero());
    acc[xpow] = ring.add(acc[xpow], coef);
  }
  return acc;
}

struct FieldRing {
  using Coef = Poly;
  Field field;
  Poly zero() const { return Poly(field); }
  Poly one() const { return Poly::constant(field, 1); }
  Poly integer(std::int64_t n) const { return Poly::constant(field, field->from_int(n)); }
  Poly paren(const std::string& t) const { return parse_poly(field, t, 't'); }
  Poly shift(const Poly& c, unsigned k) const { return c.shifted(k); }
  Poly mul(const Poly& a, const Poly& b) const { return a * b; }
  Poly neg(const Poly& a) const { return -a; }
  Poly add(const Poly& a, const Poly& b) const { return a + b; }
};

struct IntRing {
  using Coef = std::vector<std::int64_t>;
  static void trim(Coef& c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  Coef zero() const { return {}; }
  Coef one() const { return {1}; }
  Coef integer(std::int64_t n) const {
    Coef c{n};
    trim(c);
    return c;
  }
  Coef paren(const std::string& t) const { return text::parse_int_poly(t, 't'); }
  Coef shift(Coef c, unsigned k) const {
    if (!c.empty()) c.insert(c.begin(), k, 0);
    return c;
  }
  Coef mul(const Coef& a, const Coef& b) const {
    if (a.empty() || b.empty()) return {};
    Coef out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    trim(out);
    return out;
  }
  Coef neg(Coef a) const {
    for (auto& x : a) x = -x;
    return a;
  }
  Coef add(Coef a, const Coef& b) const {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    trim(a);
    return a;
  }
};

}  // namespace

BivarPoly parse_bivar(const Field& field, std::string_view input) {
  return BivarPoly(field, parse_terms(input, FieldRing{field}));
}

IntBivar parse_int_bivar(std::string_view input) {
  auto rows = parse_terms(input, IntRing{});
  while (!rows.empty() && rows.back().empty()) rows.pop_back();
  return rows;
}

BivarPoly reduce_int_bivar(const Field& field, const IntBivar& rows) { return BivarPoly::from_ints(field, rows); }

std::string format_int_bivar(const IntBivar& rows) {
  std::string out;
  for (std::size_t k = rows.size(); k-- > 0;) {
    if (rows[k].empty()) continue;
    if (!out.empty()) out += " + ";
    std::string c = text::format_int_poly(rows[k], 't');
    if (k == 0) {
      out += "(" + c + ")";
    } else {
      if (c != "1") out += "(" + c + ")*";
      out += text::monomial('x', k);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace fflab
