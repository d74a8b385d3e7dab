#include "fflab/poly.hpp"

#include <algorithm>

#include "fflab/numtheory.hpp"
#include "fflab/text.hpp"

namespace fflab {

Poly::Poly(Field field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  normalize();
}

void Poly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::monomial(Field field, Elem c, std::size_t k) {
  std::vector<Elem> v(k + 1, 0);
  v[k] = c;
  return Poly(std::move(field), std::move(v));
}

Poly Poly::from_ints(Field field, const std::vector<std::int64_t>& coeffs) {
  std::vector<Elem> v;
  v.reserve(coeffs.size());
  for (auto c : coeffs) v.push_back(field->from_int(c));
  return Poly(std::move(field), std::move(v));
}

Poly& Poly::operator+=(const Poly& o) {
  if (!field_) field_ = o.field_;
  if (o.field_) require_same_owner(*field_, *o.field_);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_->add(c_[i], o.c_[i]);
  normalize();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (!field_) field_ = o.field_;
  if (o.field_) require_same_owner(*field_, *o.field_);
  if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), 0);
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = field_->sub(c_[i], o.c_[i]);
  normalize();
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.c_) c = field_->neg(c);
  return r;
}

Poly Poly::scaled(Elem c) const {
  if (c == 0) return Poly(field_);
  Poly r = *this;
  for (auto& v : r.c_) v = field_->mul(v, c);
  r.normalize();
  return r;
}

Poly Poly::shifted(std::size_t k) const {
  if (c_.empty()) return *this;
  Poly r = *this;
  r.c_.insert(r.c_.begin(), k, 0);
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(a.field_ ? a.field_ : b.field_);
  require_same_owner(*a.field_, *b.field_);
  const FieldSpec& f = *a.field_;
  std::vector<Elem> out(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    Elem ai = a.c_[i];
    if (!ai) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j]) out[i + j] = f.add(out[i + j], f.mul(ai, b.c_[j]));
    }
  }
  return Poly(a.field_, std::move(out));
}

std::pair<Poly, Poly> poly_divmod(const Poly& f, const Poly& g) {
  if (g.is_zero()) raise(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (f.field()) require_same_owner(*f.field(), *g.field());
  const Field& F = g.field();
  if (f.degree() < g.degree()) return {Poly(F), f.field() ? f : Poly(F)};
  std::vector<Elem> r = f.coeffs();
  const auto& gc = g.coeffs();
  const std::size_t dg = gc.size() - 1;
  std::vector<Elem> q(r.size() - dg, 0);
  Elem lead_inv = F->inv(g.lead());
  for (std::size_t i = r.size(); i-- > dg;) {
    Elem c = r[i];
    if (!c) continue;
    c = F->mul(c, lead_inv);
    q[i - dg] = c;
    for (std::size_t j = 0; j <= dg; ++j) {
      if (gc[j]) r[i - dg + j] = F->sub(r[i - dg + j], F->mul(c, gc[j]));
    }
  }
  r.resize(dg);
  return {Poly(F, std::move(q)), Poly(F, std::move(r))};
}

Poly operator%(const Poly& f, const Poly& g) { return poly_divmod(f, g).second; }

Poly div_exact(const Poly& f, const Poly& g) {
  auto [q, r] = poly_divmod(f, g);
  if (!r.is_zero()) raise(ErrorCode::InternalError, "inexact polynomial division");
  return q;
}

Poly monic(const Poly& f) {
  if (f.is_zero() || f.is_monic()) return f;
  return f.scaled(f.field()->inv(f.lead()));
}

XgcdResult xgcd(const Poly& f, const Poly& g) {
  if (f.is_zero() && g.is_zero()) raise(ErrorCode::UndefinedGcd, "gcd(0, 0) is undefined");
  const Field& F = f.field() ? f.field() : g.field();
  Poly r0 = f, r1 = g;
  Poly s0 = Poly::constant(F, 1), s1(F);
  Poly t0(F), t1 = Poly::constant(F, 1);
  while (!r1.is_zero()) {
    auto [q, r] = poly_divmod(r0, r1);
    Poly s = s0 - q * s1;
    Poly t = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  Elem c = F->inv(r0.lead());
  return {r0.scaled(c), s0.scaled(c), t0.scaled(c)};
}

Poly gcd(const Poly& f, const Poly& g) {
  if (f.is_zero() && g.is_zero()) raise(ErrorCode::UndefinedGcd, "gcd(0, 0) is undefined");
  Poly a = f, b = g;
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

Poly derivative(const Poly& f) {
  if (f.degree() <= 0) return Poly(f.field());
  std::vector<Elem> out(f.coeffs().size() - 1);
  for (std::size_t i = 1; i < f.coeffs().size(); ++i) {
    out[i - 1] = f.field()->mul(f.coeffs()[i], f.field()->from_int(static_cast<std::int64_t>(i % f.field()->characteristic())));
  }
  return Poly(f.field(), std::move(out));
}

Poly pow(const Poly& f, unsigned e) {
  Poly result = Poly::constant(f.field(), 1), b = f;
  while (e) {
    if (e & 1) result = result * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return result;
}

Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return (a * b) % m; }

Poly powmod(const Poly& base, std::uint64_t e, const Poly& m) {
  Poly result = Poly::constant(m.field(), 1) % m;
  Poly b = base % m;
  while (e) {
    if (e & 1) result = mulmod(result, b, m);
    e >>= 1;
    if (e) b = mulmod(b, b, m);
  }
  return result;
}

Elem eval(const Poly& f, Elem x) {
  Elem acc = 0;
  const auto& F = *f.field();
  for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = F.add(F.mul(acc, x), f.coeffs()[i]);
  return acc;
}

Poly compose(const Poly& f, const Poly& g) {
  Poly acc(g.field());
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    acc = acc * g + Poly::constant(g.field(), f.coeffs()[i]);
  }
  return acc;
}

Poly embed(const Poly& f, const Field& target) {
  if (target->same_as(*f.field())) return Poly(target, f.coeffs());
  if (!target->base() || !target->base()->same_as(*f.field())) {
    raise(ErrorCode::OwnerMismatch, "no recorded embedding from " + f.field()->describe() + " into " + target->describe());
  }
  return map_coeffs(f, target, [&](Elem c) { return target->embed_from_base(c); });
}

namespace {

// x^(q^n) mod f by n successive q-th powers.
Poly frobenius_power(const Poly& x_mod_f, std::uint64_t q, unsigned n, const Poly& f) {
  Poly h = x_mod_f;
  for (unsigned i = 0; i < n; ++i) h = powmod(h, q, f);
  return h;
}

Poly pth_root(const Poly& f) {
  const auto& F = *f.field();
  const std::uint64_t p = F.characteristic();
  const std::uint64_t root_exp = nt::checked_pow(p, F.degree() - 1);
  std::vector<Elem> out;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) out.push_back(F.pow(f.coeffs()[i], root_exp));
  return Poly(f.field(), std::move(out));
}

void squarefree(const Poly& f, unsigned mult, std::vector<Factor>& out) {
  Poly c = gcd(f, derivative(f));
  Poly w = div_exact(f, c);
  unsigned i = 1;
  while (!w.is_one()) {
    Poly y = gcd(w, c);
    Poly z = div_exact(w, y);
    if (z.degree() > 0) out.push_back({z, i * mult});
    ++i;
    w = std::move(y);
    c = div_exact(c, w);
  }
  if (!c.is_one()) {
    squarefree(pth_root(c), mult * static_cast<unsigned>(f.field()->characteristic()), out);
  }
}

std::vector<std::pair<Poly, unsigned>> distinct_degree(const Poly& f) {
  std::vector<std::pair<Poly, unsigned>> out;
  const std::uint64_t q = f.field()->order();
  Poly rest = f;
  Poly x = Poly::identity(f.field());
  Poly h = x % rest;
  for (unsigned i = 1; rest.degree() >= 2 * static_cast<long>(i); ++i) {
    h = powmod(h, q, rest);
    Poly g = gcd(h - x, rest);
    if (!g.is_one()) {
      out.emplace_back(g, i);
      rest = div_exact(rest, g);
      h = h % rest;
    }
  }
  if (rest.degree() > 0) out.emplace_back(rest, static_cast<unsigned>(rest.degree()));
  return out;
}

Poly random_poly(const Field& F, long below_degree, Rng& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, F->order() - 1);
  std::vector<Elem> c(static_cast<std::size_t>(below_degree));
  for (auto& v : c) v = dist(rng);
  return Poly(F, std::move(c));
}

void equal_degree(const Poly& f, unsigned d, Rng& rng, std::vector<Poly>& out) {
  const long n = f.degree();
  if (n == static_cast<long>(d)) {
    out.push_back(f);
    return;
  }
  const auto& F = f.field();
  const std::uint64_t q = F->order();
  const std::uint64_t p = F->characteristic();
  for (;;) {
    Poly a = random_poly(F, n, rng);
    if (a.degree() < 1) continue;
    Poly b;
    if (p == 2) {
      // Absolute trace from F_{q^d} down to F_2.
      const unsigned steps = F->degree() * d;
      Poly term = a % f;
      b = term;
      for (unsigned i = 1; i < steps; ++i) {
        term = mulmod(term, term, f);
        b += term;
      }
    } else {
      // a^((q^d - 1)/2) as (a^(1 + q + ... + q^(d-1)))^((q - 1)/2).
      Poly t = a % f;
      Poly s = t;
      for (unsigned i = 1; i < d; ++i) {
        t = powmod(t, q, f);
        s = mulmod(s, t, f);
      }
      b = powmod(s, (q - 1) / 2, f) - Poly::constant(F, 1);
    }
    if (b.is_zero()) continue;
    Poly g = gcd(b, f);
    if (g.degree() > 0 && g.degree() < n) {
      equal_degree(g, d, rng, out);
      equal_degree(div_exact(f, g), d, rng, out);
      return;
    }
  }
}

}  // namespace

bool is_irreducible_ff(const Poly& f) {
  if (f.degree() < 1) raise(ErrorCode::DegreeTooSmall, "irreducibility test needs degree >= 1");
  const Poly m = monic(f);
  const unsigned n = static_cast<unsigned>(m.degree());
  if (n == 1) return true;
  const std::uint64_t q = m.field()->order();
  const Poly x = Poly::identity(m.field()) % m;
  if (frobenius_power(x, q, n, m) != x) return false;
  for (auto r : nt::prime_divisors(n)) {
    Poly h = frobenius_power(x, q, n / static_cast<unsigned>(r), m);
    if (!gcd(h - x, m).is_one()) return false;
  }
  return true;
}

bool canonical_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = a.coeffs().size(); i-- > 0;) {
    if (a.coeffs()[i] != b.coeffs()[i]) return a.coeffs()[i] < b.coeffs()[i];
  }
  return false;
}

Factorization factor_ff(const Poly& f, Rng& rng) {
  if (f.is_zero()) raise(ErrorCode::ZeroInput, "cannot factor the zero polynomial");
  Factorization result;
  result.unit = f.lead();
  if (f.degree() == 0) return result;
  std::vector<Factor> sqf;
  squarefree(monic(f), 1, sqf);
  for (const auto& [part, mult] : sqf) {
    for (const auto& [block, d] : distinct_degree(part)) {
      std::vector<Poly> irr;
      equal_degree(block, d, rng, irr);
      for (auto& g : irr) result.factors.push_back({std::move(g), mult});
    }
  }
  std::sort(result.factors.begin(), result.factors.end(),
            [](const Factor& a, const Factor& b) { return canonical_less(a.poly, b.poly); });
  return result;
}

Factorization factor_ff(const Poly& f) {
  Rng rng(kDefaultSeed);
  return factor_ff(f, rng);
}

std::vector<Elem> roots(const Poly& f, Rng& rng) {
  if (f.is_zero()) raise(ErrorCode::ZeroInput, "every element is a root of the zero polynomial");
  std::vector<Elem> out;
  if (f.degree() < 1) return out;
  Poly m = monic(f);
  Poly x = Poly::identity(m.field());
  Poly g = gcd(powmod(x, m.field()->order(), m) - x, m);
  if (g.degree() < 1) return out;
  std::vector<Poly> lin;
  equal_degree(g, 1, rng, lin);
  for (const auto& l : lin) out.push_back(m.field()->neg(l.coeff(0)));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Elem> roots(const Poly& f) {
  Rng rng(kDefaultSeed);
  return roots(f, rng);
}

std::vector<Poly> monic_polys(const Field& field, unsigned degree) {
  const std::uint64_t q = field->order();
  const std::uint64_t count = nt::checked_pow(q, degree);
  if (count > (std::uint64_t{1} << 22)) raise(ErrorCode::TooLarge, "too many monic polynomials to enumerate");
  std::vector<Poly> out;
  out.reserve(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<Elem> c(degree + 1, 0);
    std::uint64_t rest = idx;
    for (unsigned i = 0; i < degree; ++i) {
      c[i] = rest % q;
      rest /= q;
    }
    c[degree] = 1;
    out.emplace_back(field, std::move(c));
  }
  return out;
}

std::vector<Poly> monic_irreducibles(const Field& field, unsigned degree) {
  std::vector<Poly> out;
  for (auto& f : monic_polys(field, degree)) {
    if (is_irreducible_ff(f)) out.push_back(std::move(f));
  }
  return out;
}

unsigned valuation(const Poly& f, const Poly& pi) {
  if (f.is_zero()) raise(ErrorCode::ZeroInput, "valuation of zero is infinite");
  unsigned v = 0;
  Poly g = f;
  for (;;) {
    auto [q, r] = poly_divmod(g, pi);
    if (!r.is_zero()) return v;
    g = std::move(q);
    ++v;
  }
}

std::string to_string(const Poly& f, char var) {
  if (f.is_zero()) return "0";
  const auto& F = *f.field();
  std::string out;
  for (std::size_t k = f.coeffs().size(); k-- > 0;) {
    Elem c = f.coeffs()[k];
    if (!c) continue;
    if (!out.empty()) out += "+";
    std::string cs = F.in_prime_field(c) ? F.format(c) : "(" + F.format(c) + ")";
    if (k == 0) {
      out += cs;
    } else {
      if (c != 1) out += cs + "*";
      out += text::monomial(var, k);
    }
  }
  return out;
}

Poly parse_poly(const Field& field, std::string_view input, char var) {
  Poly acc(field);
  for (const auto& term : text::split_terms(input, var)) {
    Elem c = 1;
    if (!term.coefficient.empty()) {
      c = term.parenthesized ? field->parse(term.coefficient)
                             : field->from_int(std::stoll(term.coefficient));
    }
    if (term.negative) c = field->neg(c);
    acc += Poly::monomial(field, c, term.exponent);
  }
  return acc;
}

}  // namespace fflab
