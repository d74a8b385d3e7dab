#include "fflab/carlitz.hpp"

#include <algorithm>
#include <numeric>

#include "fflab/numtheory.hpp"

namespace fflab {

TwistedPoly::TwistedPoly(Field field, std::vector<Poly> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
  for (auto& c : c_) {
    if (!c.field()) c = Poly(field_);
  }
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

TwistedPoly operator+(const TwistedPoly& a, const TwistedPoly& b) {
  const Field& F = a.field_ ? a.field_ : b.field_;
  std::vector<Poly> out(std::max(a.c_.size(), b.c_.size()), Poly(F));
  for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
  return TwistedPoly(F, std::move(out));
}

TwistedPoly operator*(const TwistedPoly& a, const TwistedPoly& b) {
  const Field& F = a.field_ ? a.field_ : b.field_;
  if (a.c_.empty() || b.c_.empty()) return TwistedPoly(F, {});
  std::vector<Poly> out(a.c_.size() + b.c_.size() - 1, Poly(F));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j].is_zero()) continue;
      out[i + j] += a.c_[i] * frobenius_twist(b.c_[j], static_cast<unsigned>(i));
    }
  }
  return TwistedPoly(F, std::move(out));
}

Poly frobenius_twist(const Poly& a, unsigned i) {
  if (i == 0 || a.is_constant()) return a;
  const std::uint64_t step = nt::checked_pow(a.field()->order(), i);
  const auto& c = a.coeffs();
  const std::uint64_t new_size = (c.size() - 1) * step + 1;
  if (new_size > (std::uint64_t{1} << 26)) raise(ErrorCode::TooLarge, "Frobenius twist degree too large");
  std::vector<Elem> out(new_size, 0);
  for (std::size_t k = 0; k < c.size(); ++k) out[k * step] = c[k];
  return Poly(a.field(), std::move(out));
}

BivarPoly CarlitzImage::qpolynomial() const {
  const Field& F = twisted.field();
  const std::uint64_t q = F->order();
  const std::uint64_t top = nt::checked_pow(q, static_cast<unsigned>(twisted.degree()));
  if (top > (std::uint64_t{1} << 20)) raise(ErrorCode::TooLarge, "q-polynomial degree too large");
  std::vector<Poly> out(top + 1, Poly(F));
  std::uint64_t pos = 1;
  for (const auto& c : twisted.coeffs()) {
    out[pos] = c;
    pos *= q;
  }
  return BivarPoly(F, std::move(out));
}

CarlitzImage carlitz_of(const Poly& a) {
  if (a.is_zero()) raise(ErrorCode::ZeroInput, "C_0 is the zero map");
  const Field& F = a.field();
  auto constant = [&](Elem c) { return TwistedPoly(F, {Poly::constant(F, c)}); };
  const TwistedPoly ct(F, {Poly::identity(F), Poly::constant(F, 1)});
  TwistedPoly acc = constant(a.lead());
  for (std::size_t i = a.coeffs().size() - 1; i-- > 0;) acc = acc * ct + constant(a.coeffs()[i]);
  return {a, acc};
}

QuotientAlgebra::QuotientAlgebra(BivarPoly modulus) : modulus_(std::move(modulus)) {
  if (!modulus_.is_monic() || modulus_.degree() < 1) {
    raise(ErrorCode::InvalidArgument, "quotient modulus must be monic in x of degree >= 1");
  }
}

BivarPoly QuotientAlgebra::reduce(const BivarPoly& f) const {
  if (f.degree() < modulus_.degree()) return f.field() ? f : BivarPoly(field());
  return divmod_monic(f, modulus_).second;
}

BivarPoly QuotientAlgebra::mul(const BivarPoly& a, const BivarPoly& b) const { return reduce(a * b); }

BivarPoly QuotientAlgebra::pow(const BivarPoly& a, std::uint64_t e) const {
  BivarPoly result = BivarPoly::monomial(Poly::constant(field(), 1), 0);
  BivarPoly b = reduce(a);
  while (e) {
    if (e & 1) result = mul(result, b);
    e >>= 1;
    if (e) b = mul(b, b);
  }
  return result;
}

BivarPoly QuotientAlgebra::generator() const {
  return reduce(BivarPoly::monomial(Poly::constant(field(), 1), 1));
}

BivarPoly QuotientAlgebra::evaluate(const BivarPoly& f, const BivarPoly& elem) const {
  BivarPoly acc(field());
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    acc = mul(acc, elem) + BivarPoly::monomial(f.coeffs()[i], 0);
  }
  return acc;
}

BivarPoly QuotientAlgebra::minimal_polynomial(const BivarPoly& elem) const {
  const std::size_t m = dimension();
  const Field& F = field();
  const RatFunc zero{Poly(F)};
  const RatFunc one{Poly::constant(F, 1)};
  struct Row {
    std::vector<RatFunc> v;  // pivot entry normalized to 1
    std::vector<RatFunc> combo;  // coefficients on the powers elem^0..elem^k
    std::size_t pivot;
  };
  std::vector<Row> rows;
  BivarPoly power = BivarPoly::monomial(Poly::constant(F, 1), 0);
  for (std::size_t k = 0; k <= m; ++k) {
    std::vector<RatFunc> v(m, zero);
    for (std::size_t i = 0; i < m; ++i) v[i] = RatFunc(power.coeff(i));
    std::vector<RatFunc> combo(k + 1, zero);
    combo[k] = one;
    for (const auto& row : rows) {
      const RatFunc c = v[row.pivot];
      if (c.is_zero()) continue;
      for (std::size_t i = 0; i < m; ++i) {
        if (!row.v[i].is_zero()) v[i] = v[i] - c * row.v[i];
      }
      for (std::size_t i = 0; i < row.combo.size(); ++i) {
        if (!row.combo[i].is_zero()) combo[i] = combo[i] - c * row.combo[i];
      }
    }
    auto nz = std::find_if(v.begin(), v.end(), [](const RatFunc& r) { return !r.is_zero(); });
    if (nz == v.end()) {
      // combo is the monic relation sum combo_i elem^i = 0.
      std::vector<Poly> coeffs;
      for (const auto& c : combo) {
        if (!c.is_polynomial()) raise(ErrorCode::InternalError, "minimal polynomial of an integral element left A[x]");
        coeffs.push_back(c.num());
      }
      return BivarPoly(F, std::move(coeffs));
    }
    const std::size_t pivot = static_cast<std::size_t>(nz - v.begin());
    const RatFunc inv = one / v[pivot];
    for (auto& x : v) x = x * inv;
    for (auto& x : combo) x = x * inv;
    rows.push_back({std::move(v), std::move(combo), pivot});
    power = mul(power, elem);
  }
  raise(ErrorCode::InternalError, "no linear relation among powers");
}

BivarPoly carlitz_eval(const CarlitzImage& c, const QuotientAlgebra& alg, const BivarPoly& beta) {
  require_same_owner(*c.twisted.field(), *alg.field());
  if (beta.field()) require_same_owner(*beta.field(), *alg.field());
  const std::uint64_t q = alg.field()->order();
  BivarPoly acc(alg.field());
  BivarPoly frob = alg.reduce(beta);
  for (std::size_t i = 0; i < c.twisted.coeffs().size(); ++i) {
    if (i > 0) frob = alg.pow(frob, q);
    acc += frob.scaled(c.twisted.coeffs()[i]);
  }
  return acc;
}

Elem carlitz_eval(const CarlitzImage& c, const ResidueField& rf, Elem beta) {
  require_same_owner(*c.twisted.field(), *rf.prime.field());
  const FieldSpec& F = *rf.field;
  const std::uint64_t q = c.twisted.field()->order();
  Elem acc = 0;
  Elem frob = beta;
  for (std::size_t i = 0; i < c.twisted.coeffs().size(); ++i) {
    if (i > 0) frob = F.pow(frob, q);
    acc = F.add(acc, F.mul(rf.reduce(c.twisted.coeffs()[i]), frob));
  }
  return acc;
}

std::optional<PrimePower> as_prime_power(const Poly& a) {
  if (a.degree() < 1) return std::nullopt;
  auto fac = factor_ff(a);
  if (fac.factors.size() != 1 || fac.unit != 1) return std::nullopt;
  return PrimePower{fac.factors[0].poly, fac.factors[0].multiplicity};
}

namespace {

void require_monic_modulus(const Poly& a) {
  if (a.degree() < 1 || !a.is_monic()) raise(ErrorCode::InvalidArgument, "modulus must be monic of degree >= 1");
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  nt::u128 r = static_cast<nt::u128>(a) * b;
  if (r > UINT64_MAX) raise(ErrorCode::TooLarge, "group order overflows 64 bits");
  return static_cast<std::uint64_t>(r);
}

}  // namespace

std::uint64_t unit_group_order(const Poly& a) {
  require_monic_modulus(a);
  const std::uint64_t q = a.field()->order();
  std::uint64_t order = 1;
  for (const auto& f : factor_ff(a).factors) {
    const auto d = static_cast<unsigned>(f.poly.degree());
    std::uint64_t qd = nt::checked_pow(q, d);
    order = checked_mul(order, qd - 1);
    order = checked_mul(order, nt::checked_pow(qd, f.multiplicity - 1));
  }
  return order;
}

std::uint64_t unit_order(const Poly& b, const Poly& a) {
  require_monic_modulus(a);
  Poly r = b % a;
  if (r.is_zero() || !gcd(r, a).is_one()) raise(ErrorCode::InvalidArgument, "class is not a unit");
  std::uint64_t order = unit_group_order(a);
  for (auto [p, e] : nt::factor(order)) {
    for (unsigned i = 0; i < e; ++i) {
      if (powmod(r, order / p, a).is_one()) {
        order /= p;
      } else {
        break;
      }
    }
  }
  return order;
}

UnitGroup unit_group(const Poly& a, std::uint64_t cap) {
  require_monic_modulus(a);
  const std::uint64_t expected = unit_group_order(a);
  if (expected > cap) {
    raise(ErrorCode::TooLarge, "unit group of order " + std::to_string(expected) + " exceeds cap " + std::to_string(cap));
  }
  UnitGroup g;
  g.modulus = a;
  const Field& F = a.field();
  const std::uint64_t q = F->order();
  const auto n = static_cast<unsigned>(a.degree());
  const std::uint64_t count = nt::checked_pow(q, n);
  for (std::uint64_t idx = 1; idx < count; ++idx) {
    std::vector<Elem> c(n, 0);
    std::uint64_t rest = idx;
    for (unsigned i = 0; i < n; ++i) {
      c[i] = rest % q;
      rest /= q;
    }
    Poly b(F, std::move(c));
    if (gcd(b, a).is_one()) g.elements.push_back(std::move(b));
  }
  g.order = g.elements.size();
  if (g.order != expected) raise(ErrorCode::InternalError, "enumerated unit count disagrees with the product formula");
  for (const auto& b : g.elements) {
    if (unit_order(b, a) == g.order) {
      g.generator = b;
      break;
    }
  }
  return g;
}

CyclotomicField build_cyclotomic(const Poly& a, std::uint64_t cap, std::uint64_t verify_limit) {
  require_monic_modulus(a);
  auto pp = as_prime_power(a);
  if (!pp) raise(ErrorCode::UseCompositum, to_string(a) + " is not a prime power; use the compositum record");
  const std::uint64_t phi = unit_group_order(a);
  if (phi > cap) raise(ErrorCode::TooLarge, "phi(" + to_string(a) + ") = " + std::to_string(phi) + " exceeds cap");
  QuotientAlgebra alg(cyclo_poly(pp->prime, pp->exponent));
  CyclotomicField field(a, pp->prime, pp->exponent, alg, unit_group(a, cap));

  // Frobenius orbit lambda^(q^k), k <= deg a, shared by every C_b(lambda).
  const std::uint64_t q = a.field()->order();
  const auto deg_a = static_cast<std::size_t>(a.degree());
  std::vector<BivarPoly> orbit{alg.generator()};
  for (std::size_t k = 1; k <= deg_a; ++k) orbit.push_back(alg.pow(orbit.back(), q));
  auto eval_at_lambda = [&](const TwistedPoly& tp) {
    BivarPoly acc(a.field());
    for (std::size_t i = 0; i < tp.coeffs().size(); ++i) acc += orbit[i].scaled(tp.coeffs()[i]);
    return acc;
  };

  if (!eval_at_lambda(carlitz_of(a).twisted).is_zero()) raise(ErrorCode::InternalError, "lambda is not a-torsion");
  if (eval_at_lambda(carlitz_of(div_exact(a, pp->prime)).twisted).is_zero()) {
    raise(ErrorCode::InternalError, "lambda is not a primitive a-torsion point");
  }

  field.table_.reserve(field.units_.elements.size());
  for (const auto& b : field.units_.elements) field.table_.push_back(eval_at_lambda(carlitz_of(b).twisted));

  std::vector<const BivarPoly*> sorted;
  for (const auto& e : field.table_) sorted.push_back(&e);
  auto key_less = [](const BivarPoly* x, const BivarPoly* y) {
    return std::lexicographical_compare(x->coeffs().begin(), x->coeffs().end(), y->coeffs().begin(),
                                        y->coeffs().end(), [](const Poly& u, const Poly& v) {
                                          return u.coeffs() < v.coeffs();
                                        });
  };
  std::sort(sorted.begin(), sorted.end(), key_less);
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (*sorted[i] == *sorted[i - 1]) raise(ErrorCode::InternalError, "Galois table is not faithful");
  }
  if (phi <= verify_limit) {
    // Q_a is a field and C_a = psi * C_{a/P}, so psi(e) = 0 iff C_a(e) = 0 and
    // C_{a/P}(e) != 0. Powers are taken directly, not through the orbit.
    const auto ca = carlitz_of(a);
    const auto cb = carlitz_of(div_exact(a, pp->prime));
    for (const auto& e : field.table_) {
      if (!carlitz_eval(ca, alg, e).is_zero() || carlitz_eval(cb, alg, e).is_zero()) {
        raise(ErrorCode::InternalError, "table entry is not a root of psi");
      }
    }
  }
  return field;
}

std::size_t CyclotomicField::index_of(const Poly& b) const {
  Poly r = b % modulus_;
  auto it = std::lower_bound(units_.elements.begin(), units_.elements.end(), r, canonical_less);
  if (it == units_.elements.end() || !(*it == r)) raise(ErrorCode::InvalidArgument, to_string(b) + " is not a unit class");
  return static_cast<std::size_t>(it - units_.elements.begin());
}

const BivarPoly& CyclotomicField::conjugate(const Poly& b) const { return table_[index_of(b)]; }

BivarPoly CyclotomicField::apply(const Poly& b, const BivarPoly& elem) const {
  const BivarPoly& image = conjugate(b);
  BivarPoly acc(modulus_.field());
  for (std::size_t i = elem.coeffs().size(); i-- > 0;) {
    acc = algebra_.mul(acc, image) + BivarPoly::monomial(elem.coeffs()[i], 0);
  }
  return acc;
}

BivarPoly cyclo_poly(const Poly& prime, unsigned h) {
  if (h == 0) raise(ErrorCode::InvalidArgument, "exponent must be positive");
  if (prime.degree() < 1 || !is_irreducible_ff(prime)) raise(ErrorCode::NotPrime, to_string(prime) + " is not prime in A");
  if (!prime.is_monic()) raise(ErrorCode::InvalidArgument, "prime must be monic");
  BivarPoly top = carlitz_of(pow(prime, h)).qpolynomial();
  BivarPoly below = carlitz_of(pow(prime, h - 1)).qpolynomial();
  auto [quot, rem] = divmod_monic(top, below);
  if (!rem.is_zero()) raise(ErrorCode::InternalError, "C_{P^h} not divisible by C_{P^(h-1)}");
  return quot;
}

CompositumRecord cyclotomic_compositum(const Poly& a) {
  require_monic_modulus(a);
  CompositumRecord rec{a, {}, {}, 1};
  for (const auto& f : factor_ff(a).factors) {
    Poly part = pow(f.poly, f.multiplicity);
    rec.components.push_back({f.poly, f.multiplicity});
    rec.component_degrees.push_back(unit_group_order(part));
  }
  rec.degree = unit_group_order(a);
  std::uint64_t product = 1;
  for (auto d : rec.component_degrees) product = checked_mul(product, d);
  if (product != rec.degree) raise(ErrorCode::InternalError, "compositum degree bookkeeping mismatch");
  return rec;
}

ResolventResult resolvent_fixed_field(const CyclotomicField& q, const std::vector<Poly>& subgroup) {
  if (subgroup.empty()) raise(ErrorCode::NotASubgroup, "empty set is not a subgroup");
  const Poly& a = q.modulus();
  std::vector<Poly> h;
  for (const auto& b : subgroup) {
    Poly r = b % a;
    if (r.is_zero() || !gcd(r, a).is_one()) raise(ErrorCode::NotASubgroup, to_string(b) + " is not a unit");
    h.push_back(std::move(r));
  }
  std::sort(h.begin(), h.end(), canonical_less);
  h.erase(std::unique(h.begin(), h.end()), h.end());
  auto contains = [&](const Poly& x) { return std::binary_search(h.begin(), h.end(), x, canonical_less); };
  for (const auto& x : h) {
    for (const auto& y : h) {
      if (!contains((x * y) % a)) raise(ErrorCode::NotASubgroup, "set is not closed under multiplication");
    }
  }
  ResolventResult res;
  const auto& alg = q.algebra();
  res.eta = BivarPoly::monomial(Poly::constant(a.field(), 1), 0);
  for (const auto& b : h) res.eta = alg.mul(res.eta, q.conjugate(b));
  res.minpoly = alg.minimal_polynomial(res.eta);
  res.index = q.phi() / h.size();
  res.generates = static_cast<std::uint64_t>(res.minpoly.degree()) == res.index;
  return res;
}

std::vector<Poly> index_subgroup(const UnitGroup& units, std::uint64_t n) {
  if (n == 0 || units.order % n != 0) raise(ErrorCode::NotADivisor, std::to_string(n) + " does not divide the group order");
  if (!units.generator) raise(ErrorCode::PreconditionFailed, "unit group is not cyclic");
  const Poly& a = units.modulus;
  Poly step = powmod(*units.generator, n, a);
  std::vector<Poly> out;
  Poly x = Poly::constant(a.field(), 1) % a;
  for (std::uint64_t j = 0; j < units.order / n; ++j) {
    out.push_back(x);
    x = (x * step) % a;
  }
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

KummerWitness kummer_witness(const Poly& prime, unsigned n, std::uint64_t cap) {
  if (prime.degree() < 1 || !is_irreducible_ff(prime)) raise(ErrorCode::NotPrime, to_string(prime) + " is not prime in A");
  const std::uint64_t phi = unit_group_order(monic(prime));
  if (n == 0 || phi % n != 0) {
    raise(ErrorCode::NotADivisor, std::to_string(n) + " does not divide q^d - 1 = " + std::to_string(phi));
  }
  return kummer_witness(build_cyclotomic(monic(prime), cap), n);
}

KummerWitness kummer_witness(const CyclotomicField& cyc, unsigned n) {
  if (cyc.exponent() != 1) raise(ErrorCode::NotPrime, "Kummer witness needs a prime modulus");
  const Field& F = cyc.prime().field();
  const std::uint64_t q = F->order();
  const auto d = static_cast<unsigned>(cyc.prime().degree());
  if (n == 0 || cyc.phi() % n != 0) {
    raise(ErrorCode::NotADivisor, std::to_string(n) + " does not divide q^d - 1 = " + std::to_string(cyc.phi()));
  }
  KummerWitness w;
  w.prime = cyc.prime();
  w.n = n;
  w.epsilon = d % 2 == 0 ? 1 : -1;
  w.subgroup = index_subgroup(cyc.units(), n);
  const auto& alg = cyc.algebra();
  auto res = resolvent_fixed_field(cyc, w.subgroup);
  w.eta = res.eta;
  w.minpoly_degree = static_cast<std::uint64_t>(res.minpoly.degree());
  w.eta_power = alg.pow(w.eta, n);
  w.power_in_base = QuotientAlgebra::in_base(w.eta_power);
  w.ratio_is_unit = false;
  w.ratio_is_nth_power = false;
  if (w.power_in_base) {
    Poly eps_p = w.epsilon == 1 ? w.prime : -w.prime;
    auto [quot, rem] = poly_divmod(w.eta_power.coeff(0), eps_p);
    if (rem.is_zero() && quot.degree() == 0) {
      w.ratio = quot.coeff(0);
      w.ratio_is_unit = true;
      const std::uint64_t g = std::gcd(static_cast<std::uint64_t>(n), q - 1);
      w.ratio_is_nth_power = F->pow(*w.ratio, (q - 1) / g) == 1;
    }
  }
  w.exact_equality = w.ratio_is_unit && w.ratio_is_nth_power;
  return w;
}

RnDegree infinity_twist_rn(std::uint64_t q, unsigned n, std::uint64_t cap) {
  if (n == 0) raise(ErrorCode::InvalidArgument, "n must be positive");
  Field F = FieldSpec::of_order(q);
  // u = 1/t: the same machinery over F_q[u], modulus u^(n+1).
  Poly modulus = Poly::monomial(F, 1, n + 1);
  RnDegree out{};
  const std::uint64_t formula = unit_group_order(modulus);
  if (formula <= cap) {
    out.unit_count = unit_group(modulus, cap).order;
    out.enumerated = true;
  } else {
    out.unit_count = formula;
    out.enumerated = false;
  }
  out.degree = out.unit_count / (q - 1);
  if (out.degree != nt::checked_pow(q, n)) raise(ErrorCode::InternalError, "R_n degree differs from q^n");
  return out;
}

std::uint64_t infinity_twist_rn_degree(std::uint64_t q, unsigned n, std::uint64_t cap) {
  return infinity_twist_rn(q, n, cap).degree;
}

}  // namespace fflab
