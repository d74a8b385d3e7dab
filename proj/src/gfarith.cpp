#include "fflab/gfarith.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "fflab/numtheory.hpp"
#include "fflab/poly.hpp"
#include "fflab/text.hpp"

namespace fflab {

namespace {

constexpr std::uint64_t kLogTableLimit = 1u << 16;

using Digits = std::vector<std::uint64_t>;

void trim(Digits& d) {
  while (!d.empty() && d.back() == 0) d.pop_back();
}

// Extended Euclid on dense coefficient vectors over F_p; returns u with
// u*a = 1 mod m. a is assumed nonzero and reduced.
Digits inverse_mod_poly(Digits a, Digits m, std::uint64_t p) {
  trim(a);
  trim(m);
  Digits r0 = m, r1 = a, s0{}, s1{1};
  auto sub_scaled = [p](Digits& x, const Digits& y, std::uint64_t c, std::size_t shift) {
    if (x.size() < y.size() + shift) x.resize(y.size() + shift, 0);
    for (std::size_t i = 0; i < y.size(); ++i) {
      x[i + shift] = (x[i + shift] + p - nt::mulmod(c, y[i], p)) % p;
    }
    trim(x);
  };
  while (!r1.empty()) {
    Digits q;
    Digits r = r0;
    std::uint64_t lead_inv = nt::powmod(r1.back(), p - 2, p);
    while (r.size() >= r1.size() && !r.empty()) {
      std::size_t shift = r.size() - r1.size();
      std::uint64_t c = nt::mulmod(r.back(), lead_inv, p);
      if (q.size() <= shift) q.resize(shift + 1, 0);
      q[shift] = c;
      sub_scaled(r, r1, c, shift);
    }
    // s_next = s0 - q*s1
    Digits s = s0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (q[i]) sub_scaled(s, s1, q[i], i);
    }
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r0 is a nonzero constant
  std::uint64_t c = nt::powmod(r0[0], p - 2, p);
  for (auto& v : s0) v = nt::mulmod(v, c, p);
  return s0;
}

}  // namespace

FieldSpec::FieldSpec(std::uint64_t p, std::vector<std::uint64_t> modulus)
    : p_(p), k_(static_cast<unsigned>(modulus.size() - 1)), modulus_(std::move(modulus)) {
  q_ = nt::checked_pow(p_, k_);
  if (q_ > (std::uint64_t{1} << 62)) raise(ErrorCode::TooLarge, "field order exceeds 2^62");
  if (k_ > 1 && q_ <= kLogTableLimit) build_log_tables();
}

Field FieldSpec::prime_field(std::uint64_t p) {
  if (!nt::is_prime(p)) raise(ErrorCode::NotPrime, "characteristic " + std::to_string(p) + " is not prime");
  if (p >= (std::uint64_t{1} << 32)) raise(ErrorCode::TooLarge, "characteristic must be below 2^32");
  return Field(new FieldSpec(p, {0, 1}));
}

Field FieldSpec::from_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus) {
  auto prime = prime_field(p);
  if (modulus.size() < 2 || modulus.back() != 1) {
    raise(ErrorCode::InvalidArgument, "field modulus must be monic of positive degree");
  }
  for (auto c : modulus) {
    if (c >= p) raise(ErrorCode::InvalidArgument, "modulus coefficients must be reduced mod p");
  }
  if (modulus.size() == 2) {
    // Every degree-1 modulus gives F_p; normalize to the canonical z.
    return prime;
  }
  Poly m(prime, std::vector<Elem>(modulus.begin(), modulus.end()));
  if (!is_irreducible_ff(m)) raise(ErrorCode::NotPrime, "field modulus is reducible over F_p");
  return Field(new FieldSpec(p, std::move(modulus)));
}

Field FieldSpec::galois(std::uint64_t p, unsigned k) {
  static std::mutex mutex;
  static std::map<std::pair<std::uint64_t, unsigned>, Field> cache;
  if (k == 0) raise(ErrorCode::InvalidArgument, "field degree must be positive");
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find({p, k}); it != cache.end()) return it->second;
  }
  auto prime = prime_field(p);
  Field result;
  if (k == 1) {
    result = prime;
  } else {
    std::uint64_t count = nt::checked_pow(p, k);
    // Monic candidates z^k + c(z) enumerated by the code of c; code order is
    // lexicographic order from the top coefficient down.
    for (std::uint64_t code = 0; code < count && !result; ++code) {
      std::vector<Elem> coeffs(k + 1, 0);
      std::uint64_t rest = code;
      for (unsigned i = 0; i < k; ++i) {
        coeffs[i] = rest % p;
        rest /= p;
      }
      coeffs[k] = 1;
      if (coeffs[0] == 0) continue;
      Poly cand(prime, coeffs);
      if (is_irreducible_ff(cand)) {
        result = Field(new FieldSpec(p, std::vector<std::uint64_t>(coeffs.begin(), coeffs.end())));
      }
    }
    if (!result) raise(ErrorCode::SearchExhausted, "no irreducible polynomial found");
  }
  std::lock_guard lock(mutex);
  cache.emplace(std::make_pair(p, k), result);
  return result;
}

Field FieldSpec::of_order(std::uint64_t q) {
  auto pk = nt::prime_power(q);
  if (!pk) raise(ErrorCode::InvalidArgument, std::to_string(q) + " is not a prime power");
  return galois(pk->first, pk->second);
}

std::vector<std::uint64_t> FieldSpec::digits(Elem a) const {
  std::vector<std::uint64_t> out(k_, 0);
  for (unsigned i = 0; i < k_; ++i) {
    out[i] = a % p_;
    a /= p_;
  }
  return out;
}

Elem FieldSpec::from_digits(std::span<const std::uint64_t> digits) const {
  if (digits.size() > k_) raise(ErrorCode::InvalidArgument, "too many coefficients for field element");
  Elem code = 0;
  for (std::size_t i = digits.size(); i-- > 0;) code = code * p_ + digits[i] % p_;
  return code;
}

Elem FieldSpec::add(Elem a, Elem b) const {
  if (k_ == 1) {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  if (p_ == 2) return a ^ b;
  Elem r = 0, scale = 1;
  while (a || b) {
    Elem da = a % p_, db = b % p_;
    Elem s = da + db;
    if (s >= p_) s -= p_;
    r += s * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

Elem FieldSpec::neg(Elem a) const {
  if (k_ == 1) return a == 0 ? 0 : p_ - a;
  if (p_ == 2) return a;
  Elem r = 0, scale = 1;
  while (a) {
    Elem d = a % p_;
    r += (d == 0 ? 0 : p_ - d) * scale;
    a /= p_;
    scale *= p_;
  }
  return r;
}

Elem FieldSpec::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem FieldSpec::mul_schoolbook(Elem a, Elem b) const {
  auto da = digits(a), db = digits(b);
  std::vector<std::uint64_t> prod(2 * k_ - 1, 0);
  for (unsigned i = 0; i < k_; ++i) {
    if (!da[i]) continue;
    for (unsigned j = 0; j < k_; ++j) {
      prod[i + j] = (prod[i + j] + nt::mulmod(da[i], db[j], p_)) % p_;
    }
  }
  for (std::size_t d = prod.size(); d-- > k_;) {
    std::uint64_t c = prod[d];
    if (!c) continue;
    for (unsigned i = 0; i <= k_; ++i) {
      std::size_t idx = d - k_ + i;
      prod[idx] = (prod[idx] + p_ - nt::mulmod(c, modulus_[i], p_)) % p_;
    }
  }
  prod.resize(k_);
  return from_digits(prod);
}

void FieldSpec::build_log_tables() {
  const std::uint64_t n = q_ - 1;
  auto primes = nt::prime_divisors(n);
  Elem gen = 0;
  for (Elem cand = 2; cand < q_ && !gen; ++cand) {
    bool ok = true;
    for (auto r : primes) {
      if (pow(cand, n / r) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) gen = cand;
  }
  if (q_ == 2 || !gen) gen = 1;
  exp_table_.assign(n, 0);
  log_table_.assign(q_, 0);
  Elem x = 1;
  for (std::uint64_t i = 0; i < n; ++i) {
    exp_table_[i] = static_cast<std::uint32_t>(x);
    log_table_[x] = static_cast<std::uint32_t>(i);
    x = mul_schoolbook(x, gen);
  }
}

Elem FieldSpec::mul(Elem a, Elem b) const {
  if (k_ == 1) return nt::mulmod(a, b, p_);
  if (a == 0 || b == 0) return 0;
  if (!exp_table_.empty()) {
    std::uint64_t s = std::uint64_t{log_table_[a]} + log_table_[b];
    if (s >= q_ - 1) s -= q_ - 1;
    return exp_table_[s];
  }
  return mul_schoolbook(a, b);
}

Elem FieldSpec::pow(Elem a, std::uint64_t e) const {
  Elem result = 1;
  while (e) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

Elem FieldSpec::inv(Elem a) const {
  if (a == 0) raise(ErrorCode::DivisionByZero, "inverse of zero");
  if (k_ == 1) {
    // Extended Euclid on integers.
    std::int64_t r0 = static_cast<std::int64_t>(p_), r1 = static_cast<std::int64_t>(a), s0 = 0, s1 = 1;
    while (r1 != 0) {
      std::int64_t qt = r0 / r1;
      std::tie(r0, r1) = std::make_tuple(r1, r0 - qt * r1);
      std::tie(s0, s1) = std::make_tuple(s1, s0 - qt * s1);
    }
    std::int64_t res = s0 % static_cast<std::int64_t>(p_);
    if (res < 0) res += static_cast<std::int64_t>(p_);
    return static_cast<Elem>(res);
  }
  if (!exp_table_.empty()) return exp_table_[(q_ - 1 - log_table_[a]) % (q_ - 1)];
  auto u = inverse_mod_poly(digits(a), modulus_, p_);
  return from_digits(u);
}

Elem FieldSpec::from_int(std::int64_t n) const {
  std::int64_t r = n % static_cast<std::int64_t>(p_);
  if (r < 0) r += static_cast<std::int64_t>(p_);
  return static_cast<Elem>(r);
}

std::uint64_t FieldSpec::mult_order(Elem a) const {
  if (a == 0) raise(ErrorCode::DivisionByZero, "multiplicative order of zero");
  std::uint64_t order = q_ - 1;
  for (auto [r, e] : nt::factor(q_ - 1)) {
    for (unsigned i = 0; i < e; ++i) {
      if (pow(a, order / r) == 1) {
        order /= r;
      } else {
        break;
      }
    }
  }
  return order;
}

Elem FieldSpec::embed_from_base(Elem a) const {
  if (!base_) raise(ErrorCode::InvalidArgument, "field has no recorded base");
  auto d = base_->digits(a);
  Elem acc = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i]) acc = add(acc, mul(from_int(static_cast<std::int64_t>(d[i])), base_powers_[i]));
  }
  return acc;
}

std::string FieldSpec::format(Elem a) const {
  if (k_ == 1) return std::to_string(a);
  auto d = digits(a);
  std::vector<std::int64_t> coeffs(d.begin(), d.end());
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  return text::format_int_poly(coeffs, 'z');
}

Elem FieldSpec::parse(std::string_view s) const {
  auto coeffs = text::parse_int_poly(s, 'z');
  if (coeffs.size() > k_) {
    raise(ErrorCode::ParseError, "element '" + std::string(s) + "' has degree >= field degree");
  }
  std::vector<std::uint64_t> d;
  for (auto c : coeffs) d.push_back(from_int(c));
  return from_digits(d);
}

std::string FieldSpec::describe() const {
  std::vector<std::int64_t> m(modulus_.begin(), modulus_.end());
  return "GF(" + std::to_string(p_) + "^" + std::to_string(k_) + "; modulus=" + text::format_int_poly(m, 'z') + ")";
}

FieldElement::FieldElement(Field owner, Elem code) : owner_(std::move(owner)), code_(code) {
  if (code_ >= owner_->order()) raise(ErrorCode::InvalidArgument, "element code out of range");
}

FieldElement FieldElement::from_coeffs(Field owner, std::span<const std::uint64_t> coeffs) {
  if (coeffs.size() != owner->degree()) raise(ErrorCode::InvalidArgument, "element needs exactly k coefficients");
  for (auto c : coeffs) {
    if (c >= owner->characteristic()) raise(ErrorCode::InvalidArgument, "coefficient not reduced mod p");
  }
  Elem code = owner->from_digits(coeffs);
  return {std::move(owner), code};
}

FieldElement FieldElement::from_int(Field owner, std::int64_t n) {
  Elem code = owner->from_int(n);
  return {std::move(owner), code};
}

void require_same_owner(const FieldSpec& a, const FieldSpec& b) {
  if (!a.same_as(b)) raise(ErrorCode::OwnerMismatch, "operands belong to " + a.describe() + " and " + b.describe());
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same_owner(*a.owner_, *b.owner_);
  return {a.owner_, a.owner_->add(a.code_, b.code_)};
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  require_same_owner(*a.owner_, *b.owner_);
  return {a.owner_, a.owner_->sub(a.code_, b.code_)};
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same_owner(*a.owner_, *b.owner_);
  return {a.owner_, a.owner_->mul(a.code_, b.code_)};
}

FieldElement ff_mul(const FieldElement& a, const FieldElement& b) { return a * b; }

FieldElement ff_inv(const FieldElement& a) { return {a.owner(), a.owner()->inv(a.code())}; }

std::uint64_t mult_order(const FieldElement& a) { return a.owner()->mult_order(a.code()); }

Field construct_extension(const Field& base, unsigned m) {
  if (m == 0) raise(ErrorCode::InvalidArgument, "extension degree must be positive");
  using Key = std::tuple<std::uint64_t, std::vector<std::uint64_t>, unsigned>;
  static std::mutex mutex;
  static std::map<Key, Field> cache;
  Key key{base->characteristic(), base->modulus(), m};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto plain = FieldSpec::galois(base->characteristic(), base->degree() * m);
  auto ext = std::shared_ptr<FieldSpec>(new FieldSpec(*plain));
  ext->base_ = base;
  if (base->degree() == 1) {
    ext->root_ = 0;
  } else if (m == 1) {
    ext->root_ = ext->generator();
  } else {
    // Lift the base modulus coefficientwise (they lie in F_p) and take its
    // smallest root in the extension.
    std::vector<Elem> lifted(base->modulus().begin(), base->modulus().end());
    Poly bm(plain, lifted);
    auto rts = roots(bm);
    if (rts.empty()) raise(ErrorCode::SearchExhausted, "base modulus has no root in extension");
    ext->root_ = rts.front();
  }
  ext->base_powers_.assign(base->degree(), 1);
  for (unsigned i = 1; i < base->degree(); ++i) {
    ext->base_powers_[i] = ext->mul(ext->base_powers_[i - 1], ext->root_);
  }
  Field result = ext;
  std::lock_guard lock(mutex);
  cache.emplace(std::move(key), result);
  return result;
}

std::vector<Elem> enumerate(const FieldSpec& f) {
  if (f.order() > (std::uint64_t{1} << 24)) raise(ErrorCode::TooLarge, "field too large to enumerate");
  std::vector<Elem> out(f.order());
  for (Elem i = 0; i < f.order(); ++i) out[i] = i;
  return out;
}

}  // namespace fflab
