#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fflab/error.hpp"

namespace fflab {

/// Internal element encoding: the coefficient vector (c_0, ..., c_{k-1}) of an
/// element of F_p[z]/(modulus) packed as the integer sum c_i p^i. The packing
/// order makes "smallest code" coincide with the lexicographic order of
/// coefficient sequences read from the top coefficient down.
using Elem = std::uint64_t;

class FieldSpec;
using Field = std::shared_ptr<const FieldSpec>;

/// F_{p^k} presented as F_p[z]/(modulus). Immutable once built; the optional
/// base reference records a tower step F_q -> F_{q^m} together with the image
/// of the base generator.
class FieldSpec {
 public:
  static Field prime_field(std::uint64_t p);
  /// Validates primality of p and irreducibility of the monic modulus.
  static Field from_modulus(std::uint64_t p, std::vector<std::uint64_t> modulus);
  /// F_{p^k} with the lexicographically smallest monic irreducible modulus.
  static Field galois(std::uint64_t p, unsigned k);
  /// Same as galois() for a prime power q.
  static Field of_order(std::uint64_t q);

  std::uint64_t characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  std::uint64_t order() const { return q_; }
  const std::vector<std::uint64_t>& modulus() const { return modulus_; }
  const Field& base() const { return base_; }
  /// Image of the base generator; meaningful only when base() is set.
  Elem embedding_root() const { return root_; }

  /// Structural identity: same characteristic and modulus.
  bool same_as(const FieldSpec& other) const {
    return p_ == other.p_ && modulus_ == other.modulus_;
  }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  /// Code of the generator z (equals 0 for prime fields, whose modulus is z).
  Elem generator() const { return k_ == 1 ? 0 : p_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t e) const;
  Elem frobenius(Elem a) const { return pow(a, p_); }
  Elem from_int(std::int64_t n) const;
  std::uint64_t mult_order(Elem a) const;

  std::vector<std::uint64_t> digits(Elem a) const;
  Elem from_digits(std::span<const std::uint64_t> digits) const;
  bool in_prime_field(Elem a) const { return a < p_; }

  /// Maps an element of base() into this field along the recorded embedding.
  Elem embed_from_base(Elem a) const;

  std::string format(Elem a) const;
  Elem parse(std::string_view s) const;
  /// "GF(p^k; modulus=...)"
  std::string describe() const;

 private:
  FieldSpec(std::uint64_t p, std::vector<std::uint64_t> modulus);
  friend Field construct_extension(const Field& base, unsigned m);

  Elem mul_schoolbook(Elem a, Elem b) const;
  void build_log_tables();

  std::uint64_t p_;
  unsigned k_;
  std::uint64_t q_;
  std::vector<std::uint64_t> modulus_;
  Field base_;
  Elem root_ = 0;
  std::vector<Elem> base_powers_;  // images of base generator powers
  std::vector<std::uint32_t> exp_table_;
  std::vector<std::uint32_t> log_table_;
};

/// Value-typed field element that remembers its owner.
class FieldElement {
 public:
  FieldElement(Field owner, Elem code);
  static FieldElement from_coeffs(Field owner, std::span<const std::uint64_t> coeffs);
  static FieldElement from_int(Field owner, std::int64_t n);

  const Field& owner() const { return owner_; }
  Elem code() const { return code_; }
  std::vector<std::uint64_t> coeffs() const { return owner_->digits(code_); }
  bool is_zero() const { return code_ == 0; }
  bool is_one() const { return code_ == 1; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  FieldElement operator-() const { return {owner_, owner_->neg(code_)}; }
  FieldElement pow(std::uint64_t e) const { return {owner_, owner_->pow(code_, e)}; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.code_ == b.code_ && a.owner_->same_as(*b.owner_);
  }

  std::string to_string() const { return owner_->format(code_); }

 private:
  Field owner_;
  Elem code_;
};

void require_same_owner(const FieldSpec& a, const FieldSpec& b);

FieldElement ff_mul(const FieldElement& a, const FieldElement& b);
FieldElement ff_inv(const FieldElement& a);
/// Smallest n >= 1 with a^n = 1.
std::uint64_t mult_order(const FieldElement& a);

/// F_{q^m} over F_q (q = |base|), modulus chosen as the smallest monic
/// irreducible over the prime field, embedding root the smallest root of the
/// base modulus. Results are cached; m == 1 returns the base itself.
Field construct_extension(const Field& base, unsigned m);

/// All elements of a field in code order. Only for small fields.
std::vector<Elem> enumerate(const FieldSpec& f);

}  // namespace fflab
