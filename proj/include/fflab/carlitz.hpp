#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fflab/bivar.hpp"
#include "fflab/poly.hpp"

namespace fflab {

/// Default bound on |(A/aA)^x| for anything that enumerates unit classes.
inline constexpr std::uint64_t kDefaultUnitCap = 512;

/// Element sum c_i tau^i of A<tau>, with tau * c = c^q * tau.
class TwistedPoly {
 public:
  TwistedPoly() = default;
  TwistedPoly(Field field, std::vector<Poly> coeffs);

  const Field& field() const { return field_; }
  const std::vector<Poly>& coeffs() const { return c_; }
  long degree() const { return c_.empty() ? Poly::kNegInfinity : static_cast<long>(c_.size()) - 1; }

  friend TwistedPoly operator+(const TwistedPoly& a, const TwistedPoly& b);
  friend TwistedPoly operator*(const TwistedPoly& a, const TwistedPoly& b);
  friend bool operator==(const TwistedPoly& a, const TwistedPoly& b) { return a.c_ == b.c_; }

 private:
  Field field_;
  std::vector<Poly> c_;
};

/// a(t)^(q^i) for a in A; coefficients in F_q are Frobenius-fixed.
Poly frobenius_twist(const Poly& a, unsigned i);

struct CarlitzImage {
  Poly source;
  TwistedPoly twisted;  // C_a as an element of A<tau>

  /// C_a(x) = sum c_i x^(q^i) as a dense element of A[x].
  BivarPoly qpolynomial() const;
};

/// C_a via the F_q-algebra homomorphism fixed by C_t = t + tau.
CarlitzImage carlitz_of(const Poly& a);

/// A[x]/(psi) for psi monic in x; elements are reduced BivarPolys, i.e.
/// power-basis coordinates over A of the class of x.
class QuotientAlgebra {
 public:
  explicit QuotientAlgebra(BivarPoly modulus);

  const BivarPoly& modulus() const { return modulus_; }
  std::size_t dimension() const { return static_cast<std::size_t>(modulus_.degree()); }
  const Field& field() const { return modulus_.field(); }

  BivarPoly reduce(const BivarPoly& f) const;
  BivarPoly mul(const BivarPoly& a, const BivarPoly& b) const;
  BivarPoly pow(const BivarPoly& a, std::uint64_t e) const;
  BivarPoly generator() const;
  /// f(elem) evaluated in the algebra.
  BivarPoly evaluate(const BivarPoly& f, const BivarPoly& elem) const;
  /// True when elem lies in A (coordinates concentrated on 1).
  static bool in_base(const BivarPoly& elem) { return elem.degree() <= 0; }
  /// Minimal polynomial over F_q(t) by linear algebra on the power basis.
  /// The element must be integral, so the result lies in A[x].
  BivarPoly minimal_polynomial(const BivarPoly& elem) const;

 private:
  BivarPoly modulus_;
};

/// C_a(beta) for beta in a quotient algebra.
BivarPoly carlitz_eval(const CarlitzImage& c, const QuotientAlgebra& alg, const BivarPoly& beta);
/// C_a(beta) for beta in a residue field of A.
Elem carlitz_eval(const CarlitzImage& c, const ResidueField& rf, Elem beta);

/// psi_{P^h} = C_{P^h}(x) / C_{P^(h-1)}(x).
BivarPoly cyclo_poly(const Poly& prime, unsigned h);

struct UnitGroup {
  Poly modulus;
  std::vector<Poly> elements;  // residues of degree < deg a, canonical order
  std::uint64_t order = 0;
  std::optional<Poly> generator;
};

/// |(A/aA)^x| from the factorization of a.
std::uint64_t unit_group_order(const Poly& a);
/// Explicit enumeration; throws TooLarge beyond cap.
UnitGroup unit_group(const Poly& a, std::uint64_t cap = kDefaultUnitCap);
/// Multiplicative order of b modulo a (b coprime to a).
std::uint64_t unit_order(const Poly& b, const Poly& a);

struct PrimePower {
  Poly prime;
  unsigned exponent;
};
/// a = P^h, or nullopt.
std::optional<PrimePower> as_prime_power(const Poly& a);

class CyclotomicField {
 public:
  const Poly& modulus() const { return modulus_; }
  const Poly& prime() const { return prime_; }
  unsigned exponent() const { return exponent_; }
  const BivarPoly& psi() const { return algebra_.modulus(); }
  std::uint64_t phi() const { return units_.order; }
  const QuotientAlgebra& algebra() const { return algebra_; }
  const UnitGroup& units() const { return units_; }
  /// Galois images of lambda, aligned with units().elements.
  const std::vector<BivarPoly>& table() const { return table_; }

  /// C_b(lambda) for a unit class b.
  const BivarPoly& conjugate(const Poly& b) const;
  /// sigma_b(elem) by substituting sigma_b(lambda) for lambda.
  BivarPoly apply(const Poly& b, const BivarPoly& elem) const;
  /// Position of the class of b in units().elements; throws if b is not a unit.
  std::size_t index_of(const Poly& b) const;

 private:
  friend CyclotomicField build_cyclotomic(const Poly& a, std::uint64_t cap, std::uint64_t verify_limit);
  CyclotomicField(Poly modulus, Poly prime, unsigned exponent, QuotientAlgebra algebra, UnitGroup units)
      : modulus_(std::move(modulus)), prime_(std::move(prime)), exponent_(exponent),
        algebra_(std::move(algebra)), units_(std::move(units)) {}

  Poly modulus_;
  Poly prime_;
  unsigned exponent_;
  QuotientAlgebra algebra_;
  UnitGroup units_;
  std::vector<BivarPoly> table_;
};

/// Q_a for a prime power a. Table entries are checked to be distinct, and
/// checked to be roots of psi when phi <= verify_limit. Composite moduli
/// throw UseCompositum; see cyclotomic_compositum.
CyclotomicField build_cyclotomic(const Poly& a, std::uint64_t cap = kDefaultUnitCap,
                                 std::uint64_t verify_limit = 64);

/// Degree bookkeeping for composite a: Q_a is the compositum of its
/// prime-power parts and [Q_a : F] = phi(a).
struct CompositumRecord {
  Poly modulus;
  std::vector<PrimePower> components;
  std::vector<std::uint64_t> component_degrees;
  std::uint64_t degree;
};
CompositumRecord cyclotomic_compositum(const Poly& a);

struct ResolventResult {
  BivarPoly eta;
  BivarPoly minpoly;
  std::uint64_t index;  // [G : H]
  bool generates;       // deg minpoly == [G : H]
};

/// eta = product of sigma(lambda) over sigma in H, and its minimal polynomial.
ResolventResult resolvent_fixed_field(const CyclotomicField& q, const std::vector<Poly>& subgroup);

/// Elements of the unique subgroup of index n in the cyclic unit group.
std::vector<Poly> index_subgroup(const UnitGroup& units, std::uint64_t n);

struct KummerWitness {
  Poly prime;
  unsigned n;
  int epsilon;           // +1 for even degree, -1 for odd
  std::vector<Poly> subgroup;
  BivarPoly eta;
  BivarPoly eta_power;   // eta^n
  bool power_in_base;    // eta^n in F_q(t)
  std::optional<Elem> ratio;  // eta^n / (epsilon P) when it is a constant
  bool ratio_is_unit;
  bool ratio_is_nth_power;
  bool exact_equality;   // ratio is an n-th power: fixed field = F((eps P)^(1/n))
  std::uint64_t minpoly_degree;
};

/// Compares the degree-n subfield of Q_P with F((epsilon P)^(1/n)).
KummerWitness kummer_witness(const Poly& prime, unsigned n, std::uint64_t cap = kDefaultUnitCap);
/// Same, reusing an already built Q_P.
KummerWitness kummer_witness(const CyclotomicField& qp, unsigned n);

struct RnDegree {
  std::uint64_t degree;      // [R_n : F]
  std::uint64_t unit_count;  // |(F_q[u]/u^(n+1))^x|
  bool enumerated;
};

/// Degree of the fixed field of F_q^x in the u^(n+1)-torsion field of the
/// Carlitz module for u = 1/t. Counts units by enumeration within cap.
RnDegree infinity_twist_rn(std::uint64_t q, unsigned n, std::uint64_t cap = kDefaultUnitCap);
std::uint64_t infinity_twist_rn_degree(std::uint64_t q, unsigned n, std::uint64_t cap = kDefaultUnitCap);

}  // namespace fflab
