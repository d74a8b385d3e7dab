#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fflab/gfarith.hpp"

namespace fflab {

/// Seeded generator threaded explicitly through randomized routines.
using Rng = std::mt19937_64;
inline constexpr std::uint64_t kDefaultSeed = 0x5eed'f1ab'2024ULL;

/// Dense univariate polynomial over a finite field, constant term first.
/// The zero polynomial has an empty coefficient vector and degree
/// kNegInfinity.
class Poly {
 public:
  static constexpr long kNegInfinity = std::numeric_limits<long>::min();

  Poly() = default;
  explicit Poly(Field field) : field_(std::move(field)) {}
  Poly(Field field, std::vector<Elem> coeffs);

  static Poly constant(Field field, Elem c) { return Poly(std::move(field), std::vector<Elem>{c}); }
  static Poly monomial(Field field, Elem c, std::size_t k);
  /// The variable itself.
  static Poly identity(Field field) { return monomial(std::move(field), 1, 1); }
  /// Reduces integer coefficients into the prime subfield.
  static Poly from_ints(Field field, const std::vector<std::int64_t>& coeffs);

  const Field& field() const { return field_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  long degree() const { return c_.empty() ? kNegInfinity : static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Elem lead() const { return c_.empty() ? 0 : c_.back(); }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly operator-() const;
  Poly scaled(Elem c) const;
  /// Multiplication by the variable to the k-th power.
  Poly shifted(std::size_t k) const;

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

 private:
  void normalize();

  Field field_;
  std::vector<Elem> c_;
};

/// Quotient and remainder; throws DivisionByZero for g == 0.
std::pair<Poly, Poly> poly_divmod(const Poly& f, const Poly& g);
Poly operator%(const Poly& f, const Poly& g);
/// Exact quotient; throws InternalError when the division leaves a remainder.
Poly div_exact(const Poly& f, const Poly& g);

Poly monic(const Poly& f);

struct XgcdResult {
  Poly d;  // monic gcd
  Poly u;
  Poly v;  // u*f + v*g = d
};
XgcdResult xgcd(const Poly& f, const Poly& g);
Poly gcd(const Poly& f, const Poly& g);

Poly derivative(const Poly& f);
Poly pow(const Poly& f, unsigned e);
Poly mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly powmod(const Poly& base, std::uint64_t e, const Poly& m);
Elem eval(const Poly& f, Elem x);
/// f(g(t)).
Poly compose(const Poly& f, const Poly& g);
/// Image of f under a coefficient map into another field.
template <class Map>
Poly map_coeffs(const Poly& f, Field target, Map&& map) {
  std::vector<Elem> out;
  out.reserve(f.coeffs().size());
  for (Elem c : f.coeffs()) out.push_back(map(c));
  return Poly(std::move(target), std::move(out));
}
/// Coefficientwise base-to-extension embedding along target->base().
Poly embed(const Poly& f, const Field& target);

/// Rabin's test. Throws DegreeTooSmall for constants.
bool is_irreducible_ff(const Poly& f);

struct Factor {
  Poly poly;
  unsigned multiplicity;
};

struct Factorization {
  Elem unit = 1;  // leading coefficient of the input
  std::vector<Factor> factors;  // monic irreducible, sorted canonically
};

/// Squarefree split, distinct-degree split, then Cantor-Zassenhaus.
Factorization factor_ff(const Poly& f, Rng& rng);
Factorization factor_ff(const Poly& f);

/// Distinct roots in the owner field, ascending by code.
std::vector<Elem> roots(const Poly& f, Rng& rng);
std::vector<Elem> roots(const Poly& f);

/// Lexicographic comparison from the top coefficient down, shorter first.
bool canonical_less(const Poly& a, const Poly& b);

/// Monic irreducible polynomials of the given degree, in canonical order.
std::vector<Poly> monic_irreducibles(const Field& field, unsigned degree);
/// All monic polynomials of the given degree, in canonical order.
std::vector<Poly> monic_polys(const Field& field, unsigned degree);

/// Multiplicity of the prime pi in f (f nonzero).
unsigned valuation(const Poly& f, const Poly& pi);

std::string to_string(const Poly& f, char var = 't');
Poly parse_poly(const Field& field, std::string_view text, char var = 't');

}  // namespace fflab
