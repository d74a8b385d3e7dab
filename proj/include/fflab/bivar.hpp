#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fflab/poly.hpp"
#include "fflab/ratfunc.hpp"

namespace fflab {

/// Element of A[x] with A = F_q[t]: x-coefficients are polynomials in t.
class BivarPoly {
 public:
  BivarPoly() = default;
  explicit BivarPoly(Field field) : field_(std::move(field)) {}
  BivarPoly(Field field, std::vector<Poly> coeffs);

  static BivarPoly monomial(const Poly& c, std::size_t k);
  /// Coefficients given as [x-power][t-power] integers, reduced mod p.
  static BivarPoly from_ints(Field field, const std::vector<std::vector<std::int64_t>>& coeffs);

  const Field& field() const { return field_; }
  const std::vector<Poly>& coeffs() const { return c_; }
  long degree() const { return c_.empty() ? Poly::kNegInfinity : static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
  const Poly& lead() const { return c_.back(); }
  Poly coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Poly(field_); }
  /// Largest t-degree among the coefficients (kNegInfinity for zero).
  long max_t_degree() const;

  BivarPoly& operator+=(const BivarPoly& o);
  BivarPoly& operator-=(const BivarPoly& o);
  BivarPoly operator-() const;
  BivarPoly scaled(const Poly& c) const;
  BivarPoly shifted(std::size_t k) const;

  friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
  friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }
  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
  friend bool operator==(const BivarPoly& a, const BivarPoly& b) { return a.c_ == b.c_; }

 private:
  void normalize();

  Field field_;
  std::vector<Poly> c_;
};

BivarPoly derivative_x(const BivarPoly& f);
/// Division by a polynomial monic in x.
std::pair<BivarPoly, BivarPoly> divmod_monic(const BivarPoly& f, const BivarPoly& g);
/// Exact division in A[x]; nullopt when g does not divide f.
std::optional<BivarPoly> try_div_exact(const BivarPoly& f, const BivarPoly& g);
BivarPoly pseudo_remainder(const BivarPoly& f, const BivarPoly& g);
/// Monic gcd over A of the x-coefficients.
Poly content(const BivarPoly& f);
BivarPoly primitive_part(const BivarPoly& f);
/// gcd in F_q(t)[x], returned primitive with monic leading t-coefficient.
BivarPoly gcd_over_fraction_field(const BivarPoly& f, const BivarPoly& g);
bool is_separable(const BivarPoly& f);
/// f(r) for r in F_q(t).
RatFunc eval(const BivarPoly& f, const RatFunc& r);

struct PrimitivityResult {
  bool primitive;
  Poly content;
};
PrimitivityResult biv_primitive_check(const BivarPoly& p);

/// Throws NotPrime when pi is not irreducible over F_q.
bool eisenstein_check(const BivarPoly& p, const Poly& pi);

/// floor(M(2n-1)/n): degree bound for the coefficients of any factor of a
/// primitive x-degree-n polynomial whose coefficients have t-degree <= M.
unsigned long newton_factor_bound(unsigned long m, unsigned long n);

struct FactorBoundEntry {
  char factor;  // 'F' or 'G'
  std::size_t x_power;
  long t_degree;
  bool within;
};

struct FactorBoundReport {
  long max_degree;  // M
  long x_degree;    // n
  unsigned long bound;
  std::vector<FactorBoundEntry> entries;
  bool pass;
};

FactorBoundReport verify_factor_bound(const BivarPoly& p, const BivarPoly& f, const BivarPoly& g);

/// Roots of f in F_q(t) by the rational root theorem over the UFD A.
std::vector<RatFunc> rational_roots(const BivarPoly& f);

enum class Irreducibility { Irreducible, Reducible, Unknown };

struct IrreducibilityCertificate {
  Irreducibility verdict = Irreducibility::Unknown;
  /// Every certificate that applied, e.g. "linear", "eisenstein(t)",
  /// "no-rational-root", "rational-root(t)".
  std::vector<std::string> evidence;
  /// Split found through a rational root: p = factor * cofactor in A[x].
  std::optional<std::pair<BivarPoly, BivarPoly>> factorization;
};

/// Irreducibility over F_q(t) using the supported certificate families:
/// Eisenstein at a prime factor of the constant term and the rational root
/// test (decisive for x-degree <= 3). Anything else is reported Unknown.
IrreducibilityCertificate certify_irreducible(const BivarPoly& p);

/// Residue field A/Q, realized inside F_{q^(deg Q * extra)} by sending t to
/// the smallest root of Q there.
struct ResidueField {
  Poly prime;
  Field field;
  Elem t_image = 0;

  static ResidueField make(const Poly& prime, unsigned extra_degree = 1);
  Elem reduce(const Poly& a) const;
  /// Reduces every x-coefficient; the result is a polynomial in x.
  Poly reduce(const BivarPoly& f) const;
};

/// Coefficientwise embed into an extension of the constant field.
BivarPoly embed(const BivarPoly& f, const Field& target);

/// "x^2 + (t)*x + (t+1)"
std::string to_string(const BivarPoly& f);
/// Accepts the canonical form above as well as products such as "t*x^2 - t^2".
BivarPoly parse_bivar(const Field& field, std::string_view text);

/// Integer template of an element of Z[t][x]: rows[i] holds the t-coefficients
/// of x^i. Used to specify one polynomial across fields of varying characteristic.
using IntBivar = std::vector<std::vector<std::int64_t>>;
IntBivar parse_int_bivar(std::string_view text);
BivarPoly reduce_int_bivar(const Field& field, const IntBivar& rows);
std::string format_int_bivar(const IntBivar& rows);

}  // namespace fflab
