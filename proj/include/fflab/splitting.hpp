#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fflab/carlitz.hpp"

namespace fflab {

/// Ramification index, inertia degree and number of primes above, in an
/// extension of degree m. make() enforces e*f*g = m.
struct SplittingData {
  std::uint64_t e = 1;
  std::uint64_t f = 1;
  std::uint64_t g = 1;
  std::uint64_t m = 1;

  static SplittingData make(std::uint64_t e, std::uint64_t f, std::uint64_t g, std::uint64_t m);
  friend bool operator==(const SplittingData&, const SplittingData&) = default;
};

/// A monic irreducible element of A.
class PrimeOfA {
 public:
  /// Throws NotPrime unless p is irreducible; the stored generator is monic.
  static PrimeOfA certify(const Poly& p);
  const Poly& poly() const { return p_; }
  unsigned degree() const { return static_cast<unsigned>(p_.degree()); }

 private:
  explicit PrimeOfA(Poly p) : p_(std::move(p)) {}
  Poly p_;
};

/// Splitting of Q in Q_a by the order formulas. Composite a is handled through
/// its prime-power components (e from the Q-part, f from the order of Q
/// modulo the prime-to-Q part).
SplittingData split_in_cyclotomic(const PrimeOfA& q, const Poly& a);

/// Degrees of the irreducible factors of psi_a mod Q, ascending. a must be a
/// prime power (UseCompositum otherwise) not divisible by Q (RamifiedCase).
std::vector<unsigned> factor_pattern_oracle(const PrimeOfA& q, const Poly& a, std::uint64_t cap = kDefaultUnitCap);

/// Splitting of Q in F(radicand^(1/n)) for n | q - 1.
struct KummerSplitting {
  SplittingData data;
  unsigned valuation;            // v_Q(radicand)
  std::vector<unsigned> residue_degrees;  // factor degrees of x^gcd(n,v) - u mod Q
  bool oracle_squarefree;        // x^n - radicand mod Q squarefree (v = 0 only)
};
KummerSplitting kummer_splitting_report(const PrimeOfA& q, unsigned n, const Poly& radicand);
SplittingData kummer_splitting(const PrimeOfA& q, unsigned n, const Poly& radicand);

struct GeometricFactor {
  Poly factor;
  bool eisenstein;
};

struct GeometricReport {
  Poly prime;
  unsigned m;
  Field extension;
  BivarPoly psi;
  std::vector<GeometricFactor> factors;
  std::uint64_t degree;  // q^d - 1, the degree of psi_P
  bool preserved;        // psi_P Eisenstein at every factor of P over F_{q^m}
};

/// Checks that Q_P stays of degree q^d - 1 after extending constants to F_{q^m}.
GeometricReport geometric_check(const PrimeOfA& p, unsigned m);

struct SplitTableRow {
  Poly q;
  Poly a;
  SplittingData data;
  std::optional<std::vector<unsigned>> oracle;  // absent when ramified or composite
  std::optional<bool> agree;
};

/// One row per monic prime Q with deg Q <= max_degree, in canonical order.
std::vector<SplitTableRow> split_table(const Poly& a, unsigned max_degree, std::uint64_t cap = kDefaultUnitCap);

/// Oracle agreement: all degrees equal f and their count is g.
bool oracle_agrees(const SplittingData& d, const std::vector<unsigned>& degrees);

}  // namespace fflab
