#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fflab/bivar.hpp"
#include "fflab/carlitz.hpp"
#include "fflab/splitting.hpp"

// Finite-truncation model of ultraproducts. "For almost all indices" becomes
// "for every index s >= tail_start among 1..N" (strict mode) or "for at least a
// fraction theta of the tail" (density mode). Verdicts are evidence only.
namespace fflab::ultra {

inline constexpr const char* kDisclaimer =
    "Finite truncation: a HoldsOnTail verdict is necessary-condition evidence for the ultraproduct "
    "statement, not a proof; no finite computation distinguishes a nonprincipal ultrafilter from "
    "this tail model.";

inline constexpr unsigned kMaxNesting = 2;

enum class Verdict { HoldsOnTail, FailsOnTail, Mixed };
std::string to_string(Verdict v);
Verdict complement(Verdict v);

enum class TailMode { Strict, Density };

struct Truncation {
  unsigned n = 1;
  unsigned tail_start = 1;
  TailMode mode = TailMode::Strict;
  double theta = 1.0;

  /// Validates 1 <= tail_start <= n and 0 < theta <= 1.
  static Truncation make(unsigned n, unsigned tail_start, TailMode mode = TailMode::Strict, double theta = 1.0);
  Truncation with_tail(unsigned tail_start) const;
  bool in_tail(unsigned s) const { return s >= tail_start && s <= n; }
  unsigned tail_size() const { return n - tail_start + 1; }

  /// values[s-1] is the truth value at index s; nullopt is Unknown. Any
  /// Unknown on the tail gives Mixed.
  Verdict judge(const std::vector<std::optional<bool>>& values) const;
  Verdict judge(const std::vector<bool>& values) const;
  /// Whether a membership vector is large under the current semantics.
  bool is_large(const std::vector<bool>& members) const;
  double tail_density(const std::vector<bool>& members) const;
};

/// Integer sequence (n_1, ..., n_N); index s is stored at s-1.
struct Hyperinteger {
  std::vector<std::int64_t> v;

  std::size_t size() const { return v.size(); }
  std::int64_t at(unsigned s) const { return v.at(s - 1); }
  friend Hyperinteger operator+(const Hyperinteger& a, const Hyperinteger& b);
  friend Hyperinteger operator-(const Hyperinteger& a, const Hyperinteger& b);
  friend Hyperinteger operator*(const Hyperinteger& a, const Hyperinteger& b);
  Hyperinteger plus(std::int64_t c) const;
};

/// m | n_s on the tail.
Verdict hyper_divides(std::int64_t m, const Hyperinteger& h, const Truncation& tr);
/// a_s | b_s on the tail (0 divides only 0).
Verdict hyper_divides(const Hyperinteger& a, const Hyperinteger& b, const Truncation& tr);
/// {m <= bound : m | n_s on the tail}.
std::vector<std::int64_t> divisor_set(const Hyperinteger& h, const Truncation& tr, std::int64_t bound);

struct UnionMember {
  Verdict verdict;
  std::optional<std::size_t> part;  // 1-based position in the cover
  std::vector<double> densities;    // tail density of every part
};

/// Given A = B_1 u ... u B_h with A large, finds a large part. Strict mode
/// returns the first part containing the whole tail, or Mixed when none does.
/// Density mode returns the densest part (ties to the smallest position) and
/// reports Mixed when even that part falls below theta.
UnionMember union_member_lemma(const std::vector<bool>& a, const std::vector<std::vector<bool>>& parts,
                               const Truncation& tr);

/// Per-index fields, or (depth 2) per-index depth-1 families.
struct UltraFieldFamily {
  std::string kind;  // dirichlet, primes, constant(q), table, nested
  Truncation trunc;
  std::vector<Field> fields;
  std::vector<UltraFieldFamily> inner;

  unsigned depth() const { return inner.empty() ? 1 : 2; }
  const Field& field(unsigned s) const { return fields.at(s - 1); }
  /// Depth 1: (q_s). Depth 2 throws PreconditionFailed; use icard_nested.
  Hyperinteger icard() const;
  std::vector<Hyperinteger> icard_nested() const;
};

/// Smallest prime p with p = 1 mod s!, for s <= 12.
std::uint64_t dirichlet_prime(unsigned s);
UltraFieldFamily dirichlet_family(const Truncation& tr);
UltraFieldFamily primes_family(const Truncation& tr);
UltraFieldFamily constant_family(std::uint64_t q, const Truncation& tr);
UltraFieldFamily table_family(const std::vector<std::uint64_t>& orders, const Truncation& tr);
/// A second-level family over `outer`; every inner family must have depth 1.
UltraFieldFamily nest(std::vector<UltraFieldFamily> inner, const Truncation& outer);
/// "dirichlet", "primes", "constant(q)"; table families come from table_family.
UltraFieldFamily family_by_name(const std::string& name, const Truncation& tr);

struct IndexEntry {
  unsigned s;
  std::optional<bool> value;
  std::string detail;
};

struct TailReport {
  Verdict verdict = Verdict::Mixed;
  std::vector<IndexEntry> per_index;
  std::vector<unsigned> unknown;    // indices with no decidable value
  std::vector<unsigned> violating;  // tail indices where the property fails
};

/// a_s^(e_s) = a_s on the tail, with e = icard unless given. Elements are
/// codes in the per-index fields.
TailReport frobenius_fixed_check(const UltraFieldFamily& fam, const std::vector<FieldElement>& elems,
                                 const std::optional<Hyperinteger>& exponent = std::nullopt);
/// Depth 2: the depth-1 check inside every outer index.
TailReport frobenius_fixed_check(const UltraFieldFamily& fam, const std::vector<std::vector<FieldElement>>& elems);

enum class SpecMode { IntegerSpec, TableSpec };

/// Per-index polynomials over the fields of a depth-1 family, either in A
/// (univariate in t) or in A[x].
struct UltraPolyFamily {
  SpecMode mode = SpecMode::IntegerSpec;
  UltraFieldFamily base;
  bool bivariate = false;
  std::vector<Poly> uni;
  std::vector<BivarPoly> bi;
  IntBivar integer_template;  // IntegerSpec only; univariate uses row 0
  long formal_degree = 0;

  static UltraPolyFamily from_integers(const UltraFieldFamily& base, const std::vector<std::int64_t>& coeffs);
  static UltraPolyFamily from_integers(const UltraFieldFamily& base, const IntBivar& rows);
  static UltraPolyFamily from_table(const UltraFieldFamily& base, std::vector<Poly> polys);
  static UltraPolyFamily from_table(const UltraFieldFamily& base, std::vector<BivarPoly> polys);

  const Truncation& trunc() const { return base.trunc; }
  std::string describe(unsigned s) const;
};

/// Degree <= bound at every tail index; violating lists the failures.
TailReport diagonal_membership(const UltraPolyFamily& fam, long bound);

struct LiftedPrime {
  UltraPolyFamily family;
  unsigned degree;
  TailReport report;
};
/// Per-index reductions of an integer polynomial in t; each is checked to be
/// irreducible of the formal degree.
LiftedPrime lift_prime(const std::vector<std::int64_t>& coeffs, const UltraFieldFamily& fam);

/// is_irreducible, has_root_in_base, degree_equals(d), is_separable, is_primitive.
TailReport los_check(const std::string& predicate, const UltraPolyFamily& fam);

struct GuardResult {
  std::size_t compared = 0;
  std::size_t disagreements = 0;
  std::vector<unsigned> disagreeing;
};
/// Irreducibility routed two ways per index: the certificate machinery against
/// a direct computation (factorization for A, rational roots for x-degree <= 3).
GuardResult los_consistency_guard(const UltraPolyFamily& fam);

struct TransferEntry {
  unsigned s;
  Irreducibility verdict;
  std::vector<std::string> evidence;
  std::optional<FactorBoundReport> bound_audit;
};
struct TransferReport {
  Verdict verdict;
  std::vector<TransferEntry> per_index;
  std::vector<unsigned> unknown;
  bool bound_audits_pass = true;
};
TransferReport irreducibility_transfer_report(const IntBivar& p, const UltraFieldFamily& fam);

struct GaloisDescriptor {
  enum class Kind { Trivial, Kummer, Cyclotomic } kind;
  std::uint64_t order;
  bool cyclic;
  bool abelian;
  std::string action;          // image of the generator x
  unsigned kummer_n = 0;       // Kummer: x^n = radicand
  std::optional<Poly> radicand;
  std::optional<Poly> cyclotomic_modulus;
};

struct ExpectedGroup {
  std::uint64_t order;
  bool cyclic = true;
};

struct ShadowEntry {
  unsigned s;
  BivarPoly minpoly;
  IrreducibilityCertificate certificate;
  std::optional<GaloisDescriptor> galois;
  bool round_trip;  // minimal polynomial of the class of x equals minpoly
};

struct ShadowFamily {
  UltraFieldFamily base;
  SpecMode mode;
  long degree;  // shared degree m, or 0 for a TableSpec family of varying degree
  std::vector<ShadowEntry> entries;
  std::vector<unsigned> outside;  // indices where the presentation is not a field of degree m
};

/// H_s = F_s(t)[x]/(P_s). Throws NoShadow if irreducibility is not certified on
/// the whole tail, or if the shared degree is not met there. IntegerSpec
/// families always share their formal degree; tables only when asked.
ShadowFamily shadow_build(const IntBivar& minpoly, const UltraFieldFamily& fam,
                          std::optional<long> shared_degree = std::nullopt);
ShadowFamily shadow_build(std::vector<BivarPoly> minpolys, const UltraFieldFamily& fam,
                          std::optional<long> shared_degree = std::nullopt);
/// The per-index descriptor of a certified presentation, when one is available.
std::optional<GaloisDescriptor> galois_descriptor(const BivarPoly& minpoly);

TailReport shadow_galois_audit(const ShadowFamily& sh, const ExpectedGroup& expected);

struct ArtinSchreierReport {
  Hyperinteger degrees;            // p_s
  std::vector<IndexEntry> per_index;
  std::vector<std::int64_t> divisors;
  bool distinct;                   // characteristics pairwise distinct on the tail
  bool conclusion_drawn;
  std::string conclusion;
  std::vector<std::string> reasoning;
};
/// x^(p_s) - x - a_s per index. With require_distinct, repeated characteristic
/// on the tail throws PreconditionFailed; otherwise it is reported and no
/// conclusion is drawn.
ArtinSchreierReport artin_schreier_demo(const UltraFieldFamily& fam, const std::vector<std::int64_t>& a,
                                        bool require_distinct = true);

struct CrossCheck {
  unsigned s;
  std::optional<KummerWitness> witness;
  bool agree;
  std::string note;
};

struct TowerLevel {
  unsigned n;
  int epsilon;
  Truncation trunc;        // tail starts at max(tail_start, n)
  Verdict divides;         // n | q_s - 1 on the tail
  IntBivar shadow_poly;    // x^n - epsilon P
  Verdict audit;
  TailReport audit_report;
  std::vector<CrossCheck> cross_checks;
  std::vector<unsigned> skipped;  // cross-check over cap
  bool agreement;                 // audit and witness agree wherever both ran
};

struct TowerReport {
  std::vector<std::int64_t> prime;
  unsigned degree;
  std::vector<TowerLevel> levels;
  Verdict overall;
};
TowerReport zhat_tower_demo(const std::vector<std::int64_t>& prime, unsigned nmax, const UltraFieldFamily& fam,
                            std::uint64_t cap = kDefaultUnitCap);

struct RamifyEntry {
  unsigned s;
  std::optional<SplittingData> data;
  std::string detail;
};

struct RamificationReport {
  std::vector<RamifyEntry> per_index;
  std::optional<SplittingData> stabilized;
  UnionMember stabilization;
  std::vector<SplittingData> distinct_triples;
  Verdict unramified;              // e_s = 1 on the tail
  std::vector<std::string> cases;  // unramified, ramified, totally split, totally ramified, inert
  std::vector<std::string> conclusions;
};
RamificationReport ramification_correspondence(const std::vector<std::int64_t>& prime, const ShadowFamily& sh);

struct MaeIndex {
  unsigned s;
  std::uint64_t q;
  std::vector<std::uint64_t> constant_degrees;   // F_{q^m}(t), m = 1..B
  std::vector<std::uint64_t> carlitz_t_degrees;  // Q_{t^k}, k = 1..B
  std::vector<std::uint64_t> rn_degrees;         // R_n, n = 1..B
  std::vector<std::pair<std::string, std::uint64_t>> all_moduli;  // Q_a, 1 <= deg a <= B
  std::optional<std::uint64_t> compositum_degree;  // F_{q^B} Q_{t^B} R_B
  std::vector<std::string> skipped;
};

struct MaeReport {
  unsigned bound;
  unsigned depth;
  std::vector<MaeIndex> per_index;  // depth 1
  std::vector<MaeReport> nested;    // depth 2, one report per outer index
  bool partial = false;
};
MaeReport mae_tower_report(const UltraFieldFamily& fam, unsigned bound, std::uint64_t cap = kDefaultUnitCap);

}  // namespace fflab::ultra
