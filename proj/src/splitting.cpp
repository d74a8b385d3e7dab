#include "fflab/splitting.hpp"

#include <algorithm>
#include <numeric>

namespace fflab {

SplittingData SplittingData::make(std::uint64_t e, std::uint64_t f, std::uint64_t g, std::uint64_t m) {
  if (e == 0 || f == 0 || g == 0 || e * f * g != m) {
    raise(ErrorCode::InternalError, "splitting data violates e*f*g = m: " + std::to_string(e) + "*" +
                                        std::to_string(f) + "*" + std::to_string(g) + " != " + std::to_string(m));
  }
  return {e, f, g, m};
}

PrimeOfA PrimeOfA::certify(const Poly& p) {
  if (p.degree() < 1 || !is_irreducible_ff(p)) raise(ErrorCode::NotPrime, to_string(p) + " is not prime in A");
  return PrimeOfA(monic(p));
}

SplittingData split_in_cyclotomic(const PrimeOfA& q, const Poly& a) {
  if (a.degree() < 1 || !a.is_monic()) raise(ErrorCode::InvalidArgument, "modulus must be monic of degree >= 1");
  const Poly& Q = q.poly();
  const unsigned h = valuation(a, Q);
  const Poly q_part = pow(Q, h);
  const Poly rest = div_exact(a, q_part);
  const std::uint64_t m = unit_group_order(a);
  const std::uint64_t e = h == 0 ? 1 : unit_group_order(q_part);
  const std::uint64_t f = rest.degree() == 0 ? 1 : unit_order(Q, rest);
  if (m % (e * f) != 0) raise(ErrorCode::InternalError, "e*f does not divide the degree");
  return SplittingData::make(e, f, m / (e * f), m);
}

std::vector<unsigned> factor_pattern_oracle(const PrimeOfA& q, const Poly& a, std::uint64_t cap) {
  auto pp = as_prime_power(a);
  if (!pp || !a.is_monic()) raise(ErrorCode::UseCompositum, to_string(a) + " is not a prime power");
  if ((a % q.poly()).is_zero()) raise(ErrorCode::RamifiedCase, to_string(q.poly()) + " divides " + to_string(a));
  const std::uint64_t phi = unit_group_order(a);
  if (phi > cap) raise(ErrorCode::TooLarge, "phi(" + to_string(a) + ") = " + std::to_string(phi) + " exceeds cap");
  auto rf = ResidueField::make(q.poly(), 1);
  auto fac = factor_ff(rf.reduce(cyclo_poly(pp->prime, pp->exponent)));
  std::vector<unsigned> degrees;
  for (const auto& [h, mult] : fac.factors) {
    for (unsigned i = 0; i < mult; ++i) degrees.push_back(static_cast<unsigned>(h.degree()));
  }
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

bool oracle_agrees(const SplittingData& d, const std::vector<unsigned>& degrees) {
  if (d.e != 1 || degrees.size() != d.g) return false;
  return std::all_of(degrees.begin(), degrees.end(), [&](unsigned x) { return x == d.f; });
}

KummerSplitting kummer_splitting_report(const PrimeOfA& q, unsigned n, const Poly& radicand) {
  const Field& F = q.poly().field();
  const std::uint64_t qq = F->order();
  if (n == 0 || (qq - 1) % n != 0) {
    raise(ErrorCode::WildOrInseparableCase, std::to_string(n) + " does not divide q - 1 = " + std::to_string(qq - 1));
  }
  if (radicand.is_zero()) raise(ErrorCode::ZeroInput, "radicand must be nonzero");
  KummerSplitting out;
  out.valuation = valuation(radicand, q.poly());
  const unsigned m = std::gcd(n, out.valuation);  // gcd(n, 0) = n
  const unsigned e = n / m;
  // radicand = Q^v u; z = y^(n/m) / Q^(v/m) satisfies z^m = u
  const Poly u = div_exact(radicand, pow(q.poly(), out.valuation));
  auto rf = ResidueField::make(q.poly(), 1);
  const Elem ubar = rf.reduce(u);
  const Field& R = rf.field;
  Poly zpoly = Poly::monomial(R, 1, m) - Poly::constant(R, ubar);
  for (const auto& [h, mult] : factor_ff(zpoly).factors) {
    if (mult != 1) raise(ErrorCode::InternalError, "x^m - u inseparable in the tame case");
    out.residue_degrees.push_back(static_cast<unsigned>(h.degree()));
  }
  std::sort(out.residue_degrees.begin(), out.residue_degrees.end());
  const unsigned f = out.residue_degrees.front();
  if (out.residue_degrees.back() != f) raise(ErrorCode::InternalError, "unequal residue degrees in a Galois extension");
  out.data = SplittingData::make(e, f, m / f, n);

  Poly full = Poly::monomial(R, 1, n) - Poly::constant(R, rf.reduce(radicand));
  out.oracle_squarefree = gcd(full, derivative(full)).degree() == 0;
  return out;
}

SplittingData kummer_splitting(const PrimeOfA& q, unsigned n, const Poly& radicand) {
  return kummer_splitting_report(q, n, radicand).data;
}

GeometricReport geometric_check(const PrimeOfA& p, unsigned m) {
  if (m == 0) raise(ErrorCode::InvalidArgument, "m must be positive");
  GeometricReport rep;
  rep.prime = p.poly();
  rep.m = m;
  rep.extension = construct_extension(p.poly().field(), m);
  rep.psi = cyclo_poly(p.poly(), 1);
  rep.degree = unit_group_order(p.poly());
  const BivarPoly psi_ext = embed(rep.psi, rep.extension);
  rep.preserved = true;
  for (const auto& f : factor_ff(embed(p.poly(), rep.extension)).factors) {
    bool ok = f.multiplicity == 1 && eisenstein_check(psi_ext, f.poly);
    rep.factors.push_back({f.poly, ok});
    rep.preserved = rep.preserved && ok;
  }
  rep.preserved = rep.preserved && static_cast<std::uint64_t>(psi_ext.degree()) == rep.degree;
  return rep;
}

std::vector<SplitTableRow> split_table(const Poly& a, unsigned max_degree, std::uint64_t cap) {
  if (a.degree() < 1 || !a.is_monic()) raise(ErrorCode::InvalidArgument, "modulus must be monic of degree >= 1");
  const std::uint64_t phi = unit_group_order(a);
  if (phi > cap) raise(ErrorCode::TooLarge, "phi(" + to_string(a) + ") = " + std::to_string(phi) + " exceeds cap");
  const bool prime_power = as_prime_power(a).has_value();
  std::vector<SplitTableRow> rows;
  for (unsigned d = 1; d <= max_degree; ++d) {
    for (const auto& Q : monic_irreducibles(a.field(), d)) {
      auto prime = PrimeOfA::certify(Q);
      SplitTableRow row{Q, a, split_in_cyclotomic(prime, a), std::nullopt, std::nullopt};
      if (prime_power && !(a % Q).is_zero()) {
        row.oracle = factor_pattern_oracle(prime, a, cap);
        row.agree = oracle_agrees(row.data, *row.oracle);
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace fflab
