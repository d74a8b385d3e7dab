#include <gtest/gtest.h>

#include <random>

#include "fflab/ultrakit.hpp"

using namespace fflab;
using namespace fflab::ultra;

namespace {

template <class Fn>
void expect_error(ErrorCode code, Fn&& fn) {
  try {
    fn();
    ADD_FAILURE() << "no error raised";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

bool trial_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Brute force: smallest r >= 1 with s! r + 1 prime.
std::uint64_t dirichlet_oracle(unsigned s) {
  std::uint64_t f = 1;
  for (unsigned i = 2; i <= s; ++i) f *= i;
  for (std::uint64_t r = 1;; ++r) {
    if (trial_prime(f * r + 1)) return f * r + 1;
  }
}

std::vector<bool> members(unsigned n, bool (*pred)(unsigned)) {
  std::vector<bool> v(n);
  for (unsigned s = 1; s <= n; ++s) v[s - 1] = pred(s);
  return v;
}

Truncation tr(unsigned n, unsigned t) { return Truncation::make(n, t); }

}  // namespace

TEST(Truncation, Validation) {
  expect_error(ErrorCode::InvalidArgument, [] { Truncation::make(5, 0); });
  expect_error(ErrorCode::InvalidArgument, [] { Truncation::make(5, 6); });
  expect_error(ErrorCode::InvalidArgument, [] { Truncation::make(5, 1, TailMode::Density, 0.0); });
  EXPECT_EQ(tr(10, 3).tail_size(), 8u);
}

TEST(Truncation, UnknownOnTailIsMixed) {
  const auto t = tr(4, 2);
  EXPECT_EQ(t.judge(std::vector<std::optional<bool>>{std::nullopt, true, true, true}), Verdict::HoldsOnTail);
  EXPECT_EQ(t.judge(std::vector<std::optional<bool>>{true, true, std::nullopt, true}), Verdict::Mixed);
  EXPECT_EQ(t.judge(std::vector<bool>{true, false, false, false}), Verdict::FailsOnTail);
}

TEST(Truncation, FilterLaws) {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 500; ++iter) {
    const unsigned n = 1 + rng() % 12;
    const auto t = tr(n, 1 + static_cast<unsigned>(rng() % n));
    std::vector<bool> a(n), b(n), both(n), neg(n);
    for (unsigned i = 0; i < n; ++i) {
      // Bias towards true so HoldsOnTail actually occurs.
      a[i] = rng() % 8 != 0;
      b[i] = rng() % 8 != 0;
      both[i] = a[i] && b[i];
      neg[i] = !a[i];
    }
    if (t.judge(a) == Verdict::HoldsOnTail && t.judge(b) == Verdict::HoldsOnTail) {
      EXPECT_EQ(t.judge(both), Verdict::HoldsOnTail);
    }
    EXPECT_EQ(t.judge(neg), complement(t.judge(a)));
  }
}

TEST(Hyperinteger, RingLawsAndMismatch) {
  Hyperinteger a{{1, 2, 3}}, b{{4, 5, 6}};
  EXPECT_EQ((a + b).v, (std::vector<std::int64_t>{5, 7, 9}));
  EXPECT_EQ((a * b - a).v, (std::vector<std::int64_t>{3, 8, 15}));
  EXPECT_EQ(a.plus(-1).v, (std::vector<std::int64_t>{0, 1, 2}));
  expect_error(ErrorCode::InvalidArgument, [&] { return a + Hyperinteger{{1}}; });
}

TEST(Hyperinteger, DividesExamples) {
  const auto fam = dirichlet_family(tr(8, 3));
  const Hyperinteger q1 = fam.icard().plus(-1);
  EXPECT_EQ(hyper_divides(1, Hyperinteger{{5, 7, 11}}, tr(3, 1)), Verdict::HoldsOnTail);
  EXPECT_EQ(hyper_divides(3, q1, fam.trunc), Verdict::HoldsOnTail);
  EXPECT_EQ(hyper_divides(3, q1, fam.trunc.with_tail(1)), Verdict::Mixed);
  Hyperinteger primes{{2, 3, 5, 7, 11, 13, 17, 19}};
  EXPECT_EQ(divisor_set(primes, tr(8, 1), 8), (std::vector<std::int64_t>{1}));
  EXPECT_EQ(divisor_set(Hyperinteger{{6, 12, 18}}, tr(3, 1), 6), (std::vector<std::int64_t>{1, 2, 3, 6}));
}

TEST(Hyperinteger, DivisibilityReflexiveAndTransitive) {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 300; ++iter) {
    const unsigned n = 1 + rng() % 8;
    const auto t = tr(n, 1 + static_cast<unsigned>(rng() % n));
    Hyperinteger a, b, c;
    for (unsigned i = 0; i < n; ++i) {
      a.v.push_back(1 + static_cast<std::int64_t>(rng() % 6));
      b.v.push_back(a.v.back() * static_cast<std::int64_t>(rng() % 4));
      c.v.push_back(b.v.back() * static_cast<std::int64_t>(1 + rng() % 3) + (rng() % 5 == 0 ? 1 : 0));
    }
    EXPECT_EQ(hyper_divides(a, a, t), Verdict::HoldsOnTail);
    if (hyper_divides(a, b, t) == Verdict::HoldsOnTail && hyper_divides(b, c, t) == Verdict::HoldsOnTail) {
      EXPECT_EQ(hyper_divides(a, c, t), Verdict::HoldsOnTail);
    }
  }
}

TEST(UnionMember, Examples) {
  const auto all = members(10, [](unsigned) { return true; });
  const auto evens = members(10, [](unsigned s) { return s % 2 == 0; });
  const auto odds = members(10, [](unsigned s) { return s % 2 == 1; });
  const auto strict = union_member_lemma(all, {evens, odds}, tr(10, 1));
  EXPECT_EQ(strict.verdict, Verdict::Mixed);
  EXPECT_FALSE(strict.part);
  const auto dens = union_member_lemma(all, {evens, odds}, Truncation::make(10, 1, TailMode::Density, 0.5));
  EXPECT_EQ(dens.verdict, Verdict::HoldsOnTail);
  EXPECT_EQ(dens.part, 1u);
  const auto dens_strict_theta = union_member_lemma(all, {evens, odds}, Truncation::make(10, 1, TailMode::Density));
  EXPECT_EQ(dens_strict_theta.part, 1u);
  EXPECT_EQ(dens_strict_theta.verdict, Verdict::Mixed);

  const auto late = members(10, [](unsigned s) { return s >= 3; });
  const auto early = members(10, [](unsigned s) { return s <= 2; });
  EXPECT_EQ(union_member_lemma(all, {late, early}, tr(10, 3)).part, 1u);
  expect_error(ErrorCode::PreconditionFailed, [&] { union_member_lemma(all, {late}, tr(10, 3)); });
}

TEST(Families, DirichletPrimes) {
  EXPECT_EQ(dirichlet_prime(1), 2u);
  EXPECT_EQ(dirichlet_prime(2), 3u);
  EXPECT_EQ(dirichlet_prime(3), 7u);
  EXPECT_EQ(dirichlet_prime(4), 73u);
  for (unsigned s = 1; s <= 8; ++s) EXPECT_EQ(dirichlet_prime(s), dirichlet_oracle(s)) << s;
  const auto fam = dirichlet_family(tr(10, 1));
  const auto card = fam.icard();
  for (unsigned n = 1; n <= 10; ++n) {
    for (unsigned s = n; s <= 10; ++s) EXPECT_EQ((card.at(s) - 1) % n, 0) << n << " " << s;
  }
  expect_error(ErrorCode::TooLarge, [] { dirichlet_family(Truncation::make(13, 1)); });
}

TEST(Families, ByNameAndNesting) {
  const auto t = tr(4, 1);
  EXPECT_EQ(family_by_name("primes", t).icard().v, (std::vector<std::int64_t>{2, 3, 5, 7}));
  EXPECT_EQ(family_by_name("constant(9)", t).icard().v, (std::vector<std::int64_t>{9, 9, 9, 9}));
  expect_error(ErrorCode::InvalidArgument, [&] { family_by_name("bogus", t); });
  expect_error(ErrorCode::ParseError, [&] { family_by_name("constant(x)", t); });

  const auto inner = primes_family(tr(3, 1));
  const auto outer = nest({inner, inner}, tr(2, 1));
  EXPECT_EQ(outer.depth(), 2u);
  EXPECT_EQ(outer.icard_nested()[1].v, (std::vector<std::int64_t>{2, 3, 5}));
  expect_error(ErrorCode::PreconditionFailed, [&] { outer.icard(); });
  expect_error(ErrorCode::NestingTooDeep, [&] { nest({outer}, tr(1, 1)); });
}

TEST(FrobeniusFixed, Examples) {
  const auto fam = table_family({2, 4, 9, 25, 49}, tr(5, 1));
  std::vector<FieldElement> ones, randoms, nontrivial;
  std::mt19937_64 rng(3);
  for (unsigned s = 1; s <= 5; ++s) {
    const Field& F = fam.field(s);
    ones.emplace_back(F, 1);
    randoms.emplace_back(F, rng() % F->order());
    nontrivial.emplace_back(F, F->order() > 2 ? 2 : 1);
  }
  EXPECT_EQ(frobenius_fixed_check(fam, ones).verdict, Verdict::HoldsOnTail);
  EXPECT_EQ(frobenius_fixed_check(fam, randoms).verdict, Verdict::HoldsOnTail);
  // a^(q+1) = a^2, which differs from a unless a is 0 or 1.
  const auto shifted = frobenius_fixed_check(fam, nontrivial, fam.icard().plus(1));
  EXPECT_EQ(shifted.verdict, Verdict::Mixed);  // index 1 has a = 1
  auto tail2 = fam;
  tail2.trunc = fam.trunc.with_tail(2);
  EXPECT_EQ(frobenius_fixed_check(tail2, nontrivial, fam.icard().plus(1)).verdict, Verdict::FailsOnTail);

  // Negative exponent: a^(-(q-2)) = a for a != 0; zero has no inverse.
  Hyperinteger neg;
  for (auto q : fam.icard().v) neg.v.push_back(-(q - 2));
  EXPECT_EQ(frobenius_fixed_check(tail2, nontrivial, neg).verdict, Verdict::HoldsOnTail);
  std::vector<FieldElement> zeros;
  for (unsigned s = 1; s <= 5; ++s) zeros.emplace_back(fam.field(s), 0);
  const auto z = frobenius_fixed_check(tail2, zeros, neg);
  EXPECT_EQ(z.verdict, Verdict::Mixed);
  EXPECT_EQ(z.unknown, (std::vector<unsigned>{2, 3, 4, 5}));  // q_1 - 2 = 0 is not negative

  std::vector<FieldElement> wrong = ones;
  wrong[2] = FieldElement(FieldSpec::of_order(3), 1);
  expect_error(ErrorCode::OwnerMismatch, [&] { frobenius_fixed_check(fam, wrong); });
}

TEST(FrobeniusFixed, Nested) {
  const auto a = primes_family(tr(3, 1));
  const auto b = constant_family(8, tr(3, 1));
  const auto outer = nest({a, b}, tr(2, 1));
  std::mt19937_64 rng(5);
  std::vector<std::vector<FieldElement>> elems(2);
  for (unsigned i = 0; i < 2; ++i) {
    for (const auto& F : outer.inner[i].fields) elems[i].emplace_back(F, rng() % F->order());
  }
  EXPECT_EQ(frobenius_fixed_check(outer, elems).verdict, Verdict::HoldsOnTail);
}

TEST(DiagonalMembership, Examples) {
  const auto fam = primes_family(tr(6, 1));
  std::vector<Poly> grow, flat;
  for (unsigned s = 1; s <= 6; ++s) {
    grow.push_back(Poly::monomial(fam.field(s), 1, s));
    flat.push_back(Poly::monomial(fam.field(s), 1, 2));
  }
  EXPECT_EQ(diagonal_membership(UltraPolyFamily::from_table(fam, flat), 2).verdict, Verdict::HoldsOnTail);
  const auto growing = UltraPolyFamily::from_table(fam, grow);
  // The tail straddles the bound in strict mode, then lies past it.
  EXPECT_EQ(diagonal_membership(growing, 2).verdict, Verdict::Mixed);
  auto late = fam;
  late.trunc = fam.trunc.with_tail(3);
  const auto r = diagonal_membership(UltraPolyFamily::from_table(late, grow), 2);
  EXPECT_EQ(r.verdict, Verdict::FailsOnTail);
  EXPECT_EQ(r.violating, (std::vector<unsigned>{3, 4, 5, 6}));
  EXPECT_EQ(diagonal_membership(UltraPolyFamily::from_integers(fam, {1, 0, 0, 1}), 3).verdict,
            Verdict::HoldsOnTail);
}

TEST(LiftPrime, Examples) {
  EXPECT_EQ(lift_prime({0, 1}, dirichlet_family(tr(6, 1))).report.verdict, Verdict::HoldsOnTail);
  // -1 is a nonsquare mod p exactly when p = 3 mod 4 (Euler's criterion).
  const std::vector<std::uint64_t> ps{3, 7, 11, 19, 23, 31};
  const auto lifted = lift_prime({1, 0, 1}, table_family(ps, tr(6, 1)));
  EXPECT_EQ(lifted.report.verdict, Verdict::HoldsOnTail);
  EXPECT_EQ(lifted.degree, 2u);
  const auto mixed = lift_prime({1, 0, 1}, primes_family(tr(5, 1)));
  EXPECT_EQ(mixed.report.verdict, Verdict::Mixed);
  EXPECT_EQ(mixed.report.violating, (std::vector<unsigned>{1, 3}));  // F_2: (t+1)^2, F_5: (t+2)(t+3)
  auto tail = primes_family(tr(5, 4));
  EXPECT_EQ(lift_prime({1, 0, 1}, tail).report.verdict, Verdict::HoldsOnTail);
  expect_error(ErrorCode::DegeneratedLeadingCoefficient, [] { lift_prime({1, 0, 2}, primes_family(tr(2, 1))); });
}

TEST(LosCheck, Examples) {
  const auto fam = table_family({3, 7, 11, 19, 23}, tr(5, 1));
  const auto lifted = lift_prime({1, 0, 1}, fam);
  EXPECT_EQ(los_check("is_irreducible", lifted.family).verdict, Verdict::HoldsOnTail);
  EXPECT_EQ(los_check("degree_equals(2)", lifted.family).verdict, Verdict::HoldsOnTail);
  EXPECT_EQ(los_check("has_root_in_base", lifted.family).verdict, Verdict::FailsOnTail);
  expect_error(ErrorCode::UnknownPredicate, [&] { los_check("is_pretty", lifted.family); });

  const auto dir = dirichlet_family(tr(4, 1));
  std::vector<BivarPoly> frob;
  for (const auto& F : dir.fields) {
    frob.push_back(BivarPoly::monomial(Poly::constant(F, 1), F->order()) -
                   BivarPoly::monomial(Poly::identity(F), 0));
  }
  const auto pf = UltraPolyFamily::from_table(dir, frob);
  EXPECT_EQ(los_check("is_separable", pf).verdict, Verdict::FailsOnTail);
  EXPECT_EQ(los_check("is_irreducible", pf).verdict, Verdict::HoldsOnTail);  // Eisenstein at t
  EXPECT_EQ(los_check("is_primitive", pf).verdict, Verdict::HoldsOnTail);

  const auto sq = UltraPolyFamily::from_integers(dir, parse_int_bivar("x^2 + 2*t*x + t^2"));
  EXPECT_EQ(los_check("has_root_in_base", sq).verdict, Verdict::HoldsOnTail);
}

TEST(LosCheck, ConsistencyGuardOnRandomFamilies) {
  std::mt19937_64 rng(17);
  const auto dir = dirichlet_family(tr(6, 2));
  for (int iter = 0; iter < 60; ++iter) {
    std::vector<std::int64_t> c(2 + rng() % 4);
    for (auto& x : c) x = static_cast<std::int64_t>(rng() % 7) - 3;
    c.back() = 1;
    const auto g = los_consistency_guard(UltraPolyFamily::from_integers(dir, c));
    EXPECT_EQ(g.disagreements, 0u);
    EXPECT_EQ(g.compared, 6u);
    IntBivar rows(2 + rng() % 2);
    for (auto& row : rows) {
      row.resize(1 + rng() % 3);
      for (auto& x : row) x = static_cast<std::int64_t>(rng() % 5) - 2;
    }
    rows.back() = {1};
    const auto gb = los_consistency_guard(UltraPolyFamily::from_integers(dir, rows));
    EXPECT_EQ(gb.disagreements, 0u) << format_int_bivar(rows);
  }
}

TEST(TransferReport, Examples) {
  const auto fam = dirichlet_family(tr(6, 1));
  const auto a = irreducibility_transfer_report(parse_int_bivar("x^2 - t"), fam);
  EXPECT_EQ(a.verdict, Verdict::HoldsOnTail);
  const auto b = irreducibility_transfer_report(parse_int_bivar("x^2 - t^2"), fam);
  EXPECT_EQ(b.verdict, Verdict::FailsOnTail);
  EXPECT_TRUE(b.bound_audits_pass);
  for (const auto& e : b.per_index) EXPECT_TRUE(e.bound_audit.has_value());
  const auto c = irreducibility_transfer_report(parse_int_bivar("x^3 - t"), fam);
  EXPECT_EQ(c.verdict, Verdict::HoldsOnTail);
  for (const auto& e : c.per_index) {
    EXPECT_NE(std::find(e.evidence.begin(), e.evidence.end(), "no-rational-root"), e.evidence.end());
  }
  const auto d = irreducibility_transfer_report(parse_int_bivar("x^4 + t^2"), fam);
  EXPECT_EQ(d.verdict, Verdict::Mixed);
  EXPECT_FALSE(d.unknown.empty());
  expect_error(ErrorCode::NotPrimitive, [&] { irreducibility_transfer_report(parse_int_bivar("t*x^2 - t"), fam); });
}

TEST(Shadows, BuildAndRoundTrip) {
  const auto fam = dirichlet_family(tr(5, 1));
  const auto sh = shadow_build(parse_int_bivar("x^2 + t"), fam);
  EXPECT_EQ(sh.degree, 2);
  EXPECT_TRUE(sh.outside.empty());
  for (const auto& e : sh.entries) {
    EXPECT_EQ(e.minpoly.degree(), 2);
    EXPECT_TRUE(e.round_trip);
  }
  const auto triv = shadow_build(parse_int_bivar("x - t"), fam);
  for (const auto& e : triv.entries) {
    ASSERT_TRUE(e.galois);
    EXPECT_EQ(e.galois->kind, GaloisDescriptor::Kind::Trivial);
  }
  expect_error(ErrorCode::NoShadow, [&] { shadow_build(parse_int_bivar("x^2 - t^2"), fam); });
  expect_error(ErrorCode::NoShadow, [&] { shadow_build(parse_int_bivar("x^2 + t"), fam, 3); });
  // Failure off the tail is recorded, not fatal.
  const auto out = shadow_build(parse_int_bivar("x^2 + 1"), primes_family(tr(4, 4)));
  EXPECT_EQ(out.outside, (std::vector<unsigned>{1, 3}));
}

TEST(Shadows, CarlitzPsiNeedsTables) {
  const auto fam = dirichlet_family(tr(4, 1));
  // One integer template reproduces psi_t = x^(q-1) + t only where q - 1 matches.
  const IntBivar tmpl = parse_int_bivar("x^2 + t");
  for (unsigned s = 1; s <= 4; ++s) {
    const bool same = reduce_int_bivar(fam.field(s), tmpl) == cyclo_poly(Poly::identity(fam.field(s)), 1);
    EXPECT_EQ(same, fam.field(s)->order() == 3) << s;
  }
  std::vector<BivarPoly> psi;
  for (const auto& F : fam.fields) psi.push_back(cyclo_poly(Poly::identity(F), 1));
  const auto sh = shadow_build(psi, fam);
  EXPECT_EQ(sh.mode, SpecMode::TableSpec);
  EXPECT_EQ(sh.degree, 0);
  for (const auto& e : sh.entries) {
    EXPECT_TRUE(e.round_trip);
    ASSERT_TRUE(e.galois);
    EXPECT_EQ(e.galois->order, fam.field(e.s)->order() - 1);
  }
}

TEST(Shadows, CyclotomicDescriptor) {
  const auto f3 = FieldSpec::of_order(3);
  const Poly t = Poly::identity(f3);
  const auto d = galois_descriptor(cyclo_poly(t, 2));
  ASSERT_TRUE(d);
  EXPECT_EQ(d->kind, GaloisDescriptor::Kind::Cyclotomic);
  EXPECT_EQ(d->order, 6u);
  EXPECT_TRUE(d->cyclic);
  const auto f2 = FieldSpec::of_order(2);
  const Poly p = parse_poly(f2, "t^2+t+1");
  const auto e = galois_descriptor(cyclo_poly(p, 1));
  ASSERT_TRUE(e);
  EXPECT_EQ(e->kind, GaloisDescriptor::Kind::Cyclotomic);
  EXPECT_EQ(e->order, 3u);
  // (F_2[t]/t^3)^x has order 4 and is generated by 1 + t.
  const auto g = galois_descriptor(cyclo_poly(Poly::identity(f2), 3));
  ASSERT_TRUE(g);
  EXPECT_EQ(g->order, 4u);
  EXPECT_TRUE(g->cyclic);
  EXPECT_FALSE(galois_descriptor(parse_bivar(f3, "x^3 + x + (t)")));
}

TEST(Shadows, GaloisAudit) {
  const auto fam = dirichlet_family(tr(6, 2));
  const auto sq = shadow_build(parse_int_bivar("x^2 + t"), fam);
  EXPECT_EQ(shadow_galois_audit(sq, {2, true}).verdict, Verdict::HoldsOnTail);
  EXPECT_EQ(shadow_galois_audit(sq, {4, true}).verdict, Verdict::FailsOnTail);
  auto fam3 = fam;
  fam3.trunc = fam.trunc.with_tail(3);
  const auto cube = shadow_build(parse_int_bivar("x^3 - t"), fam3);
  const auto audit = shadow_galois_audit(cube, {3, true});
  EXPECT_EQ(audit.verdict, Verdict::HoldsOnTail);
  EXPECT_EQ(audit.unknown, (std::vector<unsigned>{1, 2}));  // 3 does not divide 1 or 2
}

TEST(ArtinSchreier, Examples) {
  const auto dir = artin_schreier_demo(dirichlet_family(tr(10, 1)), {0, 1});
  EXPECT_EQ(dir.divisors, (std::vector<std::int64_t>{1}));
  EXPECT_TRUE(dir.conclusion_drawn);
  EXPECT_EQ(dir.conclusion, "algebraic part trivial");
  for (const auto& e : dir.per_index) EXPECT_EQ(e.value, true);

  const auto c = constant_family(5, tr(4, 1));
  expect_error(ErrorCode::PreconditionFailed, [&] { artin_schreier_demo(c, {0, 1}); });
  const auto ctl = artin_schreier_demo(c, {0, 1}, false);
  EXPECT_EQ(ctl.divisors, (std::vector<std::int64_t>{1}));  // m <= N = 4 < 5
  const auto ctl8 = artin_schreier_demo(constant_family(5, tr(8, 1)), {0, 1}, false);
  EXPECT_EQ(ctl8.divisors, (std::vector<std::int64_t>{1, 5}));
  EXPECT_FALSE(ctl8.conclusion_drawn);

  EXPECT_EQ(artin_schreier_demo(primes_family(tr(8, 1)), {0, 1}).divisors, (std::vector<std::int64_t>{1}));
}

TEST(ZhatTower, DirichletT) {
  const auto fam = dirichlet_family(tr(8, 1));
  const auto rep = zhat_tower_demo({0, 1}, 4, fam);
  EXPECT_EQ(rep.overall, Verdict::HoldsOnTail);
  ASSERT_EQ(rep.levels.size(), 4u);
  for (const auto& lv : rep.levels) {
    EXPECT_EQ(lv.divides, Verdict::HoldsOnTail) << lv.n;
    EXPECT_EQ(lv.audit, Verdict::HoldsOnTail) << lv.n;
    EXPECT_TRUE(lv.agreement) << lv.n;
    EXPECT_EQ(lv.epsilon, -1);
    EXPECT_EQ(lv.trunc.tail_start, std::max(1u, lv.n));
    std::size_t ran = 0;
    for (const auto& cc : lv.cross_checks) ran += cc.witness ? 1 : 0;
    EXPECT_GT(ran, 0u) << lv.n;
  }
  // n = 2, d = 1: x^2 - (-t) = x^2 + t.
  EXPECT_EQ(format_int_bivar(rep.levels[1].shadow_poly), format_int_bivar(parse_int_bivar("x^2 + t")));
  expect_error(ErrorCode::PreconditionFailed, [&] { zhat_tower_demo({0, 1}, 9, fam); });
}

TEST(Ramification, Examples) {
  const auto fam = dirichlet_family(tr(6, 2));
  const auto sh = shadow_build(parse_int_bivar("x^2 + t"), fam);
  const auto at_t = ramification_correspondence({0, 1}, sh);
  ASSERT_TRUE(at_t.stabilized);
  EXPECT_EQ(*at_t.stabilized, SplittingData::make(2, 1, 1, 2));
  EXPECT_NE(std::find(at_t.cases.begin(), at_t.cases.end(), "totally ramified"), at_t.cases.end());
  EXPECT_FALSE(at_t.conclusions.empty());

  const auto at_t1 = ramification_correspondence({1, 1}, sh);
  EXPECT_EQ(at_t1.unramified, Verdict::HoldsOnTail);
  EXPECT_NE(std::find(at_t1.cases.begin(), at_t1.cases.end(), "unramified"), at_t1.cases.end());

  const auto triv = ramification_correspondence({0, 1}, shadow_build(parse_int_bivar("x - t"), fam));
  ASSERT_TRUE(triv.stabilized);
  EXPECT_EQ(*triv.stabilized, SplittingData::make(1, 1, 1, 1));
}

TEST(Ramification, StabilizedTriplesSatisfyProductRule) {
  const auto fam = dirichlet_family(tr(6, 3));
  for (const char* poly : {"x^2 + t", "x^3 - t", "x^2 - t - 1", "x^3 - t^2 - t", "x^6 + t"}) {
    auto f = fam;
    if (std::string(poly).find("x^6") != std::string::npos) f.trunc = fam.trunc.with_tail(4);
    const auto sh = shadow_build(parse_int_bivar(poly), f);
    for (const std::vector<std::int64_t>& q : {std::vector<std::int64_t>{0, 1}, {1, 1}, {2, 1}, {1, 0, 1}}) {
      const auto r = ramification_correspondence(q, sh);
      for (const auto& e : r.per_index) {
        if (e.data) {
          EXPECT_EQ(e.data->e * e.data->f * e.data->g, e.data->m);
        }
      }
      if (r.stabilized) {
        EXPECT_EQ(r.stabilized->e * r.stabilized->f * r.stabilized->g, r.stabilized->m) << poly;
      }
    }
  }
  // Cyclotomic shadows psi_t over a constant field: t is totally ramified.
  const auto c = constant_family(5, tr(3, 1));
  std::vector<BivarPoly> psi(3, cyclo_poly(Poly::identity(c.field(1)), 1));
  const auto r = ramification_correspondence({0, 1}, shadow_build(psi, c));
  ASSERT_TRUE(r.stabilized);
  EXPECT_EQ(*r.stabilized, SplittingData::make(4, 1, 1, 4));
}

TEST(MaeTower, ConstantF3) {
  const auto rep = mae_tower_report(constant_family(3, tr(2, 1)), 2);
  EXPECT_FALSE(rep.partial);
  ASSERT_EQ(rep.per_index.size(), 2u);
  const auto& mi = rep.per_index[0];
  EXPECT_EQ(mi.carlitz_t_degrees, (std::vector<std::uint64_t>{2, 6}));
  EXPECT_EQ(mi.rn_degrees, (std::vector<std::uint64_t>{3, 9}));
  EXPECT_EQ(mi.constant_degrees, (std::vector<std::uint64_t>{1, 2}));
  EXPECT_EQ(mi.all_moduli.size(), 12u);
  EXPECT_EQ(mi.compositum_degree, 2u * 6u * 9u);
}

TEST(MaeTower, EdgeCases) {
  const auto empty = mae_tower_report(constant_family(3, tr(1, 1)), 0);
  EXPECT_FALSE(empty.partial);
  EXPECT_TRUE(empty.per_index[0].carlitz_t_degrees.empty());
  EXPECT_EQ(empty.per_index[0].compositum_degree, 1u);

  const auto dir = mae_tower_report(dirichlet_family(tr(6, 1)), 1);
  for (const auto& mi : dir.per_index) EXPECT_EQ(mi.carlitz_t_degrees, std::vector<std::uint64_t>{mi.q - 1});
  EXPECT_TRUE(dir.partial);  // q_6 = 2161 moduli exceed the default cap

  const auto nested = mae_tower_report(nest({constant_family(2, tr(2, 1)), constant_family(3, tr(2, 1))}, tr(2, 1)), 1);
  EXPECT_EQ(nested.depth, 2u);
  ASSERT_EQ(nested.nested.size(), 2u);
  EXPECT_EQ(nested.nested[1].per_index[0].carlitz_t_degrees, std::vector<std::uint64_t>{2});
}
