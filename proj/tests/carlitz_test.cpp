#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "fflab/carlitz.hpp"
#include "fflab/numtheory.hpp"

using namespace fflab;

namespace {

BivarPoly B(const Field& f, const char* s) { return parse_bivar(f, s); }
Poly T(const Field& f, const char* s) { return parse_poly(f, s); }

template <class Fn>
void expect_error(ErrorCode code, Fn&& fn) {
  try {
    fn();
    ADD_FAILURE() << "no error raised";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

Poly random_t(const Field& f, unsigned max_deg, Rng& rng) {
  std::vector<Elem> c(max_deg + 1);
  for (auto& x : c) x = rng() % f->order();
  return Poly(f, c);
}

Poly random_nonzero(const Field& f, unsigned max_deg, Rng& rng) {
  Poly p = random_t(f, max_deg, rng);
  return p.is_zero() ? Poly::constant(f, 1) : p;
}

// f(g) in A[x] by Horner, without any twisted arithmetic.
BivarPoly compose(const BivarPoly& f, const BivarPoly& g) {
  BivarPoly acc(f.field());
  for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = acc * g + BivarPoly::monomial(f.coeffs()[i], 0);
  return acc;
}

// C_a(x) from C_t(x) = t x + x^q and the homomorphism rules, by composition.
BivarPoly carlitz_by_composition(const Poly& a) {
  const Field& f = a.field();
  BivarPoly ct = BivarPoly::monomial(Poly::identity(f), 1) + BivarPoly::monomial(Poly::constant(f, 1), f->order());
  BivarPoly x = BivarPoly::monomial(Poly::constant(f, 1), 1);
  BivarPoly acc(f);
  BivarPoly power = x;  // C_{t^i}
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (i > 0) power = compose(ct, power);
    acc = acc + power.scaled(Poly::constant(f, a.coeffs()[i]));
  }
  return acc;
}

}  // namespace

TEST(CarlitzOf, Examples) {
  auto f3 = FieldSpec::of_order(3);
  EXPECT_EQ(carlitz_of(T(f3, "t")).qpolynomial(), B(f3, "x^3 + (t)*x"));
  EXPECT_EQ(carlitz_of(T(f3, "1")).qpolynomial(), B(f3, "x"));
  auto f2 = FieldSpec::of_order(2);
  EXPECT_EQ(carlitz_of(T(f2, "t^2")).qpolynomial(), B(f2, "x^4 + (t^2+t)*x^2 + (t^2)*x"));
  expect_error(ErrorCode::ZeroInput, [&] { carlitz_of(Poly(f2)); });
}

TEST(CarlitzOf, AgreesWithCompositionOracle) {
  Rng rng(31);
  for (auto q : {2u, 3u, 4u}) {
    auto f = FieldSpec::of_order(q);
    for (int i = 0; i < 40; ++i) {
      Poly a = random_nonzero(f, q == 4 ? 2 : 3, rng);
      auto img = carlitz_of(a);
      auto qp = img.qpolynomial();
      EXPECT_EQ(qp, carlitz_by_composition(a)) << to_string(a);
      EXPECT_EQ(img.twisted.coeffs()[0], a);
      EXPECT_EQ(static_cast<std::uint64_t>(qp.degree()), nt::checked_pow(q, static_cast<unsigned>(a.degree())));
      EXPECT_EQ(qp.lead(), Poly::constant(f, a.lead()));
    }
  }
}

TEST(TwistedPoly, RingLaws) {
  Rng rng(5);
  for (auto q : {2u, 3u}) {
    auto f = FieldSpec::of_order(q);
    auto rand_tp = [&] {
      std::vector<Poly> c;
      for (int i = 0, n = 1 + rng() % 3; i < n; ++i) c.push_back(random_t(f, 2, rng));
      return TwistedPoly(f, c);
    };
    for (int i = 0; i < 100; ++i) {
      auto a = rand_tp(), b = rand_tp(), c = rand_tp();
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ((a + b) * c, a * c + b * c);
    }
    // tau * t = t^q * tau
    TwistedPoly tau(f, {Poly(f), Poly::constant(f, 1)});
    TwistedPoly t(f, {Poly::identity(f)});
    EXPECT_EQ(tau * t, TwistedPoly(f, {Poly(f), Poly::monomial(f, 1, q)}));
  }
}

TEST(CarlitzEval, Examples) {
  auto f3 = FieldSpec::of_order(3);
  QuotientAlgebra qt(B(f3, "x^2 + t"));
  auto lambda = qt.generator();
  EXPECT_TRUE(carlitz_eval(carlitz_of(T(f3, "t")), qt, lambda).is_zero());
  EXPECT_EQ(qt.pow(lambda, 3), qt.reduce(B(f3, "(2*t)*x")));
  EXPECT_TRUE(carlitz_eval(carlitz_of(T(f3, "t^2+2")), qt, BivarPoly(f3)).is_zero());

  auto rf = ResidueField::make(T(f3, "t^2+1"), 3);
  EXPECT_EQ(carlitz_eval(carlitz_of(T(f3, "t+1")), rf, 0), 0u);

  auto f2 = FieldSpec::of_order(2);
  expect_error(ErrorCode::OwnerMismatch, [&] { carlitz_eval(carlitz_of(T(f2, "t")), qt, lambda); });
}

TEST(CarlitzEval, HomomorphismLaws) {
  Rng rng(500);
  int trials = 0;
  for (auto q : {2u, 3u}) {
    auto f = FieldSpec::of_order(q);
    auto rf = ResidueField::make(monic_irreducibles(f, 3).back(), 2);
    const std::uint64_t size = rf.field->order();
    for (int i = 0; i < 250; ++i, ++trials) {
      Poly a = random_nonzero(f, 3, rng);
      Poly b = random_nonzero(f, 3, rng);
      Elem beta = rng() % size;
      Elem gamma = rng() % size;
      auto ca = carlitz_of(a), cb = carlitz_of(b);
      const auto& F = *rf.field;
      Elem lhs_sum = a + b == Poly(f) ? 0 : carlitz_eval(carlitz_of(a + b), rf, beta);
      EXPECT_EQ(lhs_sum, F.add(carlitz_eval(ca, rf, beta), carlitz_eval(cb, rf, beta)));
      EXPECT_EQ(carlitz_eval(carlitz_of(a * b), rf, beta), carlitz_eval(ca, rf, carlitz_eval(cb, rf, beta)));
      // F_q-linearity in beta
      Elem c = rf.reduce(Poly::constant(f, 1 + rng() % (q - 1)));
      EXPECT_EQ(carlitz_eval(ca, rf, F.add(F.mul(c, beta), gamma)),
                F.add(F.mul(c, carlitz_eval(ca, rf, beta)), carlitz_eval(ca, rf, gamma)));
    }
  }
  EXPECT_EQ(trials, 500);
}

TEST(CarlitzEval, HomomorphismInCyclotomicAlgebra) {
  Rng rng(9);
  auto f = FieldSpec::of_order(3);
  QuotientAlgebra alg(cyclo_poly(T(f, "t^2+1"), 1));
  for (int i = 0; i < 20; ++i) {
    Poly a = random_nonzero(f, 2, rng);
    Poly b = random_nonzero(f, 2, rng);
    BivarPoly beta(f, {random_t(f, 1, rng), random_t(f, 1, rng), random_t(f, 1, rng)});
    EXPECT_EQ(carlitz_eval(carlitz_of(a * b), alg, beta),
              carlitz_eval(carlitz_of(a), alg, carlitz_eval(carlitz_of(b), alg, beta)));
  }
}

TEST(CarlitzTorsion, RootCountInSplittingField) {
  // At a prime Q = 1 + a*k the Frobenius acts trivially on a-torsion, so C_a
  // splits completely over A/Q.
  int checked = 0;
  for (auto q : {2u, 3u, 4u}) {
    auto f = FieldSpec::of_order(q);
    for (unsigned d = 1; nt::checked_pow(q, d) <= 64; ++d) {
      for (const auto& a : monic_polys(f, d)) {
        auto cx = carlitz_of(a).qpolynomial();
        EXPECT_FALSE(cx.coeff(1).is_zero());
        std::optional<Poly> Q;
        for (unsigned e = 1; !Q && e <= 4; ++e) {
          for (const auto& k : monic_polys(f, e)) {
            Poly cand = a * k + Poly::constant(f, 1);
            if (is_irreducible_ff(cand)) {
              Q = cand;
              break;
            }
          }
        }
        ASSERT_TRUE(Q.has_value()) << to_string(a);
        auto rf = ResidueField::make(*Q, 1);
        EXPECT_EQ(roots(rf.reduce(cx)).size(), nt::checked_pow(q, d)) << to_string(a);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 50);
}

TEST(CycloPoly, Examples) {
  auto f3 = FieldSpec::of_order(3);
  EXPECT_EQ(cyclo_poly(T(f3, "t"), 1), B(f3, "x^2 + t"));
  auto f2 = FieldSpec::of_order(2);
  EXPECT_EQ(cyclo_poly(T(f2, "t"), 1), B(f2, "x + t"));
  EXPECT_EQ(cyclo_poly(T(f2, "t^2+t+1"), 1), B(f2, "x^3 + (t^2+t+1)*x + (t^2+t+1)"));
  expect_error(ErrorCode::NotPrime, [&] { cyclo_poly(T(f2, "t^2+1"), 1); });
}

TEST(CycloPoly, EisensteinAndDegree) {
  int checked = 0;
  for (auto q : {2u, 3u}) {
    auto f = FieldSpec::of_order(q);
    for (unsigned d = 1; nt::checked_pow(q, d) - 1 <= 200; ++d) {
      for (const auto& P : monic_irreducibles(f, d)) {
        for (unsigned h = 1;; ++h) {
          const std::uint64_t phi = unit_group_order(pow(P, h));
          if (phi > 200) break;
          auto psi = cyclo_poly(P, h);
          EXPECT_EQ(static_cast<std::uint64_t>(psi.degree()), phi);
          EXPECT_TRUE(psi.is_monic());
          EXPECT_TRUE(eisenstein_check(psi, P)) << to_string(P) << "^" << h;
          EXPECT_EQ(psi.coeff(0), P);
          ++checked;
        }
      }
    }
  }
  EXPECT_GT(checked, 20);
}

TEST(UnitGroup, Examples) {
  auto f3 = FieldSpec::of_order(3);
  auto u1 = unit_group(T(f3, "t"));
  EXPECT_EQ(u1.order, 2u);
  ASSERT_TRUE(u1.generator.has_value());
  EXPECT_EQ(*u1.generator, T(f3, "2"));

  auto f2 = FieldSpec::of_order(2);
  auto u2 = unit_group(T(f2, "t^2"));
  EXPECT_EQ(u2.order, 2u);
  EXPECT_EQ(u2.elements, (std::vector<Poly>{T(f2, "1"), T(f2, "t+1")}));

  auto u3 = unit_group(T(f2, "t^2+t+1"));
  EXPECT_EQ(u3.order, 3u);
  ASSERT_TRUE(u3.generator.has_value());
  EXPECT_EQ(*u3.generator, T(f2, "t"));

  expect_error(ErrorCode::TooLarge, [&] { unit_group(T(f3, "t^7"), 512); });
}

TEST(UnitGroup, OrderFormulaAndCyclicity) {
  for (auto q : {2u, 3u, 4u}) {
    auto f = FieldSpec::of_order(q);
    for (unsigned d = 1; nt::checked_pow(q, d) <= 81; ++d) {
      for (const auto& a : monic_polys(f, d)) {
        auto g = unit_group(a, 1000);
        // q^deg a * prod (1 - q^-deg P)
        double expect = std::pow(double(q), double(d));
        for (const auto& fe : factor_ff(a).factors) expect *= 1.0 - std::pow(double(q), -double(fe.poly.degree()));
        EXPECT_EQ(g.order, static_cast<std::uint64_t>(std::llround(expect)));
        if (is_irreducible_ff(a)) {
          EXPECT_TRUE(g.generator.has_value());
        }
      }
    }
  }
}

TEST(BuildCyclotomic, Examples) {
  auto f3 = FieldSpec::of_order(3);
  auto qt = build_cyclotomic(T(f3, "t"));
  EXPECT_EQ(qt.psi(), B(f3, "x^2 + t"));
  EXPECT_EQ(qt.phi(), 2u);
  EXPECT_EQ(qt.conjugate(T(f3, "1")), B(f3, "x"));
  EXPECT_EQ(qt.conjugate(T(f3, "2")), B(f3, "2*x"));

  auto f2 = FieldSpec::of_order(2);
  auto qp = build_cyclotomic(T(f2, "t^2+t+1"));
  EXPECT_EQ(qp.phi(), 3u);
  EXPECT_EQ(qp.units().elements, (std::vector<Poly>{T(f2, "1"), T(f2, "t"), T(f2, "t+1")}));

  auto qs = build_cyclotomic(T(f2, "t^2"));
  EXPECT_EQ(qs.phi(), 2u);
  EXPECT_EQ(qs.units().elements, (std::vector<Poly>{T(f2, "1"), T(f2, "t+1")}));

  expect_error(ErrorCode::UseCompositum, [&] { build_cyclotomic(T(f2, "t^2+t")); });
  auto rec = cyclotomic_compositum(T(f2, "t^3+t"));  // t (t+1)^2
  EXPECT_EQ(rec.degree, 2u);
  EXPECT_EQ(rec.components.size(), 2u);
}

TEST(BuildCyclotomic, GaloisTableIsFaithfulTransitiveAction) {
  int fields = 0;
  for (auto q : {2u, 3u, 4u, 5u}) {
    auto f = FieldSpec::of_order(q);
    for (unsigned d = 1; d <= 4; ++d) {
      for (const auto& P : monic_irreducibles(f, d)) {
        for (unsigned h = 1; h <= 3; ++h) {
          Poly a = pow(P, h);
          if (unit_group_order(a) > 60) break;
          auto cyc = build_cyclotomic(a, 512, 0);
          const auto& alg = cyc.algebra();
          const auto& units = cyc.units().elements;
          ASSERT_EQ(cyc.table().size(), cyc.phi());
          ASSERT_EQ(static_cast<std::uint64_t>(cyc.psi().degree()), cyc.phi());
          for (const auto& e : cyc.table()) {
            if (cyc.phi() <= 24) {
              EXPECT_TRUE(alg.evaluate(cyc.psi(), e).is_zero());
            }
            EXPECT_TRUE(carlitz_eval(carlitz_of(a), alg, e).is_zero());
            EXPECT_FALSE(carlitz_eval(carlitz_of(div_exact(a, P)), alg, e).is_zero());
          }
          for (std::size_t i = 0; i < cyc.table().size(); ++i)
            for (std::size_t j = i + 1; j < cyc.table().size(); ++j) EXPECT_FALSE(cyc.table()[i] == cyc.table()[j]);
          // entry(b1 b2) = sigma_b1 applied to entry(b2)
          for (std::size_t i = 0; i < units.size(); i += 1 + units.size() / 7) {
            for (std::size_t j = 0; j < units.size(); j += 1 + units.size() / 5) {
              EXPECT_EQ(cyc.conjugate(units[i] * units[j]), cyc.apply(units[i], cyc.conjugate(units[j])));
            }
          }
          ++fields;
        }
      }
    }
  }
  EXPECT_GT(fields, 15);
}

TEST(Resolvent, Examples) {
  auto f3 = FieldSpec::of_order(3);
  auto qt = build_cyclotomic(T(f3, "t"));
  auto trivial = resolvent_fixed_field(qt, {T(f3, "1")});
  EXPECT_EQ(trivial.eta, B(f3, "x"));
  EXPECT_EQ(trivial.minpoly, qt.psi());
  EXPECT_EQ(qt.algebra().pow(trivial.eta, 2), B(f3, "2*t"));

  auto f2 = FieldSpec::of_order(2);
  expect_error(ErrorCode::NotASubgroup, [&] {
    resolvent_fixed_field(build_cyclotomic(T(f2, "t^2+t+1")), {T(f2, "1"), T(f2, "t")});
  });
}

TEST(Resolvent, NormIdentity) {
  for (auto q : {2u, 3u, 4u, 5u}) {
    auto f = FieldSpec::of_order(q);
    for (unsigned d = 1; nt::checked_pow(q, d) - 1 <= 80; ++d) {
      for (const auto& P : monic_irreducibles(f, d)) {
        auto cyc = build_cyclotomic(P);
        auto full = resolvent_fixed_field(cyc, cyc.units().elements);
        Poly expect = cyc.phi() % 2 == 0 || f->characteristic() == 2 ? P : -P;
        EXPECT_EQ(full.eta, BivarPoly::monomial(expect, 0)) << to_string(P);
        EXPECT_EQ(full.minpoly.degree(), 1);
        EXPECT_EQ(full.index, 1u);
        auto triv = resolvent_fixed_field(cyc, {Poly::constant(f, 1)});
        EXPECT_EQ(triv.minpoly, cyc.psi());
        EXPECT_TRUE(triv.generates);
      }
    }
  }
}

TEST(KummerWitness, Examples) {
  auto f3 = FieldSpec::of_order(3);
  auto w1 = kummer_witness(T(f3, "t"), 2);
  EXPECT_EQ(w1.epsilon, -1);
  EXPECT_EQ(w1.eta, B(f3, "x"));
  EXPECT_EQ(w1.eta_power, B(f3, "2*t"));
  ASSERT_TRUE(w1.ratio.has_value());
  EXPECT_EQ(*w1.ratio, 1u);
  EXPECT_TRUE(w1.exact_equality);

  auto f5 = FieldSpec::of_order(5);
  auto w2 = kummer_witness(T(f5, "t"), 2);
  EXPECT_TRUE(w2.power_in_base);
  ASSERT_TRUE(w2.ratio.has_value());
  EXPECT_NE(*w2.ratio, 0u);
  EXPECT_TRUE(w2.ratio_is_unit);
  EXPECT_EQ(w2.minpoly_degree, 2u);

  auto w3 = kummer_witness(T(f5, "t"), 4);
  EXPECT_EQ(w3.eta, B(f5, "x"));
  EXPECT_EQ(w3.eta_power, B(f5, "4*t"));
  EXPECT_TRUE(w3.exact_equality);

  expect_error(ErrorCode::NotADivisor, [&] { kummer_witness(T(f5, "t"), 3); });
}

TEST(KummerWitness, ExactEqualityForDegreeOnePrimes) {
  for (auto q : {3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u}) {
    auto f = FieldSpec::of_order(q);
    for (unsigned n = 2; n <= q - 1; ++n) {
      if ((q - 1) % n != 0) continue;
      auto w = kummer_witness(Poly::identity(f), n);
      EXPECT_TRUE(w.power_in_base) << q << " " << n;
      EXPECT_TRUE(w.exact_equality) << q << " " << n;
      EXPECT_EQ(w.minpoly_degree, n);
    }
  }
}

TEST(InfinityTwist, Examples) {
  EXPECT_EQ(infinity_twist_rn_degree(2, 1), 2u);
  EXPECT_EQ(infinity_twist_rn_degree(3, 1), 3u);
  EXPECT_EQ(infinity_twist_rn_degree(3, 2), 9u);
  auto big = infinity_twist_rn(3, 9);
  EXPECT_FALSE(big.enumerated);
  EXPECT_EQ(big.degree, 19683u);
  auto small = infinity_twist_rn(4, 2);
  EXPECT_TRUE(small.enumerated);
  EXPECT_EQ(small.unit_count, 48u);
}
