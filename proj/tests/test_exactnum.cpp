#include "mzeta/exactnum.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

using namespace mzeta;

namespace {

const PadicContext& ctx3() { return PadicContext::get(3); }
const PadicContext& ctx5() { return PadicContext::get(5); }

std::complex<double> e(double r) { return std::polar(1.0, 2 * M_PI * r); }

bool near(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < 1e-9; }

}  // namespace

TEST(Padic, RejectsEvenAndComposite) {
  EXPECT_THROW(PadicContext::get(2), std::invalid_argument);
  EXPECT_THROW(PadicContext::get(9), std::invalid_argument);
  EXPECT_THROW(PadicContext::get(1), std::invalid_argument);
  EXPECT_EQ(PadicContext::get(7).q(), 7);
}

TEST(Padic, Valuation) {
  EXPECT_EQ(padic::valuation(Rational(1), 3).value(), 0);
  EXPECT_EQ(padic::valuation(Rational(9), 3).value(), 2);
  EXPECT_EQ(padic::valuation(make_rational(5, 27), 3).value(), -3);
  EXPECT_TRUE(padic::valuation(Rational(0), 3).is_infinite());
}

TEST(Padic, FracPartAndResidue) {
  const auto& c = ctx3();
  EXPECT_EQ(padic::frac_part(make_rational(1, 5) + make_rational(1, 9), c), make_rational(1, 9));
  EXPECT_EQ(padic::frac_part(make_rational(-1, 3), c), make_rational(2, 3));
  EXPECT_EQ(padic::frac_part(Rational(7), c), Rational(0));
  // 1/2 ≡ 5 mod 9
  EXPECT_EQ(padic::residue(make_rational(1, 2), c, 2), 5);
  EXPECT_THROW(padic::residue(make_rational(1, 3), c, 1), std::domain_error);
}

TEST(Padic, FracPartProperty) {
  const auto& c = ctx5();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-2000, 2000), den(1, 60);
  for (int i = 0; i < 500; ++i) {
    const Rational x = make_rational(num(rng), den(rng));
    const Rational f = padic::frac_part(x, c);
    EXPECT_TRUE(padic::is_integral(x - f, 5)) << x;
    EXPECT_GE(f, 0);
    EXPECT_LT(f, 1);
    // f has a p-power denominator
    Integer d = f.get_den();
    while (d % 5 == 0) d /= 5;
    EXPECT_EQ(d, 1) << x;
  }
}

TEST(Padic, UnitPart) {
  EXPECT_EQ(padic::unit_part(make_rational(-10, 27), 3), Rational(-10));
  EXPECT_EQ(padic::unit_part(make_rational(18, 5), 3), make_rational(2, 5));
}

TEST(Cyclotomic, RootOfUnitySums) {
  const auto& c = ctx3();
  EXPECT_EQ(CycValue::root_of_unity(c, make_rational(1, 3)) + CycValue::root_of_unity(c, make_rational(2, 3)),
            CycValue(-1));
  CycValue s;
  for (long j = 0; j < 27; ++j) s += CycValue::root_of_unity(c, make_rational(j, 27));
  EXPECT_TRUE(s.is_zero());
  EXPECT_FALSE(CycValue::root_of_unity(c, make_rational(1, 27)).is_zero());
}

TEST(Cyclotomic, SqrtQ) {
  const auto& c = ctx3();
  EXPECT_EQ(CycValue::sqrt_q(c) * CycValue::sqrt_q(c), CycValue(3));
  EXPECT_EQ(CycValue::q_half_power(c, 3) * CycValue::q_half_power(c, -1), CycValue(3));
  EXPECT_EQ(CycValue::q_half_power(c, -2), CycValue(make_rational(1, 3)));
  // √q is a Gauss sum, so the graded and flattened forms agree numerically.
  EXPECT_TRUE(near(CycValue::sqrt_q(c).flattened().embed_float(), {std::sqrt(3.0), 0}));
  EXPECT_TRUE(near(CycValue::sqrt_q(ctx5()).flattened().embed_float(), {std::sqrt(5.0), 0}));
}

TEST(Cyclotomic, Inverse) {
  const auto& c = ctx3();
  EXPECT_EQ(CycValue::imaginary_unit().inverse(), -CycValue::imaginary_unit());
  EXPECT_EQ(CycValue(1) / CycValue::root_of_unity(c, make_rational(1, 4)),
            CycValue::root_of_unity(c, make_rational(3, 4)));
  const CycValue x = CycValue(2) + CycValue::root_of_unity(c, make_rational(1, 9)).scaled(make_rational(3, 7)) +
                     CycValue::sqrt_q(c);
  EXPECT_EQ(x * x.inverse(), CycValue(1));
  EXPECT_THROW(CycValue().inverse(), std::domain_error);
}

TEST(Cyclotomic, OutsideField) {
  EXPECT_THROW(CycValue::root_of_unity(ctx3(), make_rational(1, 5)), std::domain_error);
}

TEST(Cyclotomic, FloatEmbeddingIsRingHomomorphism) {
  const auto& c = ctx3();
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> k(0, 26), coef(-4, 4);
  auto random_value = [&] {
    CycValue v;
    std::complex<double> f;
    for (int i = 0; i < 4; ++i) {
      const long kk = k(rng);
      const long cc = coef(rng);
      v += CycValue::root_of_unity(c, make_rational(kk, 27)).scaled(Rational(cc));
      f += static_cast<double>(cc) * e(static_cast<double>(kk) / 27);
    }
    if (coef(rng) > 0) {
      v += CycValue::sqrt_q(c);
      f += std::sqrt(3.0);
    }
    return std::make_pair(v, f);
  };
  for (int i = 0; i < 100; ++i) {
    const auto [a, fa] = random_value();
    const auto [b, fb] = random_value();
    EXPECT_TRUE(near((a * b).embed_float(), fa * fb));
    EXPECT_TRUE(near((a + b).embed_float(), fa + fb));
    EXPECT_TRUE(near(a.conj().embed_float(), std::conj(fa)));
    if (!a.is_zero()) {
      EXPECT_TRUE(near((b / a).embed_float(), fb / fa));
    }
    EXPECT_EQ(a.is_zero(), std::abs(fa) < 1e-9);
  }
}

TEST(Cyclotomic, CanonicalFormIsUnique) {
  const auto& c = ctx3();
  // ζ₉³ = ζ₃ and ζ₉ + ζ₉⁴ + ζ₉⁷ = 0.
  const CycValue z = CycValue::root_of_unity(c, make_rational(1, 9));
  EXPECT_EQ(z * z * z, CycValue::root_of_unity(c, make_rational(1, 3)));
  const CycValue s = z + CycValue::root_of_unity(c, make_rational(4, 9)) + CycValue::root_of_unity(c, make_rational(7, 9));
  EXPECT_TRUE(s.is_structurally_zero());
}

TEST(Cyclotomic, Accumulator) {
  const auto& c = ctx3();
  CycAccumulator acc(&c);
  for (long j = 0; j < 9; ++j) acc.add(CycValue::root_of_unity(c, make_rational(j, 9)), make_rational(1, 2));
  EXPECT_TRUE(acc.value().is_zero());
}

TEST(Laurent, Substitution) {
  const auto& c = ctx3();
  LaurentPoly one(Variable::QNegS, &c);
  one.add_term(0, CycValue(1));
  const LaurentPoly s1 = one.substitute(Substitution::SToOneMinusS);
  EXPECT_EQ(s1.variable(), Variable::QPosS);
  EXPECT_EQ(s1.coeff(0), CycValue(1));

  LaurentPoly x(Variable::QNegS, &c);
  x.add_term(1, CycValue(1));
  const LaurentPoly sx = x.substitute(Substitution::SToOneMinusS);
  EXPECT_EQ(sx.variable(), Variable::QPosS);
  EXPECT_EQ(sx.coeff(1), CycValue(make_rational(1, 3)));

  const CycValue cc = CycValue::root_of_unity(c, make_rational(1, 9));
  LaurentPoly y(Variable::QPosS, &c);
  y.add_term(2, cc);
  const LaurentPoly ny = y.substitute(Substitution::NegateS);
  EXPECT_EQ(ny.variable(), Variable::QNegS);
  EXPECT_EQ(ny.coeff(2), cc);
}

TEST(Laurent, SubstitutionIsInvolutive) {
  const auto& c = ctx3();
  LaurentPoly p(Variable::QNegS, &c);
  p.add_term(-2, CycValue(5));
  p.add_term(1, CycValue::sqrt_q(c));
  p.add_term(3, CycValue::root_of_unity(c, make_rational(2, 27)));
  for (auto rule : {Substitution::SToOneMinusS, Substitution::NegateS}) {
    EXPECT_EQ(p.substitute(rule).substitute(rule), p);
  }
}

TEST(Laurent, EvaluationOracle) {
  // Compare as functions of s at a few real points.
  const auto& c = ctx3();
  LaurentPoly p(Variable::QNegS, &c);
  p.add_term(-1, CycValue(2));
  p.add_term(2, CycValue(make_rational(1, 3)));
  auto eval = [](const LaurentPoly& f, double s) {
    std::complex<double> out;
    for (const auto& [n, v] : f.coeffs()) {
      const double x = f.variable() == Variable::QNegS ? std::pow(3.0, -s) : std::pow(3.0, s);
      out += v.embed_float() * std::pow(x, static_cast<double>(n));
    }
    return out;
  };
  for (double s : {-0.7, 0.0, 0.3, 1.9}) {
    EXPECT_TRUE(near(eval(p.substitute(Substitution::SToOneMinusS), s), eval(p, 1 - s)));
    EXPECT_TRUE(near(eval(p.substitute(Substitution::NegateS), s), eval(p, -s)));
    EXPECT_TRUE(near(eval(p.rewrite_in(Variable::QPosS), s), eval(p, s)));
    EXPECT_TRUE(near(eval(p * p, s), eval(p, s) * eval(p, s)));
  }
}

TEST(Laurent, ArithmeticAcrossTags) {
  const auto& c = ctx3();
  LaurentPoly a(Variable::QNegS, &c);
  a.add_term(1, CycValue(1));
  LaurentPoly b(Variable::QPosS, &c);
  b.add_term(-1, CycValue(1));
  EXPECT_EQ(a, b);
  EXPECT_TRUE((a - b).is_zero());
  EXPECT_EQ((a * b).coeff(2), CycValue(1));
}
