#include "mzeta/localchar.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

using namespace mzeta;

namespace {

const PadicContext& ctx3() { return PadicContext::get(3); }

bool near(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < 1e-9; }

/// x ∈ Q is a square in Q_p iff v(x) is even and its unit part is a square mod p.
bool is_padic_square(const Rational& x, long p) {
  if (sgn(x) == 0) return false;
  const long v = padic::valuation(x, p).value();
  if (v % 2 != 0) return false;
  const PadicContext& ctx = PadicContext::get(p);
  return ctx.legendre_residue(static_cast<long>(padic::residue(padic::unit_part(x, p), ctx, 1))) == 1;
}

/// (a,b) = 1 iff a x² + b y² is a nonzero square for some x, y. Squares are
/// open, so small integers suffice.
int hilbert_oracle(const Rational& a, const Rational& b, long p) {
  const long range = p * p * p;
  for (long x = 0; x < range; ++x) {
    for (long y = 0; y < range; ++y) {
      if (is_padic_square(a * x * x + b * y * y, p)) return 1;
    }
  }
  return -1;
}

/// α(a) from floating-point Gauss sums of both defining integrals.
std::complex<double> weil_alpha_float(const Rational& a, long p) {
  auto integral = [&](const Rational& c) {
    const long v = padic::valuation(c, p).value();
    const long level = std::max<long>(0, -v) + 1;
    const long n = static_cast<long>(std::pow(p, level));
    std::complex<double> s;
    for (long x = 0; x < n; ++x) {
      const Rational f = padic::frac_part(c * x * x, PadicContext::get(p));
      s += std::polar(1.0, 2 * M_PI * f.get_d());
    }
    return s / static_cast<double>(n);
  };
  const long v = padic::valuation(a, p).value();
  const Rational m = -1 / a;
  return std::pow(static_cast<double>(p), -0.5 * static_cast<double>(v)) * integral(a) / integral(m);
}

}  // namespace

TEST(Psi, Examples) {
  const auto& c = ctx3();
  EXPECT_EQ(psi_value(KElement(c, 2)), CycValue(1));
  EXPECT_EQ(psi_value(KElement(c, 1, 3)), CycValue::root_of_unity(c, make_rational(1, 3)));
  EXPECT_EQ(psi_value(KElement(c, make_rational(1, 5) + make_rational(1, 9))),
            CycValue::root_of_unity(c, make_rational(1, 9)));
}

TEST(Legendre, Examples) {
  const auto& c = ctx3();
  EXPECT_EQ(legendre(KElement(c, 1)), 1);
  EXPECT_EQ(legendre(KElement(c, 2)), -1);
  EXPECT_EQ(legendre(KElement(c, 4)), 1);
  EXPECT_THROW(legendre(KElement(c, 3)), std::domain_error);
}

TEST(SquareClass, Examples) {
  const auto& c = ctx3();
  EXPECT_EQ(square_class_data(KElement(c, 1)), (SquareClass{0, 1}));
  EXPECT_EQ(square_class_data(KElement(c, 1, 3)), (SquareClass{1, 1}));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> d(1, 80);
  for (int i = 0; i < 200; ++i) {
    const KElement x(c, make_rational(d(rng), d(rng)));
    const KElement t(c, make_rational(d(rng), d(rng)));
    EXPECT_EQ(square_class_data(x), square_class_data(x * t * t));
  }
}

TEST(Hilbert, Examples) {
  const auto& c = ctx3();
  EXPECT_EQ(hilbert_symbol(KElement(c, 3), KElement(c, 3)), -1);
  EXPECT_EQ(hilbert_symbol(KElement(c, -1), KElement(c, -1)), 1);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> d(1, 90);
  for (int i = 0; i < 100; ++i) {
    const KElement a(c, make_rational(d(rng) * (i % 2 != 0 ? 1 : -1), d(rng)));
    EXPECT_EQ(hilbert_symbol(KElement(c, 1), a), 1);
    EXPECT_EQ(hilbert_symbol(a, -a), 1);
  }
}

TEST(Hilbert, ClosedFormulaMatchesSquareOracle) {
  for (long p : {3L, 5L}) {
    const auto& c = PadicContext::get(p);
    for (long va = 0; va <= 1; ++va) {
      for (long vb = 0; vb <= 1; ++vb) {
        for (long ua = 1; ua < p; ++ua) {
          for (long ub = 1; ub < p; ++ub) {
            const Rational a = Rational(ua) * padic::p_power(c, va);
            const Rational b = Rational(ub) * padic::p_power(c, vb);
            EXPECT_EQ(hilbert_symbol(KElement(c, a), KElement(c, b)), hilbert_oracle(a, b, p))
                << "p=" << p << " a=" << a << " b=" << b;
          }
        }
      }
    }
  }
}

TEST(Hilbert, BruteForceMatchesSquareOracle) {
  const auto& c = ctx3();
  for (long a : {1L, 2L, 3L, 6L, -3L, 9L}) {
    for (long b : {1L, 2L, 3L, 6L, -1L, 18L}) {
      EXPECT_EQ(hilbert_symbol_bruteforce(KElement(c, a), KElement(c, b)), hilbert_oracle(Rational(a), Rational(b), 3))
          << a << "," << b;
    }
  }
}

TEST(Weil, Examples) {
  const auto& c = ctx3();
  EXPECT_EQ(weil_alpha(KElement(c, 1)), CycValue(1));
  EXPECT_EQ(weil_alpha(KElement(c, 2)), CycValue(1));
  // α(3) = i for p = 3, from the level-2 Gauss sums.
  EXPECT_EQ(weil_alpha(KElement(c, 3)), CycValue::imaginary_unit());
  EXPECT_EQ(chi_psi(KElement(c, 1)), CycValue(1));
  EXPECT_EQ(chi_psi(KElement(c, 3)), -CycValue::imaginary_unit());
  EXPECT_THROW(weil_alpha(KElement(c, 0)), std::domain_error);
}

TEST(Weil, MatchesFloatGaussSums) {
  for (long p : {3L, 5L, 7L}) {
    const auto& c = PadicContext::get(p);
    for (long v = -3; v <= 3; ++v) {
      for (long u = 1; u < p; ++u) {
        const Rational a = Rational(u) * padic::p_power(c, v);
        EXPECT_TRUE(near(weil_alpha(KElement(c, a)).embed_float(), weil_alpha_float(a, p))) << "p=" << p << " a=" << a;
      }
    }
  }
}

TEST(Weil, Identities) {
  for (long p : {3L, 5L, 7L}) {
    const auto& c = PadicContext::get(p);
    const ChiPsi chi(c);
    std::mt19937_64 rng(static_cast<std::uint64_t>(p));
    std::uniform_int_distribution<long> d(1, 60);
    auto draw = [&](long vmax) {
      long x = 0;
      while (x % p == 0) x = d(rng);
      return KElement(c, Rational(x) * padic::p_power(c, std::uniform_int_distribution<long>(-vmax, vmax)(rng)));
    };
    for (int i = 0; i < 30; ++i) {
      const KElement a = draw(2), b = draw(2), t = draw(1);
      const CycValue al = weil_alpha(a);
      EXPECT_EQ(al * al.conj(), CycValue(1));
      EXPECT_EQ(weil_alpha(a * t * t), al);
      EXPECT_EQ(chi_psi(t * t), CycValue(1));
      EXPECT_EQ(chi_psi(a * b), chi_psi(a) * chi_psi(b) * CycValue(hilbert_symbol(a, b)));
      EXPECT_EQ(chi(a), chi_psi(a));
    }
  }
}

TEST(MultCharacter, Trivial) {
  const auto& c = ctx3();
  const MultCharacter mu = MultCharacter::trivial(c);
  EXPECT_EQ(mu(KElement(c, 7, 9)), CycValue(1));
}

TEST(MultCharacter, ConductorAndHomomorphism) {
  const auto& c = ctx3();
  const MultCharacter mu(c, 2, make_rational(1, 4), 1);
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<long> d(1, 80), v(-3, 3);
  auto draw = [&] {
    long x = 0;
    while (x % 3 == 0) x = d(rng);
    return KElement(c, Rational(x) * padic::p_power(c, v(rng)));
  };
  for (int i = 0; i < 100; ++i) {
    const KElement x = draw(), y = draw();
    EXPECT_EQ(mu(x * y), mu(x) * mu(y));
    EXPECT_EQ(mu(x) * mu.inverse()(x), CycValue(1));
  }
  EXPECT_EQ(mu(KElement(c, 10)), CycValue(1));  // 10 ∈ 1 + P²
  EXPECT_FALSE(mu(KElement(c, 4)) == CycValue(1));
  EXPECT_EQ(mu(KElement(c, 3)), CycValue::imaginary_unit());
}

TEST(MultCharacter, Validation) {
  const auto& c = ctx3();
  EXPECT_THROW(MultCharacter(c, 1, Rational(0), 2), std::invalid_argument);  // unramified
  EXPECT_THROW(MultCharacter(c, 2, Rational(0), 3), std::invalid_argument);  // conductor 1
  EXPECT_THROW(MultCharacter(c, 4, Rational(0), 1), std::invalid_argument);  // above the cap
  EXPECT_THROW(MultCharacter(c, 0, make_rational(1, 7), 0), std::domain_error);
  EXPECT_EQ(MultCharacter::primitive_root(c), 2);
  EXPECT_EQ(MultCharacter::primitive_root(PadicContext::get(7)), 3);
}
