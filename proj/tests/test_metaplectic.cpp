#include "mzeta/invariants.hpp"

#include <gtest/gtest.h>

using namespace mzeta;

namespace {

const PadicContext& ctx3() { return PadicContext::get(3); }

/// x(g) = c if c ≠ 0, else d.
Rational x_entry(const SL2Element& g) { return sgn(g.c()) != 0 ? g.c() : g.d(); }

int cocycle_oracle(const SL2Element& g, const SL2Element& h) {
  const PadicContext& c = g.context();
  const Rational xgh = x_entry(g * h);
  return hilbert_symbol(KElement(c, xgh / x_entry(g)), KElement(c, xgh / x_entry(h)));
}

}  // namespace

TEST(Cocycle, Examples) {
  const auto& c = ctx3();
  const SL2Element w = SL2Element::w(c);
  EXPECT_EQ(chi_entry(SL2Element::identity(c)).value(), 1);
  EXPECT_EQ(chi_entry(w).value(), 1);
  EXPECT_EQ(chi_entry(SL2Element::n(c, Rational(5))).value(), 1);
  EXPECT_EQ(cocycle(SL2Element::n(c, Rational(2)), SL2Element::n(c, make_rational(1, 9))), 1);
  EXPECT_EQ(cocycle(w, w), 1);
}

TEST(Cocycle, MatchesDefinition) {
  const auto& c = ctx3();
  gen::Rng rng(17);
  for (int i = 0; i < 300; ++i) {
    const SL2Element g = gen::sl2(rng, c), h = gen::sl2(rng, c);
    EXPECT_EQ(cocycle(g, h), cocycle_oracle(g, h)) << g << " " << h;
  }
}

TEST(Cocycle, Identity) {
  for (long p : {3L, 5L, 7L}) {
    gen::Rng rng(static_cast<std::uint64_t>(p));
    const SuiteResult r = suite_cocycle(PadicContext::get(p), rng, 300);
    EXPECT_TRUE(r.passed) << r.counterexample;
  }
}

TEST(MetaElement, Examples) {
  const auto& c = ctx3();
  const MetaElement x = MetaElement::n(c, make_rational(1, 3)) * MetaElement::diag(c, Rational(9));
  EXPECT_EQ(MetaElement::identity(c) * x, x);
  const MetaElement ww = MetaElement::w(c) * MetaElement::w(c);
  EXPECT_EQ(ww, MetaElement(SL2Element(c, Rational(-1), Rational(0), Rational(0), Rational(-1)), 1));
  const MetaElement k = MetaElement::kernel(c, -1) * x;
  EXPECT_EQ(k.g(), x.g());
  EXPECT_EQ(k.eps(), -x.eps());
  EXPECT_THROW(MetaElement(SL2Element::identity(c), 2), std::invalid_argument);
}

TEST(MetaElement, GroupLaw) {
  for (long p : {3L, 5L}) {
    gen::Rng rng(static_cast<std::uint64_t>(p) + 100);
    const SuiteResult r = suite_meta_group(PadicContext::get(p), rng, 200);
    EXPECT_TRUE(r.passed) << r.counterexample;
  }
}

TEST(SL2Element, RejectsBadDeterminant) {
  EXPECT_THROW(SL2Element(ctx3(), Rational(1), Rational(1), Rational(1), Rational(1)), std::domain_error);
}

TEST(Kubota, Examples) {
  const auto& c = ctx3();
  EXPECT_EQ(kubota_split(SL2Element::identity(c)), 1);
  EXPECT_EQ(kubota_split(SL2Element::n(c, Rational(7))), 1);
  EXPECT_EQ(kubota_split(SL2Element::w(c)), 1);
  EXPECT_EQ(kubota_split(SL2Element(c, Rational(1), Rational(1), Rational(3), Rational(4))), 1);
  EXPECT_EQ(kubota_split(SL2Element(c, Rational(1), Rational(0), Rational(3), Rational(1))), 1);
  // c = -3, d = 2: (-3, 2) = (2/3) = -1
  EXPECT_EQ(kubota_split(SL2Element(c, Rational(-1), Rational(1), Rational(-3), Rational(2))), -1);
  EXPECT_THROW(kubota_split(SL2Element::diag(c, make_rational(1, 3))), std::domain_error);
}

TEST(Kubota, SplittingProperty) {
  for (long p : {3L, 5L, 7L}) {
    gen::Rng rng(static_cast<std::uint64_t>(p) + 200);
    const SuiteResult r = suite_kubota(PadicContext::get(p), rng, 300);
    EXPECT_TRUE(r.passed) << r.counterexample;
  }
}

TEST(Coset, Examples) {
  const auto& c = ctx3();
  const CosetDecomposition a = coset_decompose(MetaElement::w(c));
  EXPECT_EQ(a.h, SL2Element::w(c));
  EXPECT_EQ(a.t, 0);
  EXPECT_EQ(a.n, 0);

  const CosetDecomposition b = coset_decompose(MetaElement::diag(c, make_rational(1, 3)));
  EXPECT_EQ(b.h, SL2Element::identity(c));
  EXPECT_EQ(b.t, 0);
  EXPECT_EQ(b.n, -1);

  const CosetDecomposition d = coset_decompose(MetaElement::n(c, make_rational(1, 3)));
  EXPECT_EQ(d.h, SL2Element::identity(c));
  EXPECT_EQ(d.t, make_rational(1, 3));
  EXPECT_EQ(d.n, 0);
}

TEST(Coset, RoundTrip) {
  for (long p : {3L, 5L}) {
    gen::Rng rng(static_cast<std::uint64_t>(p) + 300);
    const SuiteResult r = suite_coset(PadicContext::get(p), rng, 300);
    EXPECT_TRUE(r.passed) << r.counterexample;
  }
}

TEST(Coset, RepresentativesAreDistinct) {
  // Distinct (t, n) give distinct cosets SL₂(Z_p)·r.
  const auto& c = ctx3();
  std::vector<SL2Element> reps;
  for (long n = -2; n <= 2; ++n) {
    for (long j = 0; j < 27; ++j) {
      const Rational t = make_rational(j, 27);
      if (padic::frac_part(t, c) != t) continue;
      reps.push_back(coset_rep_matrix(c, t, n));
    }
  }
  int same = 0;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (std::size_t j = 0; j < reps.size(); ++j) {
      if ((reps[i] * reps[j].inverse()).is_integral()) ++same;
    }
  }
  EXPECT_EQ(same, static_cast<int>(reps.size()));
}
