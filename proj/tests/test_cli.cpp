#include "mzeta/invariants.hpp"
#include "mzeta/sigma_io.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

using namespace mzeta;
using mzeta::testing::ctx3;

namespace {

const Supercuspidal& pi1() {
  static const Supercuspidal pi(builtin_sigma_p3(ctx3(), 1));
  return pi;
}

CycValue zeta(long k, long n) { return CycValue::root_of_unity(ctx3(), make_rational(k, n)); }

std::string check_name(const json& j) {
  try {
    sigma_from_json(j);
  } catch (const SigmaValidationError& ex) {
    return ex.check();
  }
  return "accepted";
}

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

TEST(Json, CycValueRoundTrip) {
  const auto& c = ctx3();
  const Rational big(Integer("123456789012345678901234567890"), Integer(7));
  const std::vector<CycValue> values = {
      CycValue(),
      CycValue(make_rational(-5, 2)),
      zeta(1, 27).scaled(big) + zeta(4, 9),
      CycValue::sqrt_q(c) + CycValue::imaginary_unit(),
      CycValue::sqrt_q(c) * zeta(2, 3).scaled(make_rational(1, 3)),
  };
  for (const auto& v : values) {
    const json j = to_json(v);
    EXPECT_EQ(cyc_from_json(c, json::parse(j.dump())), v) << j.dump();
  }
  EXPECT_TRUE(to_json(zeta(1, 27).scaled(big)).dump().find("123456789012345678901234567890") != std::string::npos);
}

TEST(Json, CycValueRejectsMalformed) {
  const auto& c = ctx3();
  EXPECT_THROW(cyc_from_json(c, json::array()), std::invalid_argument);
  const json zero_den = {{"terms",
                          {{{"numerator", 1},
                            {"denominator", 0},
                            {"root_of_unity_num", 0},
                            {"root_of_unity_den", 1}}}}};
  EXPECT_THROW(cyc_from_json(c, zero_den), std::domain_error);
  const json bad_root = {{"terms",
                          {{{"numerator", 1},
                            {"denominator", 1},
                            {"root_of_unity_num", 1},
                            {"root_of_unity_den", 5}}}}};
  EXPECT_THROW(cyc_from_json(c, bad_root), std::domain_error);
}

TEST(Json, PolyRoundTrip) {
  const auto& c = ctx3();
  for (Variable var : {Variable::QNegS, Variable::QPosS}) {
    LaurentPoly p(var, &c);
    p.add_term(-3, CycValue::sqrt_q(c));
    p.add_term(0, CycValue(make_rational(4, 3)));
    p.add_term(5, zeta(2, 9));
    const LaurentPoly back = poly_from_json(c, json::parse(to_json(p).dump()));
    EXPECT_EQ(back.variable(), var);
    EXPECT_EQ(back, p);
  }
  EXPECT_THROW(poly_from_json(c, json{{"variable", "s"}, {"terms", json::array()}}), std::invalid_argument);
}

TEST(Json, MuRoundTrip) {
  const auto& c = ctx3();
  for (const MultCharacter& mu : {MultCharacter::trivial(c), MultCharacter(c, 1, make_rational(1, 4), 1),
                                  MultCharacter(c, 2, make_rational(2, 3), 1)}) {
    const json j = to_json(mu);
    EXPECT_EQ(to_json(mu_from_json(c, json::parse(j.dump()))), j);
  }
  EXPECT_THROW(mu_from_json(c, json{{"conductor_exponent", 1}, {"generator_image_exponent", 0}}),
               std::invalid_argument);
}

TEST(Json, FeReport) {
  const ZetaEngine z(pi1());
  const FeReport r = z.check_fe(KElement(ctx3(), 1, 3), MultCharacter::trivial(ctx3()), phi(pi1(), Rational(0), 0, 0));
  const json j = to_json(r);
  EXPECT_TRUE(j.at("pass").get<bool>());
  EXPECT_FALSE(j.at("vacuous").get<bool>());
  EXPECT_EQ(poly_from_json(ctx3(), j.at("lhs")), r.lhs);
  EXPECT_EQ(poly_from_json(ctx3(), j.at("rhs")), r.rhs);
  EXPECT_TRUE(poly_from_json(ctx3(), j.at("residual")).is_zero());
}

TEST(Phi, ReducesIntegralPartOfT) {
  const auto& c = ctx3();
  // φ^{n(t+a)r} = ψ(-β a)·φ^{n(t)r} with β = 1/3.
  EXPECT_EQ(phi(pi1(), Rational(1), 0, 0), InducedVector::basis(Rational(0), 0, 0).scaled(zeta(2, 3)));
  EXPECT_EQ(phi(pi1(), make_rational(4, 3), 2, 0), InducedVector::basis(make_rational(1, 3), 2, 0).scaled(zeta(2, 3)));
  EXPECT_EQ(phi(pi1(), make_rational(-2, 3), 0, 0), InducedVector::basis(make_rational(1, 3), 0, 0).scaled(zeta(1, 3)));
  // As a function on the group, φ^{n(t)r} takes the value e_b at n(t)r itself.
  for (long a : {1L, 2L, -5L}) {
    for (long n : {-1L, 0L, 2L}) {
      const Rational t = make_rational(1, 9) + Rational(a);
      const auto value = mzeta::testing::evaluate(pi1(), phi(pi1(), t, n, 0), coset_rep(c, t, n));
      EXPECT_EQ(value[0], CycValue(1)) << "a=" << a << " n=" << n;
    }
  }
  EXPECT_THROW(phi(pi1(), Rational(0), 0, 1), std::invalid_argument);
}

TEST(VectorParser, Grammar) {
  const InducedVector a = phi(pi1(), Rational(0), 0, 0);
  const InducedVector b = phi(pi1(), make_rational(1, 3), 1, 0);
  EXPECT_EQ(parse_vector(pi1(), "phi(t=0, n=0, b=0)"), a);
  EXPECT_EQ(parse_vector(pi1(), "  phi( t = 0 ,n=0,b=0 )  "), a);
  EXPECT_EQ(parse_vector(pi1(), "phi(t=0, n=0, b=0) - 2/3*phi(t=1/3, n=1, b=0)"),
            a + b.scaled(CycValue(make_rational(-2, 3))));
  EXPECT_EQ(parse_vector(pi1(), "-phi(t=1/3, n=1, b=0) + phi(t=1/3, n=1, b=0)"), InducedVector());
  EXPECT_EQ(parse_vector(pi1(), "3*phi(t=-2/3, n=-4, b=0)"), phi(pi1(), make_rational(-2, 3), -4, 0).scaled(CycValue(3)));
}

TEST(VectorParser, Errors) {
  for (const char* bad : {"", "   ", "phi(t=0, n=0)", "phi(t=0, n=1/2, b=0)", "phi(t=0, n=0, b=-1)",
                          "phi(t=0, n=0, b=0) phi(t=0, n=0, b=0)", "2 phi(t=0, n=0, b=0)", "phi(t=1/0, n=0, b=0)",
                          "psi(t=0, n=0, b=0)", "phi(t=0, n=0, b=0) +"}) {
    EXPECT_THROW(parse_vector(pi1(), bad), VectorParseError) << bad;
  }
  EXPECT_THROW(parse_vector(pi1(), "phi(t=0, n=0, b=1)"), std::invalid_argument);
  try {
    parse_vector(pi1(), "phi(t=0, n=0; b=0)");
    FAIL();
  } catch (const VectorParseError& ex) {
    EXPECT_NE(std::string(ex.what()).find("column 13"), std::string::npos) << ex.what();
  }
}

TEST(VectorParser, File) {
  const std::string path = temp_file("mzeta_vectors.txt",
                                     "# header\n\nphi(t=0, n=0, b=0)  # basis\n  phi(t=1/3, n=0, b=0) - phi(t=0, n=1, b=0)\n");
  const auto vs = load_vectors_file(pi1(), path);
  ASSERT_EQ(vs.size(), 2U);
  EXPECT_EQ(vs[0].first, "phi(t=0, n=0, b=0)");
  EXPECT_EQ(vs[1].second, parse_vector(pi1(), "phi(t=1/3, n=0, b=0) - phi(t=0, n=1, b=0)"));
  std::remove(path.c_str());
  EXPECT_THROW(load_vectors_file(pi1(), path), std::invalid_argument);
}

TEST(SigmaFile, RoundTrip) {
  for (int which : {1, 2}) {
    const SigmaRep s = builtin_sigma_p3(ctx3(), which);
    const SigmaRep back = sigma_from_json(json::parse(sigma_to_json(s).dump()));
    EXPECT_EQ(back.dim(), 1U);
    EXPECT_EQ(back.level(), 1);
    s.for_each([&](const SigmaRep::Residues& g, const CycMatrix& m) { EXPECT_TRUE(mat::equal(back.table(g), m)); });
  }
  const SigmaRep sum = mzeta::testing::conjugated_sum(1, 2);
  const SigmaRep back = sigma_from_json(sigma_to_json(sum));
  sum.for_each([&](const SigmaRep::Residues& g, const CycMatrix& m) { EXPECT_TRUE(mat::equal(back.table(g), m)); });
}

TEST(SigmaFile, TermListCells) {
  json j = sigma_to_json(builtin_sigma_p3(ctx3(), 1));
  // Rewrite every cell as a term list; ζ₃ = -1 - ζ₃² exercises accumulation.
  for (auto& e : j.at("entries")) {
    const CycValue v = cyc_from_json(ctx3(), e.at("rep")[0][0]);
    json cell = json::array();
    for (long k = 0; k < 3; ++k) {
      if (v == zeta(k, 3)) cell.push_back({{"coeff", "1"}, {"exp", std::to_string(k) + "/3"}});
    }
    if (v == zeta(1, 3)) cell = {{{"coeff", "-1"}, {"exp", "0"}}, {{"coeff", "-1"}, {"exp", "2/3"}}};
    ASSERT_FALSE(cell.empty());
    e.at("rep")[0][0] = cell;
  }
  const SigmaRep s = sigma_from_json(j);
  EXPECT_TRUE(mat::equal(s.table(SigmaRep::Residues{1, 1, 0, 1}), CycMatrix{{zeta(1, 3)}}));
}

TEST(SigmaFile, Rejections) {
  const json good = sigma_to_json(builtin_sigma_p3(ctx3(), 1));
  EXPECT_EQ(check_name(good), "accepted");

  json det = good;
  det.at("entries")[0].at("matrix") = {{1, 1}, {1, 1}};
  EXPECT_EQ(check_name(det), "determinant");

  json missing = good;
  missing.at("entries").erase(missing.at("entries").begin());
  EXPECT_EQ(check_name(missing), "completeness");

  json hom = good;
  for (auto& e : hom.at("entries")) {
    if (e.at("matrix") == json{{1, 1}, {0, 1}}) e.at("rep")[0][0] = to_json(CycValue(-1));
  }
  EXPECT_EQ(check_name(hom), "homomorphism");

  const SigmaRep trivial = SigmaRep::from_generators(ctx3(), 1, mat::identity(1), mat::identity(1));
  EXPECT_EQ(check_name(sigma_to_json(trivial)), "conductor");

  // Level 2 table pulled back from level 1 is trivial on the principal congruence subgroup.
  const SigmaRep s1 = builtin_sigma_p3(ctx3(), 1);
  json lifted = {{"p", 3}, {"l", 2}, {"dim", 1}, {"entries", json::array()}};
  for (std::int64_t a = 0; a < 9; ++a) {
    for (std::int64_t b = 0; b < 9; ++b) {
      for (std::int64_t c = 0; c < 9; ++c) {
        for (std::int64_t d = 0; d < 9; ++d) {
          if (((a * d - b * c) % 9 + 9) % 9 != 1) continue;
          const CycValue v = s1.table(SigmaRep::Residues{a % 3, b % 3, c % 3, d % 3})[0][0];
          lifted.at("entries").push_back({{"matrix", {{a, b}, {c, d}}}, {"rep", {{to_json(v)}}}});
        }
      }
    }
  }
  EXPECT_EQ(check_name(lifted), "conductor");

  // σ₁ ⊕ trivial: the trivial summand sees a nonzero sum over N.
  const CycMatrix n1{{zeta(1, 3), CycValue()}, {CycValue(), CycValue(1)}};
  const SigmaRep mixed = SigmaRep::from_generators(ctx3(), 1, n1, mat::identity(2));
  EXPECT_EQ(check_name(sigma_to_json(mixed)), "strong cuspidality");
}

TEST(SigmaFile, LoadErrors) {
  EXPECT_THROW(load_sigma_file("/nonexistent/sigma.json"), std::invalid_argument);
  const std::string path = temp_file("mzeta_bad_sigma.json", "{ not json");
  EXPECT_THROW(load_sigma_file(path), std::invalid_argument);
  std::remove(path.c_str());
}
