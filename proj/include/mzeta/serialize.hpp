#pragma once

// JSON forms of exact values, Laurent polynomials, character specs and
// functional-equation reports. Exact values round-trip; floats are advisory.

#include "mzeta/zeta.hpp"

#include "json.hpp"

namespace mzeta {

using json = nlohmann::json;

namespace detail {

inline json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

inline Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) return Integer(j.get<std::string>());
  throw std::invalid_argument("expected an integer, got " + j.dump());
}

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::invalid_argument("expected a rational, got " + j.dump());
}

}  // namespace detail

inline json to_json(const CycValue& v) {
  json terms = json::array();
  auto emit = [&](const CycValue::Terms& ts, bool sqrtq) {
    for (const auto& t : ts) {
      const Rational r = CycValue::key_to_exponent(v.context(), t.key);
      terms.push_back({{"numerator", detail::integer_json(t.coeff.get_num())},
                       {"denominator", detail::integer_json(t.coeff.get_den())},
                       {"root_of_unity_num", detail::integer_json(r.get_num())},
                       {"root_of_unity_den", detail::integer_json(r.get_den())},
                       {"sqrtq", sqrtq}});
    }
  };
  emit(v.base_terms(), false);
  emit(v.sqrtq_terms(), true);
  return json{{"terms", terms}};
}

inline CycValue cyc_from_json(const PadicContext& ctx, const json& j) {
  if (!j.is_object() || !j.contains("terms") || !j.at("terms").is_array()) {
    throw std::invalid_argument("exact value must be an object with a 'terms' array");
  }
  CycAccumulator acc(&ctx);
  for (const auto& t : j.at("terms")) {
    Rational c(detail::integer_from_json(t.at("numerator")), detail::integer_from_json(t.at("denominator")));
    if (c.get_den() == 0) throw std::domain_error("zero denominator in exact value");
    c.canonicalize();
    Rational r(detail::integer_from_json(t.at("root_of_unity_num")), detail::integer_from_json(t.at("root_of_unity_den")));
    if (r.get_den() == 0) throw std::domain_error("zero denominator in root-of-unity exponent");
    r.canonicalize();
    CycValue term = CycValue::root_of_unity(ctx, r).scaled(c);
    if (t.value("sqrtq", false)) term = term * CycValue::sqrt_q(ctx);
    acc.add(term);
  }
  return acc.value();
}

inline json to_json(const LaurentPoly& p) {
  json terms = json::array();
  for (const auto& [n, c] : p.coeffs()) {
    const auto z = c.embed_float();
    terms.push_back({{"exp", n}, {"value_float_re", z.real()}, {"value_float_im", z.imag()}, {"value_exact", to_json(c)}});
  }
  return json{{"variable", variable_name(p.variable())}, {"terms", terms}};
}

inline LaurentPoly poly_from_json(const PadicContext& ctx, const json& j) {
  const std::string var = j.at("variable").get<std::string>();
  Variable v;
  if (var == "q^-s") {
    v = Variable::QNegS;
  } else if (var == "q^s") {
    v = Variable::QPosS;
  } else {
    throw std::invalid_argument("unknown polynomial variable '" + var + "'");
  }
  LaurentPoly p(v, &ctx);
  for (const auto& t : j.at("terms")) p.add_term(t.at("exp").get<long>(), cyc_from_json(ctx, t.at("value_exact")));
  return p;
}

/// {conductor_exponent, value_at_p_numerator_of_exponent,
///  value_at_p_denominator_of_exponent, generator_image_exponent}
inline json to_json(const MultCharacter& mu) {
  return json{{"conductor_exponent", mu.conductor()},
              {"value_at_p_numerator_of_exponent", detail::integer_json(mu.at_p_exponent().get_num())},
              {"value_at_p_denominator_of_exponent", detail::integer_json(mu.at_p_exponent().get_den())},
              {"generator_image_exponent", mu.generator_exponent()}};
}

inline MultCharacter mu_from_json(const PadicContext& ctx, const json& j, int max_conductor = 3) {
  const int m = j.at("conductor_exponent").get<int>();
  Rational at_p(detail::integer_from_json(j.value("value_at_p_numerator_of_exponent", json(0))),
                detail::integer_from_json(j.value("value_at_p_denominator_of_exponent", json(1))));
  if (at_p.get_den() == 0) throw std::domain_error("zero denominator in character exponent");
  at_p.canonicalize();
  return MultCharacter(ctx, m, at_p, j.value("generator_image_exponent", 0L), max_conductor);
}

inline json to_json(const FeReport& r) {
  return json{{"lhs", to_json(r.lhs)},
              {"rhs", to_json(r.rhs)},
              {"residual", to_json(r.residual)},
              {"pass", r.pass},
              {"vacuous", r.vacuous}};
}

}  // namespace mzeta
