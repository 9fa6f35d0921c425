#pragma once

// Sigma table files and test-vector expressions.
//
// Sigma file: {"p": 3, "l": 1, "dim": 1, "entries": [{"matrix": [[a,b],[c,d]],
//   "rep": [[cell]]}]} where a cell is either a list of
//   {"coeff": "<rational>", "exp": "<num>/<den>"} (Σ coeff·e^{2πi·exp}) or an
//   exact-value object {"terms": [...]}.
//
// Vector expression: signed rational combination of phi(t=<rational>, n=<int>, b=<index>),
// e.g. "phi(t=0, n=0, b=0) - 2/3*phi(t=1/3, n=1, b=0)".

#include "mzeta/serialize.hpp"

#include <cctype>
#include <fstream>
#include <random>
#include <sstream>

namespace mzeta {

class SigmaValidationError : public std::invalid_argument {
 public:
  SigmaValidationError(std::string check, const std::string& detail)
      : std::invalid_argument("sigma table rejected by check '" + check + "': " + detail), check_(std::move(check)) {}
  const std::string& check() const noexcept { return check_; }

 private:
  std::string check_;
};

namespace detail {

inline CycValue cell_from_json(const PadicContext& ctx, const json& cell) {
  if (cell.is_object()) return cyc_from_json(ctx, cell);
  if (!cell.is_array()) throw std::invalid_argument("sigma cell must be a term list or an exact value");
  CycAccumulator acc(&ctx);
  for (const auto& t : cell) {
    const Rational c = rational_from_json(t.at("coeff"));
    const Rational e = rational_from_json(t.at("exp"));
    acc.add(CycValue::root_of_unity(ctx, e).scaled(c));
  }
  return acc.value();
}

}  // namespace detail

inline json sigma_to_json(const SigmaRep& s) {
  json entries = json::array();
  s.for_each([&](const SigmaRep::Residues& g, const CycMatrix& m) {
    json rep = json::array();
    for (const auto& row : m) {
      json r = json::array();
      for (const auto& x : row) r.push_back(to_json(x));
      rep.push_back(r);
    }
    entries.push_back({{"matrix", {{g[0], g[1]}, {g[2], g[3]}}}, {"rep", rep}});
  });
  return json{{"p", s.context().p()}, {"l", s.level()}, {"dim", s.dim()}, {"entries", entries}};
}

/// Parses and validates a sigma table: determinant, completeness, homomorphism
/// on `pairs` random pairs, conductor exactness, strong cuspidality.
inline SigmaRep sigma_from_json(const json& j, std::uint64_t seed = 1, int pairs = 100) {
  const long p = j.at("p").get<long>();
  const PadicContext& ctx = PadicContext::get(p);
  const int l = j.at("l").get<int>();
  const std::size_t d = j.at("dim").get<std::size_t>();
  std::vector<std::pair<SigmaRep::Residues, CycMatrix>> entries;
  for (const auto& e : j.at("entries")) {
    const auto& m = e.at("matrix");
    SigmaRep::Residues g{m.at(0).at(0).get<std::int64_t>(), m.at(0).at(1).get<std::int64_t>(),
                         m.at(1).at(0).get<std::int64_t>(), m.at(1).at(1).get<std::int64_t>()};
    CycMatrix rep;
    for (const auto& row : e.at("rep")) {
      std::vector<CycValue> r;
      for (const auto& cell : row) r.push_back(detail::cell_from_json(ctx, cell));
      rep.push_back(std::move(r));
    }
    entries.emplace_back(g, std::move(rep));
  }
  SigmaRep s = [&] {
    try {
      return SigmaRep::from_entries(ctx, l, d, entries);
    } catch (const std::invalid_argument& ex) {
      const std::string what = ex.what();
      throw SigmaValidationError(what.find("determinant") != std::string::npos ? "determinant" : "completeness", what);
    }
  }();
  std::mt19937_64 rng(seed);
  if (auto err = s.check_homomorphism(rng, pairs); !err.empty()) throw SigmaValidationError("homomorphism", err);
  if (!s.check_conductor_exact()) {
    throw SigmaValidationError("conductor", "sigma is trivial on the level-(l-1) congruence subgroup");
  }
  if (!s.check_strongly_cuspidal()) {
    const CycMatrix sum = s.cuspidal_sum();
    std::string where;
    for (std::size_t i = 0; i < d && where.empty(); ++i) {
      for (std::size_t k = 0; k < d && where.empty(); ++k) {
        if (!sum[i][k].is_zero()) {
          where = "entry [" + std::to_string(i) + "][" + std::to_string(k) + "] = " + sum[i][k].to_string();
        }
      }
    }
    throw SigmaValidationError("strong cuspidality",
                               "sum of sigma(n(x)) over x in p^(l-1)Z/p^lZ is nonzero, " + where);
  }
  return s;
}

inline SigmaRep load_sigma_file(const std::string& path, std::uint64_t seed = 1) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open sigma file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& ex) {
    throw std::invalid_argument("sigma file '" + path + "' is not valid JSON: " + ex.what());
  }
  return sigma_from_json(j, seed);
}

/// φ^{n(t)⟨p^n⟩}_b with arbitrary t: reduces t to its fractional part using
/// φ^{n(a)r}_b = ψ(-β_b a)·φ^r_b for a ∈ O.
inline InducedVector phi(const Supercuspidal& pi, const Rational& t, long n, std::size_t b) {
  if (b >= pi.dim()) throw std::invalid_argument("basis index b=" + std::to_string(b) + " out of range");
  const PadicContext& ctx = pi.context();
  const Rational frac = padic::frac_part(t, ctx);
  const Rational& beta = pi.eigenbasis().entries()[b].beta;
  return InducedVector::basis(frac, n, b).scaled(psi_value(KElement(ctx, -beta * (t - frac))));
}

class VectorParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline InducedVector parse_vector(const Supercuspidal& pi, const std::string& text) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) -> VectorParseError {
    return VectorParseError("vector expression: " + msg + " at column " + std::to_string(pos + 1) + " in '" + text + "'");
  };
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto expect = [&](const std::string& tok) {
    skip();
    if (text.compare(pos, tok.size(), tok) != 0) throw fail("expected '" + tok + "'");
    pos += tok.size();
  };
  auto number = [&]() {
    skip();
    const std::size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) ++pos;
    if (pos == start) throw fail("expected a number");
    try {
      return parse_rational(text.substr(start, pos - start));
    } catch (const std::exception&) {
      pos = start;
      throw fail("malformed number");
    }
  };
  InducedVector out;
  bool first = true;
  while (true) {
    skip();
    if (pos >= text.size()) {
      if (first) throw fail("empty expression");
      break;
    }
    Rational coeff(1);
    if (text[pos] == '+' || text[pos] == '-') {
      if (text[pos] == '-') coeff = -1;
      ++pos;
    } else if (!first) {
      throw fail("expected '+' or '-'");
    }
    skip();
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      coeff *= number();
      expect("*");
    }
    expect("phi");
    expect("(");
    expect("t");
    expect("=");
    const Rational t = number();
    expect(",");
    expect("n");
    expect("=");
    const Rational n = number();
    expect(",");
    expect("b");
    expect("=");
    const Rational b = number();
    expect(")");
    if (n.get_den() != 1 || !n.get_num().fits_slong_p()) throw fail("n must be an integer");
    if (b.get_den() != 1 || sgn(b) < 0 || !b.get_num().fits_slong_p()) throw fail("b must be a non-negative integer");
    out = out + phi(pi, t, n.get_num().get_si(), static_cast<std::size_t>(b.get_num().get_si())).scaled(CycValue(coeff));
    first = false;
  }
  return out;
}

/// One expression per non-empty line; '#' starts a comment.
inline std::vector<std::pair<std::string, InducedVector>> load_vectors_file(const Supercuspidal& pi,
                                                                            const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open vectors file '" + path + "'");
  std::vector<std::pair<std::string, InducedVector>> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    out.emplace_back(line, parse_vector(pi, line));
  }
  return out;
}

}  // namespace mzeta
