#pragma once

// Finitely supported Laurent polynomials in q^{-s} or q^{s} with cyclotomic
// coefficients.

#include "mzeta/cyclotomic.hpp"

#include <map>
#include <sstream>
#include <string>

namespace mzeta {

enum class Variable { QNegS, QPosS };

inline const char* variable_name(Variable v) { return v == Variable::QNegS ? "q^-s" : "q^s"; }

inline Variable other(Variable v) { return v == Variable::QNegS ? Variable::QPosS : Variable::QNegS; }

enum class Substitution { SToOneMinusS, NegateS };

class LaurentPoly {
 public:
  explicit LaurentPoly(Variable var = Variable::QNegS, const PadicContext* ctx = nullptr) : var_(var), ctx_(ctx) {}

  Variable variable() const noexcept { return var_; }
  const PadicContext* context() const noexcept { return ctx_; }
  const std::map<long, CycValue>& coeffs() const noexcept { return coeffs_; }

  /// Coefficient of X^n (X the tagged variable); zero if absent.
  CycValue coeff(long n) const {
    auto it = coeffs_.find(n);
    return it == coeffs_.end() ? CycValue() : it->second;
  }

  void add_term(long n, const CycValue& c) {
    if (c.is_zero()) return;
    if (c.context() != nullptr) ctx_ = c.context();
    auto it = coeffs_.find(n);
    if (it == coeffs_.end()) {
      coeffs_.emplace(n, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }

  bool is_zero() const noexcept { return coeffs_.empty(); }

  long min_exponent() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
  long max_exponent() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

  /// The same function of s written in the other variable: X^n becomes Y^{-n}.
  LaurentPoly rewrite_in(Variable target) const {
    if (target == var_) return *this;
    LaurentPoly out(target, ctx_);
    for (const auto& [n, c] : coeffs_) out.coeffs_.emplace(-n, c);
    return out;
  }

  /// S_TO_ONE_MINUS_S: P(s) ↦ P(1-s). With X = q^{∓s}, X^n at 1-s is
  /// q^{∓n}·Y^n where Y = q^{±s}.
  /// NEGATE_S: P(s) ↦ P(-s), i.e. the tag swaps and exponents stay.
  LaurentPoly substitute(Substitution rule) const {
    LaurentPoly out(other(var_), ctx_);
    for (const auto& [n, c] : coeffs_) {
      if (rule == Substitution::NegateS || n == 0) {
        out.coeffs_.emplace(n, c);
        continue;
      }
      if (ctx_ == nullptr) throw std::logic_error("S -> 1-S needs q on a non-constant polynomial");
      const long shift = var_ == Variable::QNegS ? -n : n;
      out.coeffs_.emplace(n, c.scaled(padic::p_power(*ctx_, shift)));
    }
    return out;
  }

  LaurentPoly scaled(const CycValue& c) const {
    LaurentPoly out(var_, ctx_);
    for (const auto& [n, v] : coeffs_) out.add_term(n, v * c);
    return out;
  }

  friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out = a;
    const LaurentPoly rb = b.rewrite_in(a.var_);
    for (const auto& [n, c] : rb.coeffs_) out.add_term(n, c);
    return out;
  }
  friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + b.scaled(CycValue(-1)); }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly out(a.var_, a.ctx_ != nullptr ? a.ctx_ : b.ctx_);
    const LaurentPoly rb = b.rewrite_in(a.var_);
    for (const auto& [n, x] : a.coeffs_) {
      for (const auto& [m, y] : rb.coeffs_) out.add_term(n + m, x * y);
    }
    return out;
  }

  /// Equality as functions of s (variable tags may differ).
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return (a - b).is_zero(); }

  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [n, c] : coeffs_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c << ")";
      if (n != 0) os << "*(" << variable_name(var_) << ")^" << n;
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) { return os << p.to_string(); }

 private:
  Variable var_;
  const PadicContext* ctx_;
  std::map<long, CycValue> coeffs_;
};

inline LaurentPoly laurent_substitute(const LaurentPoly& p, Substitution rule) { return p.substitute(rule); }

}  // namespace mzeta
