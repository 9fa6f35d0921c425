#pragma once

// Shell integrals, Bessel functions, gamma factors, zeta functions and the
// functional-equation check, all as exact finite sums.

#include "mzeta/laurent.hpp"
#include "mzeta/repn.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <optional>

namespace mzeta {

enum class Measure { Additive, Multiplicative };

class NotLocallyConstant : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoStabilization : public std::runtime_error {
 public:
  NoStabilization(const std::string& what, std::vector<CycValue> trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const std::vector<CycValue>& trace() const noexcept { return trace_; }

 private:
  std::vector<CycValue> trace_;
};

using KFunction = std::function<CycValue(const KElement&)>;

namespace detail {

inline CycValue shell_sum(const PadicContext& ctx, const KFunction& f, long n, int level, Measure m) {
  const std::int64_t count = ctx.pow(level);
  const Rational pn = padic::p_power(ctx, n);
  CycAccumulator acc(&ctx);
  for (std::int64_t u = 1; u < count; ++u) {
    if (u % ctx.p() == 0) continue;
    acc.add(f(KElement(ctx, pn * Rational(Integer(static_cast<long>(u))))));
  }
  const long exp = m == Measure::Multiplicative ? -level : -n - level;
  return acc.value().scaled(padic::p_power(ctx, exp));
}

}  // namespace detail

/// ∫ f over the shell p^n O^×, sampled on unit cosets mod p^L. The value at L
/// must agree with the value at L+1; otherwise L is doubled, twice.
inline CycValue integrate_shell(const PadicContext& ctx, const KFunction& f, long n, int level, Measure m) {
  int lvl = std::max(level, 1);
  for (int attempt = 0; attempt < 3; ++attempt, lvl *= 2) {
    const CycValue coarse = detail::shell_sum(ctx, f, n, lvl, m);
    if (coarse == detail::shell_sum(ctx, f, n, lvl + 1, m)) return coarse;
  }
  throw NotLocallyConstant("not locally constant at tested resolution (shell " + std::to_string(n) + ", level " +
                           std::to_string(lvl / 2) + ")");
}

/// ∫ f dx over p^n O, sampled on cosets of p^{n+L} O, with the same gate.
inline CycValue integrate_ball(const PadicContext& ctx, const KFunction& f, long n, int level) {
  auto sum = [&](int lvl) {
    const std::int64_t count = ctx.pow(lvl);
    const Rational pn = padic::p_power(ctx, n);
    CycAccumulator acc(&ctx);
    for (std::int64_t j = 0; j < count; ++j) acc.add(f(KElement(ctx, pn * Rational(Integer(static_cast<long>(j))))));
    return acc.value().scaled(padic::p_power(ctx, -n - lvl));
  };
  int lvl = std::max(level, 0);
  for (int attempt = 0; attempt < 3; ++attempt, lvl = std::max(1, 2 * lvl)) {
    const CycValue coarse = sum(lvl);
    if (coarse == sum(lvl + 1)) return coarse;
  }
  throw NotLocallyConstant("not locally constant at tested resolution (ball " + std::to_string(n) + ")");
}

/// lim S(N): returns once S(N) = S(N+1) = S(N+2) for some N in
/// [start, start + max_range].
inline CycValue improper_integral(const std::function<CycValue(long)>& partial, long start, long max_range) {
  std::vector<CycValue> trace;
  for (long n = start; n <= start + max_range + 2; ++n) {
    trace.push_back(partial(n));
    const std::size_t k = trace.size();
    if (k >= 3 && trace[k - 1] == trace[k - 2] && trace[k - 2] == trace[k - 3]) return trace[k - 1];
  }
  throw NoStabilization("improper integral did not stabilise within " + std::to_string(max_range) + " enlargements",
                        std::move(trace));
}

/// Cached Bessel values J^{ξ,η}(⟨x⟩w), grouped by shell.
struct BesselTable {
  Rational xi;
  Rational eta;
  std::map<long, std::map<Rational, CycValue>> values;
};

struct GammaFactor {
  LaurentPoly poly{Variable::QPosS};
  std::map<long, CycValue> coefficients;
  long support_bound = 0;  // M = 2m' - l
};

struct ZetaFunction {
  LaurentPoly poly{Variable::QNegS};
  long window_lo = 0;
  long window_hi = 0;
};

struct FeReport {
  LaurentPoly lhs{Variable::QNegS};
  LaurentPoly rhs{Variable::QNegS};
  LaurentPoly residual{Variable::QNegS};
  bool pass = false;
  bool vacuous = false;  // parity forces both sides to vanish
};

class ZetaEngine {
 public:
  struct Options {
    long max_range = 12;   // improper-integral enlargements
    long window_cap = 40;  // largest |shell| scanned for zeta functions
    int zero_run = 5;      // zero shells needed to close a window end
  };

  explicit ZetaEngine(const Supercuspidal& pi) : ZetaEngine(pi, Options{}) {}
  ZetaEngine(const Supercuspidal& pi, Options opts) : pi_(&pi), chi_(pi.context()), opts_(opts) {}

  const Supercuspidal& rep() const noexcept { return *pi_; }
  const PadicContext& context() const noexcept { return pi_->context(); }
  const ChiPsi& chi_psi() const noexcept { return chi_; }
  const Options& options() const noexcept { return opts_; }

  /// J^{ξ,η}(g) from ∫⁺ W^ξ_v(g n(y)) ψ^η(-y) dy = J·l^η(v), v = φ^e_{b'}.
  /// The integrand is O-periodic, so the integral over P^{-N} is the sum over
  /// y = j/p^N.
  CycValue bessel_direct(const KElement& xi, const KElement& eta, const MetaElement& g,
                         const CycValue& scale = CycValue(1)) const {
    const PadicContext& ctx = context();
    const std::size_t b_eta = pi_->entry_for(eta);
    (void)pi_->entry_for(xi);
    const InducedVector v = InducedVector::basis(Rational(0), 0, b_eta).scaled(scale);
    auto term = [&](const Rational& y) {
      const MetaElement gy = g * MetaElement::n(ctx, y);
      return pi_->whittaker_function(xi, v, gy) * psi_value(-eta * KElement(ctx, y));
    };
    CycValue running;
    long done = -1;
    auto partial = [&](long n) {
      for (long k = done + 1; k <= n; ++k) {
        CycAccumulator acc(&ctx);
        if (k == 0) {
          acc.add(term(Rational(0)));
        } else {
          const std::int64_t count = ctx.pow(static_cast<int>(k));
          const Rational inv = padic::p_power(ctx, -k);
          for (std::int64_t j = 1; j < count; ++j) {
            if (j % ctx.p() == 0) continue;
            acc.add(term(inv * Rational(Integer(static_cast<long>(j)))));
          }
        }
        running += acc.value();
        done = k;
      }
      return running;
    };
    long min_val = 0;
    for (const Rational* e : {&g.g().a(), &g.g().b(), &g.g().c(), &g.g().d()}) {
      if (sgn(*e) != 0) min_val = std::min(min_val, padic::valuation(*e, ctx.p()).value());
    }
    // W^ξ_v(g n(y)) vanishes once |y| exceeds the largest entry of g.
    const long start = -min_val;
    const CycValue integral = improper_integral(partial, start, opts_.max_range);
    return integral / pi_->whittaker_functional(eta, v);
  }

  /// J^{ξ,η}(⟨x⟩w) by the direct method.
  CycValue bessel_direct(const KElement& xi, const KElement& eta, const KElement& x) const {
    if (x.is_zero()) throw std::domain_error("Bessel function at x = 0");
    return bessel_direct(xi, eta, MetaElement::diag(context(), x.value()) * MetaElement::w(context()));
  }

  /// J^{ξ,η}(⟨x⟩w) for v(x) = n ≤ -l as a shell integral over y ∈ p^n O^×
  /// of |σ̄(⟨x/y⟩)b'|_b (x⁻¹y, y⁻¹) ψ(-ξx²/y - ηy).
  CycValue bessel_closed(const KElement& xi, const KElement& eta, const KElement& x) const {
    const PadicContext& ctx = context();
    if (x.is_zero() || x.valuation().value() > -pi_->level()) {
      throw std::domain_error("closed Bessel formula needs v(x) <= -l");
    }
    const long n = x.valuation().value();
    const std::size_t b = pi_->entry_for(xi);
    const std::size_t bp = pi_->entry_for(eta);
    auto f = [&](const KElement& y) {
      const KElement ratio = x / y;
      const CycMatrix s = pi_->genuine_eigen_eval(MetaElement::diag(ctx, ratio.value()));
      const int sign = hilbert_symbol(y / x, y.inverse());
      const KElement arg = -(xi * x * x / y) - eta * y;
      return (s[b][bp] * psi_value(arg)).scaled(Rational(sign));
    };
    return integrate_shell(ctx, f, n, static_cast<int>(pi_->level() - n), Measure::Additive);
  }

  /// J^{ξ,η}(⟨x⟩w) through the cache (direct method).
  CycValue bessel(const KElement& xi, const KElement& eta, const KElement& x) const {
    BesselTable& table = bessel_table(xi, eta);
    const long n = x.valuation().value();
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto& shell = table.values[n];
      auto it = shell.find(x.value());
      if (it != shell.end()) return it->second;
    }
    const CycValue j = n > 0 ? CycValue() : bessel_direct(xi, eta, x);
    std::lock_guard<std::mutex> lock(mutex_);
    table.values[n].emplace(x.value(), j);
    return j;
  }

  BesselTable& bessel_table(const KElement& xi, const KElement& eta) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(xi.value(), eta.value());
    auto it = tables_.find(key);
    if (it == tables_.end()) it = tables_.emplace(key, BesselTable{xi.value(), eta.value(), {}}).first;
    return it->second;
  }

  /// M = 2·max(l, m) - l.
  long support_bound(const MultCharacter& mu) const {
    const long mp = std::max<long>(pi_->level(), mu.conductor());
    return 2 * mp - pi_->level();
  }

  /// γ(n) = 2q^{-n/2} ∫_{|x|=q^n} J(⟨x⟩w) χ_ψ(x) μ(x) d^×x.
  CycValue gamma_coefficient(const KElement& xi, const KElement& eta, const MultCharacter& mu, long n) const {
    const PadicContext& ctx = context();
    const int level =
        static_cast<int>(std::max<long>({pi_->level() + std::max<long>(n, 0), static_cast<long>(mu.conductor()), 1}));
    auto f = [&](const KElement& x) { return bessel(xi, eta, x) * chi_(x) * mu(x); };
    const CycValue integral = integrate_shell(ctx, f, -n, level, Measure::Multiplicative);
    return (integral * CycValue::q_half_power(ctx, -n)).scaled(Rational(2));
  }

  GammaFactor gamma_factor(const KElement& xi, const KElement& eta, const MultCharacter& mu) const {
    GammaFactor out;
    out.poly = LaurentPoly(Variable::QPosS, &context());
    out.support_bound = support_bound(mu);
    for (long n = 0; n <= out.support_bound; ++n) {
      CycValue c = gamma_coefficient(xi, eta, mu, n);
      if (corrupt_gamma_ && n == 0) c += CycValue(1);
      out.coefficients.emplace(n, c);
      out.poly.add_term(n, c);
    }
    return out;
  }

  /// Level at which x ↦ W^ξ_v(⟨x⟩)χ_ψ(x)μ(x) is constant on unit cosets.
  int zeta_level(const InducedVector& v, const MultCharacter& mu) const {
    long lvl = std::max<long>({pi_->level(), static_cast<long>(mu.conductor()), 1});
    for (const auto& [key, c] : v.terms()) {
      if (sgn(key.t) != 0) lvl = std::max(lvl, -padic::valuation(key.t, context().p()).value());
    }
    return static_cast<int>(lvl);
  }

  /// Coefficient of (q^{-s})^n: 2q^{n/2} ∫_{v(x)=n} W^ξ_v(⟨x⟩) χ_ψ(x) μ(x) d^×x.
  CycValue zeta_coefficient(const KElement& xi, const MultCharacter& mu, const InducedVector& v, long n,
                            int level) const {
    const PadicContext& ctx = context();
    auto f = [&](const KElement& x) {
      return pi_->whittaker_function(xi, v, MetaElement::diag(ctx, x.value())) * chi_(x) * mu(x);
    };
    const CycValue integral = integrate_shell(ctx, f, n, level, Measure::Multiplicative);
    return (integral * CycValue::q_half_power(ctx, n)).scaled(Rational(2));
  }

  ZetaFunction zeta_function(const KElement& xi, const MultCharacter& mu, const InducedVector& v) const {
    ZetaFunction out;
    out.poly = LaurentPoly(Variable::QNegS, &context());
    (void)pi_->entry_for(xi);
    const int level = zeta_level(v, mu);
    const long l = pi_->level();
    std::map<long, CycValue> shells;
    auto eval = [&](long n) {
      auto it = shells.find(n);
      if (it == shells.end()) it = shells.emplace(n, zeta_coefficient(xi, mu, v, n, level)).first;
      return it->second;
    };
    long lo = -(l + 6);
    long hi = l + 6;
    for (long n = lo; n <= hi; ++n) eval(n);
    auto zero_run_at = [&](long from, long step) {
      for (int k = 0; k < opts_.zero_run; ++k) {
        if (!eval(from + step * k).is_zero()) return false;
      }
      return true;
    };
    while (!zero_run_at(hi, -1)) {
      if (++hi > opts_.window_cap) throw std::runtime_error("zeta support window did not close (upper end)");
      eval(hi);
    }
    while (!zero_run_at(lo, 1)) {
      if (--lo < -opts_.window_cap) throw std::runtime_error("zeta support window did not close (lower end)");
      eval(lo);
    }
    for (const auto& [n, c] : shells) out.poly.add_term(n, c);
    out.window_lo = lo;
    out.window_hi = hi;
    return out;
  }

  /// ω_π(-1) = χ_ψ(-1)μ(-1) is necessary for a nonzero zeta function.
  bool parity_allows(const MultCharacter& mu) const {
    const KElement m1(context(), -1);
    return CycValue(pi_->central_sign()) == chi_(m1) * mu(m1);
  }

  /// Z(s,μ,l^ξ,π(w)v) against (1/4)Σ_η |η| Γ^{ξ,η}_{π,μ}(s) Z(1-s,μ⁻¹,l^η,v).
  FeReport check_fe(const KElement& xi, const MultCharacter& mu, const InducedVector& v) const {
    const PadicContext& ctx = context();
    FeReport r;
    const InducedVector wv = pi_->pi_act(MetaElement::w(ctx), v);
    r.lhs = zeta_function(xi, mu, wv).poly;
    LaurentPoly rhs(Variable::QPosS, &ctx);
    const MultCharacter mu_inv = mu.inverse();
    for (const auto& e : pi_->spectrum_by_square_class()) {
      const KElement eta(ctx, e.xi);
      const GammaFactor gamma = gamma_factor(xi, eta, mu);
      const LaurentPoly z = zeta_function(eta, mu_inv, v).poly.substitute(Substitution::SToOneMinusS);
      rhs = rhs + (gamma.poly * z).scaled(CycValue(e.abs / 4));
    }
    r.rhs = rhs.rewrite_in(Variable::QNegS);
    r.residual = r.lhs - r.rhs;
    r.pass = r.residual.is_zero();
    r.vacuous = r.pass && r.lhs.is_zero() && !parity_allows(mu);
    return r;
  }

  /// Test hook: perturbs γ(0) so the functional-equation check must fail.
  void set_corrupt_gamma(bool on) { corrupt_gamma_ = on; }

 private:
  const Supercuspidal* pi_;
  ChiPsi chi_;
  Options opts_;
  bool corrupt_gamma_ = false;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<Rational, Rational>, BesselTable> tables_;
};

}  // namespace mzeta
