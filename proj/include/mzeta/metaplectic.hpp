#pragma once

// SL₂(Q_p), its double cover on pairs [g, ε] with the Hilbert-symbol cocycle,
// the splitting over SL₂(Z_p), and the decomposition g = h·n(t)·diag(p^n, p^-n).

#include "mzeta/localchar.hpp"

#include <array>
#include <ostream>

namespace mzeta {

class SL2Element {
 public:
  SL2Element(const PadicContext& ctx, Rational a, Rational b, Rational c, Rational d)
      : ctx_(&ctx), e_{std::move(a), std::move(b), std::move(c), std::move(d)} {
    for (auto& x : e_) x.canonicalize();
    if (e_[0] * e_[3] - e_[1] * e_[2] != 1) throw std::domain_error("matrix does not have determinant 1");
  }

  static SL2Element identity(const PadicContext& ctx) { return {ctx, Rational(1), Rational(0), Rational(0), Rational(1)}; }
  static SL2Element n(const PadicContext& ctx, const Rational& x) { return {ctx, Rational(1), x, Rational(0), Rational(1)}; }
  static SL2Element diag(const PadicContext& ctx, const Rational& x) {
    if (sgn(x) == 0) throw std::domain_error("diag(0) is not invertible");
    return {ctx, x, Rational(0), Rational(0), Rational(1 / x)};
  }
  static SL2Element w(const PadicContext& ctx) { return {ctx, Rational(0), Rational(-1), Rational(1), Rational(0)}; }

  const PadicContext& context() const noexcept { return *ctx_; }
  const Rational& a() const noexcept { return e_[0]; }
  const Rational& b() const noexcept { return e_[1]; }
  const Rational& c() const noexcept { return e_[2]; }
  const Rational& d() const noexcept { return e_[3]; }

  bool is_integral() const {
    for (const auto& x : e_) {
      if (!padic::is_integral(x, ctx_->p())) return false;
    }
    return true;
  }

  /// Entries mod p^k (integral matrices only).
  std::array<std::int64_t, 4> residues(int k) const {
    std::array<std::int64_t, 4> r{};
    for (std::size_t i = 0; i < 4; ++i) r[i] = padic::residue(e_[i], *ctx_, k);
    return r;
  }

  SL2Element inverse() const { return {*ctx_, e_[3], -e_[1], -e_[2], e_[0]}; }

  friend SL2Element operator*(const SL2Element& g, const SL2Element& h) {
    if (g.ctx_ != h.ctx_) throw std::invalid_argument("mixing SL2 elements of different primes");
    SL2Element out(*g.ctx_);
    out.e_[0] = g.e_[0] * h.e_[0] + g.e_[1] * h.e_[2];
    out.e_[1] = g.e_[0] * h.e_[1] + g.e_[1] * h.e_[3];
    out.e_[2] = g.e_[2] * h.e_[0] + g.e_[3] * h.e_[2];
    out.e_[3] = g.e_[2] * h.e_[1] + g.e_[3] * h.e_[3];
    return out;
  }

  friend bool operator==(const SL2Element& g, const SL2Element& h) { return g.ctx_ == h.ctx_ && g.e_ == h.e_; }

  friend std::ostream& operator<<(std::ostream& os, const SL2Element& g) {
    return os << "[[" << g.e_[0].get_str() << "," << g.e_[1].get_str() << "],[" << g.e_[2].get_str() << ","
              << g.e_[3].get_str() << "]]";
  }

 private:
  // Products of determinant-1 matrices need no re-check.
  explicit SL2Element(const PadicContext& ctx) : ctx_(&ctx) {}

  const PadicContext* ctx_;
  std::array<Rational, 4> e_;
};

/// χ(g) = c if c ≠ 0, d otherwise.
inline KElement chi_entry(const SL2Element& g) {
  return KElement(g.context(), sgn(g.c()) != 0 ? g.c() : g.d());
}

/// {g,h} = (χ(gh)/χ(g), χ(gh)/χ(h)).
inline int cocycle(const SL2Element& g, const SL2Element& h) {
  const KElement x = chi_entry(g * h);
  return hilbert_symbol(x / chi_entry(g), x / chi_entry(h));
}

class MetaElement {
 public:
  MetaElement(SL2Element g, int eps) : g_(std::move(g)), eps_(eps) {
    if (eps != 1 && eps != -1) throw std::invalid_argument("cover sign must be +1 or -1");
  }

  static MetaElement identity(const PadicContext& ctx) { return {SL2Element::identity(ctx), 1}; }
  static MetaElement kernel(const PadicContext& ctx, int eps) { return {SL2Element::identity(ctx), eps}; }
  static MetaElement n(const PadicContext& ctx, const Rational& x) { return {SL2Element::n(ctx, x), 1}; }
  /// ⟨x⟩ = [diag(x, x⁻¹), 1].
  static MetaElement diag(const PadicContext& ctx, const Rational& x) { return {SL2Element::diag(ctx, x), 1}; }
  static MetaElement w(const PadicContext& ctx) { return {SL2Element::w(ctx), 1}; }

  const SL2Element& g() const noexcept { return g_; }
  int eps() const noexcept { return eps_; }
  const PadicContext& context() const noexcept { return g_.context(); }

  friend MetaElement operator*(const MetaElement& x, const MetaElement& y) {
    return {x.g_ * y.g_, cocycle(x.g_, y.g_) * x.eps_ * y.eps_};
  }

  /// [g,ε]⁻¹ = [g⁻¹, ε{g,g⁻¹}].
  MetaElement inverse() const {
    const SL2Element gi = g_.inverse();
    return {gi, eps_ * cocycle(g_, gi)};
  }

  friend bool operator==(const MetaElement& x, const MetaElement& y) { return x.eps_ == y.eps_ && x.g_ == y.g_; }

  friend std::ostream& operator<<(std::ostream& os, const MetaElement& x) {
    return os << "[" << x.g_ << "," << (x.eps_ > 0 ? "+1" : "-1") << "]";
  }

 private:
  SL2Element g_;
  int eps_;
};

inline MetaElement meta_mul(const MetaElement& x, const MetaElement& y) { return x * y; }
inline MetaElement meta_inv(const MetaElement& x) { return x.inverse(); }

/// s(h) = (c, d) when c ≠ 0 and v(c) > 0, else 1; satisfies
/// s(g)s(h){g,h} = s(gh) on SL₂(Z_p).
inline int kubota_split(const SL2Element& h) {
  if (!h.is_integral()) throw std::domain_error("splitting is only defined on integral matrices");
  if (sgn(h.c()) == 0) return 1;
  const KElement c(h.context(), h.c());
  if (c.valuation().value() <= 0) return 1;
  return hilbert_symbol(c, KElement(h.context(), h.d()));
}

/// r = n(t)·diag(p^n, p^-n), the coset representative.
inline SL2Element coset_rep_matrix(const PadicContext& ctx, const Rational& t, long n) {
  const Rational pn = padic::p_power(ctx, n);
  return {ctx, pn, t / pn, Rational(0), 1 / pn};
}

/// [n(t),1]·⟨p^n⟩, which equals [r, 1] since {n(t), diag(p^n,p^-n)} = 1.
inline MetaElement coset_rep(const PadicContext& ctx, const Rational& t, long n) {
  return {coset_rep_matrix(ctx, t, n), 1};
}

struct CosetDecomposition {
  SL2Element h;
  Rational t;
  long n;
  int eps_track;

  /// The H̄-part [h, ε·eps_track] of [g, ε].
  MetaElement h_part(int eps) const { return {h, eps * eps_track}; }
};

/// [g, ε] = [h, ε·eps_track]·[n(t)diag(p^n,p^-n), 1] with h ∈ SL₂(Z_p) and t
/// the fractional-part representative of its class in Q_p/Z_p.
inline CosetDecomposition coset_decompose(const SL2Element& g) {
  const PadicContext& ctx = g.context();
  const long p = ctx.p();
  const Valuation va = padic::valuation(g.a(), p);
  const Valuation vc = padic::valuation(g.c(), p);
  const long n = std::min(va, vc).value();
  const Rational pn = padic::p_power(ctx, n);
  const Rational u = g.a() / pn;
  const Rational w = g.c() / pn;
  Rational t;
  if (sgn(u) != 0 && padic::valuation(u, p).value() == 0) {
    t = padic::frac_part(g.b() * pn / u, ctx);
  } else {
    t = padic::frac_part(g.d() * pn / w, ctx);
  }
  const SL2Element r = coset_rep_matrix(ctx, t, n);
  SL2Element h = g * r.inverse();
  if (!h.is_integral()) throw std::logic_error("coset decomposition produced a non-integral matrix");
  const int track = cocycle(h, r);
  return {std::move(h), std::move(t), n, track};
}

inline CosetDecomposition coset_decompose(const MetaElement& x) { return coset_decompose(x.g()); }

}  // namespace mzeta
