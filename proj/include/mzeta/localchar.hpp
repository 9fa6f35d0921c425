#pragma once

// Characters of Q_p: the canonical additive character, Legendre and Hilbert
// symbols, the Weil constant and the genuine character χ_ψ, and tamely
// described multiplicative characters.

#include "mzeta/cyclotomic.hpp"

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace mzeta {

/// ψ(a) = e^{2πi[a]}, [a] the fractional part of a in Q_p.
inline CycValue psi_value(const KElement& a) { return CycValue::root_of_unity(a.context(), a.frac_part()); }

/// ψ^ξ(a) := ψ(ξa).
inline CycValue psi_xi(const KElement& xi, const KElement& a) { return psi_value(xi * a); }

inline int legendre(const KElement& u) {
  if (!u.is_unit()) throw std::domain_error("Legendre symbol needs a unit, got " + u.value().get_str());
  return u.context().legendre_residue(static_cast<long>(u.residue(1)));
}

struct SquareClass {
  int parity;    // valuation mod 2
  int legendre;  // of the unit part

  friend bool operator==(const SquareClass&, const SquareClass&) = default;
  int index() const { return 2 * parity + (legendre > 0 ? 0 : 1); }
};

inline SquareClass square_class_data(const KElement& x) {
  if (x.is_zero()) throw std::domain_error("square class of zero");
  const long v = x.valuation().value();
  const KElement u(x.context(), x.unit_part());
  return {static_cast<int>(((v % 2) + 2) % 2), legendre(u)};
}

/// Closed formula for odd p: with a = p^α u, b = p^β v,
/// (a,b) = (-1)^{αβ(p-1)/2} (u/p)^β (v/p)^α.
inline int hilbert_symbol(const KElement& a, const KElement& b) {
  if (a.is_zero() || b.is_zero()) throw std::domain_error("Hilbert symbol of zero");
  const long p = a.context().p();
  const long al = a.valuation().value();
  const long be = b.valuation().value();
  int s = 1;
  if ((al % 2 != 0) && (be % 2 != 0) && ((p - 1) / 2) % 2 != 0) s = -s;
  if (be % 2 != 0) s *= legendre(KElement(a.context(), a.unit_part()));
  if (al % 2 != 0) s *= legendre(KElement(b.context(), b.unit_part()));
  return s;
}

/// Decides solvability of z² = a x² + b y² by search over primitive triples
/// mod p^k. A root mod p^k whose gradient has valuation e with k ≥ 2e+1 lifts
/// by Hensel's lemma; such a root exists whenever any p-adic root does, for k ≥ 3.
inline int hilbert_symbol_bruteforce(const KElement& a, const KElement& b, int k = 3) {
  if (a.is_zero() || b.is_zero()) throw std::domain_error("Hilbert symbol of zero");
  if (k < 3) throw std::invalid_argument("brute-force Hilbert symbol needs k >= 3");
  const PadicContext& ctx = a.context();
  const long p = ctx.p();
  const std::int64_t mod = ctx.pow(k);
  auto reduce = [&](const KElement& x) {
    const long v = x.valuation().value();
    const std::int64_t u = padic::residue(x.unit_part(), ctx, k);
    return (v % 2 != 0) ? (u * p) % mod : u;
  };
  const std::int64_t aa = reduce(a);
  const std::int64_t bb = reduce(b);
  auto val = [&](std::int64_t x) {
    x %= mod;
    if (x < 0) x += mod;
    if (x == 0) return k;
    int v = 0;
    while (x % p == 0) {
      x /= p;
      ++v;
    }
    return v;
  };
  std::vector<std::vector<std::int64_t>> roots(static_cast<std::size_t>(mod));
  for (std::int64_t z = 0; z < mod; ++z) roots[static_cast<std::size_t>((z * z) % mod)].push_back(z);
  for (std::int64_t x = 0; x < mod; ++x) {
    for (std::int64_t y = 0; y < mod; ++y) {
      const std::int64_t s = ((aa * ((x * x) % mod)) % mod + (bb * ((y * y) % mod)) % mod) % mod;
      for (std::int64_t z : roots[static_cast<std::size_t>(s)]) {
        if (x % p == 0 && y % p == 0 && z % p == 0) continue;
        const int e = std::min({val(2 * aa * x), val(2 * bb * y), val(2 * z)});
        if (k >= 2 * e + 1) return 1;
      }
    }
  }
  return -1;
}

namespace detail {

/// ∫_O ψ(c x²) dx as an exact sum at the given level.
inline CycValue quadratic_integral(const KElement& c, int level) {
  const PadicContext& ctx = c.context();
  const std::int64_t n = ctx.pow(level);
  CycAccumulator acc(&ctx);
  const Rational w(Integer(1), Integer(static_cast<long>(n)));
  for (std::int64_t x = 0; x < n; ++x) {
    const Rational xx(Integer(static_cast<long>(x)) * Integer(static_cast<long>(x)));
    const auto [key, sign] = CycValue::key_for(ctx, padic::frac_part(c.value() * xx, ctx));
    acc.add_root(key, sign > 0 ? w : Rational(-w));
  }
  return acc.value();
}

inline CycValue refined_quadratic_integral(const KElement& c) {
  const long v = c.valuation().value();
  const int level = static_cast<int>(std::max<long>(0, -v)) + 1;
  CycValue coarse = quadratic_integral(c, level);
  if (!(coarse == quadratic_integral(c, level + 1))) {
    throw std::logic_error("quadratic character sum is not locally constant at level " + std::to_string(level));
  }
  return coarse;
}

}  // namespace detail

/// Weil constant from ∫Φ̂(x)ψ(ax²)dx = |a|^{-1/2} α(a) ∫Φ(x)ψ(-a⁻¹x²)dx with
/// Φ = 1_O (so Φ̂ = 1_O for odd p).
inline CycValue weil_alpha(const KElement& a) {
  if (a.is_zero()) throw std::domain_error("Weil constant of zero");
  const PadicContext& ctx = a.context();
  const CycValue lhs = detail::refined_quadratic_integral(a);
  const CycValue rhs = detail::refined_quadratic_integral(-a.inverse());
  if (rhs.is_zero()) throw std::logic_error("Weil constant: right-hand integral vanished at " + a.value().get_str());
  const long v = a.valuation().value();
  return (lhs / rhs * CycValue::q_half_power(ctx, -v)).flattened();
}

/// χ_ψ(a) = α_ψ(1)/α_ψ(a).
inline CycValue chi_psi(const KElement& a) {
  return weil_alpha(KElement(a.context(), 1)) / weil_alpha(a);
}

/// χ_ψ tabulated on the four square classes.
class ChiPsi {
 public:
  explicit ChiPsi(const PadicContext& ctx) : ctx_(&ctx) {
    const KElement one(ctx, 1);
    const KElement n(ctx, ctx.nonresidue());
    const KElement p(ctx, ctx.p());
    for (const KElement& x : {one, n, p, p * n}) values_[static_cast<std::size_t>(square_class_data(x).index())] = chi_psi(x);
  }
  const CycValue& operator()(const KElement& a) const {
    return values_[static_cast<std::size_t>(square_class_data(a).index())];
  }

 private:
  const PadicContext* ctx_;
  std::array<CycValue, 4> values_;
};

/// μ(p^v u) = μ(p)^v · e^{2πi j·log_g(u)/φ(p^m)} with g the least primitive
/// root mod p², so g generates (Z/p^m)^× for every m.
class MultCharacter {
 public:
  MultCharacter(const PadicContext& ctx, int conductor, Rational at_p_exponent, long generator_exponent,
                int max_conductor = 3)
      : ctx_(&ctx), m_(conductor), at_p_(std::move(at_p_exponent)), j_(generator_exponent) {
    if (m_ < 0) throw std::invalid_argument("conductor exponent must be non-negative");
    if (m_ > max_conductor) {
      throw std::invalid_argument("conductor exponent " + std::to_string(m_) + " exceeds the cap " +
                                  std::to_string(max_conductor));
    }
    at_p_ -= Rational(floor_rational(at_p_));
    at_p_.canonicalize();
    (void)CycValue::key_for(ctx, at_p_);
    if (m_ == 0) {
      j_ = 0;
      return;
    }
    order_ = static_cast<long>(ctx.pow(m_ - 1)) * (ctx.p() - 1);
    j_ = ((j_ % order_) + order_) % order_;
    if (m_ == 1 && j_ % (ctx.p() - 1) == 0) throw std::invalid_argument("character is unramified, not conductor 1");
    if (m_ >= 2 && j_ % ctx.p() == 0) {
      throw std::invalid_argument("character is trivial on 1+P^" + std::to_string(m_ - 1) + ", conductor is not " +
                                  std::to_string(m_));
    }
    (void)CycValue::key_for(ctx, make_rational(j_, order_));
    const long mod = static_cast<long>(ctx.pow(m_));
    dlog_.assign(static_cast<std::size_t>(mod), -1);
    const long g = primitive_root(ctx);
    long x = 1;
    for (long e = 0; e < order_; ++e) {
      dlog_[static_cast<std::size_t>(x)] = e;
      x = (x * g) % mod;
    }
  }

  static MultCharacter trivial(const PadicContext& ctx) { return MultCharacter(ctx, 0, Rational(0), 0); }

  const PadicContext& context() const noexcept { return *ctx_; }
  int conductor() const noexcept { return m_; }
  const Rational& at_p_exponent() const noexcept { return at_p_; }
  long generator_exponent() const noexcept { return j_; }

  /// Exponent r with μ(x) = e^{2πi r}.
  Rational exponent(const KElement& x) const {
    if (x.is_zero()) throw std::domain_error("multiplicative character at zero");
    Rational r = at_p_ * x.valuation().value();
    if (m_ > 0) {
      const std::int64_t u = padic::residue(x.unit_part(), *ctx_, m_);
      r += make_rational(j_ * dlog_[static_cast<std::size_t>(u)], order_);
    }
    r.canonicalize();
    return r;
  }

  CycValue operator()(const KElement& x) const { return CycValue::root_of_unity(*ctx_, exponent(x)); }

  MultCharacter inverse() const {
    MultCharacter out = *this;
    out.at_p_ = -at_p_;
    out.at_p_ -= Rational(floor_rational(out.at_p_));
    out.at_p_.canonicalize();
    out.j_ = m_ == 0 ? 0 : (order_ - j_) % order_;
    return out;
  }

  std::string describe() const {
    return "m=" + std::to_string(m_) + ",at_p=" + at_p_.get_str() + ",gen=" + std::to_string(j_);
  }

  static long primitive_root(const PadicContext& ctx) {
    const long p = ctx.p();
    const long mod = p * p;
    const long order = p * (p - 1);
    for (long g = 2; g < mod; ++g) {
      if (g % p == 0) continue;
      long x = 1;
      long ord = 0;
      do {
        x = (x * g) % mod;
        ++ord;
      } while (x != 1);
      if (ord == order) return g;
    }
    throw std::logic_error("no primitive root");
  }

 private:
  static Integer floor_rational(const Rational& r) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return f;
  }

  const PadicContext* ctx_;
  int m_;
  Rational at_p_;
  long j_;
  long order_ = 1;
  std::vector<long> dlog_;
};

}  // namespace mzeta
