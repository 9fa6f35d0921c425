#pragma once

// Rationals viewed inside Q_p: valuations, unit parts, fractional parts and
// residues. Elements of Q_p that occur in the engine are always rational with
// a p-power denominator (or a p-integral unit), so no precision management is
// needed anywhere.

#include <gmpxx.h>

#include <climits>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mzeta {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0) throw std::invalid_argument("not a rational number: '" + text + "'");
  if (r.get_den() == 0) throw std::domain_error("rational with zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Residue field data for Q_p, p odd. Instances are interned per prime and
/// live for the whole program, so raw pointers to them never dangle.
class PadicContext {
 public:
  static const PadicContext& get(long p) {
    static std::mutex mutex;
    static std::map<long, std::unique_ptr<PadicContext>> registry;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = registry.find(p);
    if (it == registry.end()) {
      it = registry.emplace(p, std::unique_ptr<PadicContext>(new PadicContext(p))).first;
    }
    return *it->second;
  }

  long p() const noexcept { return p_; }
  long q() const noexcept { return p_; }

  /// Largest level E such that roots of unity of order p^E are representable.
  int max_level() const noexcept { return max_level_; }
  /// p^E.
  std::int64_t modulus() const noexcept { return powers_.back(); }

  std::int64_t pow(int k) const {
    if (k < 0 || k > max_level_) throw std::out_of_range("p-power level out of range: " + std::to_string(k));
    return powers_[static_cast<std::size_t>(k)];
  }

  /// Legendre symbol of a residue r with p ∤ r.
  int legendre_residue(long r) const {
    long m = r % p_;
    if (m < 0) m += p_;
    if (m == 0) throw std::domain_error("Legendre symbol of a multiple of p");
    return squares_[static_cast<std::size_t>(m)] ? 1 : -1;
  }

  /// Smallest quadratic non-residue mod p.
  long nonresidue() const noexcept { return nonresidue_; }

  friend bool operator==(const PadicContext& a, const PadicContext& b) { return a.p_ == b.p_; }

 private:
  explicit PadicContext(long p) : p_(p) {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("p must be an odd prime (got " + std::to_string(p) + ")");
    for (long d = 3; d * d <= p; d += 2) {
      if (p % d == 0) throw std::invalid_argument("p must be an odd prime (got " + std::to_string(p) + ")");
    }
    // 4·p^E stays below 2^60 so exponent sums never overflow.
    std::int64_t pk = 1;
    powers_.push_back(1);
    while (pk <= (std::int64_t{1} << 58) / p) {
      pk *= p;
      powers_.push_back(pk);
    }
    max_level_ = static_cast<int>(powers_.size()) - 1;
    squares_.assign(static_cast<std::size_t>(p), false);
    for (long x = 1; x < p; ++x) squares_[static_cast<std::size_t>((x * x) % p)] = true;
    nonresidue_ = 2;
    while (squares_[static_cast<std::size_t>(nonresidue_)]) ++nonresidue_;
  }

  long p_;
  int max_level_ = 0;
  std::vector<std::int64_t> powers_;
  std::vector<bool> squares_;
  long nonresidue_ = 2;
};

/// p-adic valuation with a distinguished +∞ for zero.
class Valuation {
 public:
  constexpr explicit Valuation(long v) noexcept : v_(v) {}
  static constexpr Valuation infinity() noexcept { return Valuation(LONG_MAX); }

  constexpr bool is_infinite() const noexcept { return v_ == LONG_MAX; }
  long value() const {
    if (is_infinite()) throw std::domain_error("valuation of zero is +infinity");
    return v_;
  }
  constexpr auto operator<=>(const Valuation&) const = default;

  friend std::ostream& operator<<(std::ostream& os, const Valuation& v) {
    return v.is_infinite() ? (os << "+inf") : (os << v.v_);
  }

 private:
  long v_;
};

namespace padic {

/// Exponent of p in |z|, z != 0.
inline long remove_p(Integer& z, long p) {
  long v = 0;
  while (mpz_divisible_ui_p(z.get_mpz_t(), static_cast<unsigned long>(p))) {
    mpz_divexact_ui(z.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(p));
    ++v;
  }
  return v;
}

inline Valuation valuation(const Rational& x, long p) {
  if (sgn(x) == 0) return Valuation::infinity();
  Integer num = x.get_num();
  Integer den = x.get_den();
  return Valuation(remove_p(num, p) - remove_p(den, p));
}

/// x·p^{-v(x)}.
inline Rational unit_part(const Rational& x, long p) {
  if (sgn(x) == 0) throw std::domain_error("unit part of zero");
  Integer num = x.get_num();
  Integer den = x.get_den();
  remove_p(num, p);
  remove_p(den, p);
  Rational u(num, den);
  u.canonicalize();
  return u;
}

/// x mod p^k for a p-integral x, as an integer in [0, p^k).
inline std::int64_t residue(const Rational& x, const PadicContext& ctx, int k) {
  const std::int64_t mod = ctx.pow(k);
  if (k == 0) return 0;
  const Integer m(static_cast<long>(mod));
  Integer den = x.get_den();
  if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(ctx.p()))) {
    throw std::domain_error("residue of a non-integral element");
  }
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
  Integer r = x.get_num() * inv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
  return r.get_si();
}

/// Canonical representative of x + Z_p: the rational in [0,1) with p-power
/// denominator, i.e. the digit tail sum_{i<0} a_i p^i.
inline Rational frac_part(const Rational& x, const PadicContext& ctx) {
  if (sgn(x) == 0) return Rational(0);
  Integer den = x.get_den();
  const long k = padic::remove_p(den, ctx.p());
  if (k == 0) return Rational(0);
  Integer pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(ctx.p()), static_cast<unsigned long>(k));
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pk.get_mpz_t());
  Integer m = x.get_num() * inv;
  mpz_fdiv_r(m.get_mpz_t(), m.get_mpz_t(), pk.get_mpz_t());
  Rational f(m, pk);
  f.canonicalize();
  return f;
}

inline bool is_integral(const Rational& x, long p) {
  return !mpz_divisible_ui_p(x.get_den().get_mpz_t(), static_cast<unsigned long>(p));
}

inline Rational p_power(const PadicContext& ctx, long n) {
  Integer pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(ctx.p()), static_cast<unsigned long>(n < 0 ? -n : n));
  return n >= 0 ? Rational(pk) : Rational(Integer(1), pk);
}

}  // namespace padic

/// An exact rational interpreted as an element of Q_p.
class KElement {
 public:
  KElement(const PadicContext& ctx, Rational value) : ctx_(&ctx), value_(std::move(value)) {
    value_.canonicalize();
  }
  KElement(const PadicContext& ctx, long num, long den = 1) : ctx_(&ctx), value_(make_rational(num, den)) {}

  const PadicContext& context() const noexcept { return *ctx_; }
  const Rational& value() const noexcept { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  Valuation valuation() const { return padic::valuation(value_, ctx_->p()); }
  Rational unit_part() const { return padic::unit_part(value_, ctx_->p()); }
  bool is_integral() const { return padic::is_integral(value_, ctx_->p()); }
  bool is_unit() const { return !is_zero() && valuation().value() == 0; }

  /// |x| = q^{-v(x)}; |0| = 0.
  Rational abs() const { return is_zero() ? Rational(0) : padic::p_power(*ctx_, -valuation().value()); }

  Rational frac_part() const { return padic::frac_part(value_, *ctx_); }
  std::int64_t residue(int k) const { return padic::residue(value_, *ctx_, k); }

  KElement operator-() const { return KElement(*ctx_, -value_); }
  friend KElement operator+(const KElement& a, const KElement& b) { return KElement(a.same(b), a.value_ + b.value_); }
  friend KElement operator-(const KElement& a, const KElement& b) { return KElement(a.same(b), a.value_ - b.value_); }
  friend KElement operator*(const KElement& a, const KElement& b) { return KElement(a.same(b), a.value_ * b.value_); }
  friend KElement operator/(const KElement& a, const KElement& b) {
    if (b.is_zero()) throw std::domain_error("division by zero in Q_p");
    return KElement(a.same(b), a.value_ / b.value_);
  }
  KElement inverse() const { return KElement(*ctx_, 1) / *this; }

  friend bool operator==(const KElement& a, const KElement& b) { return a.ctx_ == b.ctx_ && a.value_ == b.value_; }
  friend std::ostream& operator<<(std::ostream& os, const KElement& x) { return os << x.value_.get_str(); }

 private:
  const PadicContext& same(const KElement& other) const {
    if (ctx_ != other.ctx_) throw std::invalid_argument("mixing elements of different p-adic fields");
    return *ctx_;
  }

  const PadicContext* ctx_;
  Rational value_;
};

inline Valuation valuation(const KElement& x) { return x.valuation(); }

}  // namespace mzeta
