#pragma once

// Exact elements of Q(ζ_{4p^L})[√q].
//
// A value is a pair of sparse maps (grade 0 and the coefficient of √q) from
// roots of unity to rationals. A root of unity e^{2πi(a/4 + k/p^E)} is packed
// into a single key (k << 1 | a mod 2), the sign of i^a being folded into the
// coefficient. The canonical form uses the power basis of Q(ζ_{p^L}): the
// exponents k/p^E < (p-1)/p. That set does not depend on L, so the level never
// has to be tracked per value.

#include "mzeta/padic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mzeta {

class CycValue;

namespace detail {

using CycKey = std::uint64_t;

inline CycKey pack_key(std::int64_t k, int ipow) { return (static_cast<CycKey>(k) << 1) | static_cast<CycKey>(ipow); }
inline std::int64_t key_exponent(CycKey key) { return static_cast<std::int64_t>(key >> 1); }
inline int key_ipow(CycKey key) { return static_cast<int>(key & 1U); }

/// Adds c·key to a raw map, rewriting exponents outside the power basis via
/// 1 + ζ_p + ... + ζ_p^{p-1} = 0.
inline void insert_canonical(std::unordered_map<CycKey, Rational>& out, const PadicContext* ctx, CycKey key,
                             const Rational& c) {
  const std::int64_t k = key_exponent(key);
  if (ctx == nullptr || k == 0) {
    out[key] += c;
    return;
  }
  const std::int64_t step = ctx->modulus() / ctx->p();
  if (k < (ctx->p() - 1) * step) {
    out[key] += c;
    return;
  }
  const int ip = key_ipow(key);
  for (long j = 1; j < ctx->p(); ++j) out[pack_key(k - j * step, ip)] -= c;
}

struct KeyedTerm {
  CycKey key;
  Rational coeff;
};

inline std::vector<KeyedTerm> finish(std::unordered_map<CycKey, Rational>& raw) {
  std::vector<KeyedTerm> out;
  out.reserve(raw.size());
  for (auto& [key, c] : raw) {
    if (sgn(c) != 0) out.push_back({key, std::move(c)});
  }
  std::sort(out.begin(), out.end(), [](const KeyedTerm& a, const KeyedTerm& b) { return a.key < b.key; });
  return out;
}

/// Multiplies two packed roots of unity. Returns the product key and sign.
inline std::pair<CycKey, int> multiply_keys(const PadicContext* ctx, CycKey a, CycKey b) {
  std::int64_t k = key_exponent(a) + key_exponent(b);
  if (ctx != nullptr && k >= ctx->modulus()) k -= ctx->modulus();
  int ip = key_ipow(a) + key_ipow(b);
  int sign = 1;
  if (ip == 2) {
    ip = 0;
    sign = -1;
  }
  return {pack_key(k, ip), sign};
}

/// Gauss-Jordan elimination over Q. Returns nullopt if the system is singular.
inline std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(a[pivot][col]) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    const Rational inv = 1 / a[col][col];
    for (std::size_t j = col; j < n; ++j) a[col][j] *= inv;
    b[col] *= inv;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || sgn(a[row][col]) == 0) continue;
      const Rational f = a[row][col];
      for (std::size_t j = col; j < n; ++j) a[row][j] -= f * a[col][j];
      b[row] -= f * b[col];
    }
  }
  return b;
}

}  // namespace detail

class CycValue {
 public:
  using Key = detail::CycKey;
  using Term = detail::KeyedTerm;
  using Terms = std::vector<Term>;

  CycValue() = default;
  CycValue(long n) : CycValue(Rational(n)) {}  // NOLINT(google-explicit-constructor)
  CycValue(int n) : CycValue(Rational(n)) {}   // NOLINT(google-explicit-constructor)
  CycValue(const Rational& r) {                // NOLINT(google-explicit-constructor)
    if (sgn(r) != 0) base_.push_back({0, r});
  }

  /// e^{2πi r}; r must have denominator dividing 4·p^E.
  static CycValue root_of_unity(const PadicContext& ctx, const Rational& r) {
    const auto [key, sign] = key_for(ctx, r);
    CycValue out;
    out.ctx_ = &ctx;
    std::unordered_map<Key, Rational> raw;
    detail::insert_canonical(raw, &ctx, key, Rational(sign));
    out.base_ = detail::finish(raw);
    return out;
  }

  static CycValue imaginary_unit() {
    CycValue out;
    out.base_.push_back({detail::pack_key(0, 1), Rational(1)});
    return out;
  }

  static CycValue sqrt_q(const PadicContext& ctx) {
    CycValue out;
    out.ctx_ = &ctx;
    out.sqrtq_.push_back({0, Rational(1)});
    return out;
  }

  /// q^{n/2} as a graded value.
  static CycValue q_half_power(const PadicContext& ctx, long n) {
    const long half = (n >= 0 ? n : n - 1) / 2;  // floor(n/2)
    const Rational scale = padic::p_power(ctx, half);
    if (n % 2 == 0) return CycValue(scale);
    return sqrt_q(ctx).scaled(scale);
  }

  /// Packs e^{2πi r} as (key, sign).
  static std::pair<Key, int> key_for(const PadicContext& ctx, const Rational& r) {
    const std::int64_t m = ctx.modulus();
    Rational frac = r - Rational(floor_of(r));
    Integer scaled_num = frac.get_num() * Integer(static_cast<long>(4 * m));
    if (!mpz_divisible_p(scaled_num.get_mpz_t(), frac.get_den().get_mpz_t())) {
      throw std::domain_error("root of unity e^{2πi·" + r.get_str() + "} is outside Q(ζ_{4p^E}) for p=" +
                              std::to_string(ctx.p()));
    }
    Integer big_k = scaled_num / frac.get_den();
    const std::int64_t kk = big_k.get_si();  // in [0, 4m)
    const std::int64_t a = ((kk % 4) * (m % 4)) % 4;
    std::int64_t k = (kk - a * m) / 4;
    k %= m;
    if (k < 0) k += m;
    return {detail::pack_key(k, static_cast<int>(a % 2)), a >= 2 ? -1 : 1};
  }

  /// The exponent r in [0,1) of the root of unity packed in key.
  static Rational key_to_exponent(const PadicContext* ctx, Key key) {
    Rational r = Rational(detail::key_ipow(key), 4);
    if (ctx != nullptr && detail::key_exponent(key) != 0) {
      r += Rational(Integer(static_cast<long>(detail::key_exponent(key))), Integer(static_cast<long>(ctx->modulus())));
    }
    r.canonicalize();
    return r;
  }

  const PadicContext* context() const noexcept { return ctx_; }
  const Terms& base_terms() const noexcept { return base_; }
  const Terms& sqrtq_terms() const noexcept { return sqrtq_; }

  bool is_structurally_zero() const noexcept { return base_.empty() && sqrtq_.empty(); }
  bool is_grade_pure() const noexcept { return base_.empty() || sqrtq_.empty(); }

  /// Exact zero test in the field (√q flattened through the Gauss sum when the
  /// value mixes grades).
  bool is_zero() const {
    if (sqrtq_.empty()) return base_.empty();
    if (base_.empty()) return false;
    return flattened().base_.empty();
  }

  std::optional<Rational> as_rational() const {
    if (!sqrtq_.empty()) return std::nullopt;
    if (base_.empty()) return Rational(0);
    if (base_.size() == 1 && base_[0].key == 0) return base_[0].coeff;
    return std::nullopt;
  }

  /// Rewrites √q as the Gauss sum Σ (x/p) ζ_p^x (times -i when p ≡ 3 mod 4),
  /// giving the unique canonical form in Q(ζ_{4p^L}).
  CycValue flattened() const {
    if (sqrtq_.empty()) return *this;
    CycValue s;
    s.ctx_ = ctx_;
    s.sqrtq_ = sqrtq_;
    CycValue rest;
    rest.ctx_ = ctx_;
    rest.base_ = base_;
    CycValue grade1;
    grade1.ctx_ = ctx_;
    grade1.base_ = sqrtq_;
    return rest + grade1 * gauss_sqrt_q(*ctx_);
  }

  /// The positive square root of q as an element of Q(ζ_{4p}).
  static CycValue gauss_sqrt_q(const PadicContext& ctx) {
    const long p = ctx.p();
    const std::int64_t step = ctx.modulus() / p;
    std::unordered_map<Key, Rational> raw;
    const bool times_minus_i = (p % 4 == 3);
    for (long x = 1; x < p; ++x) {
      const int leg = ctx.legendre_residue(x);
      const Key key = detail::pack_key(x * step, times_minus_i ? 1 : 0);
      detail::insert_canonical(raw, &ctx, key, Rational(times_minus_i ? -leg : leg));
    }
    CycValue out;
    out.ctx_ = &ctx;
    out.base_ = detail::finish(raw);
    return out;
  }

  /// Smallest L with the (flattened) value in Q(ζ_{4p^L}).
  int level() const {
    if (!sqrtq_.empty()) return std::max(1, flattened().level());
    int lvl = 0;
    for (const auto& t : base_) lvl = std::max(lvl, key_level(t.key));
    return lvl;
  }

  CycValue conj() const {
    CycValue out;
    out.ctx_ = ctx_;
    out.base_ = conj_terms(base_);
    out.sqrtq_ = conj_terms(sqrtq_);
    return out;
  }

  CycValue scaled(const Rational& s) const {
    if (sgn(s) == 0) return CycValue();
    CycValue out = *this;
    for (auto& t : out.base_) t.coeff *= s;
    for (auto& t : out.sqrtq_) t.coeff *= s;
    return out;
  }

  /// Multiplicative inverse; throws std::domain_error for zero (and for zero
  /// divisors of the graded ring, which are zero as complex numbers).
  CycValue inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in cyclotomic field");
    if (sqrtq_.empty()) return invert_base();
    if (base_.empty()) {
      // (c√q)^{-1} = c^{-1}√q / q
      CycValue c;
      c.ctx_ = ctx_;
      c.base_ = sqrtq_;
      return (c.invert_base() * sqrt_q(*ctx_)).scaled(Rational(1, ctx_->q()));
    }
    return flattened().invert_base();
  }

  std::complex<double> embed_float() const {
    std::complex<double> z = embed_terms(base_);
    if (!sqrtq_.empty()) z += std::sqrt(static_cast<double>(ctx_->q())) * embed_terms(sqrtq_);
    return z;
  }

  std::string to_string() const {
    if (is_structurally_zero()) return "0";
    std::ostringstream os;
    os << terms_string(base_);
    if (!sqrtq_.empty()) {
      if (!base_.empty()) os << " + ";
      os << "sqrt(q)*(" << terms_string(sqrtq_) << ")";
    }
    return os.str();
  }

  CycValue operator-() const { return scaled(Rational(-1)); }

  friend CycValue operator+(const CycValue& a, const CycValue& b) {
    CycValue out;
    out.ctx_ = common_context(a, b);
    out.base_ = merge(a.base_, b.base_, 1);
    out.sqrtq_ = merge(a.sqrtq_, b.sqrtq_, 1);
    return out;
  }
  friend CycValue operator-(const CycValue& a, const CycValue& b) {
    CycValue out;
    out.ctx_ = common_context(a, b);
    out.base_ = merge(a.base_, b.base_, -1);
    out.sqrtq_ = merge(a.sqrtq_, b.sqrtq_, -1);
    return out;
  }
  friend CycValue operator*(const CycValue& a, const CycValue& b) {
    const PadicContext* ctx = common_context(a, b);
    CycValue out;
    out.ctx_ = ctx;
    if (a.is_structurally_zero() || b.is_structurally_zero()) return out;
    std::unordered_map<Key, Rational> base;
    std::unordered_map<Key, Rational> sq;
    accumulate_product(base, ctx, a.base_, b.base_, Rational(1));
    if (!a.sqrtq_.empty() && !b.sqrtq_.empty()) accumulate_product(base, ctx, a.sqrtq_, b.sqrtq_, Rational(ctx->q()));
    accumulate_product(sq, ctx, a.base_, b.sqrtq_, Rational(1));
    accumulate_product(sq, ctx, a.sqrtq_, b.base_, Rational(1));
    out.base_ = detail::finish(base);
    out.sqrtq_ = detail::finish(sq);
    return out;
  }
  friend CycValue operator/(const CycValue& a, const CycValue& b) { return a * b.inverse(); }

  CycValue& operator+=(const CycValue& o) { return *this = *this + o; }
  CycValue& operator-=(const CycValue& o) { return *this = *this - o; }
  CycValue& operator*=(const CycValue& o) { return *this = *this * o; }

  /// Exact field equality.
  friend bool operator==(const CycValue& a, const CycValue& b) { return (a - b).is_zero(); }

  friend std::ostream& operator<<(std::ostream& os, const CycValue& v) { return os << v.to_string(); }

 private:
  friend class CycAccumulator;

  static Integer floor_of(const Rational& r) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return f;
  }

  static const PadicContext* common_context(const CycValue& a, const CycValue& b) {
    if (a.ctx_ == nullptr) return b.ctx_;
    if (b.ctx_ != nullptr && a.ctx_ != b.ctx_) throw std::invalid_argument("mixing cyclotomic values of different primes");
    return a.ctx_;
  }

  int key_level(Key key) const {
    std::int64_t k = detail::key_exponent(key);
    if (k == 0) return 0;
    int v = 0;
    while (k % ctx_->p() == 0) {
      k /= ctx_->p();
      ++v;
    }
    return ctx_->max_level() - v;
  }

  static Terms merge(const Terms& a, const Terms& b, int sign) {
    Terms out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].key < b[j].key)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j].key < a[i].key) {
        out.push_back({b[j].key, sign > 0 ? b[j].coeff : Rational(-b[j].coeff)});
        ++j;
      } else {
        Rational c = sign > 0 ? Rational(a[i].coeff + b[j].coeff) : Rational(a[i].coeff - b[j].coeff);
        if (sgn(c) != 0) out.push_back({a[i].key, std::move(c)});
        ++i;
        ++j;
      }
    }
    return out;
  }

  static void accumulate_product(std::unordered_map<Key, Rational>& raw, const PadicContext* ctx, const Terms& a,
                                 const Terms& b, const Rational& scale) {
    for (const auto& x : a) {
      for (const auto& y : b) {
        const auto [key, sign] = detail::multiply_keys(ctx, x.key, y.key);
        Rational c = x.coeff * y.coeff * scale;
        if (sign < 0) c = -c;
        detail::insert_canonical(raw, ctx, key, c);
      }
    }
  }

  Terms conj_terms(const Terms& terms) const {
    std::unordered_map<Key, Rational> raw;
    for (const auto& t : terms) {
      std::int64_t k = detail::key_exponent(t.key);
      if (k != 0) k = ctx_->modulus() - k;
      const int ip = detail::key_ipow(t.key);
      detail::insert_canonical(raw, ctx_, detail::pack_key(k, ip), ip == 1 ? Rational(-t.coeff) : t.coeff);
    }
    return detail::finish(raw);
  }

  std::complex<double> embed_terms(const Terms& terms) const {
    std::complex<double> z = 0;
    for (const auto& t : terms) {
      double angle = 0.25 * detail::key_ipow(t.key);
      if (ctx_ != nullptr) {
        angle += static_cast<double>(detail::key_exponent(t.key)) / static_cast<double>(ctx_->modulus());
      }
      z += t.coeff.get_d() * std::polar(1.0, 2.0 * std::numbers::pi * angle);
    }
    return z;
  }

  std::string terms_string(const Terms& terms) const {
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms) {
      if (!first) os << " + ";
      first = false;
      const Rational r = key_to_exponent(ctx_, t.key);
      if (sgn(r) == 0) {
        os << t.coeff.get_str();
      } else {
        os << t.coeff.get_str() << "*e(" << r.get_str() << ")";
      }
    }
    return os.str();
  }

  /// Inverse of a grade-0 value.
  CycValue invert_base() const {
    if (base_.size() == 1) {
      // c·ζ: inverse is c^{-1}·conj(ζ)
      CycValue root;
      root.ctx_ = ctx_;
      root.base_.push_back({base_[0].key, Rational(1)});
      return root.conj().scaled(1 / base_[0].coeff);
    }
    const CycValue norm = *this * conj();
    if (auto r = norm.as_rational()) return conj().scaled(1 / *r);
    return invert_by_linear_algebra();
  }

  CycValue invert_by_linear_algebra() const {
    const int lvl = level();
    const std::int64_t stride = ctx_->pow(ctx_->max_level() - lvl);
    const std::int64_t count = lvl == 0 ? 1 : (ctx_->p() - 1) * ctx_->pow(lvl - 1);
    std::vector<Key> basis;
    for (std::int64_t j = 0; j < count; ++j) {
      basis.push_back(detail::pack_key(j * stride, 0));
      basis.push_back(detail::pack_key(j * stride, 1));
    }
    std::unordered_map<Key, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
    const std::size_t n = basis.size();
    std::vector<std::vector<Rational>> mat(n, std::vector<Rational>(n));
    for (std::size_t col = 0; col < n; ++col) {
      CycValue e;
      e.ctx_ = ctx_;
      e.base_.push_back({basis[col], Rational(1)});
      const CycValue prod = *this * e;
      for (const auto& t : prod.base_) mat[index.at(t.key)][col] = t.coeff;
    }
    std::vector<Rational> rhs(n);
    rhs[index.at(0)] = 1;
    auto sol = detail::solve_linear(std::move(mat), std::move(rhs));
    if (!sol) throw std::domain_error("division by zero in cyclotomic field");
    CycValue out;
    out.ctx_ = ctx_;
    for (std::size_t i = 0; i < n; ++i) {
      if (sgn((*sol)[i]) != 0) out.base_.push_back({basis[i], (*sol)[i]});
    }
    std::sort(out.base_.begin(), out.base_.end(), [](const Term& a, const Term& b) { return a.key < b.key; });
    return out;
  }

  const PadicContext* ctx_ = nullptr;
  Terms base_;
  Terms sqrtq_;
};

/// Sums many values without renormalising after every addition.
class CycAccumulator {
 public:
  explicit CycAccumulator(const PadicContext* ctx = nullptr) : ctx_(ctx) {}

  void add(const CycValue& v) { add(v, Rational(1)); }

  void add(const CycValue& v, const Rational& scale) {
    if (v.ctx_ != nullptr) {
      if (ctx_ != nullptr && ctx_ != v.ctx_) throw std::invalid_argument("mixing cyclotomic values of different primes");
      ctx_ = v.ctx_;
    }
    for (const auto& t : v.base_) base_[t.key] += t.coeff * scale;
    for (const auto& t : v.sqrtq_) sqrtq_[t.key] += t.coeff * scale;
  }

  /// Adds c·e^{2πi r} for a root already packed with CycValue::key_for.
  void add_root(CycValue::Key key, const Rational& c) { base_[key] += c; }

  CycValue value() const {
    CycValue out;
    out.ctx_ = ctx_;
    out.base_ = canonical(base_);
    out.sqrtq_ = canonical(sqrtq_);
    return out;
  }

 private:
  CycValue::Terms canonical(const std::unordered_map<CycValue::Key, Rational>& raw) const {
    std::unordered_map<CycValue::Key, Rational> out;
    for (const auto& [key, c] : raw) {
      if (sgn(c) != 0) detail::insert_canonical(out, ctx_, key, c);
    }
    return detail::finish(out);
  }

  const PadicContext* ctx_;
  std::unordered_map<CycValue::Key, Rational> base_;
  std::unordered_map<CycValue::Key, Rational> sqrtq_;
};

/// Exact field arithmetic dispatch used by the CLI and tests.
enum class CycOp { Add, Mul, Div };

inline CycValue cyc_arith(const CycValue& a, const CycValue& b, CycOp op) {
  switch (op) {
    case CycOp::Add:
      return a + b;
    case CycOp::Mul:
      return a * b;
    case CycOp::Div:
      return a / b;
  }
  throw std::invalid_argument("unknown cyclotomic operation");
}

}  // namespace mzeta
