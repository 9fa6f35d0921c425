#pragma once

// Strongly cuspidal data σ on SL₂(Z/p^l), its genuine extension through the
// splitting, and the compactly induced representation π in the basis
// φ^{n(t)⟨p^n⟩}_b of functions supported on single H̄-cosets.

#include "mzeta/metaplectic.hpp"

#include <functional>
#include <map>
#include <random>
#include <tuple>

namespace mzeta {

using CycMatrix = std::vector<std::vector<CycValue>>;

namespace mat {

inline CycMatrix zero(std::size_t d) { return CycMatrix(d, std::vector<CycValue>(d)); }

inline CycMatrix identity(std::size_t d) {
  CycMatrix m = zero(d);
  for (std::size_t i = 0; i < d; ++i) m[i][i] = CycValue(1);
  return m;
}

inline CycMatrix mul(const CycMatrix& a, const CycMatrix& b) {
  const std::size_t d = a.size();
  CycMatrix out = zero(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t k = 0; k < d; ++k) {
      if (a[i][k].is_structurally_zero()) continue;
      for (std::size_t j = 0; j < d; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

inline CycMatrix add(const CycMatrix& a, const CycMatrix& b) {
  CycMatrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) out[i][j] += b[i][j];
  }
  return out;
}

inline CycMatrix scale(const CycMatrix& a, const CycValue& c) {
  CycMatrix out = a;
  for (auto& row : out) {
    for (auto& x : row) x = x * c;
  }
  return out;
}

inline bool equal(const CycMatrix& a, const CycMatrix& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (!(a[i][j] == b[i][j])) return false;
    }
  }
  return true;
}

inline bool is_zero(const CycMatrix& a) {
  for (const auto& row : a) {
    for (const auto& x : row) {
      if (!x.is_zero()) return false;
    }
  }
  return true;
}

inline CycValue trace(const CycMatrix& a) {
  CycValue t;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

}  // namespace mat

/// A representation of SL₂(Z/p^l) stored as a dense table.
class SigmaRep {
 public:
  using Residues = std::array<std::int64_t, 4>;

  const PadicContext& context() const noexcept { return *ctx_; }
  int level() const noexcept { return l_; }
  std::size_t dim() const noexcept { return d_; }
  std::int64_t modulus() const noexcept { return n_; }

  /// Builds the table from images of n(1) and w by walking the Cayley graph;
  /// every edge is checked, which proves the assignment is a homomorphism.
  static SigmaRep from_generators(const PadicContext& ctx, int l, const CycMatrix& n1, const CycMatrix& w) {
    SigmaRep s(ctx, l, n1.size());
    const std::int64_t N = s.n_;
    const Residues gens[2] = {{1, 1, 0, 1}, {0, N - 1, 1, 0}};
    const CycMatrix* images[2] = {&n1, &w};
    const Residues e{1, 0, 0, 1};
    s.set(e, mat::identity(s.d_));
    std::vector<Residues> frontier{e};
    while (!frontier.empty()) {
      std::vector<Residues> next;
      for (const auto& g : frontier) {
        for (int k = 0; k < 2; ++k) {
          const Residues h = s.mul(g, gens[k]);
          CycMatrix m = mat::mul(s.table(g), *images[k]);
          if (s.present(h)) {
            if (!mat::equal(s.table(h), m)) {
              throw std::invalid_argument("generator images do not define a representation of SL2(Z/p^l)");
            }
            continue;
          }
          s.set(h, std::move(m));
          next.push_back(h);
        }
      }
      frontier = std::move(next);
    }
    if (s.count_ != s.group_order()) throw std::logic_error("n(1) and w did not generate SL2(Z/p^l)");
    return s;
  }

  /// Builds the table from explicit entries; `validate` runs every check.
  static SigmaRep from_entries(const PadicContext& ctx, int l, std::size_t d,
                               const std::vector<std::pair<Residues, CycMatrix>>& entries) {
    SigmaRep s(ctx, l, d);
    for (const auto& [g, m] : entries) {
      Residues r = g;
      for (auto& x : r) x = ((x % s.n_) + s.n_) % s.n_;
      if (((r[0] * r[3] - r[1] * r[2]) % s.n_ + s.n_) % s.n_ != 1 % s.n_) {
        throw std::invalid_argument("sigma entry " + s.describe(r) + " does not have determinant 1 mod p^l");
      }
      if (m.size() != d) throw std::invalid_argument("sigma entry " + s.describe(r) + " has the wrong dimension");
      for (const auto& row : m) {
        if (row.size() != d) throw std::invalid_argument("sigma entry " + s.describe(r) + " is not square");
      }
      if (s.present(r)) throw std::invalid_argument("sigma entry " + s.describe(r) + " appears twice");
      s.set(r, m);
    }
    if (s.count_ != s.group_order()) {
      throw std::invalid_argument("sigma table is incomplete: " + std::to_string(s.count_) + " of " +
                                  std::to_string(s.group_order()) + " group elements given");
    }
    return s;
  }

  std::size_t group_order() const {
    // |SL₂(Z/p^l)| = p^{3l}(1 - p^{-2})
    const auto p = static_cast<std::size_t>(ctx_->p());
    return static_cast<std::size_t>(n_ * n_ * n_) / (p * p) * (p * p - 1);
  }

  bool present(const Residues& g) const { return filled_[index(g)]; }

  const CycMatrix& table(const Residues& g) const {
    const std::size_t i = index(g);
    if (!filled_[i]) throw std::out_of_range("matrix " + describe(g) + " is not in SL2(Z/p^l)");
    return table_[i];
  }

  const CycMatrix& table(const SL2Element& h) const { return table(h.residues(l_)); }

  Residues mul(const Residues& g, const Residues& h) const {
    return {(g[0] * h[0] + g[1] * h[2]) % n_, (g[0] * h[1] + g[1] * h[3]) % n_, (g[2] * h[0] + g[3] * h[2]) % n_,
            (g[2] * h[1] + g[3] * h[3]) % n_};
  }

  void for_each(const std::function<void(const Residues&, const CycMatrix&)>& f) const {
    for (std::size_t i = 0; i < table_.size(); ++i) {
      if (filled_[i]) f(unindex(i), table_[i]);
    }
  }

  /// Random group element (uniform over the table).
  template <class Rng>
  Residues random_element(Rng& rng) const {
    std::uniform_int_distribution<std::size_t> dist(0, table_.size() - 1);
    while (true) {
      const std::size_t i = dist(rng);
      if (filled_[i]) return unindex(i);
    }
  }

  /// Returns an empty string on success, otherwise a description of the first failure.
  template <class Rng>
  std::string check_homomorphism(Rng& rng, int pairs) const {
    for (int k = 0; k < pairs; ++k) {
      const Residues g = random_element(rng);
      const Residues h = random_element(rng);
      if (!mat::equal(mat::mul(table(g), table(h)), table(mul(g, h)))) {
        return "table(g)table(h) != table(gh) for g=" + describe(g) + ", h=" + describe(h);
      }
    }
    return {};
  }

  /// Trivial on Γ(p^l) by construction; nontrivial on Γ(p^{l-1}).
  bool check_conductor_exact() const {
    const std::int64_t step = n_ / ctx_->p();
    const CycMatrix id = mat::identity(d_);
    bool nontrivial = false;
    for_each([&](const Residues& g, const CycMatrix& m) {
      if ((g[0] - 1) % step == 0 && g[1] % step == 0 && g[2] % step == 0 && (g[3] - 1) % step == 0 &&
          !mat::equal(m, id)) {
        nontrivial = true;
      }
    });
    return nontrivial;
  }

  /// Σ_{x ∈ p^{l-1}Z/p^l} table(n(x)) = 0.
  bool check_strongly_cuspidal() const { return mat::is_zero(cuspidal_sum()); }

  CycMatrix cuspidal_sum() const {
    const std::int64_t step = n_ / ctx_->p();
    CycMatrix sum = mat::zero(d_);
    for (std::int64_t x = 0; x < n_; x += step) sum = mat::add(sum, table(Residues{1, x, 0, 1}));
    return sum;
  }

  std::string describe(const Residues& g) const {
    return "[[" + std::to_string(g[0]) + "," + std::to_string(g[1]) + "],[" + std::to_string(g[2]) + "," +
           std::to_string(g[3]) + "]]";
  }

 private:
  SigmaRep(const PadicContext& ctx, int l, std::size_t d) : ctx_(&ctx), l_(l), d_(d) {
    if (l < 1) throw std::invalid_argument("sigma level must be positive");
    if (d < 1) throw std::invalid_argument("sigma dimension must be positive");
    n_ = ctx.pow(l);
    if (n_ > 81) throw std::invalid_argument("sigma tables are limited to p^l <= 81");
    const auto size = static_cast<std::size_t>(n_ * n_ * n_ * n_);
    table_.resize(size);
    filled_.assign(size, false);
  }

  std::size_t index(const Residues& g) const {
    return static_cast<std::size_t>(((g[0] * n_ + g[1]) * n_ + g[2]) * n_ + g[3]);
  }
  Residues unindex(std::size_t i) const {
    Residues g{};
    auto k = static_cast<std::int64_t>(i);
    for (int j = 3; j >= 0; --j) {
      g[static_cast<std::size_t>(j)] = k % n_;
      k /= n_;
    }
    return g;
  }
  void set(const Residues& g, CycMatrix m) {
    const std::size_t i = index(g);
    if (!filled_[i]) ++count_;
    filled_[i] = true;
    table_[i] = std::move(m);
  }

  const PadicContext* ctx_;
  int l_;
  std::size_t d_;
  std::int64_t n_ = 1;
  std::vector<CycMatrix> table_;
  std::vector<bool> filled_;
  std::size_t count_ = 0;
};

/// The one-dimensional σ on SL₂(Z/3): n(a) ↦ e^{2πi·which·a/3}, w ↦ 1.
inline SigmaRep builtin_sigma_p3(const PadicContext& ctx, int which) {
  if (ctx.p() != 3) {
    throw std::invalid_argument("builtin sigma exists only for p = 3 (SL2(F_p) is perfect for p > 3)");
  }
  if (which != 1 && which != 2) throw std::invalid_argument("builtin sigma index must be 1 or 2");
  const CycMatrix n1{{CycValue::root_of_unity(ctx, Rational(which, 3))}};
  const CycMatrix w{{CycValue(1)}};
  return SigmaRep::from_generators(ctx, 1, n1, w);
}

struct EigenEntry {
  std::size_t index;
  Rational beta;  // in p^{-l}Z/Z, as a rational in [0,1)
  CycMatrix projection;
  std::vector<CycValue> vector;  // spans the image, normalised to 1 at `pivot`
  std::size_t pivot;
};

/// Decomposition of W under σ(n(O)) into lines on which n(a) acts by ψ(β a).
class EigenBasis {
 public:
  explicit EigenBasis(const SigmaRep& sigma) {
    const PadicContext& ctx = sigma.context();
    const std::int64_t N = sigma.modulus();
    const std::size_t d = sigma.dim();
    std::vector<CycMatrix> nx;
    for (std::int64_t x = 0; x < N; ++x) nx.push_back(sigma.table(SigmaRep::Residues{1, x, 0, 1}));
    CycMatrix total = mat::zero(d);
    for (std::int64_t j = 0; j < N; ++j) {
      const Rational beta = make_rational(j, N);
      CycMatrix proj = mat::zero(d);
      for (std::int64_t x = 0; x < N; ++x) {
        const Rational e = -beta * x;
        const CycValue c = CycValue::root_of_unity(ctx, e).scaled(Rational(1, N));
        proj = mat::add(proj, mat::scale(nx[static_cast<std::size_t>(x)], c));
      }
      if (mat::is_zero(proj)) continue;
      if (!mat::equal(mat::mul(proj, proj), proj)) throw std::logic_error("eigen-projection is not idempotent");
      const auto rank = mat::trace(proj).as_rational();
      if (!rank || *rank != 1) {
        throw std::invalid_argument("eigenspace for beta=" + beta.get_str() +
                                    " has rank > 1; sigma is not irreducible strongly cuspidal");
      }
      Rational b = beta;
      b.canonicalize();
      if (b.get_den() != N) {
        throw std::invalid_argument("eigen-character beta=" + b.get_str() + " does not have exact denominator p^l");
      }
      std::size_t pivot = d;
      for (std::size_t k = 0; k < d && pivot == d; ++k) {
        if (!proj[k][k].is_zero()) pivot = k;
      }
      if (pivot == d) throw std::logic_error("rank-one projection with zero diagonal");
      const CycValue inv = proj[pivot][pivot].inverse();
      std::vector<CycValue> v(d);
      for (std::size_t i = 0; i < d; ++i) v[i] = proj[i][pivot] * inv;
      total = mat::add(total, proj);
      entries_.push_back({entries_.size(), b, std::move(proj), std::move(v), pivot});
    }
    if (!mat::equal(total, mat::identity(d))) throw std::logic_error("eigen-projections do not sum to the identity");
  }

  const std::vector<EigenEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  /// Coordinate of v along entry i.
  CycValue coordinate(std::size_t i, const std::vector<CycValue>& v) const {
    const EigenEntry& e = entries_[i];
    CycValue c;
    for (std::size_t k = 0; k < v.size(); ++k) c += e.projection[e.pivot][k] * v[k];
    return c;
  }

  /// Entry with β ≡ ξ mod Z_p, if any.
  std::optional<std::size_t> find(const KElement& xi) const {
    const Rational f = xi.frac_part();
    for (const auto& e : entries_) {
      if (e.beta == f) return e.index;
    }
    return std::nullopt;
  }

 private:
  std::vector<EigenEntry> entries_;
};

struct InducedKey {
  Rational t;
  long n;
  std::size_t b;

  friend bool operator<(const InducedKey& x, const InducedKey& y) {
    if (x.n != y.n) return x.n < y.n;
    if (x.t != y.t) return x.t < y.t;
    return x.b < y.b;
  }
  friend bool operator==(const InducedKey& x, const InducedKey& y) { return x.n == y.n && x.t == y.t && x.b == y.b; }
};

/// Σ coeff·φ^{n(t)⟨p^n⟩}_b, b indexing the eigenbasis.
class InducedVector {
 public:
  InducedVector() = default;

  static InducedVector basis(const Rational& t, long n, std::size_t b) {
    InducedVector v;
    v.add(InducedKey{t, n, b}, CycValue(1));
    return v;
  }

  void add(const InducedKey& key, const CycValue& c) {
    if (c.is_structurally_zero()) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(key, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  const std::map<InducedKey, CycValue>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  InducedVector scaled(const CycValue& c) const {
    InducedVector out;
    for (const auto& [k, v] : terms_) out.add(k, v * c);
    return out;
  }

  friend InducedVector operator+(const InducedVector& a, const InducedVector& b) {
    InducedVector out = a;
    for (const auto& [k, v] : b.terms_) out.add(k, v);
    return out;
  }
  friend InducedVector operator-(const InducedVector& a, const InducedVector& b) { return a + b.scaled(CycValue(-1)); }
  friend bool operator==(const InducedVector& a, const InducedVector& b) { return (a - b).is_zero(); }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [k, v] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + v.to_string() + ")*phi(t=" + k.t.get_str() + ", n=" + std::to_string(k.n) +
           ", b=" + std::to_string(k.b) + ")";
    }
    return s;
  }

 private:
  std::map<InducedKey, CycValue> terms_;
};

struct SpectrumEntry {
  Rational xi;
  std::size_t b;
  SquareClass square_class;
  Rational abs;  // |ξ| = q^l
};

/// π = c-Ind σ̄ with everything precomputed in eigen-coordinates.
class Supercuspidal {
 public:
  explicit Supercuspidal(SigmaRep sigma) : sigma_(std::move(sigma)), eigen_(sigma_) {
    if (!sigma_.check_strongly_cuspidal()) throw std::invalid_argument("sigma is not strongly cuspidal");
    const std::size_t d = sigma_.dim();
    if (eigen_.size() != d) throw std::logic_error("eigenbasis does not span W");
    eigen_table_.resize(static_cast<std::size_t>(sigma_.modulus() * sigma_.modulus() * sigma_.modulus() *
                                                 sigma_.modulus()));
    sigma_.for_each([&](const SigmaRep::Residues& g, const CycMatrix& m) {
      CycMatrix t = mat::zero(d);
      for (std::size_t j = 0; j < d; ++j) {
        std::vector<CycValue> col(d);
        for (std::size_t r = 0; r < d; ++r) {
          for (std::size_t k = 0; k < d; ++k) col[r] += m[r][k] * eigen_.entries()[j].vector[k];
        }
        for (std::size_t i = 0; i < d; ++i) t[i][j] = eigen_.coordinate(i, col);
      }
      eigen_table_[index(g)] = std::move(t);
    });
  }

  const PadicContext& context() const noexcept { return sigma_.context(); }
  const SigmaRep& sigma() const noexcept { return sigma_; }
  const EigenBasis& eigenbasis() const noexcept { return eigen_; }
  int level() const noexcept { return sigma_.level(); }
  std::size_t dim() const noexcept { return sigma_.dim(); }

  /// σ̄([h,ε]) = ε·s(h)·σ(h mod p^l), in the original coordinates.
  CycMatrix genuine_sigma_eval(const MetaElement& h) const {
    return mat::scale(sigma_.table(h.g()), CycValue(sign(h)));
  }

  /// Same operator in eigen-coordinates.
  CycMatrix genuine_eigen_eval(const MetaElement& h) const {
    return mat::scale(eigen_table_[index(h.g().residues(sigma_.level()))], CycValue(sign(h)));
  }

  /// π(g)φ^r_b = φ^{r'}_{σ̄(x_H)⁻¹ b} where r·g⁻¹ = x_H·r' (x_H ∈ H̄).
  InducedVector pi_act(const MetaElement& g, const InducedVector& v) const {
    const PadicContext& ctx = context();
    const MetaElement gi = g.inverse();
    InducedVector out;
    std::map<std::pair<Rational, long>, std::pair<InducedKey, CycMatrix>> cache;
    for (const auto& [key, coeff] : v.terms()) {
      auto it = cache.find({key.t, key.n});
      if (it == cache.end()) {
        const MetaElement x = coset_rep(ctx, key.t, key.n) * gi;
        const CosetDecomposition dec = coset_decompose(x);
        const MetaElement hinv = dec.h_part(x.eps()).inverse();
        it = cache.emplace(std::make_pair(key.t, key.n),
                           std::make_pair(InducedKey{dec.t, dec.n, 0}, genuine_eigen_eval(hinv)))
                 .first;
      }
      const auto& [target, m] = it->second;
      for (std::size_t j = 0; j < dim(); ++j) {
        const CycValue& c = m[j][key.b];
        if (c.is_structurally_zero()) continue;
        out.add(InducedKey{target.t, target.n, j}, coeff * c);
      }
    }
    return out;
  }

  /// l^ξ(v) for ξ ≡ β_b mod Z_p: Σ_{n=0, b} coeff·ψ(-ξt).
  CycValue whittaker_functional(const KElement& xi, const InducedVector& v) const {
    const std::size_t b = entry_for(xi);
    CycAccumulator acc(&context());
    for (const auto& [key, coeff] : v.terms()) {
      if (key.n != 0 || key.b != b) continue;
      acc.add(coeff * psi_value(-xi * KElement(context(), key.t)));
    }
    return acc.value();
  }

  /// W^ξ_v(g) = l^ξ(π(g)v).
  CycValue whittaker_function(const KElement& xi, const InducedVector& v, const MetaElement& g) const {
    return whittaker_functional(xi, pi_act(g, v));
  }

  std::size_t entry_for(const KElement& xi) const {
    const auto b = eigen_.find(xi);
    if (!b || xi.valuation().value() != -level()) {
      throw std::invalid_argument("xi=" + xi.value().get_str() + " is not in X(pi)");
    }
    return *b;
  }

  bool in_x_pi(const KElement& xi) const {
    return !xi.is_zero() && xi.valuation().value() == -level() && eigen_.find(xi).has_value();
  }

  /// One ξ = β_b per eigen-entry.
  std::vector<SpectrumEntry> spectrum() const {
    std::vector<SpectrumEntry> out;
    const Rational abs = padic::p_power(context(), level());
    for (const auto& e : eigen_.entries()) {
      out.push_back({e.beta, e.index, square_class_data(KElement(context(), e.beta)), abs});
    }
    return out;
  }

  /// One representative per square class, the smallest β in each.
  std::vector<SpectrumEntry> spectrum_by_square_class() const {
    std::vector<SpectrumEntry> all = spectrum();
    std::sort(all.begin(), all.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.xi < b.xi; });
    std::vector<SpectrumEntry> out;
    for (const auto& e : all) {
      const bool seen = std::any_of(out.begin(), out.end(),
                                    [&](const SpectrumEntry& o) { return o.square_class == e.square_class; });
      if (!seen) out.push_back(e);
    }
    return out;
  }

  /// c_ξ(a) with l^ξ(π(⟨a⟩)v) = c_ξ(a)·l^{a²ξ}(v), checked on two vectors.
  CycValue c_factor(const KElement& xi, const KElement& a) const {
    if (!a.is_unit()) throw std::invalid_argument("c-factor needs a unit");
    const KElement target = a * a * xi;
    const std::size_t b = entry_for(target);
    (void)entry_for(xi);
    const MetaElement da = MetaElement::diag(context(), a.value());
    const InducedVector v1 = InducedVector::basis(Rational(0), 0, b);
    const InducedVector v2 = InducedVector::basis(padic::p_power(context(), -1), 0, b);
    const CycValue c1 = whittaker_function(xi, v1, da) / whittaker_functional(target, v1);
    const CycValue c2 = whittaker_function(xi, v2, da) / whittaker_functional(target, v2);
    if (!(c1 == c2)) throw std::logic_error("c-factor differs between test vectors (multiplicity one violated)");
    return c1;
  }

  /// ω_π(-1): the scalar by which [-I, 1] acts.
  int central_sign() const {
    const MetaElement minus(SL2Element(context(), Rational(-1), Rational(0), Rational(0), Rational(-1)), 1);
    std::optional<int> sign;
    for (const auto& e : eigen_.entries()) {
      const InducedVector v = InducedVector::basis(Rational(0), 0, e.index);
      const InducedVector img = pi_act(minus, v);
      int s = 0;
      if (img == v) s = 1;
      if (img == v.scaled(CycValue(-1))) s = -1;
      if (s == 0 || (sign && *sign != s)) throw std::logic_error("[-I,1] does not act by a sign");
      sign = s;
    }
    return *sign;
  }

 private:
  int sign(const MetaElement& h) const {
    if (!h.g().is_integral()) throw std::domain_error("genuine sigma needs an integral matrix, got " + to_string(h));
    return h.eps() * kubota_split(h.g());
  }

  static std::string to_string(const MetaElement& h) {
    std::ostringstream os;
    os << h;
    return os.str();
  }

  std::size_t index(const SigmaRep::Residues& g) const {
    const std::int64_t n = sigma_.modulus();
    return static_cast<std::size_t>(((g[0] * n + g[1]) * n + g[2]) * n + g[3]);
  }

  SigmaRep sigma_;
  EigenBasis eigen_;
  std::vector<CycMatrix> eigen_table_;
};

}  // namespace mzeta
