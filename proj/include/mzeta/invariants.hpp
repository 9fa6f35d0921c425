#pragma once

// Randomised and exhaustive property suites shared by the tests, the
// acceptance runner and `mzeta --command check-invariants`.

#include "mzeta/sigma_io.hpp"

#include <random>
#include <sstream>

namespace mzeta {

struct SuiteResult {
  explicit SuiteResult(std::string n) : name(std::move(n)) {}

  std::string name;
  bool passed = true;
  long checks = 0;
  std::string counterexample;

  void fail(const std::string& what) {
    if (passed) counterexample = what;
    passed = false;
  }
};

namespace gen {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// A p-adic unit with small numerator and denominator.
inline Rational unit(Rng& rng, const PadicContext& ctx) {
  auto draw = [&] {
    long x = 0;
    while (x % ctx.p() == 0) x = uniform(rng, 1, 200);
    return x;
  };
  Rational r(draw() * (uniform(rng, 0, 1) != 0 ? 1 : -1), draw());
  r.canonicalize();
  return r;
}

inline Rational element(Rng& rng, const PadicContext& ctx, long vmin, long vmax) {
  return unit(rng, ctx) * padic::p_power(ctx, uniform(rng, vmin, vmax));
}

inline KElement kelement(Rng& rng, const PadicContext& ctx, long vmin, long vmax) {
  return KElement(ctx, element(rng, ctx, vmin, vmax));
}

/// Random word in n(x), ⟨a⟩, w.
inline MetaElement word(Rng& rng, const PadicContext& ctx, int length = 4) {
  MetaElement x = MetaElement::kernel(ctx, uniform(rng, 0, 1) != 0 ? 1 : -1);
  for (int i = 0; i < length; ++i) {
    switch (uniform(rng, 0, 2)) {
      case 0:
        x = x * MetaElement::n(ctx, uniform(rng, 0, 4) == 0 ? Rational(0) : element(rng, ctx, -3, 3));
        break;
      case 1:
        x = x * MetaElement::diag(ctx, element(rng, ctx, -2, 2));
        break;
      default:
        x = x * MetaElement::w(ctx);
    }
  }
  return x;
}

inline SL2Element sl2(Rng& rng, const PadicContext& ctx, int length = 4) { return word(rng, ctx, length).g(); }

/// Random element of SL₂(Z_p): word in n(x), lower n(x), ⟨u⟩, w with x integral.
inline SL2Element integral_sl2(Rng& rng, const PadicContext& ctx, int length = 5) {
  SL2Element g = SL2Element::identity(ctx);
  for (int i = 0; i < length; ++i) {
    const Rational x = uniform(rng, 0, 3) == 0 ? Rational(0) : element(rng, ctx, 0, 3);
    switch (uniform(rng, 0, 3)) {
      case 0:
        g = g * SL2Element::n(ctx, x);
        break;
      case 1:
        g = g * SL2Element(ctx, Rational(1), Rational(0), x, Rational(1));
        break;
      case 2:
        g = g * SL2Element::diag(ctx, unit(rng, ctx));
        break;
      default:
        g = g * SL2Element::w(ctx);
    }
  }
  return g;
}

/// Random combination of basis vectors φ^{n(t)⟨p^n⟩}_b with |n| ≤ 1.
inline InducedVector vector(Rng& rng, const Supercuspidal& pi, int terms = 3) {
  const PadicContext& ctx = pi.context();
  InducedVector v;
  for (int i = 0; i < terms; ++i) {
    const long depth = uniform(rng, 0, 2);
    const Rational t = depth == 0 ? Rational(0)
                                  : padic::frac_part(Rational(uniform(rng, 1, 100)) * padic::p_power(ctx, -depth), ctx);
    const long n = uniform(rng, -1, 1);
    const auto b = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(pi.dim()) - 1));
    v = v + InducedVector::basis(t, n, b).scaled(CycValue(make_rational(uniform(rng, -5, 5) | 1, uniform(rng, 1, 4))));
  }
  return v;
}

}  // namespace gen

inline std::string str(const MetaElement& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

inline std::string str(const SL2Element& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

// -- group ------------------------------------------------------------------

inline SuiteResult suite_cocycle(const PadicContext& ctx, gen::Rng& rng, int triples) {
  SuiteResult r{"cocycle identity {g,h}{gh,k} = {h,k}{g,hk}"};
  for (int i = 0; i < triples; ++i, ++r.checks) {
    const SL2Element g = gen::sl2(rng, ctx), h = gen::sl2(rng, ctx), k = gen::sl2(rng, ctx);
    if (cocycle(g, h) * cocycle(g * h, k) != cocycle(h, k) * cocycle(g, h * k)) {
      r.fail("g=" + str(g) + " h=" + str(h) + " k=" + str(k));
    }
  }
  return r;
}

inline SuiteResult suite_meta_group(const PadicContext& ctx, gen::Rng& rng, int count) {
  SuiteResult r{"metaplectic group law (associativity, inverse, centrality)"};
  const SL2Element minus(ctx, Rational(-1), Rational(0), Rational(0), Rational(-1));
  for (int i = 0; i < count; ++i, ++r.checks) {
    const MetaElement x = gen::word(rng, ctx), y = gen::word(rng, ctx), z = gen::word(rng, ctx);
    if (!((x * y) * z == x * (y * z))) r.fail("associativity: x=" + str(x) + " y=" + str(y) + " z=" + str(z));
    if (!(x * x.inverse() == MetaElement::identity(ctx))) r.fail("inverse: x=" + str(x));
    for (int eps : {1, -1}) {
      const MetaElement c(minus, eps);
      if (!(c * x == x * c)) r.fail("[-I," + std::to_string(eps) + "] does not commute with " + str(x));
    }
  }
  return r;
}

inline SuiteResult suite_kubota(const PadicContext& ctx, gen::Rng& rng, int pairs) {
  SuiteResult r{"splitting s(g)s(h){g,h} = s(gh) on SL2(Z_p)"};
  for (int i = 0; i < pairs; ++i, ++r.checks) {
    const SL2Element g = gen::integral_sl2(rng, ctx), h = gen::integral_sl2(rng, ctx);
    if (kubota_split(g) * kubota_split(h) * cocycle(g, h) != kubota_split(g * h)) {
      r.fail("g=" + str(g) + " h=" + str(h));
    }
  }
  return r;
}

inline SuiteResult suite_coset(const PadicContext& ctx, gen::Rng& rng, int words) {
  SuiteResult r{"coset decomposition round trip"};
  for (int i = 0; i < words; ++i, ++r.checks) {
    const MetaElement x = gen::word(rng, ctx, 5);
    const CosetDecomposition d = coset_decompose(x);
    if (!d.h.is_integral()) r.fail("non-integral h for x=" + str(x));
    if (padic::frac_part(d.t, ctx) != d.t) r.fail("non-canonical t for x=" + str(x));
    if (!(d.h_part(x.eps()) * coset_rep(ctx, d.t, d.n) == x)) r.fail("round trip x=" + str(x));
    // Left translates by SL₂(Z_p) land on the same representative.
    const MetaElement y = MetaElement(gen::integral_sl2(rng, ctx), 1) * x;
    const CosetDecomposition e = coset_decompose(y);
    if (e.t != d.t || e.n != d.n) r.fail("representative not left-invariant for x=" + str(x));
  }
  return r;
}

// -- characters --------------------------------------------------------------

inline SuiteResult suite_hilbert(const PadicContext& ctx, gen::Rng& rng, int random_count) {
  SuiteResult r{"Hilbert symbol: oracle sweep, symmetry, bimultiplicativity"};
  const long p = ctx.p();
  const long p2 = p * p;
  for (long va = -2; va <= 2; ++va) {
    for (long ua = 1; ua < p2; ++ua) {
      if (ua % p == 0) continue;
      for (long vb = -2; vb <= 2; ++vb) {
        for (long ub = 1; ub < p2; ++ub) {
          if (ub % p == 0) continue;
          const KElement a(ctx, Rational(ua) * padic::p_power(ctx, va));
          const KElement b(ctx, Rational(ub) * padic::p_power(ctx, vb));
          ++r.checks;
          if (hilbert_symbol(a, b) != hilbert_symbol_bruteforce(a, b)) {
            r.fail("closed formula disagrees with oracle at (" + a.value().get_str() + "," + b.value().get_str() + ")");
          }
        }
      }
    }
  }
  for (int i = 0; i < random_count; ++i, ++r.checks) {
    const KElement a = gen::kelement(rng, ctx, -3, 3), b = gen::kelement(rng, ctx, -3, 3),
                   c = gen::kelement(rng, ctx, -3, 3);
    if (hilbert_symbol(a, b) != hilbert_symbol(b, a)) r.fail("asymmetric at " + a.value().get_str());
    if (hilbert_symbol(a * b, c) != hilbert_symbol(a, c) * hilbert_symbol(b, c)) {
      r.fail("not bimultiplicative at " + a.value().get_str() + "," + b.value().get_str() + "," + c.value().get_str());
    }
    if (hilbert_symbol(a, -a) != 1) r.fail("(a,-a) != 1 at " + a.value().get_str());
  }
  return r;
}

inline SuiteResult suite_weil(const PadicContext& ctx, gen::Rng& rng, int count) {
  SuiteResult r{"Weil constant and chi_psi identities"};
  const KElement one(ctx, 1);
  const KElement m1(ctx, -1);
  if (!(chi_psi(one) == CycValue(1))) r.fail("chi_psi(1) != 1");
  for (int i = 0; i < count; ++i, ++r.checks) {
    const KElement a = gen::kelement(rng, ctx, -3, 3), b = gen::kelement(rng, ctx, -3, 3);
    const KElement t = gen::kelement(rng, ctx, -2, 2);
    const CycValue al = weil_alpha(a);
    if (!(al * al.conj() == CycValue(1))) r.fail("|alpha| != 1 at " + a.value().get_str());
    if (!(weil_alpha(a * t * t) == al)) r.fail("alpha not square-class invariant at " + a.value().get_str());
    const CycValue ca = chi_psi(a), cb = chi_psi(b);
    if (!(chi_psi(t * t) == CycValue(1))) r.fail("chi_psi(t^2) != 1 at " + t.value().get_str());
    if (!(chi_psi(a * b) == ca * cb * CycValue(hilbert_symbol(a, b)))) {
      r.fail("chi_psi(ab) != chi_psi(a)chi_psi(b)(a,b) at " + a.value().get_str() + "," + b.value().get_str());
    }
    if (!(ca * ca == CycValue(hilbert_symbol(a, m1)))) r.fail("chi_psi(a)^2 != (a,-1) at " + a.value().get_str());
    // Both expressions for χ_ψ agree: α(1)/α(a) = (α(a)/α(1))(a,-1).
    if (!(ca == (al / weil_alpha(one)) * CycValue(hilbert_symbol(a, m1)))) {
      r.fail("alpha(1)/alpha(a) != (alpha(a)/alpha(1))(a,-1) at " + a.value().get_str());
    }
  }
  return r;
}

inline SuiteResult suite_psi(const PadicContext& ctx, gen::Rng& rng, int count) {
  SuiteResult r{"additive character: homomorphism, trivial on O, faithful on p^-L Z/Z"};
  for (int i = 0; i < count; ++i, ++r.checks) {
    const KElement a = gen::kelement(rng, ctx, -4, 2), b = gen::kelement(rng, ctx, -4, 2);
    if (!(psi_value(a + b) == psi_value(a) * psi_value(b))) r.fail("psi(a+b) at " + a.value().get_str());
    const KElement o = gen::kelement(rng, ctx, 0, 3);
    if (!(psi_value(o) == CycValue(1))) r.fail("psi nontrivial on O at " + o.value().get_str());
  }
  const int L = 3;
  const std::int64_t n = ctx.pow(L);
  for (std::int64_t j = 1; j < n; ++j, ++r.checks) {
    if (psi_value(KElement(ctx, make_rational(j, n))) == CycValue(1)) r.fail("psi(j/p^L) = 1 for j=" + std::to_string(j));
  }
  return r;
}

inline SuiteResult suite_mu(const MultCharacter& mu, gen::Rng& rng, int count) {
  SuiteResult r{"multiplicative character " + mu.describe()};
  const PadicContext& ctx = mu.context();
  for (int i = 0; i < count; ++i, ++r.checks) {
    const KElement x = gen::kelement(rng, ctx, -3, 3), y = gen::kelement(rng, ctx, -3, 3);
    if (!(mu(x * y) == mu(x) * mu(y))) r.fail("mu(xy) != mu(x)mu(y) at " + x.value().get_str());
    if (!(mu(x) * mu.inverse()(x) == CycValue(1))) r.fail("mu * mu^-1 != 1 at " + x.value().get_str());
    if (mu.conductor() > 0) {
      const KElement u(ctx, 1 + gen::element(rng, ctx, mu.conductor(), mu.conductor() + 2));
      if (!(mu(u) == CycValue(1))) r.fail("mu nontrivial on 1+P^m at " + u.value().get_str());
    }
  }
  if (mu.conductor() > 0) {
    bool nontrivial = false;
    const std::int64_t step = ctx.pow(mu.conductor() - 1);
    for (std::int64_t k = 1; k < ctx.p() && !nontrivial; ++k) {
      const KElement u(ctx, Rational(mu.conductor() == 1 ? k : 1 + k * step));
      if (u.is_unit() && !(mu(u) == CycValue(1))) nontrivial = true;
    }
    if (!nontrivial) r.fail("mu trivial on 1+P^(m-1)");
  }
  return r;
}

// -- representation ----------------------------------------------------------

inline SuiteResult suite_sigma(const Supercuspidal& pi, gen::Rng& rng, int pairs) {
  SuiteResult r{"sigma table and genuine extension are homomorphisms"};
  const PadicContext& ctx = pi.context();
  if (auto err = pi.sigma().check_homomorphism(rng, pairs); !err.empty()) r.fail(err);
  r.checks += pairs;
  for (int i = 0; i < pairs; ++i, ++r.checks) {
    const MetaElement x(gen::integral_sl2(rng, ctx), gen::uniform(rng, 0, 1) != 0 ? 1 : -1);
    const MetaElement y(gen::integral_sl2(rng, ctx), gen::uniform(rng, 0, 1) != 0 ? 1 : -1);
    if (!mat::equal(pi.genuine_sigma_eval(x * y), mat::mul(pi.genuine_sigma_eval(x), pi.genuine_sigma_eval(y)))) {
      r.fail("genuine sigma not multiplicative at x=" + str(x) + " y=" + str(y));
    }
  }
  if (!mat::equal(pi.genuine_sigma_eval(MetaElement::kernel(ctx, -1)), mat::scale(mat::identity(pi.dim()), CycValue(-1)))) {
    r.fail("[1,-1] does not act by -1");
  }
  if (!pi.sigma().check_strongly_cuspidal()) r.fail("not strongly cuspidal");
  if (!pi.sigma().check_conductor_exact()) r.fail("conductor not exact");
  return r;
}

inline SuiteResult suite_eigenbasis(const Supercuspidal& pi) {
  SuiteResult r{"eigenbasis: completeness, idempotence, n(a)-eigenvectors"};
  const PadicContext& ctx = pi.context();
  const auto& entries = pi.eigenbasis().entries();
  CycMatrix total = mat::zero(pi.dim());
  for (const auto& e : entries) {
    ++r.checks;
    total = mat::add(total, e.projection);
    if (!mat::equal(mat::mul(e.projection, e.projection), e.projection)) r.fail("P^2 != P for beta=" + e.beta.get_str());
    if (e.beta.get_den() != pi.sigma().modulus()) r.fail("beta=" + e.beta.get_str() + " lacks exact denominator p^l");
    for (std::int64_t x = 0; x < pi.sigma().modulus(); ++x) {
      const CycMatrix& m = pi.sigma().table(SigmaRep::Residues{1, x, 0, 1});
      const CycValue chi = psi_value(KElement(ctx, e.beta * x));
      for (std::size_t i = 0; i < pi.dim(); ++i) {
        CycValue s;
        for (std::size_t k = 0; k < pi.dim(); ++k) s += m[i][k] * e.vector[k];
        if (!(s == chi * e.vector[i])) r.fail("n(" + std::to_string(x) + ") does not act by psi(beta x)");
      }
    }
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      if (entries[i].beta == entries[j].beta) r.fail("repeated beta");
    }
  }
  if (!mat::equal(total, mat::identity(pi.dim()))) r.fail("sum of projections != identity");
  return r;
}

inline SuiteResult suite_pi_action(const Supercuspidal& pi, gen::Rng& rng, int count) {
  SuiteResult r{"pi action: composition and genuineness"};
  const PadicContext& ctx = pi.context();
  for (int i = 0; i < count; ++i, ++r.checks) {
    const MetaElement g = gen::word(rng, ctx, 3), h = gen::word(rng, ctx, 3);
    const InducedVector v = gen::vector(rng, pi);
    if (!(pi.pi_act(g, pi.pi_act(h, v)) == pi.pi_act(g * h, v))) {
      r.fail("pi(g)pi(h)v != pi(gh)v for g=" + str(g) + " h=" + str(h) + " v=" + v.to_string());
    }
    if (!(pi.pi_act(MetaElement::kernel(ctx, -1), v) == v.scaled(CycValue(-1)))) r.fail("[1,-1] does not act by -1");
  }
  return r;
}

inline SuiteResult suite_whittaker(const Supercuspidal& pi, gen::Rng& rng, int count) {
  SuiteResult r{"Whittaker equivariance l(pi(n(a))v) = psi(xi a) l(v)"};
  const PadicContext& ctx = pi.context();
  for (const auto& e : pi.spectrum()) {
    const KElement xi(ctx, e.xi);
    for (int i = 0; i < count; ++i, ++r.checks) {
      const KElement a = gen::kelement(rng, ctx, -3, 2);
      const InducedVector v = gen::vector(rng, pi);
      if (!(pi.whittaker_functional(xi, pi.pi_act(MetaElement::n(ctx, a.value()), v)) ==
            psi_value(xi * a) * pi.whittaker_functional(xi, v))) {
        r.fail("xi=" + e.xi.get_str() + " a=" + a.value().get_str() + " v=" + v.to_string());
      }
    }
  }
  return r;
}

// -- Bessel and gamma ---------------------------------------------------------

/// Direct and closed Bessel values agree on shells [vmin, -l]; J vanishes on P.
inline SuiteResult suite_bessel_agreement(const ZetaEngine& z, gen::Rng& rng, long vmin, int per_shell, int zeros) {
  SuiteResult r{"Bessel direct = closed on v(x) <= -l, J = 0 on P"};
  const Supercuspidal& pi = z.rep();
  const PadicContext& ctx = pi.context();
  for (const auto& ex : pi.spectrum()) {
    for (const auto& ey : pi.spectrum()) {
      const KElement xi(ctx, ex.xi), eta(ctx, ey.xi);
      for (long n = vmin; n <= -pi.level(); ++n) {
        for (int i = 0; i < per_shell; ++i, ++r.checks) {
          const KElement x(ctx, gen::unit(rng, ctx) * padic::p_power(ctx, n));
          if (!(z.bessel_direct(xi, eta, x) == z.bessel_closed(xi, eta, x))) {
            r.fail("xi=" + ex.xi.get_str() + " eta=" + ey.xi.get_str() + " x=" + x.value().get_str());
          }
        }
      }
      for (int i = 0; i < zeros; ++i, ++r.checks) {
        const KElement x = gen::kelement(rng, ctx, 1, 4);
        if (!z.bessel_direct(xi, eta, x).is_zero()) r.fail("J(<x>w) != 0 for x=" + x.value().get_str() + " in P");
      }
    }
  }
  return r;
}

/// γ(n) = 0 for n in (M, M+extra] and n in [-3, -1].
inline SuiteResult suite_gamma_support(const ZetaEngine& z, const MultCharacter& mu, int extra) {
  SuiteResult r{"gamma support 0 <= n <= 2m'-l, mu " + mu.describe()};
  const Supercuspidal& pi = z.rep();
  const PadicContext& ctx = pi.context();
  const long M = z.support_bound(mu);
  for (const auto& ex : pi.spectrum()) {
    for (const auto& ey : pi.spectrum()) {
      const KElement xi(ctx, ex.xi), eta(ctx, ey.xi);
      for (long n = -3; n <= M + extra; ++n) {
        if (n >= 0 && n <= M) continue;
        ++r.checks;
        if (!z.gamma_coefficient(xi, eta, mu, n).is_zero()) {
          r.fail("gamma(" + std::to_string(n) + ") != 0 for xi=" + ex.xi.get_str() + " eta=" + ey.xi.get_str());
        }
      }
    }
  }
  return r;
}

/// c-factor consistency and the transformation J^{t²ξ,u²η}(⟨a⟩w) =
/// c_η(u)c_ξ(t)⁻¹(u,-1)|u|⁻² J^{ξ,η}(⟨a⟩⟨t⟩⟨u⟩w) for units t, u with t²ξ, u²η ∈ X(π).
inline SuiteResult suite_bessel_transform(const ZetaEngine& z, const std::vector<Rational>& units,
                                          const std::vector<Rational>& points) {
  SuiteResult r{"Bessel c-factor transformation"};
  const Supercuspidal& pi = z.rep();
  const PadicContext& ctx = pi.context();
  for (const auto& ex : pi.spectrum()) {
    for (const auto& ey : pi.spectrum()) {
      const KElement xi(ctx, ex.xi), eta(ctx, ey.xi);
      for (const auto& tr : units) {
        for (const auto& ur : units) {
          const KElement t(ctx, tr), u(ctx, ur);
          if (!pi.in_x_pi(t * t * xi) || !pi.in_x_pi(u * u * eta)) continue;
          const CycValue factor = pi.c_factor(eta, u) / pi.c_factor(xi, t) *
                                  CycValue(hilbert_symbol(u, KElement(ctx, -1))) * CycValue(u.abs() * u.abs()).inverse();
          for (const auto& ar : points) {
            ++r.checks;
            const MetaElement w = MetaElement::w(ctx);
            const MetaElement lhs_g = MetaElement::diag(ctx, ar) * w;
            const MetaElement rhs_g = MetaElement::diag(ctx, ar) * MetaElement::diag(ctx, tr) *
                                      MetaElement::diag(ctx, ur) * w;
            const CycValue lhs = z.bessel_direct(t * t * xi, u * u * eta, lhs_g);
            const CycValue rhs = factor * z.bessel_direct(xi, eta, rhs_g);
            if (!(lhs == rhs)) {
              r.fail("xi=" + ex.xi.get_str() + " eta=" + ey.xi.get_str() + " t=" + tr.get_str() + " u=" +
                     ur.get_str() + " a=" + ar.get_str() + ": " + lhs.to_string() + " vs " + rhs.to_string());
            }
          }
        }
      }
    }
  }
  return r;
}

/// W^ξ_v(⟨a⟩w) = Σ_η (|η|/2) ∫ J^{ξ,η}(⟨ay⟩w)(ay,y) W^η_v(⟨y⟩) d^×y.
inline std::pair<CycValue, CycValue> fourier_inversion_sides(const ZetaEngine& z, const KElement& xi,
                                                             const InducedVector& v, const KElement& a) {
  const Supercuspidal& pi = z.rep();
  const PadicContext& ctx = pi.context();
  const CycValue lhs = pi.whittaker_function(xi, v, MetaElement::diag(ctx, a.value()) * MetaElement::w(ctx));
  CycValue rhs;
  const long l = pi.level();
  const int vlevel = z.zeta_level(v, MultCharacter::trivial(ctx));
  for (const auto& e : pi.spectrum_by_square_class()) {
    const KElement eta(ctx, e.xi);
    for (long n = -(l + 6); n <= l + 6; ++n) {
      auto f = [&](const KElement& y) {
        const CycValue w = pi.whittaker_function(eta, v, MetaElement::diag(ctx, y.value()));
        if (w.is_zero()) return CycValue();
        const KElement ay = a * y;
        return z.bessel(xi, eta, ay) * w * CycValue(hilbert_symbol(ay, y));
      };
      const long vay = a.valuation().value() + n;
      const int level = static_cast<int>(std::max<long>(vlevel, l + std::max<long>(0, -vay)));
      rhs += integrate_shell(ctx, f, n, level, Measure::Multiplicative).scaled(e.abs / 2);
    }
  }
  return {lhs, rhs};
}

inline SuiteResult suite_fourier_inversion(const ZetaEngine& z, const std::vector<InducedVector>& vectors,
                                           const KElement& a) {
  SuiteResult r{"Fourier inversion of W(<a>w) through Bessel functions"};
  const PadicContext& ctx = z.context();
  for (const auto& e : z.rep().spectrum_by_square_class()) {
    for (const auto& v : vectors) {
      ++r.checks;
      const auto [lhs, rhs] = fourier_inversion_sides(z, KElement(ctx, e.xi), v, a);
      if (!(lhs == rhs)) r.fail("v=" + v.to_string() + ": " + lhs.to_string() + " vs " + rhs.to_string());
    }
  }
  return r;
}

/// Z vanishes when ω_π(-1) ≠ χ_ψ(-1)μ(-1); support closes inside the cap.
inline SuiteResult suite_zeta_parity(const ZetaEngine& z, const std::vector<InducedVector>& vectors,
                                     const std::vector<MultCharacter>& mus, long window_limit) {
  SuiteResult r{"zeta finiteness and parity"};
  const PadicContext& ctx = z.context();
  for (const auto& e : z.rep().spectrum_by_square_class()) {
    for (const auto& mu : mus) {
      const bool allowed = z.parity_allows(mu);
      for (const auto& v : vectors) {
        ++r.checks;
        const ZetaFunction zf = z.zeta_function(KElement(ctx, e.xi), mu, v);
        if (zf.window_lo < -window_limit || zf.window_hi > window_limit) {
          r.fail("window [" + std::to_string(zf.window_lo) + "," + std::to_string(zf.window_hi) + "] for v=" +
                 v.to_string());
        }
        if (!allowed && !zf.poly.is_zero()) r.fail("parity-violating Z nonzero for mu " + mu.describe());
      }
    }
  }
  return r;
}

}  // namespace mzeta
