#pragma once

// Univariate factorization over Q at desk scale: squarefree split (Yun),
// Berlekamp modulo a small prime, linear Hensel lifting, and subset
// recombination with trial division.

#include <algorithm>
#include <utility>
#include <vector>

#include "ratsum/qfield.hpp"

namespace ratsum {
namespace zf {

// dense polynomial over Z/p, trailing zeros trimmed
struct ModPoly {
  long p = 0;
  std::vector<long> c;

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  long lc() const { return c.back(); }
};

inline long mod_norm(Int x, long p) {
  Int r = x % p;
  if (r < 0) r += p;
  return static_cast<long>(r);
}

inline long mul_mod(long a, long b, long p) {
  return static_cast<long>((static_cast<long long>(a) * b) % p);
}

inline long pow_mod(long a, long e, long p) {
  long r = 1;
  a %= p;
  while (e > 0) {
    if (e & 1) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline long inv_mod(long a, long p) { return pow_mod(a, p - 2, p); }

inline ModPoly mp_make(long p, std::vector<long> c) {
  ModPoly r{p, std::move(c)};
  r.trim();
  return r;
}

inline ModPoly to_mod(const ZPoly& f, long p) {
  std::vector<long> c(f.degree() + 1);
  for (int i = 0; i <= f.degree(); ++i) c[i] = mod_norm(f[i], p);
  return mp_make(p, std::move(c));
}

inline ModPoly mp_add(const ModPoly& a, const ModPoly& b) {
  std::vector<long> c(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < a.c.size(); ++i) c[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) c[i] = (c[i] + b.c[i]) % a.p;
  return mp_make(a.p, std::move(c));
}

inline ModPoly mp_sub(const ModPoly& a, const ModPoly& b) {
  std::vector<long> c(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < a.c.size(); ++i) c[i] = a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) c[i] = (c[i] - b.c[i] % a.p + a.p) % a.p;
  return mp_make(a.p, std::move(c));
}

inline ModPoly mp_mul(const ModPoly& a, const ModPoly& b) {
  if (a.is_zero() || b.is_zero()) return ModPoly{a.p, {}};
  std::vector<long> c(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j)
      c[i + j] = (c[i + j] + static_cast<long long>(a.c[i]) * b.c[j]) % a.p;
  return mp_make(a.p, std::move(c));
}

inline ModPoly mp_scale(const ModPoly& a, long s) {
  ModPoly r = a;
  for (auto& x : r.c) x = mul_mod(x, s, a.p);
  r.trim();
  return r;
}

inline std::pair<ModPoly, ModPoly> mp_divmod(const ModPoly& a, const ModPoly& b) {
  ModPoly r = a, q{a.p, {}};
  long inv = inv_mod(b.lc(), a.p);
  if (r.degree() >= b.degree())
    q.c.assign(r.degree() - b.degree() + 1, 0);
  while (!r.is_zero() && r.degree() >= b.degree()) {
    long f = mul_mod(r.lc(), inv, a.p);
    int d = r.degree() - b.degree();
    q.c[d] = f;
    for (size_t i = 0; i < b.c.size(); ++i)
      r.c[d + i] = (r.c[d + i] - static_cast<long long>(f) * b.c[i] % a.p + a.p) % a.p;
    r.trim();
  }
  q.trim();
  return {q, r};
}

inline ModPoly mp_gcd_p(ModPoly a, ModPoly b) {
  while (!b.is_zero()) {
    ModPoly r = mp_divmod(a, b).second;
    a = b;
    b = r;
  }
  if (!a.is_zero()) a = mp_scale(a, inv_mod(a.lc(), a.p));
  return a;
}

// extended euclid: s*a + t*b = 1 for coprime a, b
inline void mp_xgcd(const ModPoly& a, const ModPoly& b, ModPoly& s, ModPoly& t) {
  long p = a.p;
  ModPoly r0 = a, r1 = b;
  ModPoly s0 = mp_make(p, {1}), s1{p, {}};
  ModPoly t0{p, {}}, t1 = mp_make(p, {1});
  while (!r1.is_zero()) {
    auto [q, r] = mp_divmod(r0, r1);
    r0 = r1;
    r1 = r;
    ModPoly s2 = mp_sub(s0, mp_mul(q, s1));
    s0 = s1;
    s1 = s2;
    ModPoly t2 = mp_sub(t0, mp_mul(q, t1));
    t0 = t1;
    t1 = t2;
  }
  long inv = inv_mod(r0.lc(), p);
  s = mp_scale(s0, inv);
  t = mp_scale(t0, inv);
}

inline ModPoly mp_derivative(const ModPoly& a) {
  ModPoly r{a.p, {}};
  for (size_t i = 1; i < a.c.size(); ++i)
    r.c.push_back(mul_mod(a.c[i], static_cast<long>(i % a.p), a.p));
  r.trim();
  return r;
}

inline ModPoly mp_powmod(ModPoly a, Int e, const ModPoly& m) {
  ModPoly r = mp_make(a.p, {1});
  a = mp_divmod(a, m).second;
  while (e > 0) {
    if ((e & 1) != 0) r = mp_divmod(mp_mul(r, a), m).second;
    a = mp_divmod(mp_mul(a, a), m).second;
    e >>= 1;
  }
  return r;
}

// Berlekamp factorization of a monic squarefree polynomial mod a small prime.
inline std::vector<ModPoly> berlekamp(const ModPoly& f) {
  long p = f.p;
  int n = f.degree();
  if (n <= 1) return {f};
  // rows of Q: x^(i*p) mod f
  std::vector<std::vector<long>> Q(n, std::vector<long>(n, 0));
  ModPoly xp = mp_powmod(mp_make(p, {0, 1}), Int(p), f);
  ModPoly cur = mp_make(p, {1});
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= cur.degree(); ++j) Q[i][j] = cur.c[j];
    cur = mp_divmod(mp_mul(cur, xp), f).second;
  }
  for (int i = 0; i < n; ++i) Q[i][i] = (Q[i][i] - 1 + p) % p;
  // nullspace of Q^T (vectors v with v*(Q - I) = 0 row-convention): we need
  // v with (Q - I)^T v = 0, i.e. kernel of the matrix whose columns are rows
  // of Q - I. Gaussian elimination on Q (rows = images) transposed:
  std::vector<std::vector<long>> m(n, std::vector<long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = Q[j][i];
  std::vector<int> pivot_col(n, -1);
  int rank = 0;
  for (int c = 0; c < n && rank < n; ++c) {
    int piv = -1;
    for (int r = rank; r < n; ++r)
      if (m[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    long inv = inv_mod(m[rank][c], p);
    for (int j = 0; j < n; ++j) m[rank][j] = mul_mod(m[rank][j], inv, p);
    for (int r = 0; r < n; ++r)
      if (r != rank && m[r][c] != 0) {
        long f2 = m[r][c];
        for (int j = 0; j < n; ++j)
          m[r][j] = (m[r][j] - mul_mod(f2, m[rank][j], p) + p) % p;
      }
    pivot_col[rank] = c;
    ++rank;
  }
  std::vector<std::vector<long>> basis;
  std::vector<bool> is_pivot(n, false);
  for (int r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    std::vector<long> v(n, 0);
    v[c] = 1;
    for (int r = 0; r < rank; ++r)
      v[pivot_col[r]] = (p - m[r][c]) % p;
    basis.push_back(std::move(v));
  }
  size_t nfac = basis.size();  // number of irreducible factors
  std::vector<ModPoly> out = {f};
  for (const auto& v : basis) {
    if (out.size() == nfac) break;
    ModPoly vp = mp_make(p, std::vector<long>(v.begin(), v.end()));
    std::vector<ModPoly> next;
    for (const ModPoly& g : out) {
      if (g.degree() <= 1) {
        next.push_back(g);
        continue;
      }
      ModPoly rest = g;
      for (long s = 0; s < p && rest.degree() > 0; ++s) {
        ModPoly shifted = mp_sub(vp, mp_make(p, {s}));
        ModPoly d = mp_gcd_p(rest, shifted);
        if (d.degree() > 0 && d.degree() < rest.degree()) {
          next.push_back(d);
          rest = mp_divmod(rest, d).first;
        }
      }
      if (rest.degree() > 0) next.push_back(rest);
    }
    out = std::move(next);
    if (out.size() >= nfac) break;
  }
  return out;
}

// Linear Hensel step: F == g*h (mod m), s*g + t*h == 1 (mod p), F, g, h monic.
// Lifts g, h to a factorization mod m*p.
inline void hensel_step(const std::vector<Int>& F, std::vector<Int>& g,
                        std::vector<Int>& h, const ModPoly& s, const ModPoly& t,
                        const Int& m, long p) {
  // e = (F - g*h) / m mod p
  std::vector<Int> gh(g.size() + h.size() - 1, Int(0));
  for (size_t i = 0; i < g.size(); ++i)
    for (size_t j = 0; j < h.size(); ++j) gh[i + j] += g[i] * h[j];
  ModPoly e{p, {}};
  e.c.resize(F.size(), 0);
  for (size_t i = 0; i < F.size(); ++i) {
    Int d = F[i] - (i < gh.size() ? gh[i] : Int(0));
    e.c[i] = mod_norm(d / m, p);
  }
  e.trim();
  ModPoly gp{p, std::vector<long>(g.size())}, hp{p, std::vector<long>(h.size())};
  for (size_t i = 0; i < g.size(); ++i) gp.c[i] = mod_norm(g[i], p);
  for (size_t i = 0; i < h.size(); ++i) hp.c[i] = mod_norm(h[i], p);
  gp.trim();
  hp.trim();
  auto [lam, u] = mp_divmod(mp_mul(t, e), gp);       // u = t*e mod g
  ModPoly w = mp_add(mp_mul(s, e), mp_mul(lam, hp));  // u*h + w*g == e (mod p)
  w = mp_divmod(w, hp).second;
  for (int i = 0; i <= u.degree(); ++i) g[i] += m * u.c[i];
  for (int i = 0; i <= w.degree(); ++i) h[i] += m * w.c[i];
}

// Lift a pairwise-coprime monic factorization of monic F mod p to mod target
// (a power of p); returns factors with coefficients in [0, target).
inline std::vector<std::vector<Int>> hensel_lift(const std::vector<Int>& F,
                                                 const std::vector<ModPoly>& fac,
                                                 long p, const Int& target) {
  if (fac.size() == 1) {
    std::vector<Int> g(F.size());
    for (size_t i = 0; i < F.size(); ++i) {
      g[i] = F[i] % target;
      if (g[i] < 0) g[i] += target;
    }
    return {g};
  }
  size_t half = fac.size() / 2;
  ModPoly G = mp_make(p, {1}), H = mp_make(p, {1});
  for (size_t i = 0; i < half; ++i) G = mp_mul(G, fac[i]);
  for (size_t i = half; i < fac.size(); ++i) H = mp_mul(H, fac[i]);
  ModPoly s, t;
  mp_xgcd(G, H, s, t);
  std::vector<Int> g(G.degree() + 1), h(H.degree() + 1);
  for (int i = 0; i <= G.degree(); ++i) g[i] = G.c[i];
  for (int i = 0; i <= H.degree(); ++i) h[i] = H.c[i];
  Int m = p;
  while (m < target) {
    hensel_step(F, g, h, s, t, m, p);
    m *= p;
  }
  for (auto& x : g) {
    x %= m;
    if (x < 0) x += m;
  }
  for (auto& x : h) {
    x %= m;
    if (x < 0) x += m;
  }
  std::vector<std::vector<Int>> left = hensel_lift(
      g, std::vector<ModPoly>(fac.begin(), fac.begin() + half), p, target);
  std::vector<std::vector<Int>> right = hensel_lift(
      h, std::vector<ModPoly>(fac.begin() + half, fac.end()), p, target);
  left.insert(left.end(), right.begin(), right.end());
  return left;
}

inline ZPoly from_coeffs_sym(const std::vector<Int>& c, const Int& m) {
  std::vector<Int> d = c;
  Int half = m / 2;
  for (auto& x : d) {
    x %= m;
    if (x < 0) x += m;
    if (x > half) x -= m;
  }
  return ZPoly(std::move(d));
}

// Factor a primitive squarefree monic polynomial over Z.
inline std::vector<ZPoly> factor_monic_squarefree(const ZPoly& f) {
  int n = f.degree();
  if (n <= 1) return {f};
  // choose a prime keeping f squarefree mod p
  static const long primes[] = {3,  5,  7,  11, 13, 17, 19, 23,
                                29, 31, 37, 41, 43, 47, 53, 59};
  ModPoly best{0, {}};
  size_t best_count = SIZE_MAX;
  std::vector<ModPoly> best_fac;
  int tried = 0;
  for (long p : primes) {
    ModPoly fp = to_mod(f, p);
    if (fp.degree() != n) continue;
    if (mp_gcd_p(fp, mp_derivative(fp)).degree() != 0) continue;
    std::vector<ModPoly> fac = berlekamp(mp_scale(fp, inv_mod(fp.lc(), p)));
    if (fac.size() < best_count) {
      best_count = fac.size();
      best = fp;
      best_fac = std::move(fac);
    }
    if (++tried >= 3 || best_count == 1) break;
  }
  if (best_count == SIZE_MAX) throw error("no usable prime for factorization");
  if (best_count == 1) return {f};
  long p = best.p;

  // coefficient bound for monic factors (Mignotte-style, crude but safe)
  Int norm = 0;
  for (int i = 0; i <= n; ++i)
    norm += f[i] * f[i];
  Int bound = Int(1) << (n + 2);
  Int s = boost::multiprecision::sqrt(norm) + 1;
  bound *= s;
  Int target = p;
  while (target <= 2 * bound) target *= p;

  std::vector<Int> F(n + 1);
  for (int i = 0; i <= n; ++i) F[i] = f[i];
  std::vector<std::vector<Int>> lifted = hensel_lift(F, best_fac, p, target);

  // subset recombination with trial division
  std::vector<ZPoly> out;
  std::vector<std::vector<Int>> pool = lifted;
  ZPoly rest = f;
  size_t take = 1;
  while (2 * take <= pool.size()) {
    bool found = false;
    std::vector<size_t> idx(take);
    for (size_t i = 0; i < take; ++i) idx[i] = i;
    while (true) {
      std::vector<Int> prod = {Int(1)};
      for (size_t i : idx) {
        std::vector<Int> nx(prod.size() + pool[i].size() - 1, Int(0));
        for (size_t a = 0; a < prod.size(); ++a)
          for (size_t b = 0; b < pool[i].size(); ++b) {
            nx[a + b] += prod[a] * pool[i][b];
            nx[a + b] %= target;
          }
        prod = std::move(nx);
      }
      ZPoly cand = from_coeffs_sym(prod, target);
      bool exact = false;
      ZPoly quo;
      try {
        quo = rest.divide_exact(cand);
        exact = true;
      } catch (const error&) {
      }
      if (exact) {
        out.push_back(cand);
        rest = quo;
        std::vector<std::vector<Int>> np;
        for (size_t i = 0, k = 0; i < pool.size(); ++i) {
          if (k < idx.size() && idx[k] == i) {
            ++k;
            continue;
          }
          np.push_back(pool[i]);
        }
        pool = std::move(np);
        found = true;
        break;
      }
      // next subset of the same size
      long i = static_cast<long>(take) - 1;
      while (i >= 0 && idx[i] == pool.size() - take + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (size_t j = i + 1; j < take; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++take;
  }
  if (rest.degree() > 0) out.push_back(rest);
  return out;
}

// Full factorization over Q: returns (unit, factors with multiplicity) with
// each factor primitive over Z, positive leading coefficient, and
// unit * prod(factor^mult) == f.
inline std::pair<Rat, std::vector<std::pair<ZPoly, int>>> factor_zpoly(
    const ZPoly& f0) {
  if (f0.is_zero()) throw error("factoring zero polynomial");
  ZPoly f = f0;
  Int cont = f.signed_content();
  f = f.divide_exact(ZPoly(cont));
  Rat unit(cont);
  std::vector<std::pair<ZPoly, int>> out;
  if (f.degree() == 0) return {unit, out};
  // monomial part
  int low = 0;
  while (f[low] == 0) ++low;
  if (low > 0) {
    std::vector<Int> c(f.degree() - low + 1);
    for (int i = low; i <= f.degree(); ++i) c[i - low] = f[i];
    f = ZPoly(std::move(c));
    out.push_back({ZPoly::monomial(Int(1), 1), low});
  }
  // squarefree split (Yun)
  std::vector<std::pair<ZPoly, int>> sqf;
  {
    ZPoly a = f, d = a.derivative();
    ZPoly g = gcd(a, d);
    ZPoly w = a.divide_exact(g);
    int m = 1;
    while (w.degree() > 0) {
      ZPoly y = gcd(w, g);
      ZPoly z = w.divide_exact(y);
      if (z.degree() > 0) sqf.push_back({z.primitive(), m});
      g = g.divide_exact(y);
      w = y;
      ++m;
    }
    if (w.degree() > 0) sqf.push_back({w.primitive(), m});
  }
  for (auto& [g, m] : sqf) {
    if (g.lc() < 0) g = g.scaled(Int(-1));
    int n = g.degree();
    if (n == 1) {
      out.push_back({g, m});
      continue;
    }
    // monicize: h(y) = lc^(n-1) * g(y/lc), factor, pull back
    Int l = g.lc();
    std::vector<Int> hc(n + 1);
    Int pw = 1;
    for (int i = n; i >= 0; --i) {
      hc[i] = g[i] * pw;
      if (i > 0) pw *= l;
    }
    std::vector<ZPoly> monic_factors = factor_monic_squarefree(ZPoly(hc));
    for (const ZPoly& h : monic_factors) {
      // pull back y = l*x and take the primitive part
      std::vector<Int> c(h.degree() + 1);
      Int q = 1;
      for (int i = 0; i <= h.degree(); ++i) {
        c[i] = h[i] * q;
        q *= l;
      }
      ZPoly fac = ZPoly(std::move(c)).primitive();
      if (fac.lc() < 0) fac = fac.scaled(Int(-1));
      out.push_back({fac, m});
    }
  }
  // fix the unit so the product is exact
  ZPoly prod(Int(1));
  for (const auto& [g, m] : out)
    for (int i = 0; i < m; ++i) prod = prod * g;
  // f0 = unit_total * prod with unit_total rational constant
  // both sides have the same degree; compare leading coefficients
  unit = Rat(f0[f0.degree()], prod[prod.degree()]);
  return {unit, out};
}

}  // namespace zf
}  // namespace ratsum
