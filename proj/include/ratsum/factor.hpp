#pragma once

// Denominator factorization at desk scale. Pipeline: active-variable content
// split, squarefree split per variable, complete factorization for inputs
// with at most two effective variables (Kronecker packing onto the univariate
// kernel), and a degree-1-in-some-variable splitting heuristic beyond that.
// Surviving multivariate factors are reported assumed-irreducible.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "ratsum/multipoly.hpp"
#include "ratsum/zfactor.hpp"

namespace ratsum {

enum class FactorStatus { certified, assumed };

struct FactorEntry {
  MultiPoly poly;
  int multiplicity = 1;
  FactorStatus status = FactorStatus::certified;
};

struct FactorReport {
  MultiPoly content;  // free of active variables
  std::vector<FactorEntry> factors;

  bool any_assumed() const {
    for (const auto& e : factors)
      if (e.status == FactorStatus::assumed) return true;
    return false;
  }
};

// p = content * primitive with content free of active variables and primitive
// monic under the term order.
inline std::pair<MultiPoly, MultiPoly> content_primitive(const MultiPoly& p) {
  TablePtr tab = p.table();
  if (p.is_zero()) return {p, MultiPoly::constant(tab, Fq(1))};
  std::vector<bool> active(tab->size());
  for (size_t i = 0; i < tab->size(); ++i) active[i] = tab->is_active(i);
  // coefficients of p as a polynomial in the active variables
  std::map<Exps, MultiPoly, GrlexLess> coeffs;
  for (const auto& [e, c] : p.terms()) {
    Exps ea(e.size(), 0), ei(e.size(), 0);
    for (size_t i = 0; i < e.size(); ++i) (active[i] ? ea[i] : ei[i]) = e[i];
    auto it = coeffs.find(ea);
    if (it == coeffs.end()) it = coeffs.emplace(ea, MultiPoly(tab)).first;
    it->second.add_term(ei, c);
  }
  MultiPoly g(tab);
  for (const auto& [ea, c] : coeffs) g = mp_gcd(g, c);
  MultiPoly prim0 = mp_divexact(p, g);
  auto [rep, unit] = prim0.monic();
  return {g.scaled(unit), rep};
}

// associate-class representative: p = unit * rep, rep monic
inline std::pair<MultiPoly, Fq> canonical_associate(const MultiPoly& p) {
  if (p.is_zero()) throw error("canonical associate of zero");
  return p.monic();
}

enum class Classification { normal, special };

// An irreducible d is special for the q-shift in `main` exactly when it is a
// single stratum c(other vars) * main^k, k >= 1; shift-active variables admit
// no special irreducibles.
inline Classification classify_normal_special(const MultiPoly& d, int main) {
  if (d.table()->kinds[main] == VarKind::shift) return Classification::normal;
  if (d.table()->kinds[main] != VarKind::qshift)
    throw error("classification needs an active main variable");
  int seen = -1;
  for (const auto& [e, c] : d.terms()) {
    if (seen < 0) seen = e[main];
    if (e[main] != seen) return Classification::normal;
  }
  return seen >= 1 ? Classification::special : Classification::normal;
}

namespace fdetail {

inline Fq fq_const(const MultiPoly& p) {
  return p.is_zero() ? Fq(0) : p.lc();
}

// Complete factorization for polynomials whose integer lift touches at most
// two variables (q counts as one). Returns monic irreducible factors over the
// coefficient field; `complete` is false only if the recombination cap fired.
struct SmallResult {
  std::vector<MultiPoly> factors;
  bool complete = true;
};

inline SmallResult factor_complete_small(const MultiPoly& f) {
  TablePtr tab = f.table();
  TablePtr xtab = tab->extended({"#q"}, {VarKind::inert});
  MultiPoly L = gcddetail::lift_q(f, xtab);
  std::vector<int> vars;
  for (size_t i = 0; i < xtab->size(); ++i)
    if (L.degree_in(static_cast<int>(i)) > 0) vars.push_back(static_cast<int>(i));
  SmallResult out;
  if (vars.empty()) return out;
  if (vars.size() > 2) throw error("small factorization needs <= 2 variables");
  int v1 = vars[0], v2 = vars.size() > 1 ? vars[1] : -1;
  int base = L.degree_in(v1) + 1;

  // Kronecker packing is evaluation at (t, t^base): a ring homomorphism
  auto pack = [&](const MultiPoly& m) {
    std::vector<Int> c;
    for (const auto& [e, co] : m.terms()) {
      int n = e[v1] + (v2 >= 0 ? e[v2] * base : 0);
      if (static_cast<size_t>(n) >= c.size()) c.resize(n + 1, Int(0));
      c[n] += gcddetail::int_of(co);
    }
    return ZPoly(std::move(c));
  };
  auto unpack = [&](const ZPoly& z) {
    MultiPoly m(xtab);
    for (int n = 0; n <= z.degree(); ++n) {
      if (z[n] == 0) continue;
      Exps e(xtab->size(), 0);
      e[v1] = n % base;
      if (v2 >= 0) e[v2] = n / base;
      m.add_term(e, Fq(z[n]));
    }
    return m;
  };

  auto [unit, zfac] = zf::factor_zpoly(pack(L));
  (void)unit;
  std::vector<ZPoly> pool;
  for (const auto& [g, m] : zfac)
    for (int i = 0; i < m; ++i) pool.push_back(g);

  std::vector<MultiPoly> found;  // integer factors over xtab
  MultiPoly rest = L;
  size_t take = 1;
  long budget = 30000;
  while (2 * take <= pool.size() && budget > 0) {
    bool hit = false;
    std::vector<size_t> idx(take);
    for (size_t i = 0; i < take; ++i) idx[i] = i;
    while (budget-- > 0) {
      ZPoly prod(Int(1));
      for (size_t i : idx) prod = prod * pool[i];
      MultiPoly cand = unpack(prod);
      // primitive, positive leading coefficient
      Int ic = gcddetail::int_content(cand);
      if (gcddetail::int_of(cand.lc()) < 0) ic = -ic;
      if (ic != 1 && ic != 0) cand = gcddetail::int_scale_down(cand, ic);
      if (!cand.is_constant() && mp_divides(cand, rest)) {
        rest = mp_divexact(rest, cand);
        found.push_back(cand);
        std::vector<ZPoly> np;
        for (size_t i = 0, k = 0; i < pool.size(); ++i) {
          if (k < idx.size() && idx[k] == i) {
            ++k;
            continue;
          }
          np.push_back(pool[i]);
        }
        pool = std::move(np);
        hit = true;
        break;
      }
      long i = static_cast<long>(take) - 1;
      while (i >= 0 && idx[i] == pool.size() - take + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (size_t j = i + 1; j < take; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!hit) ++take;
  }
  if (budget <= 0) out.complete = false;
  if (!rest.is_constant()) found.push_back(rest);

  for (const MultiPoly& g : found) {
    MultiPoly h = gcddetail::fold_q(g, tab);
    if (h.is_constant()) continue;  // content in q: a unit of the field
    out.factors.push_back(h.monic().first);
  }
  return out;
}

// effective variable count of the integer lift (q included when it appears)
inline int effective_vars(const MultiPoly& f) {
  int n = 0;
  for (size_t i = 0; i < f.table()->size(); ++i)
    if (f.degree_in(static_cast<int>(i)) > 0) ++n;
  for (const auto& [e, c] : f.terms())
    if (c.num().degree() > 0 || c.den().degree() > 0) return n + 1;
  return n;
}

// roots in the coefficient field of sum coeffs[k] * c^k
inline std::vector<Fq> field_roots(const std::vector<Fq>& coeffs,
                                   const CoeffField& field) {
  auto ctab = VarTable::make({"#c"}, {VarKind::inert}, field);
  MultiPoly p(ctab);
  for (size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k].is_zero()) continue;
    p.add_term({static_cast<int>(k)}, coeffs[k]);
  }
  std::vector<Fq> roots;
  if (p.is_zero() || p.is_constant()) return roots;
  SmallResult res = factor_complete_small(p);
  for (const MultiPoly& h : res.factors) {
    if (h.degree_in(0) != 1) continue;
    Fq a = fq_const(h.coeff_in(0, 1)), b = fq_const(h.coeff_in(0, 0));
    roots.push_back(Fq(0) - b / a);
  }
  return roots;
}

FactorReport factor_denominator_impl(const MultiPoly& p, int depth);

// monic divisors assembled from a (possibly partial) factor list
inline std::vector<MultiPoly> monic_divisors(const MultiPoly& p, int depth) {
  std::vector<MultiPoly> out = {MultiPoly::constant(p.table(), Fq(1))};
  if (p.is_zero() || p.is_constant()) return out;
  FactorReport rep = factor_denominator_impl(p, depth);
  for (const auto& e : rep.factors) {
    size_t n = out.size();
    MultiPoly pw = MultiPoly::constant(p.table(), Fq(1));
    for (int k = 1; k <= e.multiplicity; ++k) {
      pw = (pw * e.poly).monic().first;
      for (size_t i = 0; i < n; ++i) {
        if (out.size() >= 128) return out;
        out.push_back((out[i] * pw).monic().first);
      }
    }
  }
  return out;
}

// Look for a factor of f of degree 1 in variable v: Dm*v - c*D0 with Dm, D0
// monic divisors of the extreme v-coefficients and c a field scalar.
inline std::optional<MultiPoly> try_linear_split(const MultiPoly& f, int v,
                                                 int depth) {
  int m = f.degree_in(v);
  if (m < 1) return std::nullopt;
  MultiPoly fm = f.monic().first;
  MultiPoly a0 = f.coeff_in(v, 0);
  if (a0.is_zero()) {
    MultiPoly h = MultiPoly::variable(f.table(), v, 1);
    if (h == fm) return std::nullopt;
    return h;
  }
  MultiPoly am = f.coeff_in(v, m);
  std::vector<MultiPoly> dm = monic_divisors(am, depth + 1);
  std::vector<MultiPoly> d0 = monic_divisors(a0, depth + 1);
  const CoeffField& field = f.table()->field;
  for (const MultiPoly& Dm : dm)
    for (const MultiPoly& D0 : d0) {
      if (!mp_gcd(Dm, D0).is_constant()) continue;
      // f(c*D0/Dm) = 0 scaled by Dm^m: P(c) = sum a_k D0^k Dm^(m-k) c^k;
      // one monomial of the other variables gives the candidate equation
      std::vector<MultiPoly> M(m + 1, MultiPoly(f.table()));
      MultiPoly d0p = MultiPoly::constant(f.table(), Fq(1));
      for (int k = 0; k <= m; ++k) {
        MultiPoly dmp = MultiPoly::constant(f.table(), Fq(1));
        for (int j = 0; j < m - k; ++j) dmp *= Dm;
        M[k] = f.coeff_in(v, k) * d0p * dmp;
        d0p *= D0;
      }
      const Exps& pivot = M[m].leading_exps();
      std::vector<Fq> eq(m + 1, Fq(0));
      for (int k = 0; k <= m; ++k)
        for (const auto& [e, c] : M[k].terms())
          if (e == pivot) eq[k] = c;
      for (const Fq& c : field_roots(eq, field)) {
        if (c.is_zero()) continue;
        MultiPoly h =
            Dm * MultiPoly::variable(f.table(), v, 1) - D0.scaled(c);
        h = h.monic().first;
        if (h != fm && mp_divides(h, f)) return h;
      }
    }
  return std::nullopt;
}

inline std::vector<std::pair<MultiPoly, FactorStatus>> split_irreducible(
    MultiPoly f, int depth) {
  std::vector<std::pair<MultiPoly, FactorStatus>> out;
  while (!f.is_constant()) {
    if (effective_vars(f) <= 2) {
      SmallResult res = factor_complete_small(f);
      for (size_t i = 0; i < res.factors.size(); ++i) {
        bool last_incomplete = !res.complete && i + 1 == res.factors.size();
        out.push_back({res.factors[i], last_incomplete ? FactorStatus::assumed
                                                       : FactorStatus::certified});
      }
      return out;
    }
    std::optional<MultiPoly> h;
    if (depth <= 2)
      for (size_t v = 0; v < f.table()->size() && !h; ++v)
        h = try_linear_split(f, static_cast<int>(v), depth);
    if (!h) {
      out.push_back({f.monic().first, FactorStatus::assumed});
      return out;
    }
    out.push_back({*h, FactorStatus::certified});
    f = mp_divexact(f, *h).monic().first;
  }
  return out;
}

// squarefree split of an active-content-free polynomial
inline void squarefree_split(const MultiPoly& p,
                             std::vector<std::pair<MultiPoly, int>>& out) {
  if (p.is_constant()) return;
  int v = -1;
  for (size_t i = 0; i < p.table()->size() && v < 0; ++i)
    if (p.table()->is_active(static_cast<int>(i)) &&
        p.degree_in(static_cast<int>(i)) > 0)
      v = static_cast<int>(i);
  if (v < 0) {
    // inert-variable factor: squarefree along any variable present
    for (size_t i = 0; i < p.table()->size() && v < 0; ++i)
      if (p.degree_in(static_cast<int>(i)) > 0) v = static_cast<int>(i);
  }
  if (v < 0) return;
  MultiPoly c = mp_content_in(p, v);
  MultiPoly pp = mp_divexact(p, c);
  for (const auto& [g, mlt] : squarefree_decompose(pp, v)) out.push_back({g, mlt});
  squarefree_split(c, out);
}

inline FactorReport factor_denominator_impl(const MultiPoly& p, int depth) {
  if (p.is_zero()) throw error("factoring the zero polynomial");
  FactorReport rep;
  auto [content, prim] = content_primitive(p);
  rep.content = content;
  std::vector<std::pair<MultiPoly, int>> sqf;
  squarefree_split(prim, sqf);
  for (const auto& [g, mlt] : sqf)
    for (auto& [h, status] : split_irreducible(g, depth)) {
      bool merged = false;
      for (auto& e : rep.factors)
        if (e.poly == h) {
          e.multiplicity += mlt;
          merged = true;
          break;
        }
      if (!merged) rep.factors.push_back({h, mlt, status});
    }
  // fix the content so that content * prod(factor^mult) == p exactly
  MultiPoly prod = rep.content;
  for (const auto& e : rep.factors)
    for (int i = 0; i < e.multiplicity; ++i) prod *= e.poly;
  if (!prod.is_zero()) {
    Fq ratio = p.lc() / prod.lc();
    rep.content = rep.content.scaled(ratio);
  }
  return rep;
}

}  // namespace fdetail

using fdetail::factor_complete_small;

inline FactorReport factor_denominator(const MultiPoly& p) {
  return fdetail::factor_denominator_impl(p, 0);
}

}  // namespace ratsum
