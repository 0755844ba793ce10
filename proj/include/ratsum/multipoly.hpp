#pragma once

// Sparse distributed multivariate polynomials over Q(q) with a fixed graded
// lexicographic order, plus the exact kernels built on them: pseudo-division,
// gcd via primitive subresultant PRS, squarefree decomposition, and the
// shift / q-shift substitutions.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vartable.hpp"

namespace ratsum {

using Exps = std::vector<int>;

struct GrlexLess {
  bool operator()(const Exps& a, const Exps& b) const {
    long da = 0, db = 0;
    for (int x : a) da += x;
    for (int x : b) db += x;
    if (da != db) return da < db;
    // lex: earlier variable with larger exponent wins
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }
};

class MultiPoly {
 public:
  using TermMap = std::map<Exps, Fq, GrlexLess>;

  MultiPoly() = default;
  explicit MultiPoly(TablePtr tab) : tab_(std::move(tab)) {}

  static MultiPoly zero(TablePtr tab) { return MultiPoly(std::move(tab)); }
  static MultiPoly constant(TablePtr tab, Fq c) {
    MultiPoly p(std::move(tab));
    if (!c.is_zero()) p.terms_.emplace(Exps(p.tab_->size(), 0), std::move(c));
    return p;
  }
  static MultiPoly variable(TablePtr tab, int i, int e = 1) {
    MultiPoly p(tab);
    Exps ex(tab->size(), 0);
    ex[i] = e;
    p.terms_.emplace(std::move(ex), Fq(1));
    return p;
  }
  static MultiPoly monomial(TablePtr tab, Exps e, Fq c) {
    MultiPoly p(std::move(tab));
    if (!c.is_zero()) p.terms_.emplace(std::move(e), std::move(c));
    return p;
  }

  const TablePtr& table() const { return tab_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    for (int e : terms_.begin()->first)
      if (e != 0) return false;
    return true;
  }
  Fq constant_value() const {
    if (is_zero()) return Fq(0);
    if (!is_constant()) throw error("polynomial is not constant");
    return terms_.begin()->second;
  }

  long total_degree() const {
    long d = -1;
    if (!terms_.empty()) {
      d = 0;
      for (int x : terms_.rbegin()->first) d += x;
    }
    return d;
  }
  int degree_in(int v) const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e[v]);
    return d;
  }
  bool depends_on(int v) const {
    for (const auto& [e, c] : terms_)
      if (e[v] > 0) return true;
    return false;
  }

  const Fq& lc() const {
    if (is_zero()) throw error("leading coefficient of zero");
    return terms_.rbegin()->second;
  }
  const Exps& leading_exps() const {
    if (is_zero()) throw error("leading term of zero");
    return terms_.rbegin()->first;
  }

  void add_term(const Exps& e, const Fq& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, c);
    return r;
  }
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r = a;
    for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
    return r;
  }
  friend MultiPoly operator-(const MultiPoly& a) {
    MultiPoly r = a;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r(a.tab_ ? a.tab_ : b.tab_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exps e = ea;
        for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  MultiPoly scaled(const Fq& c) const {
    MultiPoly r(tab_);
    if (c.is_zero()) return r;
    for (const auto& [e, t] : terms_) r.terms_.emplace(e, t * c);
    return r;
  }

  MultiPoly pow(long e) const {
    if (e < 0) throw error("negative polynomial power");
    MultiPoly r = constant(tab_, Fq(1));
    MultiPoly b = *this;
    while (e > 0) {
      if (e & 1) r *= b;
      if ((e >>= 1)) b *= b;
    }
    return r;
  }

  // Coefficient of v^k, as a polynomial free of v.
  MultiPoly coeff_in(int v, int k) const {
    MultiPoly r(tab_);
    for (const auto& [e, c] : terms_)
      if (e[v] == k) {
        Exps e2 = e;
        e2[v] = 0;
        r.terms_.emplace(std::move(e2), c);
      }
    return r;
  }

  MultiPoly derivative(int v) const {
    MultiPoly r(tab_);
    for (const auto& [e, c] : terms_)
      if (e[v] > 0) {
        Exps e2 = e;
        e2[v] -= 1;
        r.add_term(e2, c * Fq(Int(e[v])));
      }
    return r;
  }

  // v -> v + a
  MultiPoly subst_shift(int v, const Int& a) const {
    if (a == 0) return *this;
    int dmax = degree_in(v);
    if (dmax <= 0) return *this;
    // binomial rows and powers of a, shared across terms
    std::vector<std::vector<Int>> binom(dmax + 1);
    for (int n = 0; n <= dmax; ++n) {
      binom[n].assign(n + 1, Int(1));
      for (int k = 1; k < n; ++k) binom[n][k] = binom[n - 1][k - 1] + binom[n - 1][k];
    }
    std::vector<Int> apow(dmax + 1, Int(1));
    for (int i = 1; i <= dmax; ++i) apow[i] = apow[i - 1] * a;
    MultiPoly r(tab_);
    for (const auto& [e, c] : terms_) {
      int n = e[v];
      if (n == 0) {
        r.add_term(e, c);
        continue;
      }
      for (int k = 0; k <= n; ++k) {
        Exps e2 = e;
        e2[v] = k;
        r.add_term(e2, c * Fq(binom[n][k] * apow[n - k]));
      }
    }
    return r;
  }

  // v -> q^a * v
  MultiPoly subst_qscale(int v, long a) const {
    if (a == 0) return *this;
    Fq q = Fq::q(tab_->field);
    MultiPoly r(tab_);
    for (const auto& [e, c] : terms_)
      r.terms_.emplace(e, c * q.pow(a * e[v]));
    return r;
  }

  // v -> g (general substitution, Horner in v)
  MultiPoly subst(int v, const MultiPoly& g) const {
    int d = degree_in(v);
    if (d <= 0) return *this;
    MultiPoly r = coeff_in(v, d);
    for (int k = d - 1; k >= 0; --k) r = r * g + coeff_in(v, k);
    return r;
  }

  // Monic representative under graded-lex and the unit making p = unit * rep.
  std::pair<MultiPoly, Fq> monic() const {
    if (is_zero()) throw error("monic of zero");
    Fq u = lc();
    return {scaled(u.inverse()), u};
  }

  // Move terms onto a different table; map[i] is the new index of variable i.
  MultiPoly remapped(TablePtr newtab, const std::vector<int>& map) const {
    MultiPoly r(std::move(newtab));
    for (const auto& [e, c] : terms_) {
      Exps e2(r.tab_->size(), 0);
      for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (map[i] < 0) throw error("variable dropped while remapping");
        e2[map[i]] = e[i];
      }
      r.terms_.emplace(std::move(e2), c);
    }
    return r;
  }

  std::string str() const;

 private:
  TablePtr tab_;
  TermMap terms_;
};

inline std::string MultiPoly::str() const {
  if (is_zero()) return "0";
  std::string out;
  // print highest terms first
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string cs = c.str();
    bool neg = false;
    if (cs.size() > 1 && cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos) {
      neg = true;
      cs = cs.substr(1);
    }
    if (!out.empty()) out += neg ? " - " : " + ";
    else if (neg) out += "-";
    std::string mono;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += tab_->names[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    bool coeff_atomic = cs.find_first_of("+-*/") == std::string::npos;
    if (mono.empty()) {
      out += coeff_atomic ? cs : "(" + cs + ")";
    } else if (cs == "1") {
      out += mono;
    } else {
      out += (coeff_atomic ? cs : "(" + cs + ")") + "*" + mono;
    }
  }
  return out;
}

// ---- division and gcd -----------------------------------------------------

// Exact division a / b; throws if b does not divide a.
inline MultiPoly mp_divexact(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw error("division by zero");
  MultiPoly r = a;
  MultiPoly quo(a.table());
  const Exps& lb = b.is_zero() ? Exps() : b.leading_exps();
  while (!r.is_zero()) {
    const Exps& lr = r.leading_exps();
    Exps e(lr.size());
    for (size_t i = 0; i < e.size(); ++i) {
      e[i] = lr[i] - lb[i];
      if (e[i] < 0) throw error("inexact polynomial division");
    }
    Fq c = r.lc() / b.lc();
    MultiPoly t = MultiPoly::monomial(a.table(), e, c);
    quo += t;
    r -= t * b;
  }
  return quo;
}

inline bool mp_divides(const MultiPoly& b, const MultiPoly& a) {
  try {
    mp_divexact(a, b);
    return true;
  } catch (const error&) {
    return false;
  }
}

// Pseudo-remainder of a by b with respect to variable v.
inline MultiPoly mp_prem(const MultiPoly& a, const MultiPoly& b, int v) {
  int db = b.degree_in(v);
  if (db < 0) throw error("pseudo-division by zero");
  MultiPoly r = a;
  MultiPoly lb = b.coeff_in(v, db);
  int bound = std::max(0, a.degree_in(v) - db + 1);
  int steps = 0;
  while (!r.is_zero() && r.degree_in(v) >= db) {
    int dr = r.degree_in(v);
    MultiPoly lr = r.coeff_in(v, dr);
    MultiPoly xpow = MultiPoly::variable(a.table(), v, dr - db);
    r = r * lb - lr * xpow * b;
    ++steps;
  }
  // keep the classical lc(b)^(deg a - deg b + 1) normalization
  for (; steps < bound; ++steps) r *= lb;
  return r;
}

inline MultiPoly mp_gcd(const MultiPoly& a, const MultiPoly& b);

// gcd of the v-coefficients (the content of p with respect to v).
inline MultiPoly mp_content_in(const MultiPoly& p, int v) {
  MultiPoly g(p.table());
  for (int k = 0; k <= p.degree_in(v); ++k) {
    MultiPoly c = p.coeff_in(v, k);
    if (!c.is_zero()) g = mp_gcd(g, c);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

inline MultiPoly mp_gcd_prs(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() && b.is_zero()) return a;
  if (a.is_zero()) return b.monic().first;
  if (b.is_zero()) return a.monic().first;
  if (a.is_constant() || b.is_constant())
    return MultiPoly::constant(a.table(), Fq(1));
  // main variable: last one appearing in either
  int v = -1;
  for (int i = static_cast<int>(a.table()->size()) - 1; i >= 0; --i)
    if (a.degree_in(i) > 0 || b.degree_in(i) > 0) {
      v = i;
      break;
    }
  if (a.degree_in(v) <= 0 || b.degree_in(v) <= 0) {
    // v appears in only one argument: it cannot appear in the gcd
    const MultiPoly& with = a.degree_in(v) > 0 ? a : b;
    const MultiPoly& other = a.degree_in(v) > 0 ? b : a;
    return mp_gcd_prs(mp_content_in(with, v), other);
  }
  MultiPoly ca = mp_content_in(a, v), cb = mp_content_in(b, v);
  MultiPoly pa = mp_divexact(a, ca), pb = mp_divexact(b, cb);
  MultiPoly cg = mp_gcd_prs(ca, cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  while (!pb.is_zero()) {
    MultiPoly r = mp_prem(pa, pb, v);
    if (!r.is_zero()) r = mp_divexact(r, mp_content_in(r, v));
    pa = pb;
    pb = r;
  }
  pa = mp_divexact(pa, mp_content_in(pa, v));
  return (cg * pa).monic().first;
}

// ---- heuristic gcd ----------------------------------------------------------
// Evaluation/reconstruction gcd over Z[q, x]: evaluate one variable at a large
// integer, recurse, and rebuild the candidate from balanced radix digits. Every
// candidate is verified by exact trial division, with the subresultant PRS as
// fallback when the heuristic gives up.
namespace gcddetail {

inline Int int_of(const Fq& c) {
  if (c.is_zero()) return Int(0);
  return c.num()[0];
}

// lift Q(q) coefficients to integer coefficients over an extended table with
// one trailing slot for powers of q
inline MultiPoly lift_q(const MultiPoly& p, const TablePtr& xtab) {
  ZPoly l(Int(1));
  for (const auto& [e, c] : p.terms()) {
    ZPoly g = gcd(l, c.den());
    l = (l * c.den()).divide_exact(g);
  }
  MultiPoly r(xtab);
  for (const auto& [e, c] : p.terms()) {
    ZPoly n = c.num() * l.divide_exact(c.den());
    for (int k = 0; k <= n.degree(); ++k) {
      if (n[k] == 0) continue;
      Exps e2 = e;
      e2.push_back(k);
      r.add_term(e2, Fq(n[k]));
    }
  }
  return r;
}

inline MultiPoly fold_q(const MultiPoly& p, const TablePtr& tab) {
  MultiPoly r(tab);
  size_t n = tab->size();
  for (const auto& [e, c] : p.terms()) {
    Exps e2(e.begin(), e.begin() + n);
    r.add_term(e2, Fq(ZPoly::monomial(int_of(c), e[n]), ZPoly(Int(1))));
  }
  return r;
}

inline Int int_content(const MultiPoly& p) {
  Int g = 0;
  for (const auto& [e, c] : p.terms()) g = boost::multiprecision::gcd(g, int_of(c));
  return g;
}

inline MultiPoly int_scale_down(const MultiPoly& p, const Int& k) {
  MultiPoly r(p.table());
  for (const auto& [e, c] : p.terms()) r.add_term(e, Fq(int_of(c) / k));
  return r;
}

inline Int max_norm(const MultiPoly& p) {
  Int m = 0;
  for (const auto& [e, c] : p.terms()) {
    Int v = boost::multiprecision::abs(int_of(c));
    if (v > m) m = v;
  }
  return m;
}

inline std::optional<MultiPoly> gcdheu(const MultiPoly& A0, const MultiPoly& B0,
                                       int depth) {
  if (depth > 24) return std::nullopt;
  const TablePtr& tab = A0.table();
  Int ca = int_content(A0), cb = int_content(B0);
  Int cg = boost::multiprecision::gcd(ca, cb);
  MultiPoly A = int_scale_down(A0, ca), B = int_scale_down(B0, cb);
  int v = -1;
  for (int i = static_cast<int>(tab->size()) - 1 + 1; --i >= 0;)
    if (A.degree_in(i) > 0 || B.degree_in(i) > 0) {
      v = i;
      break;
    }
  if (v < 0) return MultiPoly::constant(tab, Fq(cg));

  Int xi = 2 * std::min(max_norm(A), max_norm(B)) + 29;
  const Int xi0 = xi;
  bool constant_seen = false;
  for (int attempt = 0; attempt < 7; ++attempt, xi = xi * xi0 + 21) {
    MultiPoly a = A.subst(v, MultiPoly::constant(tab, Fq(xi)));
    MultiPoly b = B.subst(v, MultiPoly::constant(tab, Fq(xi)));
    if (a.is_zero() || b.is_zero()) continue;
    auto g = gcdheu(a, b, depth + 1);
    if (!g) continue;
    // balanced xi-adic reconstruction along v
    MultiPoly G(tab);
    MultiPoly cur = *g;
    Int half = xi / 2;
    bool ok = true;
    for (int i = 0; !cur.is_zero(); ++i) {
      if (i > 400) {
        ok = false;
        break;
      }
      MultiPoly digit(tab);
      MultiPoly next(tab);
      for (const auto& [e, c] : cur.terms()) {
        Int x = int_of(c);
        Int r = x % xi;
        if (r > half) r -= xi;
        if (r < -half) r += xi;
        if (r != 0) digit.add_term(e, Fq(r));
        Int rest = (x - r) / xi;
        if (rest != 0) next.add_term(e, Fq(rest));
      }
      if (!digit.is_zero())
        G += digit * MultiPoly::variable(tab, v, 1).pow(i);
      cur = next;
    }
    if (!ok || G.is_zero()) continue;
    Int gc = int_content(G);
    G = int_scale_down(G, gc);
    if (G.is_constant()) {
      // confirm a trivial gcd with a second, much larger evaluation point
      if (!constant_seen) {
        constant_seen = true;
        continue;
      }
      return MultiPoly::constant(tab, Fq(cg));
    }
    if (mp_divides(G, A) && mp_divides(G, B)) return G.scaled(Fq(cg));
  }
  return std::nullopt;
}

}  // namespace gcddetail

inline MultiPoly mp_gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() && b.is_zero()) return a;
  if (a.is_zero()) return b.monic().first;
  if (b.is_zero()) return a.monic().first;
  if (a.is_constant() || b.is_constant())
    return MultiPoly::constant(a.table(), Fq(1));
  TablePtr xtab = a.table()->extended({"#q"}, {VarKind::inert});
  MultiPoly A = gcddetail::lift_q(a, xtab), B = gcddetail::lift_q(b, xtab);
  auto g = gcddetail::gcdheu(A, B, 0);
  MultiPoly G = g ? gcddetail::fold_q(*g, a.table()).monic().first
                  : mp_gcd_prs(a, b);
  if (g && !G.is_constant()) {
    // the heuristic verifies divisibility; grow to maximality via cofactors
    while (true) {
      MultiPoly g2 = mp_gcd(mp_divexact(a, G), mp_divexact(b, G));
      if (g2.is_constant()) break;
      G = (G * g2).monic().first;
    }
  }
  return G;
}

// Yun squarefree decomposition with respect to main: pairwise coprime factors
// with multiplicities whose product (with a unit) is p.
inline std::vector<std::pair<MultiPoly, int>> squarefree_decompose(
    const MultiPoly& p, int main) {
  if (p.degree_in(main) <= 0) throw error("squarefree: trivial main degree");
  std::vector<std::pair<MultiPoly, int>> out;
  MultiPoly dp = p.derivative(main);
  MultiPoly g = mp_gcd(p, dp);
  MultiPoly c = mp_divexact(p, g);
  MultiPoly d = mp_divexact(dp, g) - c.derivative(main);
  int i = 1;
  while (!c.is_constant()) {
    MultiPoly w = mp_gcd(c, d);
    if (!w.is_constant()) out.emplace_back(w.monic().first, i);
    c = mp_divexact(c, w);
    d = mp_divexact(d, w) - c.derivative(main);
    ++i;
  }
  return out;
}

}  // namespace ratsum
