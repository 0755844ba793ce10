#pragma once

// Reduced rational functions, the scaled shift / q-shift operator action, and
// partial fraction decomposition with respect to a main variable.

#include <utility>
#include <vector>

#include "multipoly.hpp"

namespace ratsum {

class RatFun {
 public:
  RatFun() = default;
  explicit RatFun(TablePtr tab)
      : num_(MultiPoly::zero(tab)), den_(MultiPoly::constant(tab, Fq(1))) {}
  RatFun(MultiPoly n, MultiPoly d) : num_(std::move(n)), den_(std::move(d)) {
    normalize();
  }
  explicit RatFun(MultiPoly n)
      : num_(std::move(n)), den_(MultiPoly::constant(num_.table(), Fq(1))) {}

  static RatFun constant(TablePtr tab, Fq c) {
    return RatFun(MultiPoly::constant(std::move(tab), std::move(c)));
  }

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  const TablePtr& table() const { return num_.table(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Fq constant_value() const {
    return num_.constant_value() / den_.constant_value();
  }

  bool operator==(const RatFun& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const RatFun& o) const { return !(*this == o); }

  // A default-constructed RatFun (no table yet) acts as zero in arithmetic;
  // this lets generic containers value-initialize entries.
  friend RatFun operator+(const RatFun& a, const RatFun& b) {
    if (!a.table()) return b;
    if (!b.table()) return a;
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFun operator-(const RatFun& a, const RatFun& b) {
    if (!b.table()) return a;
    if (!a.table()) return -b;
    return RatFun(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFun operator-(const RatFun& a) {
    if (!a.table()) return a;
    return RatFun(-a.num_, a.den_);
  }
  friend RatFun operator*(const RatFun& a, const RatFun& b) {
    if (!a.table() || !b.table()) return RatFun();
    return RatFun(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw error("division by zero");
    if (!a.table()) return a;
    return RatFun(a.num_ * b.den_, a.den_ * b.num_);
  }

  RatFun inverse() const {
    if (is_zero()) throw error("division by zero");
    return RatFun(den_, num_);
  }
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }
  RatFun& operator/=(const RatFun& o) { return *this = *this / o; }

  RatFun scaled(const Fq& c) const {
    if (!table()) return *this;
    return RatFun(num_.scaled(c), den_);
  }

  std::string str() const {
    if (is_polynomial()) return num_.str();
    std::string n = num_.str();
    std::string d = den_.str();
    return "(" + n + ")/(" + d + ")";
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw error("division by zero");
    if (num_.is_zero()) {
      den_ = MultiPoly::constant(num_.table(), Fq(1));
      return;
    }
    MultiPoly g = mp_gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = mp_divexact(num_, g);
      den_ = mp_divexact(den_, g);
    }
    Fq u = den_.lc();
    if (!u.is_one()) {
      Fq inv = u.inverse();
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  MultiPoly num_, den_;
};

inline RatFun rf_normalize(MultiPoly n, MultiPoly d) {
  return RatFun(std::move(n), std::move(d));
}

// ---- operator action --------------------------------------------------------

inline MultiPoly mp_apply_word(const MultiPoly& p, const GroupWord& w) {
  const VarTable& tab = *p.table();
  MultiPoly r = p;
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0) continue;
    switch (tab.kinds[i]) {
      case VarKind::shift:
        r = r.subst_shift(static_cast<int>(i), Int(w[i]));
        break;
      case VarKind::qshift:
        r = r.subst_qscale(static_cast<int>(i), w[i]);
        break;
      case VarKind::inert:
        throw error("inert variable moved");
    }
  }
  return r;
}

// s * theta^w(f)
inline RatFun apply_word(const RatFun& f, const GroupWord& w, const Fq& s) {
  if (s.is_zero()) throw error("operator scalar must be nonzero");
  return RatFun(mp_apply_word(f.num(), w).scaled(s), mp_apply_word(f.den(), w));
}

// ---- dense univariate layer over a field-like type -------------------------

template <class K>
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<K> c) : c_(std::move(c)) { trim(); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const K& operator[](int i) const { return c_[i]; }
  const std::vector<K>& coeffs() const { return c_; }
  const K& lc() const { return c_.back(); }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<K> r(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) {
      if (i < a.c_.size()) r[i] += a.c_[i];
      if (i < b.c_.size()) r[i] += b.c_[i];
    }
    return UPoly(std::move(r));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<K> r(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) {
      if (i < a.c_.size()) r[i] += a.c_[i];
      if (i < b.c_.size()) r[i] -= b.c_[i];
    }
    return UPoly(std::move(r));
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly();
    std::vector<K> r(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(r));
  }

  UPoly scaled(const K& k) const {
    std::vector<K> r = c_;
    for (auto& x : r) x *= k;
    return UPoly(std::move(r));
  }

  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) throw error("division by zero");
    std::vector<K> rem = c_;
    std::vector<K> quo;
    if (degree() >= d.degree()) quo.resize(degree() - d.degree() + 1);
    for (int i = degree(); i >= d.degree(); --i) {
      K q = rem[i] / d.lc();
      if (q.is_zero()) continue;
      quo[i - d.degree()] = q;
      for (int j = 0; j <= d.degree(); ++j)
        rem[i - d.degree() + j] -= q * d.c_[j];
    }
    return {UPoly(std::move(quo)), UPoly(std::move(rem))};
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<K> c_;
};

template <class K>
UPoly<K> upoly_gcd(UPoly<K> a, UPoly<K> b) {
  while (!b.is_zero()) {
    auto [q, r] = a.divmod(b);
    (void)q;
    a = b;
    b = r;
  }
  if (!a.is_zero()) a = a.scaled(a.lc().inverse());
  return a;
}

// s*a + t*b = g (g monic); `one` is the field's multiplicative identity.
template <class K>
void upoly_xgcd(const UPoly<K>& a, const UPoly<K>& b, const K& one, UPoly<K>& g,
                UPoly<K>& s, UPoly<K>& t) {
  UPoly<K> r0 = a, r1 = b;
  UPoly<K> s0(std::vector<K>{one}), s1;
  UPoly<K> t0, t1(std::vector<K>{one});
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = r1;
    r1 = r;
    UPoly<K> s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
    UPoly<K> t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  K u = r0.lc().inverse();
  g = r0.scaled(u);
  s = s0.scaled(u);
  t = t0.scaled(u);
}

// ---- conversions between MultiPoly/RatFun and E[v] --------------------------

// f as a polynomial in v over the field of v-free rational functions;
// requires f's denominator to be free of v.
inline UPoly<RatFun> to_upoly(const RatFun& f, int v) {
  if (f.den().depends_on(v))
    throw error("denominator depends on the main variable");
  RatFun den(f.den());
  int d = f.num().degree_in(v);
  std::vector<RatFun> c(static_cast<size_t>(std::max(d, -1) + 1),
                        RatFun(f.table()));
  for (int k = 0; k <= d; ++k)
    c[k] = RatFun(f.num().coeff_in(v, k)) / den;
  return UPoly<RatFun>(std::move(c));
}

inline UPoly<RatFun> to_upoly(const MultiPoly& p, int v) {
  return to_upoly(RatFun(p), v);
}

inline RatFun from_upoly(const UPoly<RatFun>& u, TablePtr tab, int v) {
  RatFun r(tab);
  RatFun x(MultiPoly::variable(tab, v));
  for (int k = u.degree(); k >= 0; --k) r = r * x + u[k];
  return r;
}

// ---- partial fractions -------------------------------------------------------

struct PartialFractionTerm {
  MultiPoly factor;   // irreducible denominator factor, deg_v > 0
  int power = 1;      // j
  RatFun numerator;   // deg_v(num) < deg_v(factor), coefficients in E
};

struct PartialFractions {
  UPoly<RatFun> poly_part;               // element of E[v]
  std::vector<PartialFractionTerm> terms;
};

// factors must be a complete pairwise-coprime irreducible factorization of
// the v-positive part of f's denominator (validated by a product check).
inline PartialFractions partial_fractions_main(
    const RatFun& f, int v, const std::vector<std::pair<MultiPoly, int>>& factors) {
  TablePtr tab = f.table();
  // multiplicities in the reduced denominator; cancellation against the
  // numerator may have lowered them below the supplied powers
  std::vector<std::pair<MultiPoly, int>> fl;
  MultiPoly rest = f.den();
  MultiPoly prod = MultiPoly::constant(tab, Fq(1));
  for (const auto& [d, j] : factors) {
    int k = 0;
    while (k < j && mp_divides(d, rest)) {
      rest = mp_divexact(rest, d);
      ++k;
    }
    if (k > 0) {
      fl.emplace_back(d, k);
      prod *= d.pow(k);
    }
  }
  if (rest.depends_on(v)) throw error("incomplete factorization of denominator");

  // f = A / prod with A in E[v]
  UPoly<RatFun> A = to_upoly(RatFun(f.num(), rest), v);
  PartialFractions out;

  // recursive coprime split of R / (subset of factor powers); R has smaller
  // v-degree than the denominator product
  struct Frame {
    UPoly<RatFun> num;
    size_t lo, hi;  // factor index range
  };
  auto upow = [&](const MultiPoly& d, int j) {
    return to_upoly(d.pow(j), v);
  };
  UPoly<RatFun> P = to_upoly(prod, v);
  auto [q, r] = A.divmod(P);
  out.poly_part = q;

  std::vector<Frame> stack;
  stack.push_back({r, 0, fl.size()});
  while (!stack.empty()) {
    Frame fr = stack.back();
    stack.pop_back();
    if (fr.num.is_zero()) continue;
    if (fr.hi - fr.lo == 1) {
      const auto& [d, j] = fl[fr.lo];
      // d-adic digits: num = sum digit_k * d^k, deg(digit) < deg(d)
      UPoly<RatFun> D = to_upoly(d, v);
      UPoly<RatFun> cur = fr.num;
      for (int k = 0; k < j && !cur.is_zero(); ++k) {
        auto [hi2, digit] = cur.divmod(D);
        if (!digit.is_zero()) {
          PartialFractionTerm t;
          t.factor = d;
          t.power = j - k;
          t.numerator = from_upoly(digit, tab, v);
          out.terms.push_back(std::move(t));
        }
        cur = hi2;
      }
      continue;
    }
    size_t mid = fr.lo + (fr.hi - fr.lo) / 2;
    UPoly<RatFun> L(std::vector<RatFun>{RatFun::constant(tab, Fq(1))});
    UPoly<RatFun> R(std::vector<RatFun>{RatFun::constant(tab, Fq(1))});
    for (size_t i = fr.lo; i < mid; ++i) L = L * upow(fl[i].first, fl[i].second);
    for (size_t i = mid; i < fr.hi; ++i) R = R * upow(fl[i].first, fl[i].second);
    UPoly<RatFun> g, s, t;
    upoly_xgcd(L, R, RatFun::constant(tab, Fq(1)), g, s, t);
    if (g.degree() != 0) throw error("denominator factors are not coprime");
    // num/(L*R) = (num*t mod L)/L + (num*s mod R)/R
    UPoly<RatFun> nl = (fr.num * t).divmod(L).second;
    UPoly<RatFun> nr = (fr.num * s).divmod(R).second;
    stack.push_back({nl, fr.lo, mid});
    stack.push_back({nr, mid, fr.hi});
  }
  return out;
}

}  // namespace ratsum
