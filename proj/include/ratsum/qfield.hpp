#pragma once

// Exact coefficient field for the summability engine: elements are reduced
// fractions of integer-coefficient polynomials in the distinguished symbol q.
// In numeric mode q is pinned to a rational value and every element collapses
// to a plain rational (a degree-zero fraction).

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ratsum {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Dense univariate polynomial over Z, used both for the q-polynomials inside
// field elements and by the integer factorization kernel.
class ZPoly {
 public:
  ZPoly() = default;
  explicit ZPoly(Int c) {
    if (c != 0) c_.push_back(std::move(c));
  }
  explicit ZPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

  static ZPoly monomial(Int c, int deg) {
    ZPoly p;
    if (c == 0) return p;
    p.c_.assign(deg + 1, Int(0));
    p.c_[deg] = std::move(c);
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Int& operator[](int i) const { return c_[i]; }
  const std::vector<Int>& coeffs() const { return c_; }
  const Int& lc() const { return c_.back(); }

  bool operator==(const ZPoly& o) const { return c_ == o.c_; }

  friend ZPoly operator+(const ZPoly& a, const ZPoly& b) {
    std::vector<Int> r(std::max(a.c_.size(), b.c_.size()), Int(0));
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return ZPoly(std::move(r));
  }
  friend ZPoly operator-(const ZPoly& a, const ZPoly& b) {
    std::vector<Int> r(std::max(a.c_.size(), b.c_.size()), Int(0));
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return ZPoly(std::move(r));
  }
  friend ZPoly operator-(const ZPoly& a) { return ZPoly() - a; }
  friend ZPoly operator*(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return ZPoly();
    std::vector<Int> r(a.c_.size() + b.c_.size() - 1, Int(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return ZPoly(std::move(r));
  }

  ZPoly scaled(const Int& k) const {
    std::vector<Int> r = c_;
    for (auto& x : r) x *= k;
    return ZPoly(std::move(r));
  }

  // Exact division; throws if the division leaves a remainder.
  ZPoly divide_exact(const ZPoly& d) const {
    if (d.is_zero()) throw error("division by zero");
    if (is_zero()) return ZPoly();
    std::vector<Int> rem = c_;
    std::vector<Int> quo(c_.size() - d.c_.size() + 1, Int(0));
    for (int i = static_cast<int>(rem.size()) - 1;
         i >= static_cast<int>(d.c_.size()) - 1; --i) {
      if (rem[i] == 0) continue;
      if (rem[i] % d.lc() != 0) throw error("inexact polynomial division");
      Int q = rem[i] / d.lc();
      int off = i - d.degree();
      quo[off] = q;
      for (size_t j = 0; j < d.c_.size(); ++j) rem[off + j] -= q * d.c_[j];
    }
    for (const auto& x : rem)
      if (x != 0) throw error("inexact polynomial division");
    return ZPoly(std::move(quo));
  }

  Int content() const {
    Int g = 0;
    for (const auto& x : c_) g = boost::multiprecision::gcd(g, x);
    return g;
  }

  // Content with the sign of the leading coefficient, so primitive() always
  // has a positive leading coefficient.
  Int signed_content() const {
    Int g = content();
    if (!is_zero() && lc() < 0) g = -g;
    return g;
  }

  ZPoly primitive() const {
    if (is_zero()) return *this;
    return divide_exact(ZPoly(signed_content()));
  }

  ZPoly derivative() const {
    if (c_.size() <= 1) return ZPoly();
    std::vector<Int> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Int(i);
    return ZPoly(std::move(r));
  }

  Rat eval(const Rat& x) const {
    Rat r = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + Rat(*it);
    return r;
  }

  // Pseudo-remainder of *this by d (both nonzero, deg(*this) >= deg(d)).
  ZPoly prem(const ZPoly& d) const {
    ZPoly r = *this;
    int k = degree() - d.degree() + 1;
    while (!r.is_zero() && r.degree() >= d.degree()) {
      int off = r.degree() - d.degree();
      Int c = r.lc();
      // r := lc(d)*r - c*x^off*d
      std::vector<Int> tmp = r.c_;
      for (auto& x : tmp) x *= d.lc();
      for (size_t j = 0; j < d.c_.size(); ++j) tmp[off + j] -= c * d.c_[j];
      r = ZPoly(std::move(tmp));
      --k;
    }
    if (k > 0) {
      Int s = 1;
      for (int i = 0; i < k; ++i) s *= d.lc();
      r = r.scaled(s);
    }
    return r;
  }

  friend ZPoly gcd(const ZPoly& a, const ZPoly& b) { return gcd_impl(a, b); }

  std::string str(const std::string& var = "q") const;

 private:
  static ZPoly gcd_impl(ZPoly a, ZPoly b) {
    // gcd = gcd(contents) * gcd(primitive parts) via primitive PRS.
    if (a.is_zero()) return b.lc() < 0 ? -b : b;
    if (b.is_zero()) return a.lc() < 0 ? -a : a;
    Int cg = boost::multiprecision::gcd(a.content(), b.content());
    ZPoly p = a.primitive(), q = b.primitive();
    if (p.degree() < q.degree()) std::swap(p, q);
    while (!q.is_zero()) {
      ZPoly r = p.prem(q).primitive();
      p = q;
      q = r;
    }
    return p.scaled(cg);
  }

  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Int> c_;
};

inline std::string ZPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i] == 0) continue;
    Int a = c_[i];
    if (!out.empty()) {
      out += (a < 0) ? "-" : "+";
      if (a < 0) a = -a;
    } else if (a < 0) {
      out += "-";
      a = -a;
    }
    if (i == 0 || a != 1) out += a.str();
    if (i > 0) {
      if (a != 1) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

enum class QMode { symbolic, numeric };

// The coefficient field Q(q). In numeric mode q_value must not be 0, 1 or -1
// (rationals of absolute value other than 0 and 1 are never roots of unity).
struct CoeffField {
  QMode mode = QMode::symbolic;
  Rat q_value = 0;

  static CoeffField symbolic() { return CoeffField{QMode::symbolic, 0}; }
  static CoeffField numeric(const Rat& q) {
    using boost::multiprecision::abs;
    if (abs(numerator(q)) == abs(denominator(q)) || q == 0)
      throw error("numeric q must have |q| different from 0 and 1");
    return CoeffField{QMode::numeric, q};
  }

  bool operator==(const CoeffField& o) const {
    return mode == o.mode && q_value == o.q_value;
  }
};

// An element of Q(q): num/den with gcd(num, den) = 1 over Z[q] and den having
// positive leading coefficient. Equality is componentwise.
class Fq {
 public:
  Fq() : num_(), den_(ZPoly(Int(1))) {}
  Fq(int v) : Fq(Int(v)) {}  // NOLINT(google-explicit-constructor)
  explicit Fq(Int v) : num_(ZPoly(std::move(v))), den_(ZPoly(Int(1))) {}
  explicit Fq(const Rat& v)
      : num_(ZPoly(numerator(v))), den_(ZPoly(denominator(v))) {}
  Fq(ZPoly n, ZPoly d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

  // The field generator: the symbol q, or the pinned value in numeric mode.
  static Fq q(const CoeffField& f) {
    if (f.mode == QMode::numeric) return Fq(f.q_value);
    return Fq(ZPoly::monomial(Int(1), 1), ZPoly(Int(1)));
  }

  const ZPoly& num() const { return num_; }
  const ZPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == den_; }
  bool is_rational() const { return num_.degree() <= 0 && den_.degree() <= 0; }
  Rat to_rational() const {
    if (!is_rational()) throw error("field element is not rational");
    if (is_zero()) return Rat(0);
    return Rat(num_[0], den_[0]);
  }

  bool operator==(const Fq& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Fq& o) const { return !(*this == o); }

  friend Fq operator+(const Fq& a, const Fq& b) {
    return Fq(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Fq operator-(const Fq& a, const Fq& b) {
    return Fq(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Fq operator-(const Fq& a) { return Fq(-a.num_, a.den_); }
  friend Fq operator*(const Fq& a, const Fq& b) {
    return Fq(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Fq operator/(const Fq& a, const Fq& b) {
    if (b.is_zero()) throw error("division by zero");
    return Fq(a.num_ * b.den_, a.den_ * b.num_);
  }
  Fq& operator+=(const Fq& o) { return *this = *this + o; }
  Fq& operator-=(const Fq& o) { return *this = *this - o; }
  Fq& operator*=(const Fq& o) { return *this = *this * o; }
  Fq& operator/=(const Fq& o) { return *this = *this / o; }

  Fq inverse() const {
    if (is_zero()) throw error("division by zero");
    return Fq(den_, num_);
  }

  Fq pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Fq r(1);
    Fq b = *this;
    while (e > 0) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string n = num_.str();
    if (den_.degree() == 0 && den_[0] == 1) return n;
    std::string nn = (num_.degree() > 0 || num_.coeffs().size() > 1) ? "(" + n + ")" : n;
    std::string d = den_.str();
    std::string dd = (den_.degree() > 0) ? "(" + d + ")" : d;
    return nn + "/" + dd;
  }

 private:
  void reduce() {
    if (den_.is_zero()) throw error("division by zero");
    if (num_.is_zero()) {
      den_ = ZPoly(Int(1));
      return;
    }
    ZPoly g = gcd(num_, den_);
    num_ = num_.divide_exact(g);
    den_ = den_.divide_exact(g);
    if (den_.lc() < 0) {
      num_ = -num_;
      den_ = -den_;
    }
  }

  ZPoly num_, den_;
};

// If c equals q^e exactly for an integer e, return e. "Exactly" means with
// rational part 1; in numeric mode this searches powers of the pinned value
// with a bound driven by bit lengths.
inline std::optional<long> q_power_exponent(const Fq& c, const CoeffField& f) {
  if (c.is_zero()) return std::nullopt;
  if (f.mode == QMode::symbolic) {
    const ZPoly &n = c.num(), &d = c.den();
    auto single_term = [](const ZPoly& p, int& deg) {
      for (int i = 0; i < p.degree(); ++i)
        if (p[i] != 0) return false;
      deg = p.degree();
      return p.lc() == 1;
    };
    int dn = 0, dd = 0;
    if (!single_term(n, dn) || !single_term(d, dd)) return std::nullopt;
    return static_cast<long>(dn - dd);
  }
  Rat v = c.to_rational();
  if (v == 1) return 0;
  const Rat& q0 = f.q_value;
  using boost::multiprecision::msb;
  using boost::multiprecision::abs;
  auto bits = [](const Rat& r) {
    Int n = abs(numerator(r)), d = denominator(r);
    size_t bn = (n == 0) ? 0 : msb(n) + 1;
    size_t bd = (d == 0) ? 0 : msb(d) + 1;
    return std::max(bn, bd);
  };
  long bound = static_cast<long>(bits(v)) + 2;
  Rat up = 1, down = 1;
  for (long e = 1; e <= bound; ++e) {
    up *= q0;
    down /= q0;
    if (up == v) return e;
    if (down == v) return -e;
  }
  return std::nullopt;
}

// Split c as rho * q^e with rho rational, when such a split exists. In
// numeric mode the split is not unique; we report (c, 0).
inline std::optional<std::pair<Rat, long>> rational_q_power_split(
    const Fq& c, const CoeffField& f) {
  if (c.is_zero()) return std::nullopt;
  if (f.mode == QMode::numeric) return std::make_pair(c.to_rational(), 0L);
  const ZPoly &n = c.num(), &d = c.den();
  int ln = -1, ld = -1;
  for (int i = 0; i <= n.degree(); ++i)
    if (n[i] != 0) {
      if (ln >= 0) return std::nullopt;
      ln = i;
    }
  for (int i = 0; i <= d.degree(); ++i)
    if (d[i] != 0) {
      if (ld >= 0) return std::nullopt;
      ld = i;
    }
  return std::make_pair(Rat(n[ln], d[ld]), static_cast<long>(ln - ld));
}

}  // namespace ratsum
