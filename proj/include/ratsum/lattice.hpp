#pragma once

// Integer linear algebra: Hermite and Smith normal forms, saturated kernels,
// affine integer solving, unimodular completion. Everything is dense and
// naive; the matrices that show up are variable-count sized.

#include <optional>
#include <utility>
#include <vector>

#include "ratsum/qfield.hpp"

namespace ratsum {

struct IntMatrix {
  size_t rows = 0, cols = 0;
  std::vector<std::vector<Int>> a;

  IntMatrix() = default;
  IntMatrix(size_t r, size_t c)
      : rows(r), cols(c), a(r, std::vector<Int>(c, Int(0))) {}

  static IntMatrix identity(size_t n) {
    IntMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.a[i][i] = 1;
    return m;
  }

  Int& operator()(size_t i, size_t j) { return a[i][j]; }
  const Int& operator()(size_t i, size_t j) const { return a[i][j]; }

  bool operator==(const IntMatrix& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }

  std::vector<Int> row(size_t i) const { return a[i]; }

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols != y.rows) throw error("matrix dimension mismatch");
    IntMatrix r(x.rows, y.cols);
    for (size_t i = 0; i < x.rows; ++i)
      for (size_t k = 0; k < x.cols; ++k) {
        if (x.a[i][k] == 0) continue;
        for (size_t j = 0; j < y.cols; ++j) r.a[i][j] += x.a[i][k] * y.a[k][j];
      }
    return r;
  }

  std::vector<Int> apply(const std::vector<Int>& v) const {
    if (v.size() != cols) throw error("matrix dimension mismatch");
    std::vector<Int> r(rows, Int(0));
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) r[i] += a[i][j] * v[j];
    return r;
  }
};

inline Int floor_div(const Int& x, const Int& y) {
  Int q = x / y, r = x % y;
  if (r != 0 && ((r < 0) != (y < 0))) --q;
  return q;
}

// Fraction-free determinant (Bareiss).
inline Int det(IntMatrix m) {
  if (m.rows != m.cols) throw error("determinant of non-square matrix");
  size_t n = m.rows;
  if (n == 0) return Int(1);
  Int sign = 1, prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m.a[k][k] == 0) {
      size_t s = k + 1;
      while (s < n && m.a[s][k] == 0) ++s;
      if (s == n) return Int(0);
      std::swap(m.a[k], m.a[s]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j)
        m.a[i][j] = (m.a[i][j] * m.a[k][k] - m.a[i][k] * m.a[k][j]) / prev;
    prev = m.a[k][k];
  }
  return sign * m.a[n - 1][n - 1];
}

// Row Hermite normal form: U unimodular with U*M = H, positive pivots,
// entries above each pivot reduced into [0, pivot).
inline std::pair<IntMatrix, IntMatrix> hnf(const IntMatrix& M) {
  IntMatrix H = M, U = IntMatrix::identity(M.rows);
  auto rowop = [&](size_t i, size_t j, const Int& q) {
    // row_i -= q * row_j
    for (size_t c = 0; c < H.cols; ++c) H.a[i][c] -= q * H.a[j][c];
    for (size_t c = 0; c < U.cols; ++c) U.a[i][c] -= q * U.a[j][c];
  };
  size_t r = 0;
  for (size_t c = 0; c < M.cols && r < M.rows; ++c) {
    // Euclid down the column
    while (true) {
      size_t best = H.rows;
      for (size_t i = r; i < H.rows; ++i)
        if (H.a[i][c] != 0 &&
            (best == H.rows ||
             boost::multiprecision::abs(H.a[i][c]) <
                 boost::multiprecision::abs(H.a[best][c])))
          best = i;
      if (best == H.rows) break;  // column clear below r
      if (best != r) {
        std::swap(H.a[r], H.a[best]);
        std::swap(U.a[r], U.a[best]);
      }
      bool done = true;
      for (size_t i = r + 1; i < H.rows; ++i)
        if (H.a[i][c] != 0) {
          rowop(i, r, floor_div(H.a[i][c], H.a[r][c]));
          if (H.a[i][c] != 0) done = false;
        }
      if (done) break;
    }
    if (H.a[r][c] == 0) continue;
    if (H.a[r][c] < 0) {
      for (auto& x : H.a[r]) x = -x;
      for (auto& x : U.a[r]) x = -x;
    }
    for (size_t i = 0; i < r; ++i) {
      Int q = floor_div(H.a[i][c], H.a[r][c]);
      if (q != 0) rowop(i, r, q);
    }
    ++r;
  }
  return {H, U};
}

// Smith normal form: U*M*V = S diagonal with s1 | s2 | ..., U, V unimodular.
inline void snf(const IntMatrix& M, IntMatrix& S, IntMatrix& U, IntMatrix& V) {
  S = M;
  U = IntMatrix::identity(M.rows);
  V = IntMatrix::identity(M.cols);
  size_t n = std::min(M.rows, M.cols);
  auto rowop = [&](size_t i, size_t j, const Int& q) {
    for (size_t c = 0; c < S.cols; ++c) S.a[i][c] -= q * S.a[j][c];
    for (size_t c = 0; c < U.cols; ++c) U.a[i][c] -= q * U.a[j][c];
  };
  auto colop = [&](size_t i, size_t j, const Int& q) {
    for (size_t r = 0; r < S.rows; ++r) S.a[r][i] -= q * S.a[r][j];
    for (size_t r = 0; r < V.rows; ++r) V.a[r][i] -= q * V.a[r][j];
  };
  for (size_t k = 0; k < n; ++k) {
    while (true) {
      // locate a minimal nonzero entry in the trailing submatrix
      size_t pi = S.rows, pj = 0;
      for (size_t i = k; i < S.rows; ++i)
        for (size_t j = k; j < S.cols; ++j)
          if (S.a[i][j] != 0 &&
              (pi == S.rows || boost::multiprecision::abs(S.a[i][j]) <
                                   boost::multiprecision::abs(S.a[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == S.rows) {
        for (size_t k2 = k; k2 < n; ++k2) S.a[k2][k2] = 0;
        // already zero; nothing further to do anywhere
        goto chain;
      }
      if (pi != k) {
        std::swap(S.a[k], S.a[pi]);
        std::swap(U.a[k], U.a[pi]);
      }
      if (pj != k) {
        for (size_t r2 = 0; r2 < S.rows; ++r2) std::swap(S.a[r2][k], S.a[r2][pj]);
        for (size_t r2 = 0; r2 < V.rows; ++r2) std::swap(V.a[r2][k], V.a[r2][pj]);
      }
      bool clean = true;
      for (size_t i = k + 1; i < S.rows; ++i)
        if (S.a[i][k] != 0) {
          rowop(i, k, floor_div(S.a[i][k], S.a[k][k]));
          if (S.a[i][k] != 0) clean = false;
        }
      for (size_t j = k + 1; j < S.cols; ++j)
        if (S.a[k][j] != 0) {
          colop(j, k, floor_div(S.a[k][j], S.a[k][k]));
          if (S.a[k][j] != 0) clean = false;
        }
      if (!clean) continue;
      // pivot must divide every remaining entry
      bool divides_all = true;
      for (size_t i = k + 1; i < S.rows && divides_all; ++i)
        for (size_t j = k + 1; j < S.cols; ++j)
          if (S.a[i][j] % S.a[k][k] != 0) {
            rowop(k, i, Int(-1));  // pull the offending row up
            divides_all = false;
            break;
          }
      if (divides_all) break;
    }
    if (S.a[k][k] < 0) {
      for (size_t c = 0; c < S.cols; ++c) S.a[k][c] = -S.a[k][c];
      for (size_t c = 0; c < U.cols; ++c) U.a[k][c] = -U.a[k][c];
    }
  }
chain:
  return;
}

// Inverse of a unimodular matrix: hnf(U) = (I, W) with W*U = I.
inline IntMatrix unimodular_inverse(const IntMatrix& M) {
  auto [h, w] = hnf(M);
  if (!(h == IntMatrix::identity(M.rows)))
    throw error("matrix is not unimodular");
  return w;
}

// Saturated integer sublattice of Z^k, basis rows kept in row HNF so lattice
// equality is matrix equality.
struct Lattice {
  size_t ambient = 0;
  IntMatrix basis;  // rank x ambient, no zero rows

  Lattice() = default;
  explicit Lattice(size_t amb) : ambient(amb), basis(0, amb) {}

  static Lattice from_rows(const IntMatrix& rows) {
    Lattice l(rows.cols);
    auto [h, u] = hnf(rows);
    size_t rank = 0;
    for (size_t i = 0; i < h.rows; ++i) {
      bool nz = false;
      for (size_t j = 0; j < h.cols; ++j)
        if (h.a[i][j] != 0) nz = true;
      if (nz) rank = i + 1;
    }
    l.basis = IntMatrix(rank, rows.cols);
    for (size_t i = 0; i < rank; ++i) l.basis.a[i] = h.a[i];
    return l;
  }

  size_t rank() const { return basis.rows; }

  bool operator==(const Lattice& o) const {
    return ambient == o.ambient && basis == o.basis;
  }

  // integer coordinates of v in the basis, if v is a member
  std::optional<std::vector<Int>> coordinates(std::vector<Int> v) const {
    if (v.size() != ambient) throw error("vector dimension mismatch");
    std::vector<Int> out(rank(), Int(0));
    for (size_t i = 0; i < rank(); ++i) {
      size_t p = 0;
      while (p < ambient && basis.a[i][p] == 0) ++p;
      if (v[p] % basis.a[i][p] != 0) return std::nullopt;
      Int c = v[p] / basis.a[i][p];
      for (size_t j = 0; j < ambient; ++j) v[j] -= c * basis.a[i][j];
      out[i] = c;
    }
    for (const Int& x : v)
      if (x != 0) return std::nullopt;
    return out;
  }

  bool contains(const std::vector<Int>& v) const {
    return coordinates(v).has_value();
  }
};

struct IntCoset {
  bool is_empty = true;
  std::vector<Int> particular;
  Lattice directions;

  static IntCoset empty(size_t amb) {
    IntCoset c;
    c.directions = Lattice(amb);
    return c;
  }
  static IntCoset of(std::vector<Int> p, Lattice dirs) {
    IntCoset c;
    c.is_empty = false;
    c.particular = std::move(p);
    c.directions = std::move(dirs);
    return c;
  }
  bool contains(const std::vector<Int>& v) const {
    if (is_empty) return false;
    std::vector<Int> d(v.size());
    for (size_t i = 0; i < v.size(); ++i) d[i] = v[i] - particular[i];
    return directions.contains(d);
  }
};

// {t : M t = 0}, always saturated.
inline Lattice integer_kernel(const IntMatrix& M) {
  // rows of U corresponding to zero rows of hnf(M^T) span the kernel
  IntMatrix T(M.cols, M.rows);
  for (size_t i = 0; i < M.rows; ++i)
    for (size_t j = 0; j < M.cols; ++j) T.a[j][i] = M.a[i][j];
  auto [h, u] = hnf(T);
  IntMatrix ker(0, M.cols);
  for (size_t i = 0; i < h.rows; ++i) {
    bool zero = true;
    for (size_t j = 0; j < h.cols; ++j)
      if (h.a[i][j] != 0) zero = false;
    if (zero) {
      ker.a.push_back(u.a[i]);
      ++ker.rows;
    }
  }
  return Lattice::from_rows(ker);
}

// Full integer solution set of M t = b.
inline IntCoset affine_integer_solve(const IntMatrix& M,
                                     const std::vector<Int>& b) {
  if (b.size() != M.rows) throw error("vector dimension mismatch");
  IntMatrix S, U, V;
  snf(M, S, U, V);
  std::vector<Int> c = U.apply(b);
  size_t n = std::min(M.rows, M.cols);
  std::vector<Int> y(M.cols, Int(0));
  for (size_t i = 0; i < M.rows; ++i) {
    Int s = i < n ? S.a[i][i] : Int(0);
    if (s == 0) {
      if (c[i] != 0) return IntCoset::empty(M.cols);
    } else {
      if (c[i] % s != 0) return IntCoset::empty(M.cols);
      y[i] = c[i] / s;
    }
  }
  std::vector<Int> part = V.apply(y);
  IntMatrix dirs(0, M.cols);
  for (size_t j = 0; j < M.cols; ++j) {
    if (j < n && S.a[j][j] != 0) continue;
    std::vector<Int> col(M.cols);
    for (size_t i = 0; i < M.cols; ++i) col[i] = V.a[i][j];
    dirs.a.push_back(std::move(col));
    ++dirs.rows;
  }
  return IntCoset::of(std::move(part), Lattice::from_rows(dirs));
}

// Square unimodular matrix whose first rank(B) rows are B's basis.
inline IntMatrix unimodular_complete(const Lattice& B) {
  size_t r = B.rank(), k = B.ambient;
  if (r == 0) return IntMatrix::identity(k);
  IntMatrix S, U, V;
  snf(B.basis, S, U, V);
  for (size_t i = 0; i < r; ++i)
    if (S.a[i][i] != 1) throw error("lattice not primitive");
  // B = U^{ -1 } [I 0] V^{ -1 }; stack the missing rows of V^{ -1 } below
  IntMatrix ui = unimodular_inverse(U), vi = unimodular_inverse(V);
  IntMatrix W(k, k);
  for (size_t i = 0; i < r; ++i) {
    std::vector<Int> acc(k, Int(0));
    for (size_t t = 0; t < r; ++t)
      for (size_t j = 0; j < k; ++j) acc[j] += ui.a[i][t] * vi.a[t][j];
    W.a[i] = std::move(acc);
  }
  for (size_t i = r; i < k; ++i) W.a[i] = vi.a[i];
  return W;
}

}  // namespace ratsum
