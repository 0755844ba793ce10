#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "ratsum/lattice.hpp"

using namespace ratsum;

namespace {

IntMatrix mat(std::vector<std::vector<int>> rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m.a[i][j] = rows[i][j];
  return m;
}

std::vector<Int> vec(std::vector<int> v) {
  return std::vector<Int>(v.begin(), v.end());
}

IntMatrix random_matrix(std::mt19937& rng, size_t r, size_t c, int mag) {
  std::uniform_int_distribution<int> d(-mag, mag);
  IntMatrix m(r, c);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) m.a[i][j] = d(rng);
  return m;
}

bool is_row_hnf(const IntMatrix& h) {
  long lead = -1;
  bool in_zeros = false;
  for (size_t i = 0; i < h.rows; ++i) {
    size_t p = 0;
    while (p < h.cols && h.a[i][p] == 0) ++p;
    if (p == h.cols) {
      in_zeros = true;
      continue;
    }
    if (in_zeros) return false;  // nonzero row after a zero row
    if (static_cast<long>(p) <= lead) return false;
    if (h.a[i][p] <= 0) return false;
    for (size_t k = 0; k < i; ++k)
      if (h.a[k][p] < 0 || h.a[k][p] >= h.a[i][p]) return false;
    lead = static_cast<long>(p);
  }
  return true;
}

}  // namespace

TEST_CASE("hermite normal form") {
  auto [h1, u1] = hnf(IntMatrix::identity(3));
  CHECK(h1 == IntMatrix::identity(3));
  CHECK(u1 == IntMatrix::identity(3));

  auto [h2, u2] = hnf(mat({{2, 4}}));
  CHECK(h2 == mat({{2, 4}}));
  CHECK(u2 == IntMatrix::identity(1));

  // gcd(2,3)=1 lands in the pivot
  auto [h3, u3] = hnf(mat({{2, 0}, {3, 0}}));
  CHECK(h3 == mat({{1, 0}, {0, 0}}));
  CHECK(u3 * mat({{2, 0}, {3, 0}}) == h3);

  std::mt19937 rng(11);
  for (int t = 0; t < 50; ++t) {
    IntMatrix m = random_matrix(rng, 1 + t % 4, 1 + (t / 2) % 4, 6);
    auto [h, u] = hnf(m);
    CHECK(u * m == h);
    Int d = det(u);
    CHECK((d == 1 || d == -1));
    CHECK(is_row_hnf(h));
  }
}

TEST_CASE("smith normal form") {
  IntMatrix s, u, v;
  snf(IntMatrix::identity(2), s, u, v);
  CHECK(s == IntMatrix::identity(2));
  CHECK(u == IntMatrix::identity(2));
  CHECK(v == IntMatrix::identity(2));

  // invariant factors of diag(2,3): gcd of entries 1, gcd of 2x2 minors 6
  snf(mat({{2, 0}, {0, 3}}), s, u, v);
  CHECK(s == mat({{1, 0}, {0, 6}}));
  CHECK(u * mat({{2, 0}, {0, 3}}) * v == s);

  snf(mat({{0, 0}, {0, 0}}), s, u, v);
  CHECK(s == mat({{0, 0}, {0, 0}}));

  std::mt19937 rng(12);
  for (int t = 0; t < 50; ++t) {
    IntMatrix m = random_matrix(rng, 1 + t % 4, 1 + (t / 3) % 4, 6);
    snf(m, s, u, v);
    CHECK(u * m * v == s);
    Int du = det(u), dv = det(v);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    size_t n = std::min(m.rows, m.cols);
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j)
        if (i != j) CHECK(s.a[i][j] == 0);
      CHECK(s.a[i][i] >= 0);
      if (i + 1 < n && s.a[i][i] != 0) CHECK(s.a[i + 1][i + 1] % s.a[i][i] == 0);
      if (i + 1 < n && s.a[i][i] == 0) CHECK(s.a[i + 1][i + 1] == 0);
    }
  }
}

TEST_CASE("integer kernel") {
  Lattice k1 = integer_kernel(mat({{1, 1}}));
  REQUIRE(k1.rank() == 1);
  CHECK(k1.contains(vec({1, -1})));
  CHECK(k1.contains(vec({-3, 3})));
  CHECK_FALSE(k1.contains(vec({1, 1})));

  CHECK(integer_kernel(IntMatrix::identity(3)).rank() == 0);

  // oracle: exhaustive search in a box
  Lattice k2 = integer_kernel(mat({{2, 4}}));
  REQUIRE(k2.rank() == 1);
  CHECK(k2.basis == mat({{2, -1}}));
  for (int t1 = -5; t1 <= 5; ++t1)
    for (int t2 = -5; t2 <= 5; ++t2) {
      bool solves = 2 * t1 + 4 * t2 == 0;
      CHECK(k2.contains(vec({t1, t2})) == solves);
    }

  std::mt19937 rng(13);
  for (int t = 0; t < 40; ++t) {
    IntMatrix m = random_matrix(rng, 1 + t % 3, 2 + t % 3, 4);
    Lattice k = integer_kernel(m);
    for (size_t i = 0; i < k.rank(); ++i) {
      std::vector<Int> mv = m.apply(k.basis.row(i));
      for (const Int& x : mv) CHECK(x == 0);
    }
    // saturation: all invariant factors of the basis are 1
    if (k.rank() > 0) {
      IntMatrix s, u, v;
      snf(k.basis, s, u, v);
      for (size_t i = 0; i < k.rank(); ++i) CHECK(s.a[i][i] == 1);
    }
  }
}

TEST_CASE("affine integer solving") {
  IntCoset c1 = affine_integer_solve(mat({{1, 1}}), vec({1}));
  REQUIRE_FALSE(c1.is_empty);
  CHECK(c1.contains(vec({1, 0})));
  CHECK(c1.contains(vec({5, -4})));
  CHECK_FALSE(c1.contains(vec({1, 1})));
  CHECK(c1.directions.rank() == 1);

  CHECK(affine_integer_solve(mat({{2}}), vec({1})).is_empty);

  IntCoset c3 = affine_integer_solve(mat({{2}}), vec({4}));
  REQUIRE_FALSE(c3.is_empty);
  CHECK(c3.particular == vec({2}));
  CHECK(c3.directions.rank() == 0);

  // oracle: coset membership agrees with exhaustive box search
  std::mt19937 rng(14);
  for (int t = 0; t < 30; ++t) {
    IntMatrix m = random_matrix(rng, 1 + t % 2, 2, 3);
    std::uniform_int_distribution<int> d(-4, 4);
    std::vector<Int> b(m.rows);
    for (auto& x : b) x = d(rng);
    IntCoset c = affine_integer_solve(m, b);
    if (!c.is_empty) CHECK(m.apply(c.particular) == b);
    for (int t1 = -6; t1 <= 6; ++t1)
      for (int t2 = -6; t2 <= 6; ++t2) {
        std::vector<Int> x = vec({t1, t2});
        CHECK(c.contains(x) == (m.apply(x) == b));
      }
  }
}

TEST_CASE("unimodular completion") {
  Lattice b1 = Lattice::from_rows(mat({{1, 1}}));
  IntMatrix w1 = unimodular_complete(b1);
  CHECK(w1.row(0) == vec({1, 1}));
  Int d1 = det(w1);
  CHECK((d1 == 1 || d1 == -1));

  CHECK(unimodular_complete(Lattice::from_rows(IntMatrix::identity(3))) ==
        IntMatrix::identity(3));

  Lattice b2 = Lattice::from_rows(mat({{2, 1}}));
  IntMatrix w2 = unimodular_complete(b2);
  CHECK(w2.row(0) == vec({2, 1}));
  Int d2 = det(w2);
  CHECK((d2 == 1 || d2 == -1));

  CHECK_THROWS_AS(unimodular_complete(Lattice::from_rows(mat({{2, 0}}))),
                  error);

  std::mt19937 rng(15);
  int done = 0;
  while (done < 30) {
    IntMatrix m = random_matrix(rng, 1 + done % 3, 3, 4);
    Lattice k = integer_kernel(m);  // kernels are saturated by construction
    if (k.rank() == 0) continue;
    IntMatrix w = unimodular_complete(k);
    Int d = det(w);
    CHECK((d == 1 || d == -1));
    for (size_t i = 0; i < k.rank(); ++i) CHECK(w.row(i) == k.basis.row(i));
    ++done;
  }
}

TEST_CASE("lattice and coset plumbing") {
  Lattice l = Lattice::from_rows(mat({{2, 0, 1}, {0, 3, 1}}));
  CHECK(l.rank() == 2);
  CHECK(l.contains(vec({2, 3, 2})));
  CHECK_FALSE(l.contains(vec({1, 0, 0})));
  auto co = l.coordinates(vec({4, -3, 1}));
  REQUIRE(co.has_value());
  CHECK((*co)[0] == 2);
  CHECK((*co)[1] == -1);

  // canonical form makes lattice equality basis equality
  Lattice l2 = Lattice::from_rows(mat({{2, 3, 2}, {2, 0, 1}, {4, 3, 3}}));
  CHECK(l == l2);

  IntCoset e = IntCoset::empty(2);
  CHECK(e.is_empty);
  CHECK_FALSE(e.contains(vec({0, 0})));
}
