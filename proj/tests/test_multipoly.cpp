#include <catch2/catch_amalgamated.hpp>
#include <ratsum/ratfun.hpp>

#include <random>

using namespace ratsum;

namespace {

struct Ctx {
  TablePtr tab;
  Ctx()
      : tab(VarTable::make({"x", "y", "z", "w"},
                           {VarKind::shift, VarKind::shift, VarKind::qshift,
                            VarKind::inert},
                           CoeffField::symbolic())) {}
  MultiPoly v(int i, int e = 1) const { return MultiPoly::variable(tab, i, e); }
  MultiPoly c(long k) const { return MultiPoly::constant(tab, Fq(Int(k))); }
};

MultiPoly random_poly(const Ctx& ctx, std::mt19937& rng, int nvars = 3,
                      int maxdeg = 2, int maxterms = 4) {
  MultiPoly p = MultiPoly::zero(ctx.tab);
  int nt = 1 + static_cast<int>(rng() % maxterms);
  for (int t = 0; t < nt; ++t) {
    Exps e(ctx.tab->size(), 0);
    for (int i = 0; i < nvars; ++i) e[i] = static_cast<int>(rng() % (maxdeg + 1));
    long c = static_cast<long>(rng() % 9) - 4;
    if (c == 0) c = 1;
    p += MultiPoly::monomial(ctx.tab, e, Fq(Int(c)));
  }
  return p.is_zero() ? ctx.c(1) : p;
}

}  // namespace

TEST_CASE("rf_normalize reduces and canonicalizes") {
  Ctx ctx;
  MultiPoly x = ctx.v(0);
  // (x^2 - 1)/(x - 1) -> x + 1
  RatFun f = rf_normalize(x * x - ctx.c(1), x - ctx.c(1));
  CHECK(f == RatFun(x + ctx.c(1)));
  // zero numerator
  CHECK(rf_normalize(ctx.c(0), x + ctx.v(1)).is_zero());
  // (2x, 4) -> x/2 with denominator 1
  RatFun g = rf_normalize(ctx.c(2) * x, ctx.c(4));
  CHECK(g.is_polynomial());
  CHECK(g.num() == x.scaled(Fq(Rat(1, 2))));
  CHECK_THROWS_AS(rf_normalize(x, ctx.c(0)), error);
  // idempotence
  RatFun h = rf_normalize(x * x + ctx.c(3), (x + ctx.v(1)).pow(2));
  CHECK(rf_normalize(h.num(), h.den()) == h);
}

TEST_CASE("mp_gcd basics") {
  Ctx ctx;
  MultiPoly x = ctx.v(0), y = ctx.v(1);
  CHECK(mp_gcd(x * x - ctx.c(1), x - ctx.c(1)) == x - ctx.c(1));
  CHECK(mp_gcd(x + y, MultiPoly::zero(ctx.tab)) == x + y);
  CHECK(mp_gcd(x + y, x - y) == ctx.c(1));
}

TEST_CASE("mp_gcd divisibility property on random products") {
  Ctx ctx;
  std::mt19937 rng(42);
  for (int t = 0; t < 30; ++t) {
    MultiPoly p = random_poly(ctx, rng), q = random_poly(ctx, rng),
              r = random_poly(ctx, rng);
    MultiPoly g = mp_gcd(p * r, q * r);
    CHECK(mp_divides(r.monic().first, g));
  }
}

TEST_CASE("apply_word operator action") {
  Ctx ctx;
  MultiPoly x = ctx.v(0), y = ctx.v(1), z = ctx.v(2);
  size_t n = ctx.tab->size();
  Fq q = Fq::q(ctx.tab->field);

  RatFun f(x * x);
  CHECK(apply_word(f, word_unit(n, 0, 1), Fq(1)) ==
        RatFun((x + ctx.c(1)).pow(2)));

  RatFun g(z.pow(3));
  CHECK(apply_word(g, word_unit(n, 2, 1), Fq(1)) ==
        RatFun(z.pow(3).scaled(q.pow(3))));

  GroupWord w = word_add(word_unit(n, 1, 1), word_unit(n, 2, 1));
  Fq c = Fq(5);
  CHECK(apply_word(RatFun(y * z), w, c) ==
        RatFun(((y + ctx.c(1)) * z).scaled(c * q)));

  GroupWord bad = word_unit(n, 3, 1);
  CHECK_THROWS_AS(apply_word(f, bad, Fq(1)), error);
}

TEST_CASE("apply_word is a field homomorphism and invertible") {
  Ctx ctx;
  std::mt19937 rng(11);
  size_t n = ctx.tab->size();
  for (int t = 0; t < 15; ++t) {
    RatFun f(random_poly(ctx, rng), random_poly(ctx, rng));
    RatFun g(random_poly(ctx, rng), random_poly(ctx, rng));
    GroupWord w(n, 0);
    w[0] = static_cast<long>(rng() % 5) - 2;
    w[1] = static_cast<long>(rng() % 5) - 2;
    w[2] = static_cast<long>(rng() % 5) - 2;
    Fq one(1);
    CHECK(apply_word(f * g, w, one) ==
          apply_word(f, w, one) * apply_word(g, w, one));
    CHECK(apply_word(f + g, w, one) ==
          apply_word(f, w, one) + apply_word(g, w, one));
    CHECK(apply_word(apply_word(f, w, one), word_neg(w), one) == f);
  }
}

TEST_CASE("squarefree decomposition") {
  Ctx ctx;
  MultiPoly x = ctx.v(0), y = ctx.v(1);
  auto sf = squarefree_decompose(x * x * (x + ctx.c(1)), 0);
  REQUIRE(sf.size() == 2);
  CHECK(sf[0] == std::pair{x + ctx.c(1), 1});
  CHECK(sf[1] == std::pair{x, 2});

  auto sf2 = squarefree_decompose(x * x + ctx.c(7), 0);
  REQUIRE(sf2.size() == 1);
  CHECK(sf2[0] == std::pair{x * x + ctx.c(7), 1});

  auto sf3 = squarefree_decompose((x + y).pow(3), 0);
  REQUIRE(sf3.size() == 1);
  CHECK(sf3[0] == std::pair{x + y, 3});
}

TEST_CASE("partial fractions examples") {
  Ctx ctx;
  MultiPoly x = ctx.v(0);
  MultiPoly one = ctx.c(1);

  // 1/(x(x+1)) = 1/x - 1/(x+1)
  auto pf = partial_fractions_main(
      rf_normalize(one, x * (x + one)), 0, {{x, 1}, {x + one, 1}});
  CHECK(pf.poly_part.is_zero());
  REQUIRE(pf.terms.size() == 2);
  for (const auto& t : pf.terms) {
    if (t.factor == x) CHECK(t.numerator == RatFun(one));
    else CHECK(t.numerator == -RatFun(one));
  }

  // (x^2+1)/x = x + 1/x
  auto pf2 = partial_fractions_main(rf_normalize(x * x + one, x), 0, {{x, 1}});
  CHECK(pf2.poly_part.degree() == 1);
  REQUIRE(pf2.terms.size() == 1);
  CHECK(pf2.terms[0].numerator == RatFun(one));

  // 1/(x-1)^2
  auto pf3 = partial_fractions_main(rf_normalize(one, (x - one).pow(2)), 0,
                                    {{x - one, 2}});
  REQUIRE(pf3.terms.size() == 1);
  CHECK(pf3.terms[0].power == 2);
  CHECK(pf3.terms[0].numerator == RatFun(one));

  // incomplete factorization is rejected
  CHECK_THROWS_AS(partial_fractions_main(rf_normalize(one, x * (x + one)), 0,
                                         {{x, 1}}),
                  error);
}

TEST_CASE("partial fractions reassemble exactly") {
  Ctx ctx;
  MultiPoly x = ctx.v(0), y = ctx.v(1), z = ctx.v(2);
  MultiPoly one = ctx.c(1);
  std::vector<std::pair<MultiPoly, int>> factors = {
      {x, 1}, {x + y, 2}, {x * x + z, 1}};
  std::mt19937 rng(3);
  for (int t = 0; t < 10; ++t) {
    MultiPoly num = random_poly(ctx, rng, 3, 3, 5);
    MultiPoly den = MultiPoly::constant(ctx.tab, Fq(1));
    for (const auto& [d, j] : factors) den *= d.pow(j);
    RatFun f = rf_normalize(num, den);
    auto pf = partial_fractions_main(f, 0, factors);
    RatFun sum = from_upoly(pf.poly_part, ctx.tab, 0);
    for (const auto& term : pf.terms)
      sum += term.numerator / RatFun(term.factor.pow(term.power));
    CHECK(sum == f);
  }
}
