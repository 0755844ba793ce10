#include <catch2/catch_amalgamated.hpp>
#include <ratsum/qfield.hpp>

#include <random>

using namespace ratsum;

namespace {

ZPoly zp(std::initializer_list<long> cs) {
  std::vector<Int> v;
  for (long c : cs) v.emplace_back(c);
  return ZPoly(std::move(v));
}

}  // namespace

TEST_CASE("ZPoly arithmetic basics") {
  ZPoly a = zp({1, 2});       // 1 + 2q
  ZPoly b = zp({-1, 0, 3});   // -1 + 3q^2
  CHECK((a + b) == zp({0, 2, 3}));
  CHECK((a * b) == zp({-1, -2, 3, 6}));
  CHECK((a - a).is_zero());
  CHECK((a * b).divide_exact(a) == b);
}

TEST_CASE("ZPoly gcd via primitive PRS") {
  ZPoly a = zp({-1, 0, 1});  // q^2 - 1
  ZPoly b = zp({-1, 1});     // q - 1
  CHECK(gcd(a, b) == b);
  CHECK(gcd(a, ZPoly()) == a);
  CHECK(gcd(zp({2, 2}), zp({4})) == zp({2}));
  // random products share the planted factor
  std::mt19937 rng(7);
  for (int t = 0; t < 50; ++t) {
    auto rnd = [&] {
      std::vector<Int> v;
      int d = static_cast<int>(rng() % 4);
      for (int i = 0; i <= d; ++i) v.emplace_back(static_cast<long>(rng() % 11) - 5);
      ZPoly p(std::move(v));
      return p.is_zero() ? zp({1}) : p;
    };
    ZPoly p = rnd(), q = rnd(), r = rnd();
    ZPoly g = gcd(p * r, q * r);
    CHECK_NOTHROW(g.divide_exact(r.primitive()));
  }
}

TEST_CASE("Fq reduction and field axioms") {
  CoeffField F = CoeffField::symbolic();
  Fq q = Fq::q(F);
  Fq one(1);
  CHECK((q * q - one) / (q - one) == q + one);
  CHECK((q / q).is_one());
  Fq c = (Fq(2) * q + Fq(2)) / (Fq(4) * q + Fq(4));
  CHECK(c == Fq(Rat(1, 2)));
  CHECK_THROWS_AS(one / Fq(0), error);
  CHECK((q.pow(3) * q.pow(-3)).is_one());
}

TEST_CASE("numeric mode pins q to a rational") {
  CoeffField F = CoeffField::numeric(Rat(3, 2));
  Fq q = Fq::q(F);
  CHECK(q.is_rational());
  CHECK(q.to_rational() == Rat(3, 2));
  CHECK_THROWS_AS(CoeffField::numeric(Rat(1)), error);
  CHECK_THROWS_AS(CoeffField::numeric(Rat(-1)), error);
  CHECK_THROWS_AS(CoeffField::numeric(Rat(0)), error);
}

TEST_CASE("q-power detection, symbolic") {
  CoeffField F = CoeffField::symbolic();
  Fq q = Fq::q(F);
  CHECK(q_power_exponent(q.pow(5), F) == 5);
  CHECK(q_power_exponent(q.pow(-2), F) == -2);
  CHECK(q_power_exponent(Fq(1), F) == 0);
  CHECK_FALSE(q_power_exponent(Fq(2) * q, F).has_value());
  CHECK_FALSE(q_power_exponent(q + Fq(1), F).has_value());
  auto split = rational_q_power_split(Fq(Rat(3, 4)) * q.pow(7), F);
  REQUIRE(split.has_value());
  CHECK(split->first == Rat(3, 4));
  CHECK(split->second == 7);
  CHECK_FALSE(rational_q_power_split(q + Fq(1), F).has_value());
}

TEST_CASE("q-power detection, numeric") {
  CoeffField F = CoeffField::numeric(Rat(2));
  Fq q = Fq::q(F);
  CHECK(q_power_exponent(q.pow(10), F) == 10);
  CHECK(q_power_exponent(Fq(Rat(1, 8)), F) == -3);
  CHECK(q_power_exponent(Fq(1), F) == 0);
  CHECK_FALSE(q_power_exponent(Fq(3), F).has_value());
  CoeffField G = CoeffField::numeric(Rat(-3, 5));
  CHECK(q_power_exponent(Fq::q(G).pow(4), G) == 4);
  CHECK(q_power_exponent(Fq::q(G).pow(-5), G) == -5);
}
