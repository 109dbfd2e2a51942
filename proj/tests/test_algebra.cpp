#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <functional>

#include "doctest.h"
#include "gvf/ball.hpp"
#include "gvf/errors.hpp"
#include "gvf/numeric.hpp"
#include "gvf/poly.hpp"
#include "gvf/roots.hpp"

using namespace gvf;

TEST_CASE("rational parsing and printing") {
  CHECK(rat_from_string("12/35") == Rat(12, 35));
  CHECK(rat_from_string("-24/70") == Rat(-12, 35));
  CHECK(rat_from_string("0.25") == Rat(1, 4));
  CHECK(rat_from_string("-1.5e-3") == Rat(-3, 2000));
  CHECK(rat_from_string("1e-6") == Rat(1, 1000000));
  CHECK(rat_from_string("7") == Rat(7));
  CHECK(rat_to_string(Rat(-12, 35)) == "-12/35");
  CHECK(rat_to_string(Rat(7)) == "7");
  CHECK_THROWS_AS(rat_from_string("x"), GvfError);
  CHECK_THROWS_AS(rat_from_string(""), GvfError);
}

TEST_CASE("factorization reconstructs the integer") {
  Rng rng(7);
  for (int i = 0; i < 60; ++i) {
    Int n = rng.below(Int(1000000)) + 2;
    std::vector<std::pair<Int, int>> fs = factor_int(n);
    Int prod = 1, last = 1;
    for (const auto& [p, k] : fs) {
      CHECK(is_prime(p));
      CHECK(p > last);
      last = p;
      for (int j = 0; j < k; ++j) prod *= p;
    }
    CHECK(prod == n);
  }
  CHECK(is_prime(Int(2147483647)));
  CHECK(!is_prime(Int(561)));  // Carmichael number
  CHECK(valp(Rat(12, 35), Int(2)) == 2);
  CHECK(valp(Rat(12, 35), Int(5)) == -1);
  CHECK(is_square_free(Int(30)));
  CHECK(!is_square_free(Int(12)));
}

TEST_CASE("modular square roots") {
  // r^2 = 2 mod 7^6 and mod 2^40 for d = 17 (1 mod 8)
  Int r = sqrt_mod_p(Int(2), Int(7));
  CHECK((r * r - 2) % 7 == 0);
  Int l = sqrt_lift_odd(r, Int(2), Int(7), 6);
  Int mod = pow_int(Int(7), 6);
  CHECK((l * l - 2) % mod == 0);
  Int t = sqrt_lift_2(Int(17), 40);
  Int m2 = pow_int(Int(2), 40);
  CHECK((t * t - 17) % m2 == 0);
}

namespace {
bool ball_contains(const Ball& x, const Rat& v) {
  return rat_abs(v - x.mid_rat()) <= x.rad_rat();
}
}  // namespace

TEST_CASE("ball arithmetic encloses exact rational arithmetic") {
  Rng rng(11);
  auto rnd = [&]() {
    Rat q(rng.below(Int(2001)) - 1000, rng.below(Int(999)) + 1);
    q.canonicalize();
    return q;
  };
  for (int i = 0; i < 200; ++i) {
    Rat a = rnd(), b = rnd();
    Ball A = Ball::from_rat(a, 64), B = Ball::from_rat(b, 64);
    CHECK(ball_contains(add(A, B), a + b));
    CHECK(ball_contains(sub(A, B), a - b));
    CHECK(ball_contains(mul(A, B), a * b));
    Ball D = div_ball(Ball::from_rat(a, 64), Ball::from_rat(Rat(7, 3), 64));
    CHECK(ball_contains(D, a / Rat(7, 3)));
  }
}

TEST_CASE("midpoint extraction is lossless") {
  // dyadic rationals are represented exactly
  Ball d = Ball::from_rat(Rat(3, 8), 64);
  CHECK(d.mid_rat() == Rat(3, 8));
  CHECK(d.rad_rat() == Rat(0));
  // 1/3 is rounded, but the ball still contains it
  Ball t = Ball::from_rat(Rat(1, 3), 64);
  CHECK(t.mid_rat() != Rat(1, 3));
  CHECK(ball_contains(t, Rat(1, 3)));
  CHECK(t.rad_rat() > 0);
}

TEST_CASE("logarithms are consistent") {
  // log 2 + log 3 and log 6 must overlap
  Ball l2 = Ball::log_prime(Int(2), 128);
  Ball l3 = Ball::log_prime(Int(3), 128);
  Ball l6 = log_ball(Ball::from_int(6, 128));
  Rat gap = rat_abs(add(l2, l3).mid_rat() - l6.mid_rat());
  CHECK(gap <= add(l2, l3).rad_rat() + l6.rad_rat());
  // higher precision shrinks the radius
  CHECK(Ball::log_prime(Int(2), 256).rad_rat() < l2.rad_rat());
}

TEST_CASE("polynomial division, gcd, squarefree part") {
  Rng rng(13);
  auto rnd_poly = [&](int deg) {
    PolyQ f(deg + 1);
    for (int i = 0; i <= deg; ++i) f[i] = Rat(rng.below(Int(21)) - 10);
    qx::trim(f);
    return f;
  };
  for (int i = 0; i < 100; ++i) {
    PolyQ f = rnd_poly(static_cast<int>(rng.range(0, 6)));
    PolyQ g = rnd_poly(static_cast<int>(rng.range(1, 4)));
    if (qx::deg(g) < 0) continue;
    auto [q, r] = qx::divmod(f, g);
    CHECK(qx::deg(r) < qx::deg(g));
    CHECK(qx::add(qx::mul(q, g), r) == f);
  }
  PolyQ a{Rat(-1), Rat(0), Rat(1)};   // x^2 - 1
  PolyQ b{Rat(1), Rat(-2), Rat(1)};   // (x - 1)^2
  CHECK(qx::gcd_monic(a, b) == PolyQ{Rat(-1), Rat(1)});
  PolyQ c = qx::mul(b, PolyQ{Rat(2), Rat(1)});  // (x-1)^2 (x+2)
  CHECK(qx::squarefree_part(c) ==
        qx::mul(PolyQ{Rat(-1), Rat(1)}, PolyQ{Rat(2), Rat(1)}));
  CHECK(qx::eval(PolyQ{Rat(-1), Rat(-1), Rat(0), Rat(1)}, Rat(2)) == Rat(5));
}

TEST_CASE("certified real and complex roots") {
  // (x^2 - 2)(x^2 - 3): four real roots in ascending order
  PolyQ f = qx::mul(PolyQ{Rat(-2), Rat(0), Rat(1)}, PolyQ{Rat(-3), Rat(0), Rat(1)});
  std::vector<RootBox> rs = complex_roots(f, 128);
  REQUIRE(rs.size() == 4);
  Rat expected_sq[4] = {Rat(3), Rat(2), Rat(2), Rat(3)};
  Rat prev(-100);
  for (size_t i = 0; i < 4; ++i) {
    CHECK(rs[i].is_real);
    Rat m = rs[i].z.re.mid_rat();
    CHECK(m > prev);
    prev = m;
    CHECK(rat_abs(m * m - expected_sq[i]) < Rat(1, 1000000000));
  }
  // x^2 + 1: one conjugate pair, im > 0 first
  std::vector<RootBox> ri = complex_roots(PolyQ{Rat(1), Rat(0), Rat(1)}, 128);
  REQUIRE(ri.size() == 2);
  CHECK(!ri[0].is_real);
  CHECK(ri[0].conj_index == 1);
  CHECK(ri[0].z.im.certainly_positive());
  CHECK(rat_abs(ri[0].z.im.mid_rat() - 1) < Rat(1, 1000000000));
  // x^3 - x - 1: the real root is 1.3247179...
  std::vector<RootBox> rc =
      complex_roots(PolyQ{Rat(-1), Rat(-1), Rat(0), Rat(1)}, 128);
  REQUIRE(rc.size() == 3);
  int reals = 0;
  for (const RootBox& r : rc)
    if (r.is_real) {
      ++reals;
      CHECK(rat_abs(r.z.re.mid_rat() - rat_from_string("1.32471795724475")) <
            Rat(1, 100000000000));
    }
  CHECK(reals == 1);
}
