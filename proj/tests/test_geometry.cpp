#include "bubblestab/geometry.hpp"

#include <cmath>

#include "bubblestab/errors.hpp"
#include "doctest.h"

namespace bs = bubblestab;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt3 = 1.7320508075688772;

void check_invariants(const bs::StandardBubble& b, double tol = 1e-12) {
  if (b.equal_mass) {
    CHECK(b.theta0 == 0.0);
    CHECK(b.theta1 == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-15));
    CHECK(b.theta2 == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-15));
    CHECK(std::fabs(1.0 / b.r1 - 1.0 / b.r2) < tol);
    CHECK(std::isinf(b.r0));
  } else {
    CHECK(std::fabs(1.0 / b.r1 - 1.0 / b.r2 - 1.0 / b.r0) < tol / b.r1);
    const double chord = b.r0 * std::sin(b.theta0);
    CHECK(std::fabs(b.r1 * std::sin(b.theta1) - chord) < tol * b.r2);
    CHECK(std::fabs(b.r2 * std::sin(b.theta2) - chord) < tol * b.r2);
    CHECK(std::fabs(b.theta1 + b.theta0 - 2.0 * kPi / 3.0) < tol);
    CHECK(std::fabs(b.theta2 - b.theta0 - 2.0 * kPi / 3.0) < tol);
    CHECK(b.theta0 > 0.0);
    CHECK(b.theta0 < kPi / 3.0);
    CHECK(b.theta1 > kPi / 3.0);
    CHECK(b.theta1 < 2.0 * kPi / 3.0);
    CHECK(b.theta2 > 2.0 * kPi / 3.0);
    CHECK(b.theta2 < kPi);
  }
  CHECK(b.m1 > 0.0);
  CHECK(b.m2 >= b.m1);
}

}  // namespace

TEST_CASE("from_r1 at 1/2 reproduces the closed-form anchors") {
  const bs::StandardBubble b = bs::from_r1(0.5);
  CHECK(std::fabs(b.r0 - 1.0) < 1e-12);
  CHECK(std::fabs(b.theta0 - kPi / 6.0) < 1e-12);
  CHECK(std::fabs(b.theta1 - kPi / 2.0) < 1e-12);
  CHECK(std::fabs(b.theta2 - 5.0 * kPi / 6.0) < 1e-12);
  CHECK(std::fabs(b.m1 - (7.0 * kPi / 24.0 - kSqrt3 / 4.0)) < 1e-12);
  CHECK(std::fabs(b.m2 - (2.0 * kPi / 3.0 + kSqrt3 / 2.0)) < 1e-12);
  const double chord = b.r0 * std::sin(b.theta0);
  CHECK(std::fabs(chord - 0.5) < 1e-12);
  check_invariants(b);
}

TEST_CASE("from_r1 rejects arguments outside (0, 1)") {
  CHECK_THROWS_AS(bs::from_r1(0.0), std::domain_error);
  CHECK_THROWS_AS(bs::from_r1(1.0), std::domain_error);
  CHECK_THROWS_AS(bs::from_r1(-0.3), std::domain_error);
}

TEST_CASE("equal_from_radius anchors and quadratic mass scaling") {
  const bs::StandardBubble b = bs::equal_from_radius(1.0);
  CHECK(std::fabs(b.m1 - (2.0 * kPi / 3.0 + kSqrt3 / 4.0)) < 1e-12);
  CHECK(b.m1 == b.m2);
  check_invariants(b);
  const bs::StandardBubble b2 = bs::equal_from_radius(2.0);
  CHECK(std::fabs(b2.m1 - 4.0 * b.m1) < 1e-12);
  CHECK_THROWS_AS(bs::equal_from_radius(0.0), std::domain_error);
}

TEST_CASE("perimeter agrees between mass and arc formulas") {
  CHECK(std::fabs(bs::perimeter(bs::from_r1(0.5)) - 2.5 * kPi) < 1e-10);
  CHECK(std::fabs(bs::perimeter(bs::equal_from_radius(1.0)) -
                  (8.0 * kPi / 3.0 + kSqrt3)) < 1e-12);
  // 1-homogeneity under dilation.
  const bs::StandardBubble b = bs::from_r1(0.37);
  CHECK(bs::perimeter(bs::scaled(b, 3.0)) ==
        doctest::Approx(3.0 * bs::perimeter(b)).epsilon(1e-13));
}

TEST_CASE("invariants hold across the r1 grid and the ratio is monotone") {
  double prev_ratio = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double r1 = 0.01 + (0.99 - 0.01) * i / 99.0;
    const bs::StandardBubble b = bs::from_r1(r1);
    check_invariants(b, 1e-11);
    CHECK(b.m1 < b.m2);
    const double ratio = b.m1 / b.m2;
    CHECK(ratio > prev_ratio);
    prev_ratio = ratio;
    bs::perimeter(b);  // double-formula consistency throws on mismatch
  }
}

TEST_CASE("from_masses inverts the canonical parametrization") {
  const double m1 = 7.0 * kPi / 24.0 - kSqrt3 / 4.0;
  const double m2 = 2.0 * kPi / 3.0 + kSqrt3 / 2.0;
  const bs::StandardBubble b = bs::from_masses(m1, m2);
  CHECK(std::fabs(b.r1 - 0.5) < 1e-10);
  CHECK(std::fabs(b.scale - 1.0) < 1e-10);
  CHECK(std::fabs(b.m1 - m1) <= 1e-10 * m1);
  CHECK(std::fabs(b.m2 - m2) <= 1e-9 * m2);
}

TEST_CASE("from_masses handles equal masses and exact rescaling") {
  const bs::StandardBubble eq = bs::from_masses(2.0, 2.0);
  CHECK(eq.equal_mass);
  CHECK(std::fabs(eq.m1 - 2.0) < 1e-12);

  const bs::StandardBubble base = bs::from_r1(0.3);
  const double t = 1.7;
  const bs::StandardBubble s =
      bs::from_masses(t * t * base.m1, t * t * base.m2);
  CHECK(std::fabs(s.theta0 - base.theta0) < 1e-11);
  CHECK(std::fabs(s.r1 - t * base.r1) < 1e-9);
  CHECK(std::fabs(s.m1 - t * t * base.m1) <= 1e-10 * s.m1);
}

TEST_CASE("from_masses error paths") {
  CHECK_THROWS_AS(bs::from_masses(-1.0, 2.0), std::domain_error);
  CHECK_THROWS_AS(bs::from_masses(2.0, 1.0), std::domain_error);
  // Distinct masses with a ratio too close to 1 for the bisection bracket.
  CHECK_THROWS_AS(bs::from_masses(1.0, 1.0 + 1e-9), bs::NumericError);
}

TEST_CASE("embed reproduces masses via the shoelace oracle") {
  for (double r1 : {0.2, 0.5, 0.8}) {
    const bs::StandardBubble b = bs::from_r1(r1);
    const bs::EmbeddedBubble e = bs::embed(b, 4096);
    const double a1 = bs::polygon_area(e.chamber1);
    const double a2 = bs::polygon_area(e.chamber2);
    CHECK(a1 > 0.0);  // counterclockwise orientation
    CHECK(a2 > 0.0);
    CHECK(std::fabs(a1 - b.m1) < 1e-6 * b.m1);
    CHECK(std::fabs(a2 - b.m2) < 1e-6 * b.m2);
  }
  const bs::StandardBubble eq = bs::equal_from_radius(1.0);
  const bs::EmbeddedBubble e = bs::embed(eq, 4096);
  CHECK(std::fabs(bs::polygon_area(e.chamber1) - eq.m1) < 1e-6 * eq.m1);
  CHECK(std::fabs(bs::polygon_area(e.chamber2) - eq.m2) < 1e-6 * eq.m2);
}

TEST_CASE("embed geometry: singular points, offsets, midpoint") {
  const bs::StandardBubble b = bs::from_r1(0.5);
  const bs::EmbeddedBubble e = bs::embed(b, 64);
  auto dist = [](bs::Vec2 a, bs::Vec2 c) {
    return std::hypot(a.x - c.x, a.y - c.y);
  };
  CHECK(std::fabs(dist(e.S_top, e.P1) - b.r1) < 1e-12);
  CHECK(std::fabs(dist(e.S_top, e.P2) - b.r2) < 1e-12);
  CHECK(std::fabs(dist(e.S_bot, e.P1) - b.r1) < 1e-12);
  CHECK(std::fabs(e.t1 / std::sin(kPi / 3.0) - b.r1 / std::sin(b.theta0)) <
        1e-10);
  CHECK(std::fabs(e.t2 / std::sin(2.0 * kPi / 3.0) -
                  b.r2 / std::sin(b.theta0)) < 1e-10);
  CHECK(e.midpoint.x == doctest::Approx(e.S_top.x));
  CHECK(e.midpoint.y == 0.0);

  const bs::EmbeddedBubble eq = bs::embed(bs::equal_from_radius(1.0), 64);
  CHECK(std::fabs(eq.S_top.x) < 1e-15);
  CHECK(std::fabs(eq.S_top.y - 0.5 * kSqrt3) < 1e-12);
  CHECK(std::fabs(eq.S_bot.y + 0.5 * kSqrt3) < 1e-12);
  CHECK_THROWS_AS(bs::embed(bs::from_r1(0.5), 8), std::domain_error);
}
