#include "bubblestab/asymmetry.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "bubblestab/errors.hpp"
#include "bubblestab/perturbation.hpp"
#include "bubblestab/rng.hpp"
#include "doctest.h"

namespace {

using namespace bubblestab;

double interface_width(const StandardBubble& b) {
  return b.equal_mass ? std::sqrt(3.0) / 2.0 : b.theta0;
}

PerturbedBubble trivial(const StandardBubble& b, double sigma) {
  PerturbedBubble pb;
  pb.base = b;
  pb.sigma = sigma;
  pb.profile0.half_width = interface_width(b);
  pb.profile1.half_width = b.theta1;
  pb.profile2.half_width = b.theta2;
  return pb;
}

PerturbedBubble random_enforced(const StandardBubble& b, Rng& rng,
                                double amp) {
  PerturbedBubble pb = trivial(b, 0.0);
  auto draw = [&](ArcProfile& p, double a) {
    p.coeffs.assign(4, 0.0);
    for (int j = 0; j < 4; ++j)
      p.coeffs[j] = rng.uniform(-a, a) / ((j + 1.0) * (j + 1.0));
  };
  draw(pb.profile0, 0.5 * amp);
  draw(pb.profile1, amp);
  draw(pb.profile2, amp);
  return enforce_volumes(b, pb.profile0, pb.profile1, pb.profile2, 1, 0.05,
                         0.05);
}

EmbeddedCluster moved_by(const EmbeddedCluster& c, const IsometryParams& iso) {
  EmbeddedCluster out = c;
  for (auto* ch : {&out.chamber1, &out.chamber2})
    for (auto& p : *ch) p = apply_isometry(iso, p);
  return out;
}

}  // namespace

TEST_CASE("isometries compose reflection, rotation, translation in order") {
  const Vec2 p{1.0, 2.0};

  IsometryParams id;
  const Vec2 q = apply_isometry(id, p);
  CHECK(q.x == p.x);
  CHECK(q.y == p.y);

  IsometryParams shift;
  shift.tx = -3.0;
  shift.ty = 0.5;
  const Vec2 s = apply_isometry(shift, p);
  CHECK(s.x == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(s.y == doctest::Approx(2.5).epsilon(1e-15));

  // reflect (1,2) -> (1,-2), rotate pi/2 -> (2,1), translate -> (5,0)
  IsometryParams full;
  full.reflect = true;
  full.phi = M_PI / 2.0;
  full.tx = 3.0;
  full.ty = -1.0;
  const Vec2 f = apply_isometry(full, p);
  CHECK(f.x == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(f.y == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
}

TEST_CASE("identity distance of an unperturbed cluster is exactly zero") {
  for (const StandardBubble& b :
       {equal_from_radius(1.0), from_r1(0.5), from_r1(0.2)}) {
    const PerturbedBubble pb = trivial(b, 0.0);
    for (int grid : {256, 512, 1024}) {
      CHECK(symdiff_distance(pb, b, {}, grid) == 0.0);
    }
  }
}

TEST_CASE("translation distance is positive, near-linear, and sub-cell "
          "translations register") {
  const EmbeddedCluster c = cluster_of(equal_from_radius(1.0));
  double prev = 1e9;
  for (double tau : {0.3, 0.1, 0.03, 0.01, 0.003}) {
    IsometryParams iso;
    iso.tx = tau;
    const double d = symdiff_distance_clusters(c, c, iso, 1024);
    CHECK(d > 0.0);
    CHECK(d < prev);
    prev = d;
    // |A delta (A + tau e1)| ~ tau * (cut width) for small tau
    if (tau >= 0.01) {
      CHECK(d / tau > 2.5);
      CHECK(d / tau < 3.5);
    }
  }
  // 0.003 is below the cell size 3.9/1024: interval counting still sees it
  IsometryParams tiny;
  tiny.tx = 0.003;
  CHECK(symdiff_distance_clusters(c, c, tiny, 1024) > 1e-3);
}

TEST_CASE("dilation reproduces the nested convex chamber-1 area change") {
  for (const StandardBubble& b : {equal_from_radius(1.0), from_r1(0.5)}) {
    for (double sigma : {0.01, -0.01}) {
      const PerturbedBubble pb = trivial(b, sigma);
      const double exact = std::abs((1.0 + sigma) * (1.0 + sigma) - 1.0);
      for (int grid : {512, 1024, 2048}) {
        const auto [lhs, rhs] = asymmetry_upper_chain(pb, grid);
        // trivial profiles: the bound collapses to the exact dilation term
        CHECK(rhs == doctest::Approx(exact).epsilon(1e-12));
        const double tol = grid >= 1024 ? 3e-4 : 5e-4;
        CHECK(std::abs(lhs * b.m1 - exact * b.m1) <= tol);
      }
    }
  }
}

TEST_CASE("full distance under dilation counts both chambers") {
  const StandardBubble b = equal_from_radius(1.0);
  const double d = symdiff_distance(trivial(b, 0.01), b, {}, 1024);
  CHECK(d == doctest::Approx(2.0 * 0.0201).epsilon(5e-3));
}

TEST_CASE("optimizer fixes the unperturbed cluster at zero") {
  for (const StandardBubble& b : {equal_from_radius(1.0), from_r1(0.5)}) {
    const AsymmetryResult r = asymmetry(trivial(b, 0.0), 512);
    CHECK(r.alpha == 0.0);
    CHECK(r.richardson == 0.0);
    CHECK(std::abs(r.argmin.tx) < 1e-9);
    CHECK(std::abs(r.argmin.ty) < 1e-9);
    CHECK(std::abs(r.argmin.phi) < 1e-9);
    CHECK(r.argmin.reflect == false);
    CHECK(r.grid == 512);
    CHECK(r.evaluations >= 4);
  }
}

TEST_CASE("optimizer recovers a pure translation of the base") {
  const EmbeddedCluster ref = cluster_of(equal_from_radius(1.0));
  IsometryParams pre;
  pre.tx = 0.07;
  pre.ty = -0.04;
  const AsymmetryResult r = asymmetry_clusters(moved_by(ref, pre), ref, 1024);
  CHECK(r.alpha <= 1e-3);
  CHECK(r.argmin.tx == doctest::Approx(0.07).epsilon(0.05));
  CHECK(r.argmin.ty == doctest::Approx(-0.04).epsilon(0.05));
  CHECK(std::abs(r.argmin.phi) < 5e-3);
}

TEST_CASE("optimized asymmetry never exceeds the identity distance") {
  Rng rng = Rng::stream(2024, 3);
  for (int i = 0; i < 4; ++i) {
    const StandardBubble b = (i % 2 == 0)
                                 ? equal_from_radius(1.0)
                                 : from_r1(i == 1 ? 0.5 : 0.3);
    const PerturbedBubble en = random_enforced(b, rng, 0.02);
    const AsymmetryResult r = asymmetry(en, 512);
    const double d_id = symdiff_distance(en, b, {}, 512);
    CHECK(r.alpha >= 0.0);
    CHECK(r.alpha <= d_id + 1e-12);
  }
}

TEST_CASE("asymmetry is stable under pre-composed isometries of the input") {
  Rng rng = Rng::stream(99, 0);
  for (int i = 0; i < 4; ++i) {
    const StandardBubble b = (i % 2 == 0) ? equal_from_radius(1.0)
                                          : from_r1(0.5);
    const PerturbedBubble en = random_enforced(b, rng, 0.02);
    const EmbeddedCluster meas = cluster_of(en);
    const EmbeddedCluster ref = cluster_of(b);
    IsometryParams pre;
    pre.tx = rng.uniform(-0.1, 0.1);
    pre.ty = rng.uniform(-0.1, 0.1);
    pre.phi = rng.uniform(-0.15, 0.15);
    pre.reflect = (i % 3 == 0);
    const AsymmetryResult r0 = asymmetry_clusters(meas, ref, 1024);
    const AsymmetryResult r1 =
        asymmetry_clusters(moved_by(meas, pre), ref, 1024);
    // optimizer plateau sits at the grid quantization scale
    CHECK(std::abs(r0.alpha - r1.alpha) <= 2.5e-3);
  }
}

TEST_CASE("mirrored isometry family yields bit-identical distances") {
  // the reference cluster is mirror-symmetric across the x axis and the
  // reflection is applied first, so conjugating (tx, ty, phi) by the mirror
  // traces exactly the same objective: the reflected start is redundant
  Rng rng = Rng::stream(7, 7);
  for (const StandardBubble& b : {equal_from_radius(1.0), from_r1(0.5)}) {
    const EmbeddedCluster c = cluster_of(b);
    for (int i = 0; i < 3; ++i) {
      IsometryParams iso;
      iso.tx = rng.uniform(-0.05, 0.05);
      iso.ty = rng.uniform(-0.05, 0.05);
      iso.phi = rng.uniform(-0.1, 0.1);
      IsometryParams mirrored;
      mirrored.reflect = true;
      mirrored.tx = iso.tx;
      mirrored.ty = -iso.ty;
      mirrored.phi = -iso.phi;
      const double d = symdiff_distance_clusters(c, c, iso, 512);
      const double dm = symdiff_distance_clusters(c, c, mirrored, 512);
      CHECK(d == dm);
    }
  }
}

TEST_CASE("upper chain dominates the measured chamber-1 difference") {
  Rng rng = Rng::stream(5150, 1);
  int checked = 0;
  for (int i = 0; i < 24; ++i) {
    const StandardBubble b = (i % 3 == 0)   ? equal_from_radius(1.0)
                             : (i % 3 == 1) ? from_r1(0.5)
                                            : from_r1(0.2);
    PerturbedBubble en;
    try {
      en = random_enforced(b, rng, 0.03);
    } catch (const GateError&) {
      continue;  // the interface correction can exceed eps at small r0
    }
    const auto [lhs, rhs] = asymmetry_upper_chain(en, 512);
    CHECK(lhs >= 0.0);
    CHECK(lhs <= rhs + 5e-4);
    ++checked;
  }
  CHECK(checked >= 16);
}

TEST_CASE("grid error halves per refinement on the exact dilation case") {
  // deterministic quantities; the dilated area is known in closed form
  for (const StandardBubble& b : {equal_from_radius(1.0), from_r1(0.5)}) {
    const PerturbedBubble pb = trivial(b, 0.01);
    auto chain_err = [&](int grid) {
      const auto [lhs, rhs] = asymmetry_upper_chain(pb, grid);
      return std::abs(lhs - 0.0201) * b.m1;
    };
    CHECK(chain_err(512) >= 2.0 * chain_err(2048));
  }
  // simplex version of the same first-order statement
  const StandardBubble eq = equal_from_radius(1.0);
  const PerturbedBubble pb = trivial(eq, 0.01);
  const double d512 = symdiff_distance(pb, eq, {}, 512);
  const double d1024 = symdiff_distance(pb, eq, {}, 1024);
  const double d2048 = symdiff_distance(pb, eq, {}, 2048);
  CHECK(std::abs(d512 - d1024) <= 4.0 * std::abs(d1024 - d2048) + 1e-9);
}

TEST_CASE("dilation survives the isometry search") {
  const AsymmetryResult r = asymmetry(trivial(equal_from_radius(1.0), 0.01),
                                      1024);
  CHECK(r.alpha > 0.039);
  CHECK(r.alpha < 0.041);
  CHECK(r.richardson < 5e-3);
}

TEST_CASE("asymmetry error paths") {
  const StandardBubble b = equal_from_radius(1.0);
  const PerturbedBubble pb = trivial(b, 0.0);

  CHECK_THROWS_AS(symdiff_distance(pb, b, {}, 128), std::domain_error);
  CHECK_THROWS_AS(asymmetry(pb, 100), std::domain_error);
  CHECK_THROWS_AS(asymmetry_upper_chain(pb, 0), std::domain_error);

  PerturbedBubble wild = trivial(b, 0.0);
  wild.profile1.coeffs = {1.2};
  CHECK_THROWS_AS(symdiff_distance(wild, b, {}, 512), GeometryError);
  CHECK_THROWS_AS(asymmetry(wild, 512), GeometryError);
  CHECK_THROWS_AS(asymmetry_upper_chain(wild, 512), GateError);

  PerturbedBubble blown = trivial(b, 0.6);
  CHECK_THROWS_AS(asymmetry_upper_chain(blown, 512), GateError);

  EmbeddedCluster broken = cluster_of(b);
  broken.m1 = 0.0;
  CHECK_THROWS_AS(
      symdiff_distance_clusters(broken, cluster_of(b), {}, 512),
      std::domain_error);
}
