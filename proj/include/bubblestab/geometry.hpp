#pragma once

#include <functional>
#include <vector>

namespace bubblestab {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double t, Vec2 a) { return {t * a.x, t * a.y}; }

// Reference standard double bubble: three circular arcs meeting at 120
// degrees at two singular points. Canonical construction fixes r2 = 1; the
// scale field carries subsequent dilations so that angles stay canonical.
//
// Equal masses degenerate the interface into a straight segment: r0 is the
// +infinity sentinel, theta0 = 0, and all arithmetic branches on equal_mass
// rather than on the infinity.
struct StandardBubble {
  double r0 = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double theta0 = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  double scale = 1.0;
  bool equal_mass = false;
};

// Planar realization. P0 is at the origin in the unequal case; the
// midpoint between the two singular points is stored so the asymmetry
// module can convert conventions. Chamber polylines are closed implicitly
// (last vertex joins the first) and oriented counterclockwise.
//
// Equal-mass embeddings center the interface segment on the y axis; P0, t1,
// t2 are infinity sentinels there.
struct EmbeddedBubble {
  Vec2 P0, P1, P2;
  double t1 = 0.0;
  double t2 = 0.0;
  Vec2 S_top, S_bot;
  Vec2 midpoint;
  std::vector<Vec2> chamber1;
  std::vector<Vec2> chamber2;
  int arc_samples = 0;
};

// Canonical bubble (r2 = 1) from the interior radius r1 in (0, 1).
StandardBubble from_r1(double r1);

// Equal-mass bubble of arc radius r: m1 = m2 = (2*pi/3 + sqrt(3)/4) r^2.
StandardBubble equal_from_radius(double r);

// Inverts the canonical parametrization for target masses m2 >= m1 > 0:
// bisection on the mass ratio followed by an exact uniform rescale.
// Throws NumericError when the ratio cannot be bracketed on the scan
// interval (ratios too close to 1 for the unequal branch).
StandardBubble from_masses(double m1, double m2);

// Uniform dilation by t > 0 (lengths scale by t, areas by t^2).
StandardBubble scaled(const StandardBubble& b, double t);

// Perimeter 2(m1/r1 + m2/r2); asserts agreement with the arc-length sum
// 2(theta1 r1 + theta2 r2 + theta0 r0) within 1e-10 relative.
double perimeter(const StandardBubble& b);

// Signed polygon area (shoelace, implicit closure); counterclockwise > 0.
double polygon_area(const std::vector<Vec2>& poly);

EmbeddedBubble embed(const StandardBubble& b, int arc_samples = 4096);

// Embedding with boundary displacements, shared with the perturbation
// module. displacement(k, s) is evaluated at arc parameter s in
// (-theta_k, theta_k): for k = 1, 2 (and k = 0 with a circular interface) it
// is the radial fraction u_k(s); for the equal-mass segment interface it is
// the horizontal offset v0(s) in units of r at height s in (-sqrt(3)/2,
// sqrt(3)/2). sigma dilates the finished cluster about the singular
// midpoint.
EmbeddedBubble embed_displaced(
    const StandardBubble& b, int arc_samples,
    const std::function<double(int, double)>& displacement, double sigma);

}  // namespace bubblestab
