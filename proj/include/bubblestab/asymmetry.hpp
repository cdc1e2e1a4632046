#pragma once

#include <utility>
#include <vector>

#include "bubblestab/geometry.hpp"
#include "bubblestab/perturbation.hpp"

namespace bubblestab {

// Planar isometry, composed in the fixed order reflect (across the x axis),
// then rotation by phi about the origin, then translation by (tx, ty).
struct IsometryParams {
  double tx = 0.0;
  double ty = 0.0;
  double phi = 0.0;
  bool reflect = false;
};

Vec2 apply_isometry(const IsometryParams& iso, Vec2 p);

// A measured cluster: closed chamber polylines plus the reference masses
// used to normalize symmetric differences. Layered below the PerturbedBubble
// API so isometry-invariance tests can pre-transform the polylines.
struct EmbeddedCluster {
  std::vector<Vec2> chamber1;
  std::vector<Vec2> chamber2;
  double m1 = 0.0;
  double m2 = 0.0;
};

EmbeddedCluster cluster_of(const PerturbedBubble& pb, int arc_samples = 1024);
EmbeddedCluster cluster_of(const StandardBubble& b, int arc_samples = 1024);

// Normalized L1 distance
//   d = |E(1) Delta f(E0(1))|/m1 + |E(2) Delta f(E0(2))|/m2
// by exact counting of grid-cell centers in the symmetric difference
// (row-interval decomposition; deterministic, integer cell counts). The
// grid is a square joint bounding box with a 1.3 margin, grid x grid cells.
// Profiles large enough to self-intersect (supbound >= 1) and corrupt
// polylines (odd crossing parity in a row) throw GeometryError.
double symdiff_distance_clusters(const EmbeddedCluster& measured,
                                 const EmbeddedCluster& reference,
                                 const IsometryParams& iso, int grid);

double symdiff_distance(const PerturbedBubble& pb, const StandardBubble& base,
                        const IsometryParams& iso, int grid);

struct AsymmetryResult {
  double alpha = 0.0;
  IsometryParams argmin;
  int grid = 0;
  // |d(grid) - d(grid/2)| at the argmin: first-order grid error estimate.
  double richardson = 0.0;
  int evaluations = 0;
};

// Minimizes the distance over isometries by Nelder-Mead simplex search
// started at the identity (<= 400 iterations, plateau detection at the
// grid quantization scale). The result never exceeds the identity value.
// The reference cluster is mirror-symmetric across the x axis and the
// reflection is applied first, so the reflected family traces exactly the
// same objective and needs no second start. Drift of the best translation
// beyond the cluster diameter throws SearchError.
AsymmetryResult asymmetry_clusters(const EmbeddedCluster& measured,
                                   const EmbeddedCluster& reference,
                                   int grid);

AsymmetryResult asymmetry(const PerturbedBubble& pb, int grid = 1024);

// Triangle-inequality chain for the chamber-1 symmetric difference:
//   lhs = |E(1) Delta E0(1)| / m1                      (grid count)
//   rhs = (1+sigma)^2 [ sum of interface and arc-1 sector symdiff bounds,
//         (3/2) r_k^2 int |u_k|, exact strip r^2 int |v0| when equal ] / m1
//         + |(1+sigma)^2 - 1|                          (exact dilation term:
//         chamber 1 is convex and the dilation center lies in its closure,
//         so the dilated chambers nest).
// Requires supbound <= 1 on every profile and |sigma| < 1/2 (GateError).
std::pair<double, double> asymmetry_upper_chain(const PerturbedBubble& pb,
                                                int grid);

}  // namespace bubblestab
