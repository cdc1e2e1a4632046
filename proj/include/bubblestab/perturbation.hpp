#pragma once

#include <utility>

#include "bubblestab/geometry.hpp"
#include "bubblestab/profiles.hpp"

namespace bubblestab {

// A dilation-plus-normal-displacement perturbation of the standard bubble:
// each arc k is moved radially by r_k u_k, the equal-mass segment interface
// is moved horizontally by r v0, and the whole cluster is dilated by
// (1 + sigma) about the singular midpoint. Profiles vanish at the singular
// points by construction (sine basis), so the perturbed arcs still meet
// there.
//
// profile0 is u0 on (-theta0, theta0) for unequal masses, or v0 on the
// canonical interface interval (-sqrt(3)/2, sqrt(3)/2) for equal masses
// (physical displacement r v0, physical interval scaled by r).
struct PerturbedBubble {
  StandardBubble base;
  double sigma = 0.0;
  ArcProfile profile0;
  ArcProfile profile1;
  ArcProfile profile2;
};

// Exact chamber areas:
//   |E(1)| = (1+sigma)^2 (m1 + r1^2 I1 + r0^2 I0)
//   |E(2)| = (1+sigma)^2 (m2 + r2^2 I2 - r0^2 I0)
// with I_k the exact sector area changes; the equal-mass interface term is
// r^2 * mean(v0) (positive displacement grows chamber 1).
std::pair<double, double> volumes(const PerturbedBubble& pb);

// Builds a volume-feasible perturbation from raw profiles: solves sigma
// exactly from the summed constraint, then restores the split constraint by
// adding c * phi_j to the interface profile, where j is the bump_mode-th odd
// basis mode and c solves a scalar quadratic (linear for equal masses).
//
// Gates: every input profile and the corrected interface profile must have
// supbound <= eps (eps <= 0.2), and |sigma| <= sigma_cap; violations throw
// GateError. A nonpositive sigma radicand throws
// PerturbationTooLargeError; a negative correction discriminant throws
// InfeasibleCorrectionError.
PerturbedBubble enforce_volumes(const StandardBubble& base,
                                const ArcProfile& p0, const ArcProfile& p1,
                                const ArcProfile& p2, int bump_mode = 1,
                                double eps = 0.05, double sigma_cap = 0.05);

// (1+sigma) [ r1 len(u1) + r2 len(u2) + r0 len(u0) ] with exact arc lengths
// (equal-mass interface term: r * segment_length(v0)).
double perimeter_exact(const PerturbedBubble& pb);

struct DeficitBreakdown {
  double exact_perimeter = 0.0;
  double deficit = 0.0;          // exact_perimeter / P(E0) - 1
  double quadratic_model = 0.0;  // second-order model of (P - P0)/(1+sigma)
  double residual = 0.0;         // (P - P0)/(1+sigma) - quadratic_model
};

// Second-order deficit model sigma^2 P(E0)/2 + sum_k r_k/2 (h1sq_k - l2sq_k)
// (the equal-mass segment contributes r h1sq(v0)/2 and no L2 term), built
// entirely from closed-form moments. Requires a volume-feasible pb.
DeficitBreakdown deficit(const PerturbedBubble& pb);

// Boundary polylines of the perturbed cluster (chamber areas then follow
// the shoelace oracle; used by the asymmetry engine).
EmbeddedBubble embed_perturbed(const PerturbedBubble& pb, int arc_samples);

}  // namespace bubblestab
