#pragma once

#include <vector>

#include "bubblestab/profiles.hpp"

namespace bubblestab {

// Constrained minimum of the quadratic energy integral (u')^2 - u^2 over
// W^{1,2}_0(-theta, theta) with prescribed mean s. The minimizer is
// u(t) = c (1 - cos t / cos theta), stored through the numerically stable
// pair (c, c_over_cos = c / cos theta) which stays finite through
// theta = pi/2, where the problem degenerates to value 0 with a pure
// cosine minimizer.
struct ConstrainedInfimum {
  double theta = 0.0;
  double s = 0.0;
  double value = 0.0;
  double c = 0.0;
  double c_over_cos = 0.0;

  double eval(double t) const;
};

// g(theta) = cos theta / (2 (sin theta - theta cos theta)); the constrained
// infimum equals g(theta) s^2. Decreases from +inf to -1/(2 pi) on (0, pi).
double g_value(double theta);

ConstrainedInfimum constrained_infimum(double theta, double s);

struct GalerkinResult {
  double value = 0.0;
  std::vector<double> coeffs;
};

// Independent oracle for the constrained infimum: KKT minimization over the
// first `modes` sine modes, where the energy is diagonal with entries
// a_j = theta ((j pi / 2 theta)^2 - 1) and the mean constraint has weights
// b_j = 4 theta / (j pi) on odd modes. Positive semidefiniteness of the
// energy restricted to the constraint hyperplane is verified through the
// diagonal-plus-rank-one structure before the stationary point is trusted.
// Nonincreasing in modes; converges to g(theta) s^2 from above.
GalerkinResult galerkin(double theta, double s, int modes);

// Convenience wrapper returning only the energy.
double galerkin_infimum(double theta, double s, int modes);

// Smallest Dirichlet eigenvalue of -u'' on (-theta, theta) among the first
// `modes` sine modes: min_j (j pi / 2 theta)^2 = (pi / 2 theta)^2.
double dirichlet_eig_min(double theta, int modes);

// Mean-suppression threshold M(theta) = 2 pi^2 / (theta (pi^2 - theta^2)).
double fuglede_M(double theta);

struct FugledeCheck {
  bool holds_hypothesis = false;
  double lhs = 0.0;
  double rhs = 0.0;
};

// Tests the hypothesis (integral u)^2 <= (1/M) integral u^2 and, when it
// holds, asserts the coercivity bound
//   integral (u')^2 - u^2 >= (1/4)(1 - theta^2/pi^2) integral (u')^2
//                           + (1/2)(pi^2/theta^2 - 1) integral u^2,
// throwing NumericError on violation. Both sides are returned.
FugledeCheck fuglede_check(double theta, const ArcProfile& p);

}  // namespace bubblestab
