#pragma once

#include <iosfwd>
#include <vector>

#include "bubblestab/geometry.hpp"

namespace bubblestab {

// Coefficients of the quadratic form q(x, y) = b1 x^2 + b2 y^2 + 2 b3 x y
// controlling the deficit from below in the scaled area changes
// (sqrt(r1) I1, sqrt(r2) I2). det and eigen_min are derived fields:
// eigen_min is the smaller eigenvalue of [[b1, b3], [b3, b2]].
struct FormCoefficients {
  double b1 = 0.0;
  double b2 = 0.0;
  double b3 = 0.0;
  double det = 0.0;
  double eigen_min = 0.0;
};

// Smaller eigenvalue of the symmetric 2x2 matrix [[b1, b3], [b3, b2]].
double eigen_min_2x2(double b1, double b2, double b3);

// Coefficients for an unequal-mass bubble:
//   b1 = g(t0) (r1/r0)^3 (m2/M)^2 + g(t1) + (r1^3/4) P0 / M^2
//   b2 = g(t0) (r2/r0)^3 (m1/M)^2 + g(t2) + (r2^3/4) P0 / M^2
//   b3 = -g(t0) (r1 r2)^{3/2}/r0^3 (m1 m2/M^2) + ((r1 r2)^{3/2}/4) P0 / M^2
// with M = m1 + m2. All terms are dimensionless, so the result is invariant
// under uniform dilation of the bubble.
FormCoefficients beta_coeffs_from(const StandardBubble& b);

// Same, from the canonical parametrization r1 in (0, 1), r2 = 1.
FormCoefficients beta_coeffs(double r1);

// Equal-mass coefficients (canonical r = 1, m = 2 pi/3 + sqrt(3)/4):
//   a1 = a2 = (1/4) g(sqrt(3)/2) + g(2 pi/3) + 1/(2m)
//   a3 = -(1/4) g(sqrt(3)/2) + 1/(2m)
// Positivity of a1 and of the determinant is asserted (NumericError).
FormCoefficients alpha_coeffs();

// Checks b1 x^2 + b2 y^2 + 2 b3 x y >= eigen_min (x^2 + y^2) up to rounding
// slack; the spectral theorem makes this an identity test of eigen_min.
bool form_lower_bound(const FormCoefficients& fc, double x, double y);

struct BetaScanRecord {
  double r = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double b3 = 0.0;
  double det = 0.0;
  double det_over_r = 0.0;
  double eigen_min = 0.0;
};

struct BetaScan {
  // min over the scan of min{b1, det}, sharpened by a 10x refinement pass
  // around the coarse argmin; positive by assertion.
  double beta_star = 0.0;
  double argmin_r = 0.0;
  // Empirical modulus of continuity: max over consecutive grid pairs of
  // max_i |b_i(r+h) - b_i(r)| / h. Recorded, not asserted.
  double lipschitz = 0.0;
  std::vector<BetaScanRecord> records;
};

// Dense positivity scan over r in {i/(grid+1)}: fills the record table,
// finds beta_star = min min{b1, det} (refined 10x around the argmin), and
// throws NumericError if any scanned value is nonpositive.
BetaScan beta_star_scan(int grid = 10000);

// Scan table as CSV with columns r,b1,b2,b3,det,det_over_r,eigen_min.
void write_beta_csv(const BetaScan& scan, std::ostream& out);

// Self-contained two-panel SVG: b1 against r, det/r against r.
void write_beta_svg(const BetaScan& scan, std::ostream& out);

}  // namespace bubblestab
