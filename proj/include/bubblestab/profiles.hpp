#pragma once

#include <functional>
#include <vector>

namespace bubblestab {

// Perturbation function on the symmetric interval (-h, h) in the sine basis
// phi_j(x) = sin(j pi (x + h) / (2 h)), j = 1..N. Every represented function
// vanishes at both endpoints exactly, which pins the perturbed arcs to the
// singular points. The basis diagonalizes the Dirichlet problem, so the
// mean, L2 and H1 moments have closed forms that are used as the
// authoritative values everywhere; quadrature only appears where no closed
// form exists (exact lengths, absolute integrals).
struct ArcProfile {
  double half_width = 0.0;
  std::vector<double> coeffs;

  double eval(double x) const;
  double deriv(double x) const;
  bool zero() const;
};

struct Moments {
  double mean = 0.0;      // integral of u
  double l2sq = 0.0;      // integral of u^2
  double h1sq = 0.0;      // integral of (u')^2
  double supbound = 0.0;  // sum |c_j|, an upper bound for sup |u|
};

// Closed forms: mean = sum_{j odd} c_j 4h/(j pi); l2sq = h sum c_j^2;
// h1sq = sum c_j^2 (j pi)^2 / (4 h); supbound = sum |c_j|.
Moments moments(const ArcProfile& p);

// Exact area change of the perturbed circular sector: integral of u + u^2/2.
double sector_area_delta(const ArcProfile& p);

// Exact length of the perturbed unit arc, adaptive quadrature of
// sqrt((1+u)^2 + (u')^2). Requires supbound < 1 (the radial graph could
// otherwise self-intersect).
double arc_length(const ArcProfile& p);

// Second-order model 2h + integral u + integral (u')^2 / 2.
double arc_length_quadratic(const ArcProfile& p);

// Exact length of the graph over the flat interface, quadrature of
// sqrt(1 + (u')^2). Requires half_width = sqrt(3)/2 (the canonical
// interface; physical lengths are scaled by r externally).
double segment_length(const ArcProfile& p);

// Second-order model sqrt(3) + integral (u')^2 / 2 (no first-order term:
// normal displacement of a straight segment).
double segment_length_quadratic(const ArcProfile& p);

// Integral of |u| by adaptive quadrature.
double abs_mean(const ArcProfile& p);

// Upper bound (3/2) integral |u| for the area of the symmetric difference
// between the perturbed and unperturbed sectors. Requires supbound <= 1.
double symdiff_sector_bound(const ArcProfile& p);

// L2 projection of f onto the first `modes` basis functions.
ArcProfile project(const std::function<double(double)>& f, double half_width,
                   int modes);

// The profile x -> u(-x): flips the sign of even-indexed modes.
ArcProfile reflected(const ArcProfile& p);

}  // namespace bubblestab
