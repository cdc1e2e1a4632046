#include "bubblestab/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "bubblestab/errors.hpp"

namespace bubblestab {
namespace {

constexpr double kPi = 3.14159265358979323846;

void require_theta(double theta, const char* who) {
  if (!(theta > 0.0 && theta < kPi)) {
    throw std::domain_error(std::string(who) + ": theta must lie in (0, pi)");
  }
}

}  // namespace

double ConstrainedInfimum::eval(double t) const {
  return c - c_over_cos * std::cos(t);
}

double g_value(double theta) {
  require_theta(theta, "g_value");
  return std::cos(theta) / (2.0 * (std::sin(theta) - theta * std::cos(theta)));
}

ConstrainedInfimum constrained_infimum(double theta, double s) {
  require_theta(theta, "constrained_infimum");
  ConstrainedInfimum r;
  r.theta = theta;
  r.s = s;
  r.value = g_value(theta) * s * s;
  // c = s / (2 (theta - tan theta)) written without the tangent pole:
  // theta cos theta - sin theta is negative and bounded away from 0 on
  // (0, pi), so both coefficients stay finite through theta = pi/2.
  const double denom = 2.0 * (theta * std::cos(theta) - std::sin(theta));
  r.c = s * std::cos(theta) / denom;
  r.c_over_cos = s / denom;
  return r;
}

GalerkinResult galerkin(double theta, double s, int modes) {
  require_theta(theta, "galerkin");
  if (modes < 8) throw std::domain_error("galerkin: modes must be >= 8");

  const auto a = [&](int j) {
    const double w = j * kPi / (2.0 * theta);
    return theta * (w * w - 1.0);
  };
  const auto b = [&](int j) {
    return j % 2 == 1 ? 4.0 * theta / (j * kPi) : 0.0;
  };

  // Restricted-Hessian check. Eliminating c_1 via the constraint leaves
  // diag(a_2..a_N) plus the rank-one term a_1 (b/b_1)(b/b_1)^T, which is
  // positive semidefinite iff a_j > 0 for j >= 2 and, when a_1 < 0,
  // sum_j b_j^2/a_j <= 0 (rank-one update lemma).
  for (int j = 2; j <= modes; ++j) {
    if (!(a(j) > 0.0)) {
      throw NumericError("galerkin: restricted Hessian indefinite");
    }
  }
  double sum = 0.0;
  for (int j = 1; j <= modes; j += 2) sum += b(j) * b(j) / a(j);

  GalerkinResult r;
  r.coeffs.assign(static_cast<std::size_t>(modes), 0.0);

  const double a1 = a(1);
  if (std::fabs(a1) <= 1e-13 * theta) {
    // Degenerate first mode (theta = pi/2): it carries the whole
    // constraint at zero energy.
    r.value = 0.0;
    r.coeffs[0] = s / b(1);
    return r;
  }
  if (a1 < 0.0 && !(sum <= 0.0)) {
    throw NumericError("galerkin: restricted Hessian indefinite");
  }

  const double lambda = 2.0 * s / sum;
  for (int j = 1; j <= modes; j += 2) {
    r.coeffs[static_cast<std::size_t>(j - 1)] = lambda * b(j) / (2.0 * a(j));
  }
  r.value = s * s / sum;
  return r;
}

double galerkin_infimum(double theta, double s, int modes) {
  return galerkin(theta, s, modes).value;
}

double dirichlet_eig_min(double theta, int modes) {
  if (!(theta > 0.0)) {
    throw std::domain_error("dirichlet_eig_min: theta must be positive");
  }
  if (modes < 1) throw std::domain_error("dirichlet_eig_min: modes >= 1");
  double best = 0.0;
  for (int j = 1; j <= modes; ++j) {
    const double w = j * kPi / (2.0 * theta);
    if (j == 1 || w * w < best) best = w * w;
  }
  return best;
}

double fuglede_M(double theta) {
  require_theta(theta, "fuglede_M");
  return 2.0 * kPi * kPi / (theta * (kPi * kPi - theta * theta));
}

FugledeCheck fuglede_check(double theta, const ArcProfile& p) {
  require_theta(theta, "fuglede_check");
  if (std::fabs(p.half_width - theta) > 1e-12) {
    throw std::domain_error("fuglede_check: profile half_width != theta");
  }
  const Moments m = moments(p);
  FugledeCheck r;
  r.holds_hypothesis =
      m.mean * m.mean <= m.l2sq / fuglede_M(theta) + 1e-15 * m.l2sq;
  if (!r.holds_hypothesis) return r;
  r.lhs = m.h1sq - m.l2sq;
  r.rhs = 0.25 * (1.0 - theta * theta / (kPi * kPi)) * m.h1sq +
          0.5 * (kPi * kPi / (theta * theta) - 1.0) * m.l2sq;
  const double slack = 1e-12 * (1.0 + std::fabs(r.lhs) + std::fabs(r.rhs));
  if (r.lhs < r.rhs - slack) {
    throw NumericError("fuglede_check: coercivity bound violated");
  }
  return r;
}

}  // namespace bubblestab
