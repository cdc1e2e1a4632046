#include "bubblestab/perturbation.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bubblestab/errors.hpp"

namespace bubblestab {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt3 = 1.7320508075688772;

double interface_half_width(const StandardBubble& b) {
  return b.equal_mass ? 0.5 * kSqrt3 : b.theta0;
}

void require_widths(const PerturbedBubble& pb, const char* who) {
  const auto need = [&](const ArcProfile& p, double h) {
    if (std::fabs(p.half_width - h) > 1e-12) {
      throw std::domain_error(std::string(who) +
                              ": profile half_width does not match the base");
    }
  };
  need(pb.profile0, interface_half_width(pb.base));
  need(pb.profile1, pb.base.theta1);
  need(pb.profile2, pb.base.theta2);
}

// Exact area changes of the three boundary pieces, in the units of the
// volume formulas: {r1^2 I1, r2^2 I2, interface term}.
struct AreaChanges {
  double arc1 = 0.0;
  double arc2 = 0.0;
  double interface = 0.0;  // r0^2 I0, or r^2 mean(v0) for equal masses
};

AreaChanges area_changes(const PerturbedBubble& pb) {
  const StandardBubble& b = pb.base;
  AreaChanges d;
  d.arc1 = b.r1 * b.r1 * sector_area_delta(pb.profile1);
  d.arc2 = b.r2 * b.r2 * sector_area_delta(pb.profile2);
  d.interface = b.equal_mass
                    ? b.r1 * b.r1 * moments(pb.profile0).mean
                    : b.r0 * b.r0 * sector_area_delta(pb.profile0);
  return d;
}

}  // namespace

std::pair<double, double> volumes(const PerturbedBubble& pb) {
  require_widths(pb, "volumes");
  const AreaChanges d = area_changes(pb);
  const double f = (1.0 + pb.sigma) * (1.0 + pb.sigma);
  return {f * (pb.base.m1 + d.arc1 + d.interface),
          f * (pb.base.m2 + d.arc2 - d.interface)};
}

PerturbedBubble enforce_volumes(const StandardBubble& base,
                                const ArcProfile& p0, const ArcProfile& p1,
                                const ArcProfile& p2, int bump_mode,
                                double eps, double sigma_cap) {
  if (!(eps > 0.0 && eps <= 0.2)) {
    throw std::domain_error("enforce_volumes: eps must lie in (0, 0.2]");
  }
  if (bump_mode < 1) {
    throw std::domain_error("enforce_volumes: bump_mode must be >= 1");
  }
  PerturbedBubble pb{base, 0.0, p0, p1, p2};
  require_widths(pb, "enforce_volumes");
  for (const ArcProfile* p : {&p0, &p1, &p2}) {
    if (moments(*p).supbound > eps) {
      throw GateError("enforce_volumes: input profile exceeds the eps gate");
    }
  }

  const double I1 = sector_area_delta(p1);
  const double I2 = sector_area_delta(p2);
  const double mass = base.m1 + base.m2;
  const double q =
      1.0 + (base.r1 * base.r1 * I1 + base.r2 * base.r2 * I2) / mass;
  if (!(q > 0.0)) {
    throw PerturbationTooLargeError(
        "enforce_volumes: sigma radicand is nonpositive");
  }
  pb.sigma = 1.0 / std::sqrt(q) - 1.0;
  if (std::fabs(pb.sigma) > sigma_cap) {
    std::ostringstream msg;
    msg << "enforce_volumes: |sigma| = " << std::fabs(pb.sigma)
        << " exceeds the cap " << sigma_cap;
    throw GateError(msg.str());
  }

  // Interface correction along the bump_mode-th odd basis mode.
  const int j = 2 * bump_mode - 1;
  const double h = interface_half_width(base);
  if (pb.profile0.coeffs.size() < static_cast<std::size_t>(j)) {
    pb.profile0.coeffs.resize(static_cast<std::size_t>(j), 0.0);
  }
  const double basis_mean = 4.0 * h / (j * kPi);
  const double existing = pb.profile0.coeffs[static_cast<std::size_t>(j - 1)];
  double c = 0.0;
  if (base.equal_mass) {
    const double target = 0.5 * (I2 - I1);
    c = (target - moments(pb.profile0).mean) / basis_mean;
  } else {
    const double target =
        (base.m1 * base.r2 * base.r2 * I2 - base.m2 * base.r1 * base.r1 * I1) /
        (mass * base.r0 * base.r0);
    const double now = sector_area_delta(pb.profile0);
    // (h/2) c^2 + (basis_mean + h * existing) c + (now - target) = 0.
    const double qa = 0.5 * h;
    const double qb = basis_mean + h * existing;
    const double qc = now - target;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) {
      throw InfeasibleCorrectionError(
          "enforce_volumes: interface correction has no real root");
    }
    const double root = std::sqrt(disc);
    const double r1 = (-qb + root) / (2.0 * qa);
    const double r2 = (-qb - root) / (2.0 * qa);
    c = std::fabs(r1) <= std::fabs(r2) ? r1 : r2;
  }
  pb.profile0.coeffs[static_cast<std::size_t>(j - 1)] = existing + c;

  if (moments(pb.profile0).supbound > eps) {
    throw GateError(
        "enforce_volumes: corrected interface profile exceeds the eps gate");
  }
  const auto [v1, v2] = volumes(pb);
  if (std::fabs(v1 - base.m1) > 1e-10 * mass ||
      std::fabs(v2 - base.m2) > 1e-10 * mass) {
    throw NumericError("enforce_volumes: volume restoration failed");
  }
  return pb;
}

double perimeter_exact(const PerturbedBubble& pb) {
  require_widths(pb, "perimeter_exact");
  const StandardBubble& b = pb.base;
  const double interface_len = b.equal_mass
                                   ? b.r1 * segment_length(pb.profile0)
                                   : b.r0 * arc_length(pb.profile0);
  return (1.0 + pb.sigma) * (b.r1 * arc_length(pb.profile1) +
                             b.r2 * arc_length(pb.profile2) + interface_len);
}

DeficitBreakdown deficit(const PerturbedBubble& pb) {
  require_widths(pb, "deficit");
  const StandardBubble& b = pb.base;
  const auto [v1, v2] = volumes(pb);
  if (std::fabs(v1 - b.m1) > 1e-6 * (b.m1 + b.m2) ||
      std::fabs(v2 - b.m2) > 1e-6 * (b.m1 + b.m2)) {
    throw std::domain_error("deficit: pb is not volume-feasible");
  }
  const double p0 = perimeter(b);
  DeficitBreakdown r;
  r.exact_perimeter = perimeter_exact(pb);
  r.deficit = r.exact_perimeter / p0 - 1.0;

  const Moments m0 = moments(pb.profile0);
  const Moments m1 = moments(pb.profile1);
  const Moments m2 = moments(pb.profile2);
  double model = 0.5 * pb.sigma * pb.sigma * p0;
  model += 0.5 * b.r1 * (m1.h1sq - m1.l2sq);
  model += 0.5 * b.r2 * (m2.h1sq - m2.l2sq);
  model += b.equal_mass ? 0.5 * b.r1 * m0.h1sq
                        : 0.5 * b.r0 * (m0.h1sq - m0.l2sq);
  r.quadratic_model = model;
  r.residual = (r.exact_perimeter - p0) / (1.0 + pb.sigma) - model;
  return r;
}

EmbeddedBubble embed_perturbed(const PerturbedBubble& pb, int arc_samples) {
  require_widths(pb, "embed_perturbed");
  const auto displacement = [&pb](int k, double s) {
    switch (k) {
      case 0:
        return pb.profile0.eval(s);
      case 1:
        return pb.profile1.eval(s);
      default:
        return pb.profile2.eval(s);
    }
  };
  return embed_displaced(pb.base, arc_samples, displacement, pb.sigma);
}

}  // namespace bubblestab
