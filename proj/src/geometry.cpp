#include "bubblestab/geometry.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "bubblestab/errors.hpp"

namespace bubblestab {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt3 = 1.7320508075688772;
constexpr double kInf = std::numeric_limits<double>::infinity();

// m1 = m2 = kEqualMassUnit * r^2 for the equal-mass bubble.
constexpr double kEqualMassUnit = 2.0 * kPi / 3.0 + kSqrt3 / 4.0;

double mass_ratio(double r1) {
  const StandardBubble b = from_r1(r1);
  return b.m1 / b.m2;
}

// The inversion in from_masses assumes m1/m2 is increasing in r1. That is
// not proved anywhere, so it is checked on a grid once per process.
void check_ratio_monotonicity() {
  static const bool ok = [] {
    double prev = mass_ratio(0.005);
    for (int i = 1; i <= 128; ++i) {
      const double r1 = 0.005 + (0.995 - 0.005) * i / 128.0;
      const double cur = mass_ratio(r1);
      if (cur <= prev) return false;
      prev = cur;
    }
    return true;
  }();
  if (!ok) {
    throw NumericError(
        "from_masses: mass ratio is not monotone on the check grid");
  }
}

Vec2 dir(double angle) { return {std::cos(angle), std::sin(angle)}; }

}  // namespace

StandardBubble from_r1(double r1) {
  if (!(r1 > 0.0 && r1 < 1.0)) {
    throw std::domain_error("from_r1: r1 must lie in (0, 1)");
  }
  StandardBubble b;
  b.r1 = r1;
  b.r2 = 1.0;
  b.r0 = r1 / (1.0 - r1);
  b.theta0 = std::atan(kSqrt3 * (1.0 - r1) / (1.0 + r1));
  b.theta1 = 2.0 * kPi / 3.0 - b.theta0;
  b.theta2 = 2.0 * kPi / 3.0 + b.theta0;
  b.m1 = b.theta1 * r1 * r1 + b.theta0 * b.r0 * b.r0 -
         0.5 * kSqrt3 * b.r0 * r1;
  b.m2 = b.theta2 - b.theta0 * b.r0 * b.r0 + 0.5 * kSqrt3 * b.r0;
  b.scale = 1.0;
  b.equal_mass = false;
  return b;
}

StandardBubble equal_from_radius(double r) {
  if (!(r > 0.0)) {
    throw std::domain_error("equal_from_radius: r must be positive");
  }
  StandardBubble b;
  b.r0 = kInf;
  b.r1 = r;
  b.r2 = r;
  b.theta0 = 0.0;
  b.theta1 = 2.0 * kPi / 3.0;
  b.theta2 = 2.0 * kPi / 3.0;
  b.m1 = kEqualMassUnit * r * r;
  b.m2 = b.m1;
  b.scale = r;
  b.equal_mass = true;
  return b;
}

StandardBubble scaled(const StandardBubble& b, double t) {
  if (!(t > 0.0)) throw std::domain_error("scaled: t must be positive");
  StandardBubble s = b;
  if (!b.equal_mass) s.r0 = b.r0 * t;
  s.r1 = b.r1 * t;
  s.r2 = b.r2 * t;
  s.m1 = b.m1 * t * t;
  s.m2 = b.m2 * t * t;
  s.scale = b.scale * t;
  return s;
}

StandardBubble from_masses(double m1, double m2) {
  if (!(m1 > 0.0) || !(m2 >= m1)) {
    throw std::domain_error("from_masses: need m2 >= m1 > 0");
  }
  if (m2 - m1 <= 1e-14 * m2) {
    const double m = 0.5 * (m1 + m2);
    return equal_from_radius(std::sqrt(m / kEqualMassUnit));
  }
  check_ratio_monotonicity();
  const double target = m1 / m2;
  double lo = 1e-6;
  double hi = 1.0 - 1e-6;
  double flo = mass_ratio(lo) - target;
  double fhi = mass_ratio(hi) - target;
  if (!(flo < 0.0 && fhi > 0.0)) {
    std::ostringstream msg;
    msg << "from_masses: ratio " << target << " not bracketed on [" << lo
        << ", " << hi << "] (endpoint ratios " << flo + target << ", "
        << fhi + target << ")";
    throw NumericError(msg.str());
  }
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    if (mass_ratio(mid) - target < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const StandardBubble canonical = from_r1(0.5 * (lo + hi));
  return scaled(canonical, std::sqrt(m1 / canonical.m1));
}

double perimeter(const StandardBubble& b) {
  const double by_masses = 2.0 * (b.m1 / b.r1 + b.m2 / b.r2);
  const double by_arcs =
      b.equal_mass
          ? 2.0 * b.theta1 * (b.r1 + b.r2) + kSqrt3 * b.r1
          : 2.0 * (b.theta1 * b.r1 + b.theta2 * b.r2 + b.theta0 * b.r0);
  if (std::fabs(by_arcs - by_masses) > 1e-10 * by_masses) {
    throw NumericError("perimeter: mass and arc formulas disagree");
  }
  return by_masses;
}

double polygon_area(const std::vector<Vec2>& poly) {
  const std::size_t n = poly.size();
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    twice += p.x * q.y - q.x * p.y;
  }
  return 0.5 * twice;
}

EmbeddedBubble embed_displaced(
    const StandardBubble& b, int arc_samples,
    const std::function<double(int, double)>& displacement, double sigma) {
  if (arc_samples < 16) {
    throw std::domain_error("embed: need at least 16 samples per arc");
  }
  const int n = arc_samples;
  EmbeddedBubble e;
  e.arc_samples = n;

  if (b.equal_mass) {
    const double r = b.r1;
    e.P0 = {-kInf, 0.0};
    e.P1 = {-0.5 * r, 0.0};
    e.P2 = {0.5 * r, 0.0};
    e.t1 = kInf;
    e.t2 = kInf;
    e.S_top = {0.0, 0.5 * kSqrt3 * r};
    e.S_bot = {0.0, -0.5 * kSqrt3 * r};
    e.midpoint = {0.0, 0.0};

    // Chamber 1: counterclockwise, left arc from the top singular point,
    // then the interface segment back up.
    e.chamber1.reserve(2 * n);
    for (int i = 0; i <= n; ++i) {
      const double s = -b.theta1 + 2.0 * b.theta1 * i / n;
      e.chamber1.push_back(e.P1 + r * (1.0 + displacement(1, s)) *
                                      dir(kPi + s));
    }
    for (int i = 1; i < n; ++i) {
      const double x = -0.5 * kSqrt3 + kSqrt3 * i / n;
      e.chamber1.push_back({r * displacement(0, x), r * x});
    }
    // Chamber 2: interface downward, then the right arc.
    e.chamber2.reserve(2 * n);
    for (int i = 0; i <= n; ++i) {
      const double x = 0.5 * kSqrt3 - kSqrt3 * i / n;
      e.chamber2.push_back({r * displacement(0, x), r * x});
    }
    for (int i = 1; i < n; ++i) {
      const double s = -b.theta2 + 2.0 * b.theta2 * i / n;
      e.chamber2.push_back(e.P2 + r * (1.0 + displacement(2, s)) * dir(s));
    }
  } else {
    const double sin0 = std::sin(b.theta0);
    e.P0 = {0.0, 0.0};
    e.t1 = b.r1 * (0.5 * kSqrt3) / sin0;
    e.t2 = b.r2 * (0.5 * kSqrt3) / sin0;
    e.P1 = {e.t1, 0.0};
    e.P2 = {e.t2, 0.0};
    e.S_top = {b.r0 * std::cos(b.theta0), b.r0 * sin0};
    e.S_bot = {e.S_top.x, -e.S_top.y};
    e.midpoint = {e.S_top.x, 0.0};

    // Chamber 1: its own arc from the top singular point around the left,
    // then the interface arc back up (counterclockwise).
    e.chamber1.reserve(2 * n);
    for (int i = 0; i <= n; ++i) {
      const double s = -b.theta1 + 2.0 * b.theta1 * i / n;
      e.chamber1.push_back(e.P1 + b.r1 * (1.0 + displacement(1, s)) *
                                      dir(kPi + s));
    }
    for (int i = 1; i < n; ++i) {
      const double s = -b.theta0 + 2.0 * b.theta0 * i / n;
      e.chamber1.push_back(e.P0 + b.r0 * (1.0 + displacement(0, s)) * dir(s));
    }
    // Chamber 2: interface downward, then its own arc around the right.
    e.chamber2.reserve(2 * n);
    for (int i = 0; i <= n; ++i) {
      const double s = b.theta0 - 2.0 * b.theta0 * i / n;
      e.chamber2.push_back(e.P0 + b.r0 * (1.0 + displacement(0, s)) * dir(s));
    }
    for (int i = 1; i < n; ++i) {
      const double s = -b.theta2 + 2.0 * b.theta2 * i / n;
      e.chamber2.push_back(e.P2 + b.r2 * (1.0 + displacement(2, s)) * dir(s));
    }
  }

  if (sigma != 0.0) {
    const double f = 1.0 + sigma;
    auto dilate = [&](Vec2 p) { return e.midpoint + f * (p - e.midpoint); };
    for (auto& p : e.chamber1) p = dilate(p);
    for (auto& p : e.chamber2) p = dilate(p);
    e.S_top = dilate(e.S_top);
    e.S_bot = dilate(e.S_bot);
  }
  return e;
}

EmbeddedBubble embed(const StandardBubble& b, int arc_samples) {
  return embed_displaced(
      b, arc_samples, [](int, double) { return 0.0; }, 0.0);
}

}  // namespace bubblestab
