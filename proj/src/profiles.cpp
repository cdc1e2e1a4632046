#include "bubblestab/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "bubblestab/errors.hpp"
#include "bubblestab/quadrature.hpp"

namespace bubblestab {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt3 = 1.7320508075688772;

void require_half_width(const ArcProfile& p) {
  if (!(p.half_width > 0.0)) {
    throw std::domain_error("ArcProfile: half_width must be positive");
  }
}

}  // namespace

double ArcProfile::eval(double x) const {
  const double w = kPi / (2.0 * half_width);
  double sum = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    sum += coeffs[j] * std::sin((j + 1) * w * (x + half_width));
  }
  return sum;
}

double ArcProfile::deriv(double x) const {
  const double w = kPi / (2.0 * half_width);
  double sum = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    sum += coeffs[j] * (j + 1) * w * std::cos((j + 1) * w * (x + half_width));
  }
  return sum;
}

bool ArcProfile::zero() const {
  for (double c : coeffs) {
    if (c != 0.0) return false;
  }
  return true;
}

Moments moments(const ArcProfile& p) {
  require_half_width(p);
  const double h = p.half_width;
  Moments m;
  for (std::size_t idx = 0; idx < p.coeffs.size(); ++idx) {
    const double c = p.coeffs[idx];
    const int j = static_cast<int>(idx) + 1;
    if (j % 2 == 1) m.mean += c * 4.0 * h / (j * kPi);
    m.l2sq += h * c * c;
    m.h1sq += c * c * (j * kPi) * (j * kPi) / (4.0 * h);
    m.supbound += std::fabs(c);
  }
  return m;
}

double sector_area_delta(const ArcProfile& p) {
  const Moments m = moments(p);
  return m.mean + 0.5 * m.l2sq;
}

double arc_length(const ArcProfile& p) {
  require_half_width(p);
  const Moments m = moments(p);
  if (m.supbound >= 1.0) {
    throw std::domain_error("arc_length: supbound must be < 1");
  }
  const double h = p.half_width;
  const double value = integrate(
      [&](double x) {
        const double u = p.eval(x);
        const double du = p.deriv(x);
        return std::sqrt((1.0 + u) * (1.0 + u) + du * du);
      },
      -h, h);
  double min_radial = 1.0;
  for (int i = 0; i <= 256; ++i) {
    const double x = -h + 2.0 * h * i / 256.0;
    min_radial = std::min(min_radial, 1.0 + p.eval(x));
  }
  if (value < 2.0 * h * min_radial - 1e-9) {
    throw NumericError("arc_length: below the radial lower bound");
  }
  return value;
}

double arc_length_quadratic(const ArcProfile& p) {
  const Moments m = moments(p);
  return 2.0 * p.half_width + m.mean + 0.5 * m.h1sq;
}

double segment_length(const ArcProfile& p) {
  if (std::fabs(p.half_width - 0.5 * kSqrt3) > 1e-12) {
    throw std::domain_error("segment_length: half_width must be sqrt(3)/2");
  }
  const double h = p.half_width;
  return integrate(
      [&](double x) {
        const double du = p.deriv(x);
        return std::sqrt(1.0 + du * du);
      },
      -h, h);
}

double segment_length_quadratic(const ArcProfile& p) {
  if (std::fabs(p.half_width - 0.5 * kSqrt3) > 1e-12) {
    throw std::domain_error(
        "segment_length_quadratic: half_width must be sqrt(3)/2");
  }
  return kSqrt3 + 0.5 * moments(p).h1sq;
}

double abs_mean(const ArcProfile& p) {
  require_half_width(p);
  if (p.zero()) return 0.0;
  const double h = p.half_width;
  // |u| has kinks at sign changes; a slightly loose tolerance keeps the
  // adaptive subdivision cheap there.
  return integrate([&](double x) { return std::fabs(p.eval(x)); }, -h, h,
                   1e-11);
}

double symdiff_sector_bound(const ArcProfile& p) {
  if (moments(p).supbound > 1.0) {
    throw std::domain_error("symdiff_sector_bound: supbound must be <= 1");
  }
  return 1.5 * abs_mean(p);
}

ArcProfile project(const std::function<double(double)>& f, double half_width,
                   int modes) {
  if (!(half_width > 0.0)) {
    throw std::domain_error("project: half_width must be positive");
  }
  if (modes < 1) throw std::domain_error("project: modes must be >= 1");
  ArcProfile p;
  p.half_width = half_width;
  p.coeffs.resize(static_cast<std::size_t>(modes));
  const double w = kPi / (2.0 * half_width);
  for (int j = 1; j <= modes; ++j) {
    const double inner = integrate(
        [&](double x) { return f(x) * std::sin(j * w * (x + half_width)); },
        -half_width, half_width);
    p.coeffs[static_cast<std::size_t>(j - 1)] = inner / half_width;
  }
  return p;
}

ArcProfile reflected(const ArcProfile& p) {
  ArcProfile r = p;
  for (std::size_t idx = 1; idx < r.coeffs.size(); idx += 2) {
    r.coeffs[idx] = -r.coeffs[idx];
  }
  return r;
}

}  // namespace bubblestab
