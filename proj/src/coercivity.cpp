#include "bubblestab/coercivity.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "bubblestab/errors.hpp"
#include "bubblestab/parallel.hpp"
#include "bubblestab/spectral.hpp"

namespace bubblestab {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSqrt3 = 1.7320508075688772;

FormCoefficients finish(double b1, double b2, double b3) {
  FormCoefficients fc;
  fc.b1 = b1;
  fc.b2 = b2;
  fc.b3 = b3;
  fc.det = b1 * b2 - b3 * b3;
  fc.eigen_min = eigen_min_2x2(b1, b2, b3);
  return fc;
}

BetaScanRecord record_at(double r) {
  const FormCoefficients fc = beta_coeffs(r);
  return {r, fc.b1, fc.b2, fc.b3, fc.det, fc.det / r, fc.eigen_min};
}

}  // namespace

double eigen_min_2x2(double b1, double b2, double b3) {
  const double mean = 0.5 * (b1 + b2);
  const double off = 0.5 * (b1 - b2);
  return mean - std::hypot(off, b3);
}

FormCoefficients beta_coeffs_from(const StandardBubble& b) {
  if (b.equal_mass) {
    throw std::domain_error(
        "beta_coeffs_from: equal-mass coefficients are alpha_coeffs()");
  }
  const double M = b.m1 + b.m2;
  const double p0 = perimeter(b);
  const double g0 = g_value(b.theta0);
  const double ratio1 = b.r1 / b.r0;
  const double ratio2 = b.r2 / b.r0;
  const double w1 = b.m2 / M;
  const double w2 = b.m1 / M;
  const double p_over = 0.25 * p0 / (M * M);

  const double b1 = g0 * ratio1 * ratio1 * ratio1 * w1 * w1 +
                    g_value(b.theta1) + b.r1 * b.r1 * b.r1 * p_over;
  const double b2 = g0 * ratio2 * ratio2 * ratio2 * w2 * w2 +
                    g_value(b.theta2) + b.r2 * b.r2 * b.r2 * p_over;
  const double cross = std::pow(b.r1 * b.r2, 1.5);
  const double b3 = -g0 * cross / (b.r0 * b.r0 * b.r0) * w1 * w2 +
                    cross * p_over;
  return finish(b1, b2, b3);
}

FormCoefficients beta_coeffs(double r1) {
  return beta_coeffs_from(from_r1(r1));
}

FormCoefficients alpha_coeffs() {
  const double m = 2.0 * kPi / 3.0 + kSqrt3 / 4.0;
  const double gs = g_value(0.5 * kSqrt3);
  const double a1 = 0.25 * gs + g_value(2.0 * kPi / 3.0) + 0.5 / m;
  const double a3 = -0.25 * gs + 0.5 / m;
  const FormCoefficients fc = finish(a1, a1, a3);
  if (!(fc.b1 > 0.0 && fc.det > 0.0)) {
    throw NumericError("alpha_coeffs: positivity failed");
  }
  return fc;
}

bool form_lower_bound(const FormCoefficients& fc, double x, double y) {
  const double q = fc.b1 * x * x + fc.b2 * y * y + 2.0 * fc.b3 * x * y;
  const double floor = fc.eigen_min * (x * x + y * y);
  const double scale =
      (std::fabs(fc.b1) + std::fabs(fc.b2) + std::fabs(fc.b3)) *
      (x * x + y * y);
  return q >= floor - 1e-12 * (scale + 1e-300);
}

BetaScan beta_star_scan(int grid) {
  if (grid < 100) {
    throw std::domain_error("beta_star_scan: grid must be >= 100");
  }
  BetaScan scan;
  scan.records.resize(static_cast<std::size_t>(grid));
  parallel_for(static_cast<std::size_t>(grid), [&](std::size_t i) {
    scan.records[i] = record_at(static_cast<double>(i + 1) / (grid + 1));
  });

  scan.beta_star = scan.records.front().b1;
  scan.argmin_r = scan.records.front().r;
  std::size_t argmin = 0;
  for (std::size_t i = 0; i < scan.records.size(); ++i) {
    const BetaScanRecord& rec = scan.records[i];
    const double v = std::min(rec.b1, rec.det);
    if (v < scan.beta_star) {
      scan.beta_star = v;
      scan.argmin_r = rec.r;
      argmin = i;
    }
    if (i > 0) {
      const BetaScanRecord& prev = scan.records[i - 1];
      const double h = rec.r - prev.r;
      const double jump = std::max({std::fabs(rec.b1 - prev.b1),
                                    std::fabs(rec.b2 - prev.b2),
                                    std::fabs(rec.b3 - prev.b3)});
      scan.lipschitz = std::max(scan.lipschitz, jump / h);
    }
  }

  // 10x refinement around the coarse argmin (one cell on each side).
  const double h = 1.0 / (grid + 1);
  const double lo = std::max(scan.records[argmin].r - h, 0.5 * h / 10.0);
  const double hi = std::min(scan.records[argmin].r + h, 1.0 - 0.5 * h / 10.0);
  for (int k = 0; k <= 20; ++k) {
    const double r = lo + (hi - lo) * k / 20.0;
    const BetaScanRecord rec = record_at(r);
    const double v = std::min(rec.b1, rec.det);
    if (v < scan.beta_star) {
      scan.beta_star = v;
      scan.argmin_r = r;
    }
  }

  if (!(scan.beta_star > 0.0)) {
    throw NumericError("beta_star_scan: scanned minimum is nonpositive");
  }
  return scan;
}

void write_beta_csv(const BetaScan& scan, std::ostream& out) {
  out << "r,b1,b2,b3,det,det_over_r,eigen_min\n";
  out << std::setprecision(17);
  for (const BetaScanRecord& rec : scan.records) {
    out << rec.r << ',' << rec.b1 << ',' << rec.b2 << ',' << rec.b3 << ','
        << rec.det << ',' << rec.det_over_r << ',' << rec.eigen_min << '\n';
  }
}

namespace {

// One framed panel with a polyline through (r, value(r)).
void svg_panel(std::ostream& out, const BetaScan& scan, double y0,
               double value(const BetaScanRecord&), const char* label) {
  const double width = 800.0, height = 300.0, pad = 40.0;
  double lo = value(scan.records.front());
  double hi = lo;
  for (const BetaScanRecord& rec : scan.records) {
    lo = std::min(lo, value(rec));
    hi = std::max(hi, value(rec));
  }
  if (hi - lo < 1e-12) hi = lo + 1.0;

  out << "<g>\n<rect x=\"" << pad << "\" y=\"" << y0 + pad << "\" width=\""
      << width - 2 * pad << "\" height=\"" << height - 2 * pad
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"" << y0 + height - 8
      << "\" text-anchor=\"middle\" font-size=\"13\">" << label
      << "</text>\n";
  out << std::setprecision(4) << "<text x=\"" << pad << "\" y=\""
      << y0 + pad - 6 << "\" font-size=\"11\">" << hi << "</text>\n";
  out << "<text x=\"" << pad << "\" y=\"" << y0 + height - pad + 14
      << "\" font-size=\"11\">" << lo << "</text>\n";
  out << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1\" "
         "points=\"";
  out << std::setprecision(6);
  const std::size_t step = std::max<std::size_t>(scan.records.size() / 720, 1);
  for (std::size_t i = 0; i < scan.records.size(); i += step) {
    const BetaScanRecord& rec = scan.records[i];
    const double px = pad + rec.r * (width - 2 * pad);
    const double py = y0 + height - pad -
                      (value(rec) - lo) / (hi - lo) * (height - 2 * pad);
    out << px << ',' << py << ' ';
  }
  out << "\"/>\n</g>\n";
}

}  // namespace

void write_beta_svg(const BetaScan& scan, std::ostream& out) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" "
         "height=\"600\" viewBox=\"0 0 800 600\">\n";
  svg_panel(out, scan, 0.0,
            [](const BetaScanRecord& rec) { return rec.b1; }, "b1(r)");
  svg_panel(out, scan, 300.0,
            [](const BetaScanRecord& rec) { return rec.det_over_r; },
            "(b1 b2 - b3^2)/r");
  out << "</svg>\n";
}

}  // namespace bubblestab
