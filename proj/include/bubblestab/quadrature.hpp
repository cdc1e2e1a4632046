#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "bubblestab/errors.hpp"

namespace bubblestab {

namespace quad_detail {

// Gauss-Kronrod 7-15 abscissae and weights on [-1, 1].
inline constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
inline constexpr double kWgk[8] = {
    0.02293532201052922, 0.06309209262997855, 0.10479001032225018,
    0.14065325971552592, 0.16900472663926790, 0.19035057806478541,
    0.20443294007529889, 0.20948214108472783};
inline constexpr double kWg[4] = {0.12948496616886969, 0.27970539148927666,
                                  0.38183005050511894, 0.41795918367346938};

template <class F>
std::pair<double, double> gk15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const double fs = f(c - dx) + f(c + dx);
    kronrod += kWgk[i] * fs;
    if (i % 2 == 1) gauss += kWg[i / 2] * fs;
  }
  kronrod *= h;
  gauss *= h;
  return {kronrod, std::fabs(kronrod - gauss)};
}

}  // namespace quad_detail

// Adaptive Gauss-Kronrod integration of f over [a, b] to an absolute
// tolerance. Each segment must meet its width-proportional share of the
// tolerance, so accepted errors sum to at most abs_tol. Throws NumericError
// once the node budget is exhausted.
template <class F>
double integrate(F&& f, double a, double b, double abs_tol = 1e-12,
                 std::size_t max_nodes = std::size_t{1} << 20) {
  if (a == b) return 0.0;
  struct Segment {
    double a, b;
  };
  const double total_width = std::fabs(b - a);
  std::vector<Segment> stack{{a, b}};
  double sum = 0.0;
  std::size_t nodes = 0;
  while (!stack.empty()) {
    const Segment seg = stack.back();
    stack.pop_back();
    nodes += 15;
    if (nodes > max_nodes) {
      throw NumericError("integrate: node budget exhausted");
    }
    const auto [value, err] = quad_detail::gk15(f, seg.a, seg.b);
    const double width = std::fabs(seg.b - seg.a);
    if (err <= abs_tol * (width / total_width) || width < 1e-15 * total_width) {
      sum += value;
    } else {
      const double mid = 0.5 * (seg.a + seg.b);
      stack.push_back({seg.a, mid});
      stack.push_back({mid, seg.b});
    }
  }
  return sum;
}

}  // namespace bubblestab
