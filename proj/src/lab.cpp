#include "bubblestab/lab.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "bubblestab/asymmetry.hpp"
#include "bubblestab/errors.hpp"
#include "bubblestab/parallel.hpp"
#include "bubblestab/perturbation.hpp"
#include "bubblestab/rng.hpp"
#include "bubblestab/spectral.hpp"

namespace bubblestab {

namespace {

double interface_width(const StandardBubble& b) {
  return b.equal_mass ? std::sqrt(3.0) / 2.0 : b.theta0;
}

double fit_loglog_slope(const std::vector<double>& xs,
                        const std::vector<double>& ys) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double lx = std::log(xs[i]), ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ArcProfile scaled_profile(const ArcProfile& p, double t) {
  ArcProfile out = p;
  for (double& c : out.coeffs) c *= t;
  return out;
}

void check_direction_width(const StandardBubble& base, const ArcProfile& p0,
                           const ArcProfile& p1, const ArcProfile& p2) {
  const double w0 = interface_width(base);
  if (std::abs(p0.half_width - w0) > 1e-12 ||
      std::abs(p1.half_width - base.theta1) > 1e-12 ||
      std::abs(p2.half_width - base.theta2) > 1e-12)
    throw std::domain_error("profile widths do not match the base cluster");
}

}  // namespace

TaylorScan taylor_residual_scan(const StandardBubble& base,
                                const ArcProfile& dir0, const ArcProfile& dir1,
                                const ArcProfile& dir2,
                                const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw std::domain_error("empty t grid");
  for (double t : t_grid)
    if (!(t >= 1e-4 && t <= 1e-1))
      throw std::domain_error("t grid must lie in [1e-4, 1e-1]");
  check_direction_width(base, dir0, dir1, dir2);

  TaylorScan scan;
  for (double t : t_grid) {
    PerturbedBubble pb;
    try {
      pb = enforce_volumes(base, scaled_profile(dir0, t),
                           scaled_profile(dir1, t), scaled_profile(dir2, t), 1,
                           0.2, 0.2);
    } catch (const GateError&) {
      scan.truncated = true;
      continue;
    } catch (const InfeasibleCorrectionError&) {
      scan.truncated = true;
      continue;
    }
    scan.ts.push_back(t);
    scan.residuals.push_back(std::abs(deficit(pb).residual));
  }

  // quadrature rounding leaves ~1e-15 noise on exactly-quadratic cases
  std::vector<double> ts, rs;
  for (std::size_t i = 0; i < scan.ts.size(); ++i) {
    if (scan.residuals[i] > 1e-13) {
      ts.push_back(scan.ts[i]);
      rs.push_back(scan.residuals[i]);
    }
  }
  if (ts.size() >= 2) {
    scan.slope = fit_loglog_slope(ts, rs);
  } else if (!rs.empty()) {
    throw NumericError("too few resolvable residuals to fit a slope");
  }
  return scan;
}

namespace {

ChamberAudit chamber_audit(double theta, const ArcProfile& p) {
  const Moments m = moments(p);
  const double volume_change = m.mean + 0.5 * m.l2sq;
  ChamberAudit audit;
  audit.big_mean =
      volume_change * volume_change >= m.l2sq / (2.0 * fuglede_M(theta));
  if (audit.big_mean) {
    audit.ok = true;
    return audit;
  }
  // genuine violations throw from fuglede_check itself
  audit.ok = fuglede_check(theta, p).holds_hypothesis;
  return audit;
}

bool dk_check(double theta, const Moments& m) {
  return m.h1sq - m.l2sq + 1e-9 >= g_value(theta) * m.mean * m.mean;
}

}  // namespace

AuditRecord dichotomy_audit(const StandardBubble& base, const ArcProfile& p0,
                            const ArcProfile& p1, const ArcProfile& p2) {
  check_direction_width(base, p0, p1, p2);
  AuditRecord rec;
  rec.k1 = chamber_audit(base.theta1, p1);
  rec.k2 = chamber_audit(base.theta2, p2);

  const Moments m0 = moments(p0);
  const double slack = 1e-12 * (1.0 + m0.h1sq + m0.l2sq);
  if (base.equal_mass) {
    // segment profile: first Dirichlet mode has energy ratio pi^2/3 > 2
    rec.interface_ok = m0.h1sq + slack >= 2.0 * m0.l2sq;
    rec.dk0 = true;
  } else {
    // arc profile on theta0 < pi/3: eigenvalue floor 9/4 gives
    // h1 - l2 >= h1/3 + l2/2
    rec.interface_ok =
        m0.h1sq - m0.l2sq + slack >= m0.h1sq / 3.0 + 0.5 * m0.l2sq;
    rec.dk0 = dk_check(base.theta0, m0);
  }
  rec.dk1 = dk_check(base.theta1, moments(p1));
  rec.dk2 = dk_check(base.theta2, moments(p2));
  rec.ok = rec.k1.ok && rec.k2.ok && rec.interface_ok && rec.dk0 && rec.dk1 &&
           rec.dk2;
  return rec;
}

namespace {

ArcProfile draw_profile(Rng& rng, double width, int modes, double target_sup) {
  ArcProfile p;
  p.half_width = width;
  p.coeffs.assign(static_cast<std::size_t>(modes), 0.0);
  double sum = 0.0;
  for (int j = 0; j < modes; ++j) {
    const double decay = (j + 1.0) * (j + 1.0);
    p.coeffs[static_cast<std::size_t>(j)] = rng.uniform(-1.0, 1.0) / decay;
    sum += std::abs(p.coeffs[static_cast<std::size_t>(j)]);
  }
  if (sum > 0.0)
    for (double& c : p.coeffs) c *= target_sup / sum;
  return p;
}

SweepSample run_sample(const StandardBubble& base, const SweepConfig& cfg,
                       int index) {
  Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(index));
  SweepSample s;
  s.index = index;

  // Rejection-sample within this sample's own stream until the volume
  // enforcement accepts, so every reported sample is feasible and the
  // sweep stays deterministic under any thread schedule.
  PerturbedBubble pb;
  bool ok = false;
  for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
    const double target1 = cfg.eps * rng.uniform(0.1, 1.0);
    const double target2 = cfg.eps * rng.uniform(0.1, 1.0);
    const double target0 = 0.5 * cfg.eps * rng.uniform(0.1, 1.0);
    const ArcProfile p0 =
        draw_profile(rng, interface_width(base), cfg.modes, target0);
    const ArcProfile p1 = draw_profile(rng, base.theta1, cfg.modes, target1);
    const ArcProfile p2 = draw_profile(rng, base.theta2, cfg.modes, target2);
    try {
      pb = enforce_volumes(base, p0, p1, p2, 1, cfg.eps, cfg.sigma_cap);
      ok = true;
    } catch (const GateError&) {
    } catch (const InfeasibleCorrectionError&) {
    }
  }
  if (!ok) return s;
  s.enforced = true;
  s.sigma = pb.sigma;

  const Moments n0 = moments(pb.profile0);
  const Moments n1 = moments(pb.profile1);
  const Moments n2 = moments(pb.profile2);
  s.sup0 = n0.supbound;
  s.sup1 = n1.supbound;
  s.sup2 = n2.supbound;
  const double r0 = base.equal_mass ? base.r1 : base.r0;
  s.energy = r0 * (n0.h1sq + n0.l2sq) + base.r1 * (n1.h1sq + n1.l2sq) +
             base.r2 * (n2.h1sq + n2.l2sq);

  s.delta = deficit(pb).deficit;

  try {
    const AsymmetryResult ar = asymmetry(pb, cfg.grid);
    s.optimized = true;
    s.alpha = ar.alpha;
    s.noise_floor = 5.0 * ar.richardson;
  } catch (const SearchError&) {
    s.optimized = false;
  }
  s.counted = s.optimized && s.alpha > s.noise_floor && s.alpha > 0.0;
  if (s.counted) s.ratio = s.delta / (s.alpha * s.alpha);

  s.audit_ok =
      dichotomy_audit(base, pb.profile0, pb.profile1, pb.profile2).ok;
  return s;
}

}  // namespace

StabilityReport stability_sweep(const StandardBubble& base,
                                const SweepConfig& config) {
  if (config.n < 100) throw std::domain_error("sweep needs n >= 100");
  if (config.grid < 256) throw std::domain_error("grid must be at least 256");
  if (!(config.eps > 0.0 && config.eps <= 0.2))
    throw std::domain_error("eps gate must lie in (0, 0.2]");

  StabilityReport report;
  report.config = config;
  report.m1 = base.m1;
  report.m2 = base.m2;
  report.equal_mass = base.equal_mass;
  report.samples.resize(static_cast<std::size_t>(config.n));

  parallel_for(static_cast<std::size_t>(config.n), [&](std::size_t i) {
    report.samples[i] = run_sample(base, config, static_cast<int>(i));
  });

  const double p0 = perimeter(base);
  double kappa = std::numeric_limits<double>::infinity();
  double kappa2 = std::numeric_limits<double>::infinity();
  for (const SweepSample& s : report.samples) {
    if (!s.enforced) {
      ++report.enforce_failures;
      continue;
    }
    if (!s.optimized) ++report.optimizer_failures;
    if (s.delta < -1e-9)
      throw NumericError("negative deficit beyond tolerance in the sweep");
    if (s.delta < 0.0) ++report.violations;
    if (!s.audit_ok) ++report.violations;
    if (s.counted) {
      ++report.counted;
      kappa = std::min(kappa, s.ratio);
    }
    if (s.energy > 1e-14)
      kappa2 = std::min(kappa2,
                        2.0 * s.delta * p0 / (1.0 + s.sigma) / s.energy);
  }
  report.kappa_hat = report.counted > 0 ? kappa : 0.0;
  report.kappa2_hat = std::isfinite(kappa2) ? kappa2 : 0.0;

  // Taylor scans along fresh directions streamed past the sample indices.
  const std::vector<double> ts = {1e-3, 2.5e-3, 6.3e-3, 1.6e-2, 4e-2, 1e-1};
  for (int d = 0; d < config.directions; ++d) {
    Rng rng = Rng::stream(config.seed,
                          static_cast<std::uint64_t>(config.n + d));
    const ArcProfile d0 =
        draw_profile(rng, interface_width(base), config.modes, 0.15);
    const ArcProfile d1 = draw_profile(rng, base.theta1, config.modes, 0.3);
    const ArcProfile d2 = draw_profile(rng, base.theta2, config.modes, 0.3);
    report.residual_slopes.push_back(
        taylor_residual_scan(base, d0, d1, d2, ts).slope);
  }
  return report;
}

StabilityReport stability_sweep(const StandardBubble& base, int n, double eps,
                                std::uint64_t seed, int grid) {
  SweepConfig cfg;
  cfg.n = n;
  cfg.eps = eps;
  cfg.seed = seed;
  cfg.grid = grid;
  return stability_sweep(base, cfg);
}

nlohmann::ordered_json report_json(const StabilityReport& report) {
  nlohmann::ordered_json j;
  j["config"] = {{"n", report.config.n},
                 {"eps", report.config.eps},
                 {"sigma_cap", report.config.sigma_cap},
                 {"seed", report.config.seed},
                 {"grid", report.config.grid},
                 {"modes", report.config.modes},
                 {"directions", report.config.directions}};
  j["base"] = {{"m1", report.m1},
               {"m2", report.m2},
               {"equal_mass", report.equal_mass}};
  nlohmann::ordered_json samples = nlohmann::ordered_json::array();
  for (const SweepSample& s : report.samples) {
    samples.push_back({{"index", s.index},
                       {"enforced", s.enforced},
                       {"optimized", s.optimized},
                       {"sigma", s.sigma},
                       {"sup0", s.sup0},
                       {"sup1", s.sup1},
                       {"sup2", s.sup2},
                       {"energy", s.energy},
                       {"delta", s.delta},
                       {"alpha", s.alpha},
                       {"ratio", s.ratio},
                       {"noise_floor", s.noise_floor},
                       {"counted", s.counted},
                       {"audit_ok", s.audit_ok}});
  }
  j["samples"] = std::move(samples);
  j["aggregates"] = {{"kappa_hat", report.kappa_hat},
                     {"kappa2_hat", report.kappa2_hat},
                     {"counted", report.counted},
                     {"violations", report.violations},
                     {"enforce_failures", report.enforce_failures},
                     {"optimizer_failures", report.optimizer_failures},
                     {"residual_slopes", report.residual_slopes}};
  return j;
}

void write_report_csv(const StabilityReport& report, std::ostream& out) {
  out << "index,enforced,optimized,sigma,sup0,sup1,sup2,energy,delta,alpha,"
         "ratio,noise_floor,counted,audit_ok\n";
  out << std::setprecision(17);
  for (const SweepSample& s : report.samples) {
    out << s.index << ',' << (s.enforced ? 1 : 0) << ','
        << (s.optimized ? 1 : 0) << ',' << s.sigma << ',' << s.sup0 << ','
        << s.sup1 << ',' << s.sup2 << ',' << s.energy << ',' << s.delta << ','
        << s.alpha << ',' << s.ratio << ',' << s.noise_floor << ','
        << (s.counted ? 1 : 0) << ',' << (s.audit_ok ? 1 : 0) << '\n';
  }
}

namespace {

// Natural cubic spline on uniform knots over [0, s].
struct Spline {
  double h = 0.0;
  std::vector<double> y;  // knot values
  std::vector<double> m;  // knot second derivatives, m.front() = m.back() = 0

  int interval(double x) const {
    const int n = static_cast<int>(y.size()) - 1;
    int i = static_cast<int>(std::floor(x / h));
    return std::clamp(i, 0, n - 1);
  }
  double eval(double x) const {
    const int i = interval(x);
    const double a = x - h * i, b = h * (i + 1) - x;
    return m[i] * b * b * b / (6.0 * h) + m[i + 1] * a * a * a / (6.0 * h) +
           (y[i] / h - m[i] * h / 6.0) * b +
           (y[i + 1] / h - m[i + 1] * h / 6.0) * a;
  }
  double deriv(double x) const {
    const int i = interval(x);
    const double a = x - h * i, b = h * (i + 1) - x;
    return -m[i] * b * b / (2.0 * h) + m[i + 1] * a * a / (2.0 * h) +
           (y[i + 1] - y[i]) / h - (m[i + 1] - m[i]) * h / 6.0;
  }
  double second(double x) const {
    const int i = interval(x);
    const double a = x - h * i, b = h * (i + 1) - x;
    return (m[i] * b + m[i + 1] * a) / h;
  }
};

Spline natural_spline(double s, const std::vector<double>& knots) {
  const std::size_t n = knots.size() - 1;
  Spline sp;
  sp.h = s / static_cast<double>(n);
  sp.y = knots;
  sp.m.assign(n + 1, 0.0);
  if (n >= 2) {
    // Thomas solve of m[i-1] + 4 m[i] + m[i+1] = 6 d2y[i] / h^2
    std::vector<double> diag(n - 1, 4.0), rhs(n - 1);
    for (std::size_t i = 1; i < n; ++i)
      rhs[i - 1] =
          6.0 * (knots[i - 1] - 2.0 * knots[i] + knots[i + 1]) / (sp.h * sp.h);
    for (std::size_t i = 1; i < n - 1; ++i) {
      const double w = 1.0 / diag[i - 1];
      diag[i] -= w;
      rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t i = n - 1; i-- > 0;) {
      const double upper = (i + 1 < n - 1) ? rhs[i + 1] : 0.0;
      rhs[i] = (rhs[i] - upper) / diag[i];
    }
    for (std::size_t i = 1; i < n; ++i) sp.m[i] = rhs[i - 1];
  }
  return sp;
}

}  // namespace

InterpolationCase interpolation_sides(const std::function<double(double)>& u,
                                      const std::function<double(double)>& du,
                                      const std::function<double(double)>& ddu,
                                      double s, int samples) {
  if (!(s > 0.0)) throw std::domain_error("interval length must be positive");
  if (samples < 16) throw std::domain_error("need at least 16 samples");
  double l1 = 0.0, dsup = 0.0, ddsup = 0.0;
  const double dx = s / samples;
  for (int i = 0; i < samples; ++i) {
    const double x = (i + 0.5) * dx;
    l1 += std::abs(u(x)) * dx;
    dsup = std::max(dsup, std::abs(du(x)));
    ddsup = std::max(ddsup, std::abs(ddu(x)));
  }
  InterpolationCase c;
  c.lhs = dsup;
  c.rhs = 2.0 * std::cbrt(l1) * std::pow(ddsup, 2.0 / 3.0) +
          4.0 / (s * s) * l1;
  return c;
}

int interpolation_check(int n, std::uint64_t seed) {
  if (n < 100) throw std::domain_error("interpolation check needs n >= 100");
  int violations = 0;
  for (int i = 0; i < n; ++i) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(i));
    const double s = rng.uniform(0.5, 2.0);
    const int intervals = rng.uniform_int(3, 8);
    std::vector<double> knots(static_cast<std::size_t>(intervals) + 1);
    for (double& y : knots) y = rng.uniform(-1.0, 1.0);
    const Spline sp = natural_spline(s, knots);
    const InterpolationCase c = interpolation_sides(
        [&](double x) { return sp.eval(x); },
        [&](double x) { return sp.deriv(x); },
        [&](double x) { return sp.second(x); }, s, 4096);
    if (c.lhs > c.rhs + 1e-12 * (1.0 + c.rhs)) ++violations;
  }
  return violations;
}

}  // namespace bubblestab
