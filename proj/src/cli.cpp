#include "bubblestab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "bubblestab/asymmetry.hpp"
#include "bubblestab/coercivity.hpp"
#include "bubblestab/errors.hpp"
#include "bubblestab/geometry.hpp"
#include "bubblestab/lab.hpp"
#include "bubblestab/perturbation.hpp"
#include "bubblestab/rng.hpp"
#include "bubblestab/spectral.hpp"

namespace bubblestab {

namespace {

using nlohmann::ordered_json;

constexpr std::uint64_t kDefaultSeed = 1729;

int fail(const std::string& subcommand, const std::string& message) {
  ordered_json j;
  j["subcommand"] = subcommand;
  j["status"] = "fail";
  j["error"] = message;
  std::cout << j.dump(2) << '\n';
  return 1;
}

int emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out_path);
  if (!f) {
    std::cerr << "cannot open output file: " << out_path << '\n';
    return 2;
  }
  f << text;
  return 0;
}

// Exactly one geometry specifier: --r1, --m1 with --m2, or --equal.
struct GeoOpts {
  double r1 = 0.0, m1 = 0.0, m2 = 0.0, equal_r = 0.0;
  CLI::Option* o_r1 = nullptr;
  CLI::Option* o_m1 = nullptr;
  CLI::Option* o_m2 = nullptr;
  CLI::Option* o_eq = nullptr;

  void attach(CLI::App* cmd) {
    o_r1 = cmd->add_option("--r1", r1,
                           "chamber-1 arc radius in (0,1), canonical r2 = 1");
    o_m1 = cmd->add_option("--m1", m1, "chamber-1 mass (with --m2)");
    o_m2 = cmd->add_option("--m2", m2, "chamber-2 mass (with --m1)");
    o_eq = cmd->add_option("--equal", equal_r, "equal-mass arc radius");
  }

  // 0 on success (bubble filled), 2 on usage error.
  int resolve(StandardBubble& out) const {
    const bool has_r1 = o_r1->count() > 0;
    const bool has_m = o_m1->count() > 0 || o_m2->count() > 0;
    const bool has_eq = o_eq->count() > 0;
    const int specifiers = (has_r1 ? 1 : 0) + (has_m ? 1 : 0) +
                           (has_eq ? 1 : 0);
    if (specifiers != 1) {
      std::cerr << "exactly one geometry specifier required: --r1 | --m1 "
                   "--m2 | --equal\n";
      return 2;
    }
    if (has_m && (o_m1->count() == 0 || o_m2->count() == 0)) {
      std::cerr << "--m1 and --m2 must be given together\n";
      return 2;
    }
    try {
      if (has_r1)
        out = from_r1(r1);
      else if (has_eq)
        out = equal_from_radius(equal_r);
      else
        out = from_masses(m1, m2);
    } catch (const std::domain_error& e) {
      std::cerr << e.what() << '\n';
      return 2;
    }
    return 0;
  }
};

double interface_width(const StandardBubble& b) {
  return b.equal_mass ? std::sqrt(3.0) / 2.0 : b.theta0;
}

ordered_json bubble_json(const StandardBubble& b) {
  ordered_json j;
  j["equal_mass"] = b.equal_mass;
  if (!b.equal_mass) j["r0"] = b.r0;
  j["r1"] = b.r1;
  j["r2"] = b.r2;
  j["theta0"] = b.theta0;
  j["theta1"] = b.theta1;
  j["theta2"] = b.theta2;
  j["m1"] = b.m1;
  j["m2"] = b.m2;
  j["perimeter"] = perimeter(b);
  return j;
}

int run_geometry(const GeoOpts& geo, const std::string& format,
                 const std::string& out_path) {
  StandardBubble b;
  if (int rc = geo.resolve(b)) return rc;

  // stationarity and closure checks
  const double p_masses = 2.0 * (b.m1 / b.r1 + b.m2 / b.r2);
  double p_arcs;
  double law = 0.0, sines = 0.0;
  if (b.equal_mass) {
    p_arcs = 2.0 * (b.theta1 * b.r1 + b.theta2 * b.r2) +
             std::sqrt(3.0) * b.r1;
  } else {
    p_arcs = 2.0 * (b.theta1 * b.r1 + b.theta2 * b.r2 + b.theta0 * b.r0);
    law = std::abs(1.0 / b.r1 - 1.0 / b.r2 - 1.0 / b.r0);
    sines = std::max(
        std::abs(b.r0 * std::sin(b.theta0) - b.r1 * std::sin(b.theta1)),
        std::abs(b.r0 * std::sin(b.theta0) - b.r2 * std::sin(b.theta2)));
  }
  const double angles =
      b.equal_mass
          ? std::abs(b.theta1 - 2.0 * M_PI / 3.0) +
                std::abs(b.theta2 - 2.0 * M_PI / 3.0)
          : std::abs(b.theta1 + b.theta0 - 2.0 * M_PI / 3.0) +
                std::abs(b.theta2 - b.theta0 - 2.0 * M_PI / 3.0);

  const EmbeddedBubble e = embed(b, 4096);
  const double mass1_rel = std::abs(polygon_area(e.chamber1) - b.m1) / b.m1;
  const double mass2_rel = std::abs(polygon_area(e.chamber2) - b.m2) / b.m2;

  ordered_json j = bubble_json(b);
  j["checks"] = {{"perimeter_split", std::abs(p_masses - p_arcs)},
                 {"pressure_law", law},
                 {"plateau_angles", angles},
                 {"sine_relation", sines},
                 {"polygon_mass1_rel", mass1_rel},
                 {"polygon_mass2_rel", mass2_rel}};
  const bool ok = std::abs(p_masses - p_arcs) < 1e-10 && law < 1e-12 &&
                  angles < 1e-12 && sines < 1e-12 && mass1_rel < 1e-5 &&
                  mass2_rel < 1e-5;
  j["status"] = ok ? "pass" : "fail";

  std::string text;
  if (format == "csv") {
    std::ostringstream os;
    os.precision(17);
    os << "r0,r1,r2,theta0,theta1,theta2,m1,m2,perimeter,status\n";
    os << (b.equal_mass ? std::numeric_limits<double>::infinity() : b.r0)
       << ',' << b.r1 << ',' << b.r2 << ',' << b.theta0 << ',' << b.theta1
       << ',' << b.theta2 << ',' << b.m1 << ',' << b.m2 << ','
       << perimeter(b) << ',' << (ok ? "pass" : "fail") << '\n';
    text = os.str();
  } else {
    text = j.dump(2) + '\n';
  }
  if (int rc = emit_text(text, out_path)) return rc;
  return ok ? 0 : 1;
}

int run_poincare(double theta, double s, int modes, const std::string& format,
                 const std::string& out_path) {
  if (!(theta > 0.0 && theta < M_PI)) {
    std::cerr << "--theta must lie in (0, pi)\n";
    return 2;
  }
  if (modes < 8) {
    std::cerr << "--modes must be at least 8\n";
    return 2;
  }
  const double g = g_value(theta);
  const double target = g * s * s;
  const double gal = galerkin_infimum(theta, s, modes);
  const double ci = constrained_infimum(theta, s).value;

  ordered_json j;
  j["theta"] = theta;
  j["s"] = s;
  j["modes"] = modes;
  j["g"] = g;
  j["mean_threshold"] = fuglede_M(theta);
  j["closed_form"] = target;
  j["constrained_infimum"] = ci;
  j["galerkin"] = gal;
  j["galerkin_gap"] = gal - target;
  const bool ok = gal + 1e-9 >= target && std::abs(ci - target) <= 1e-9;
  j["status"] = ok ? "pass" : "fail";

  std::string text;
  if (format == "csv") {
    std::ostringstream os;
    os.precision(17);
    os << "theta,s,modes,g,mean_threshold,closed_form,constrained_infimum,"
          "galerkin,status\n";
    os << theta << ',' << s << ',' << modes << ',' << g << ','
       << fuglede_M(theta) << ',' << target << ',' << ci << ',' << gal << ','
       << (ok ? "pass" : "fail") << '\n';
    text = os.str();
  } else {
    text = j.dump(2) + '\n';
  }
  if (int rc = emit_text(text, out_path)) return rc;
  return ok ? 0 : 1;
}

int run_coercivity(int grid, const std::string& format,
                   const std::string& out_path) {
  if (grid < 100) {
    std::cerr << "--grid must be at least 100\n";
    return 2;
  }
  BetaScan scan;
  FormCoefficients alpha;
  try {
    scan = beta_star_scan(grid);
    alpha = alpha_coeffs();
  } catch (const NumericError& e) {
    return fail("coercivity", e.what());
  }
  bool table_positive = true;
  for (const BetaScanRecord& rec : scan.records)
    table_positive = table_positive && rec.b1 > 0.0 && rec.det > 0.0;
  const bool ok = scan.beta_star > 0.0 && alpha.b1 > 0.0 && alpha.det > 0.0 &&
                  table_positive;

  ordered_json summary;
  summary["grid"] = grid;
  summary["beta_star"] = scan.beta_star;
  summary["argmin_r"] = scan.argmin_r;
  summary["lipschitz"] = scan.lipschitz;
  summary["alpha"] = {{"a1", alpha.b1},
                      {"a3", alpha.b3},
                      {"det", alpha.det},
                      {"eigen_min", alpha.eigen_min}};
  summary["table_positive"] = table_positive;
  summary["status"] = ok ? "pass" : "fail";

  std::ostringstream os;
  if (format == "csv") {
    write_beta_csv(scan, os);
  } else if (format == "svg") {
    write_beta_svg(scan, os);
  } else {
    ordered_json j = summary;
    os << j.dump(2) << '\n';
  }
  if (out_path.empty()) {
    std::cout << os.str();
    if (format != "json") std::cout << summary.dump(2) << '\n';
  } else {
    if (int rc = emit_text(os.str(), out_path)) return rc;
    std::cout << summary.dump(2) << '\n';
  }
  return ok ? 0 : 1;
}

// One gate-feasible random perturbation, rejection-sampled in its stream.
bool draw_feasible(const StandardBubble& b, double eps, double sigma_cap,
                   int modes, std::uint64_t seed, PerturbedBubble& pb) {
  Rng rng = Rng::stream(seed, 0);
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto draw = [&](double width, double target) {
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
        for (double& c : p.coeffs) c *= target / sum;
      return p;
    };
    const double t1 = eps * rng.uniform(0.1, 1.0);
    const double t2 = eps * rng.uniform(0.1, 1.0);
    const double t0 = 0.5 * eps * rng.uniform(0.1, 1.0);
    try {
      pb = enforce_volumes(b, draw(interface_width(b), t0),
                           draw(b.theta1, t1), draw(b.theta2, t2), 1, eps,
                           sigma_cap);
      return true;
    } catch (const GateError&) {
    } catch (const InfeasibleCorrectionError&) {
    }
  }
  return false;
}

int run_perturb(const GeoOpts& geo, double eps, std::uint64_t seed, int grid,
                int modes, const std::string& format,
                const std::string& out_path) {
  StandardBubble b;
  if (int rc = geo.resolve(b)) return rc;
  if (grid < 256) {
    std::cerr << "--grid must be at least 256\n";
    return 2;
  }
  PerturbedBubble pb;
  if (!draw_feasible(b, eps, 0.05, modes, seed, pb))
    return fail("perturb", "no gate-feasible perturbation after 100 draws");

  const auto [v1, v2] = volumes(pb);
  const DeficitBreakdown db = deficit(pb);
  AsymmetryResult ar;
  try {
    ar = asymmetry(pb, grid);
  } catch (const SearchError& e) {
    return fail("perturb", e.what());
  }

  ordered_json j;
  j["seed"] = seed;
  j["eps"] = eps;
  j["grid"] = grid;
  j["sigma"] = pb.sigma;
  j["volume1"] = v1;
  j["volume2"] = v2;
  j["m1"] = b.m1;
  j["m2"] = b.m2;
  j["perimeter"] = db.exact_perimeter;
  j["delta"] = db.deficit;
  j["alpha"] = ar.alpha;
  j["noise_floor"] = 5.0 * ar.richardson;
  const bool counted = ar.alpha > 5.0 * ar.richardson && ar.alpha > 0.0;
  j["ratio"] = counted ? db.deficit / (ar.alpha * ar.alpha) : 0.0;
  const bool ok = db.deficit >= 0.0;
  j["status"] = ok ? "pass" : "fail";

  std::string text;
  if (format == "csv") {
    std::ostringstream os;
    os.precision(17);
    os << "sigma,volume1,volume2,delta,alpha,ratio,status\n";
    os << pb.sigma << ',' << v1 << ',' << v2 << ',' << db.deficit << ','
       << ar.alpha << ',' << j["ratio"].get<double>() << ','
       << (ok ? "pass" : "fail") << '\n';
    text = os.str();
  } else {
    text = j.dump(2) + '\n';
  }
  if (int rc = emit_text(text, out_path)) return rc;
  return ok ? 0 : 1;
}

int run_sweep(const GeoOpts& geo, int samples, double eps,
              std::uint64_t seed, int grid, const std::string& format,
              const std::string& out_path) {
  StandardBubble b;
  if (int rc = geo.resolve(b)) return rc;
  StabilityReport rep;
  try {
    rep = stability_sweep(b, samples, eps, seed, grid);
  } catch (const std::domain_error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    return fail("sweep", e.what());
  }
  std::string text;
  if (format == "csv") {
    std::ostringstream os;
    write_report_csv(rep, os);
    text = os.str();
  } else {
    text = report_json(rep).dump(2) + '\n';
  }
  if (int rc = emit_text(text, out_path)) return rc;
  const bool ok =
      rep.violations == 0 && rep.kappa_hat > 0.0 && rep.counted > 0;
  if (!out_path.empty()) {
    ordered_json summary;
    summary["kappa_hat"] = rep.kappa_hat;
    summary["kappa2_hat"] = rep.kappa2_hat;
    summary["violations"] = rep.violations;
    summary["counted"] = rep.counted;
    summary["status"] = ok ? "pass" : "fail";
    std::cout << summary.dump(2) << '\n';
  }
  return ok ? 0 : 1;
}

int run_audit(const GeoOpts& geo, int samples, double eps,
              std::uint64_t seed, const std::string& format,
              const std::string& out_path) {
  StandardBubble b;
  if (int rc = geo.resolve(b)) return rc;
  if (samples < 1) {
    std::cerr << "--samples must be positive\n";
    return 2;
  }

  int failures = 0, big1 = 0, big2 = 0, fuglede1 = 0, fuglede2 = 0;
  std::ostringstream rows;
  rows.precision(17);
  rows << "index,big_mean_1,ok_1,big_mean_2,ok_2,interface_ok,dk0,dk1,dk2,"
          "ok\n";
  for (int i = 0; i < samples; ++i) {
    PerturbedBubble pb;
    if (!draw_feasible(b, eps, 0.05, 8,
                       seed + static_cast<std::uint64_t>(i) * 0x9e3779b9ULL,
                       pb))
      return fail("audit", "no gate-feasible perturbation");
    AuditRecord rec;
    try {
      rec = dichotomy_audit(b, pb.profile0, pb.profile1, pb.profile2);
    } catch (const NumericError& e) {
      return fail("audit", e.what());
    }
    if (!rec.ok) ++failures;
    big1 += rec.k1.big_mean ? 1 : 0;
    big2 += rec.k2.big_mean ? 1 : 0;
    fuglede1 += rec.k1.big_mean ? 0 : 1;
    fuglede2 += rec.k2.big_mean ? 0 : 1;
    rows << i << ',' << rec.k1.big_mean << ',' << rec.k1.ok << ','
         << rec.k2.big_mean << ',' << rec.k2.ok << ',' << rec.interface_ok
         << ',' << rec.dk0 << ',' << rec.dk1 << ',' << rec.dk2 << ','
         << rec.ok << '\n';
  }

  ordered_json j;
  j["samples"] = samples;
  j["eps"] = eps;
  j["seed"] = seed;
  j["big_mean_1"] = big1;
  j["big_mean_2"] = big2;
  j["mean_suppressed_1"] = fuglede1;
  j["mean_suppressed_2"] = fuglede2;
  j["failures"] = failures;
  j["status"] = failures == 0 ? "pass" : "fail";

  const std::string text =
      format == "csv" ? rows.str() : j.dump(2) + '\n';
  if (int rc = emit_text(text, out_path)) return rc;
  if (!out_path.empty() && format == "csv")
    std::cout << j.dump(2) << '\n';
  return failures == 0 ? 0 : 1;
}

int run_interp(int samples, std::uint64_t seed, const std::string& format,
               const std::string& out_path) {
  int violations = 0;
  try {
    violations = interpolation_check(samples, seed);
  } catch (const std::domain_error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  const InterpolationCase lin = interpolation_sides(
      [](double x) { return x; }, [](double) { return 1.0; },
      [](double) { return 0.0; }, 1.0);
  const InterpolationCase sine = interpolation_sides(
      [](double x) { return std::sin(M_PI * x); },
      [](double x) { return M_PI * std::cos(M_PI * x); },
      [](double x) { return -M_PI * M_PI * std::sin(M_PI * x); }, 1.0);
  const bool anchors_ok = lin.lhs <= lin.rhs && sine.lhs <= sine.rhs;

  ordered_json j;
  j["samples"] = samples;
  j["seed"] = seed;
  j["violations"] = violations;
  j["anchors"] = {{{"name", "linear"}, {"lhs", lin.lhs}, {"rhs", lin.rhs}},
                  {{"name", "sine"}, {"lhs", sine.lhs}, {"rhs", sine.rhs}}};
  const bool ok = violations == 0 && anchors_ok;
  j["status"] = ok ? "pass" : "fail";

  std::string text;
  if (format == "csv") {
    std::ostringstream os;
    os.precision(17);
    os << "samples,violations,linear_lhs,linear_rhs,sine_lhs,sine_rhs,"
          "status\n";
    os << samples << ',' << violations << ',' << lin.lhs << ',' << lin.rhs
       << ',' << sine.lhs << ',' << sine.rhs << ',' << (ok ? "pass" : "fail")
       << '\n';
    text = os.str();
  } else {
    text = j.dump(2) + '\n';
  }
  if (int rc = emit_text(text, out_path)) return rc;
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"numerical laboratory for planar double bubble stability"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker thread cap")
      ->check(CLI::Range(1, 256));

  std::string format = "json";
  std::string out_path;
  std::vector<CLI::Option*> format_opts;
  const auto add_io = [&](CLI::App* cmd, bool allow_svg = false) {
    format_opts.push_back(
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember(
                allow_svg ? std::vector<std::string>{"json", "csv", "svg"}
                          : std::vector<std::string>{"json", "csv"})));
    cmd->add_option("--out", out_path, "output file (default stdout)");
  };

  // geometry
  CLI::App* geometry = app.add_subcommand(
      "geometry", "solve the standard bubble and check its invariants");
  GeoOpts geo_geometry;
  geo_geometry.attach(geometry);
  add_io(geometry);

  // poincare
  CLI::App* poincare = app.add_subcommand(
      "poincare", "constrained Poincare infima: closed form vs Galerkin");
  double theta = M_PI / 2.0, s = 1.0;
  int modes = 256;
  poincare->add_option("--theta", theta, "arc half-opening in (0, pi)")
      ->required();
  poincare->add_option("--s", s, "prescribed mean integral");
  poincare->add_option("--modes", modes, "Galerkin modes");
  add_io(poincare);

  // coercivity
  CLI::App* coercivity = app.add_subcommand(
      "coercivity", "scan the quadratic-form coefficients over mass ratios");
  int scan_grid = 10000;
  coercivity->add_option("--grid", scan_grid, "scan resolution");
  add_io(coercivity, true);

  // perturb
  CLI::App* perturb = app.add_subcommand(
      "perturb", "draw one feasible perturbation and evaluate delta, alpha");
  GeoOpts geo_perturb;
  geo_perturb.attach(perturb);
  double eps = 0.05;
  std::uint64_t seed = kDefaultSeed;
  int grid = 1024;
  int draw_modes = 8;
  perturb->add_option("--eps", eps, "C1 gate");
  perturb->add_option("--seed", seed, "rng seed");
  perturb->add_option("--grid", grid, "asymmetry grid");
  perturb->add_option("--modes", draw_modes, "profile modes");
  add_io(perturb);

  // sweep
  CLI::App* sweep = app.add_subcommand(
      "sweep", "randomized stability sweep certifying delta >= kappa alpha^2");
  GeoOpts geo_sweep;
  geo_sweep.attach(sweep);
  int sweep_samples = 1000;
  double sweep_eps = 0.05;
  std::uint64_t sweep_seed = kDefaultSeed;
  int sweep_grid = 1024;
  sweep->add_option("--samples", sweep_samples, "sample count (>= 100)");
  sweep->add_option("--eps", sweep_eps, "C1 gate");
  sweep->add_option("--seed", sweep_seed, "rng seed");
  sweep->add_option("--grid", sweep_grid, "asymmetry grid");
  add_io(sweep);

  // audit
  CLI::App* audit = app.add_subcommand(
      "audit", "mean dichotomy and per-arc coercivity audit");
  GeoOpts geo_audit;
  geo_audit.attach(audit);
  int audit_samples = 100;
  double audit_eps = 0.05;
  std::uint64_t audit_seed = kDefaultSeed;
  audit->add_option("--samples", audit_samples, "sample count");
  audit->add_option("--eps", audit_eps, "C1 gate");
  audit->add_option("--seed", audit_seed, "rng seed");
  add_io(audit);

  // interp
  CLI::App* interp = app.add_subcommand(
      "interp", "derivative interpolation inequality on random splines");
  int interp_samples = 1000;
  std::uint64_t interp_seed = kDefaultSeed;
  interp->add_option("--samples", interp_samples, "sample count (>= 100)");
  interp->add_option("--seed", interp_seed, "rng seed");
  add_io(interp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (threads > 0) {
    const std::string v = std::to_string(threads);
    setenv("BUBBLESTAB_THREADS", v.c_str(), 1);
  }

  // Infer the format from the --out extension when --format is absent.
  bool format_given = false;
  for (const CLI::Option* o : format_opts) format_given |= o->count() > 0;
  if (!format_given && !out_path.empty()) {
    const auto ends_with = [&](const std::string& ext) {
      return out_path.size() >= ext.size() &&
             out_path.compare(out_path.size() - ext.size(), ext.size(),
                              ext) == 0;
    };
    if (ends_with(".csv"))
      format = "csv";
    else if (ends_with(".svg") && app.got_subcommand(coercivity))
      format = "svg";
  }

  try {
    if (app.got_subcommand(geometry))
      return run_geometry(geo_geometry, format, out_path);
    if (app.got_subcommand(poincare))
      return run_poincare(theta, s, modes, format, out_path);
    if (app.got_subcommand(coercivity))
      return run_coercivity(scan_grid, format, out_path);
    if (app.got_subcommand(perturb))
      return run_perturb(geo_perturb, eps, seed, grid, draw_modes, format,
                         out_path);
    if (app.got_subcommand(sweep))
      return run_sweep(geo_sweep, sweep_samples, sweep_eps, sweep_seed,
                       sweep_grid, format, out_path);
    if (app.got_subcommand(audit))
      return run_audit(geo_audit, audit_samples, audit_eps, audit_seed,
                       format, out_path);
    if (app.got_subcommand(interp))
      return run_interp(interp_samples, interp_seed, format, out_path);
  } catch (const std::domain_error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    return fail("run", e.what());
  }
  return 2;
}

}  // namespace bubblestab
