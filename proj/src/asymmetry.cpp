#include "bubblestab/asymmetry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bubblestab/errors.hpp"

namespace bubblestab {

namespace {

struct GridSpec {
  double x0 = 0.0;
  double y0 = 0.0;
  double cell = 0.0;
  int n = 0;
  double x1() const { return x0 + cell * n; }
  double y1() const { return y0 + cell * n; }
};

// Square box around all given polylines, side inflated by 1.3.
GridSpec make_grid(std::initializer_list<const std::vector<Vec2>*> polys,
                   int n) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = xmax;
  for (const auto* poly : polys) {
    for (const Vec2& p : *poly) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  }
  if (!(xmin <= xmax && ymin <= ymax))
    throw GeometryError("empty or non-finite cluster bounding box");
  const double side = 1.3 * std::max(xmax - xmin, ymax - ymin);
  if (!(side > 0.0)) throw GeometryError("degenerate cluster bounding box");
  GridSpec gs;
  gs.n = n;
  gs.cell = side / n;
  gs.x0 = 0.5 * (xmin + xmax) - 0.5 * side;
  gs.y0 = 0.5 * (ymin + ymax) - 0.5 * side;
  return gs;
}

// Sorted crossing abscissas of a closed polyline with every row of cell
// centers, flattened with per-row offsets (counting sort over rows).
struct Raster {
  std::vector<int> offsets;  // size n + 1
  std::vector<double> xs;
};

// Rows whose center height falls in the half-open span [ymin, ymax) of an
// edge: shared vertices count once, horizontal edges never.
void row_span(double ymin, double ymax, const GridSpec& gs, int& r_first,
              int& r_last) {
  r_first = static_cast<int>(std::ceil((ymin - gs.y0) / gs.cell - 0.5));
  r_last = static_cast<int>(std::ceil((ymax - gs.y0) / gs.cell - 0.5)) - 1;
  r_first = std::max(r_first, 0);
  r_last = std::min(r_last, gs.n - 1);
}

void rasterize(const std::vector<Vec2>& poly, const GridSpec& gs,
               Raster& out) {
  const std::size_t v = poly.size();
  if (v < 3) throw GeometryError("polyline has fewer than 3 vertices");
  std::vector<int> counts(static_cast<std::size_t>(gs.n) + 1, 0);
  for (std::size_t i = 0; i < v; ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % v];
    if (!(std::isfinite(a.x) && std::isfinite(a.y)))
      throw GeometryError("non-finite polyline vertex");
    if (a.y == b.y) continue;
    int r0, r1;
    row_span(std::min(a.y, b.y), std::max(a.y, b.y), gs, r0, r1);
    for (int r = r0; r <= r1; ++r) ++counts[static_cast<std::size_t>(r)];
  }
  out.offsets.assign(static_cast<std::size_t>(gs.n) + 1, 0);
  for (int r = 0; r < gs.n; ++r)
    out.offsets[static_cast<std::size_t>(r) + 1] =
        out.offsets[static_cast<std::size_t>(r)] +
        counts[static_cast<std::size_t>(r)];
  out.xs.resize(static_cast<std::size_t>(out.offsets.back()));
  std::vector<int> cursor(out.offsets.begin(), out.offsets.end() - 1);
  for (std::size_t i = 0; i < v; ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % v];
    if (a.y == b.y) continue;
    int r0, r1;
    row_span(std::min(a.y, b.y), std::max(a.y, b.y), gs, r0, r1);
    const double slope = (b.x - a.x) / (b.y - a.y);
    for (int r = r0; r <= r1; ++r) {
      const double y = gs.y0 + (r + 0.5) * gs.cell;
      out.xs[static_cast<std::size_t>(cursor[static_cast<std::size_t>(r)]++)] =
          a.x + (y - a.y) * slope;
    }
  }
  for (int r = 0; r < gs.n; ++r) {
    auto lo = out.xs.begin() + out.offsets[static_cast<std::size_t>(r)];
    auto hi = out.xs.begin() + out.offsets[static_cast<std::size_t>(r) + 1];
    std::sort(lo, hi);
    if ((hi - lo) % 2 != 0)
      throw GeometryError("odd crossing parity: corrupt chamber polyline");
  }
}

// Cell centers strictly inside [xl, xr) on one row.
long long centers_between(double xl, double xr, const GridSpec& gs) {
  const auto idx = [&](double x) {
    double t = std::ceil((x - gs.x0) / gs.cell - 0.5);
    t = std::clamp(t, 0.0, static_cast<double>(gs.n));
    return static_cast<long long>(t);
  };
  return std::max(0LL, idx(xr) - idx(xl));
}

// Number of cell centers where exactly one of the two rasters' regions
// covers the point (even-odd rule per row, merged in sorted order).
long long xor_cells(const Raster& ra, const Raster& rb, const GridSpec& gs) {
  long long total = 0;
  for (int r = 0; r < gs.n; ++r) {
    std::size_t ia = static_cast<std::size_t>(ra.offsets[r]);
    const std::size_t ea = static_cast<std::size_t>(ra.offsets[r + 1]);
    std::size_t ib = static_cast<std::size_t>(rb.offsets[r]);
    const std::size_t eb = static_cast<std::size_t>(rb.offsets[r + 1]);
    bool ina = false, inb = false;
    double prev = gs.x0;
    while (ia < ea || ib < eb) {
      const bool take_a =
          ib >= eb || (ia < ea && ra.xs[ia] <= rb.xs[ib]);
      const double x = take_a ? ra.xs[ia] : rb.xs[ib];
      if (ina != inb) total += centers_between(prev, x, gs);
      if (take_a) {
        ina = !ina;
        ++ia;
      } else {
        inb = !inb;
        ++ib;
      }
      prev = x;
    }
  }
  return total;
}

struct TwoRasters {
  Raster ch1, ch2;
};

void rasterize_cluster(const EmbeddedCluster& c, const GridSpec& gs,
                       TwoRasters& out) {
  rasterize(c.chamber1, gs, out.ch1);
  rasterize(c.chamber2, gs, out.ch2);
}

// Worst overshoot of any vertex beyond the grid box, in box-side units.
double box_overshoot(const std::vector<Vec2>& poly, const GridSpec& gs) {
  const double side = gs.cell * gs.n;
  double worst = 0.0;
  for (const Vec2& p : poly) {
    worst = std::max(worst, gs.x0 - p.x);
    worst = std::max(worst, p.x - gs.x1());
    worst = std::max(worst, gs.y0 - p.y);
    worst = std::max(worst, p.y - gs.y1());
  }
  return std::max(0.0, worst) / side;
}

void transform_into(const std::vector<Vec2>& src, const IsometryParams& iso,
                    std::vector<Vec2>& dst) {
  dst.resize(src.size());
  const double c = std::cos(iso.phi), s = std::sin(iso.phi);
  for (std::size_t i = 0; i < src.size(); ++i) {
    Vec2 p = src[i];
    if (iso.reflect) p.y = -p.y;
    dst[i] = Vec2{c * p.x - s * p.y + iso.tx, s * p.x + c * p.y + iso.ty};
  }
}

void check_masses(const EmbeddedCluster& c) {
  if (!(c.m1 > 0.0) || !(c.m2 > 0.0))
    throw std::domain_error("cluster masses must be positive");
}

double distance_on_grid(const EmbeddedCluster& measured,
                        const TwoRasters& measured_raster,
                        const EmbeddedCluster& reference,
                        const IsometryParams& iso, const GridSpec& gs,
                        std::vector<Vec2>& scratch, Raster& raster_scratch) {
  // Out-of-box isometries get a penalty above any attainable distance so
  // the simplex retreats instead of sampling a truncated raster.
  double d = 0.0;
  const double area = gs.cell * gs.cell;
  transform_into(reference.chamber1, iso, scratch);
  double overshoot = box_overshoot(scratch, gs);
  if (overshoot > 0.0) return 8.0 + overshoot;
  rasterize(scratch, gs, raster_scratch);
  d += area * static_cast<double>(
                  xor_cells(measured_raster.ch1, raster_scratch, gs)) /
       measured.m1;
  transform_into(reference.chamber2, iso, scratch);
  overshoot = box_overshoot(scratch, gs);
  if (overshoot > 0.0) return 8.0 + overshoot;
  rasterize(scratch, gs, raster_scratch);
  d += area * static_cast<double>(
                  xor_cells(measured_raster.ch2, raster_scratch, gs)) /
       measured.m2;
  return d;
}

void check_grid(int grid) {
  if (grid < 256) throw std::domain_error("grid must be at least 256");
}

double cluster_diameter(const EmbeddedCluster& a, const EmbeddedCluster& b) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = xmax;
  for (const auto* poly : {&a.chamber1, &a.chamber2, &b.chamber1, &b.chamber2})
    for (const Vec2& p : *poly) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
  return std::max(xmax - xmin, ymax - ymin);
}

void check_profiles(const PerturbedBubble& pb) {
  for (const ArcProfile* p : {&pb.profile0, &pb.profile1, &pb.profile2}) {
    if (moments(*p).supbound >= 1.0)
      throw GeometryError(
          "profile sup bound reaches 1: radial graph may self-intersect");
  }
}

}  // namespace

Vec2 apply_isometry(const IsometryParams& iso, Vec2 p) {
  if (iso.reflect) p.y = -p.y;
  const double c = std::cos(iso.phi), s = std::sin(iso.phi);
  return Vec2{c * p.x - s * p.y + iso.tx, s * p.x + c * p.y + iso.ty};
}

EmbeddedCluster cluster_of(const PerturbedBubble& pb, int arc_samples) {
  const EmbeddedBubble e = embed_perturbed(pb, arc_samples);
  EmbeddedCluster c;
  c.chamber1 = e.chamber1;
  c.chamber2 = e.chamber2;
  c.m1 = pb.base.m1;
  c.m2 = pb.base.m2;
  return c;
}

EmbeddedCluster cluster_of(const StandardBubble& b, int arc_samples) {
  const EmbeddedBubble e = embed(b, arc_samples);
  EmbeddedCluster c;
  c.chamber1 = e.chamber1;
  c.chamber2 = e.chamber2;
  c.m1 = b.m1;
  c.m2 = b.m2;
  return c;
}

double symdiff_distance_clusters(const EmbeddedCluster& measured,
                                 const EmbeddedCluster& reference,
                                 const IsometryParams& iso, int grid) {
  check_grid(grid);
  check_masses(measured);
  std::vector<Vec2> moved1, moved2;
  transform_into(reference.chamber1, iso, moved1);
  transform_into(reference.chamber2, iso, moved2);
  const GridSpec gs = make_grid(
      {&measured.chamber1, &measured.chamber2, &moved1, &moved2}, grid);
  TwoRasters mr;
  rasterize_cluster(measured, gs, mr);
  Raster rr;
  const double area = gs.cell * gs.cell;
  double d = 0.0;
  rasterize(moved1, gs, rr);
  d += area * static_cast<double>(xor_cells(mr.ch1, rr, gs)) / measured.m1;
  rasterize(moved2, gs, rr);
  d += area * static_cast<double>(xor_cells(mr.ch2, rr, gs)) / measured.m2;
  return d;
}

double symdiff_distance(const PerturbedBubble& pb, const StandardBubble& base,
                        const IsometryParams& iso, int grid) {
  check_profiles(pb);
  return symdiff_distance_clusters(cluster_of(pb), cluster_of(base), iso,
                                   grid);
}

namespace {

// Objective over (tx, ty, phi): rotation is taken about the reference box
// center for conditioning, then recomposed into the origin-centered form.
struct Objective {
  const EmbeddedCluster* measured;
  const EmbeddedCluster* reference;
  const TwoRasters* measured_raster;
  const GridSpec* gs;
  Vec2 pivot;
  mutable std::vector<Vec2> scratch;
  mutable Raster raster_scratch;
  mutable int evaluations = 0;

  IsometryParams compose(const std::array<double, 3>& q) const {
    IsometryParams iso;
    iso.phi = q[2];
    const double c = std::cos(q[2]), s = std::sin(q[2]);
    iso.tx = q[0] + pivot.x - (c * pivot.x - s * pivot.y);
    iso.ty = q[1] + pivot.y - (s * pivot.x + c * pivot.y);
    return iso;
  }

  double operator()(const std::array<double, 3>& q) const {
    ++evaluations;
    return distance_on_grid(*measured, *measured_raster, *reference,
                            compose(q), *gs, scratch, raster_scratch);
  }
};

}  // namespace

AsymmetryResult asymmetry_clusters(const EmbeddedCluster& measured,
                                   const EmbeddedCluster& reference,
                                   int grid) {
  check_grid(grid);
  check_masses(measured);
  const GridSpec gs = make_grid({&measured.chamber1, &measured.chamber2,
                                 &reference.chamber1, &reference.chamber2},
                                grid);
  TwoRasters mr;
  rasterize_cluster(measured, gs, mr);
  const double diam = cluster_diameter(measured, reference);

  Objective f;
  f.measured = &measured;
  f.reference = &reference;
  f.measured_raster = &mr;
  f.gs = &gs;
  {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = xmax;
    for (const auto* poly : {&reference.chamber1, &reference.chamber2})
      for (const Vec2& p : *poly) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
      }
    f.pivot = Vec2{0.5 * (xmin + xmax), 0.5 * (ymin + ymax)};
  }

  // Nelder-Mead over (tx, ty, phi); phi is scaled by the diameter so all
  // simplex extents are commensurate lengths.
  using Point = std::array<double, 3>;
  const double ht = 0.02 * diam;
  const double hphi = 0.02;
  std::array<Point, 4> simplex = {Point{0.0, 0.0, 0.0}, Point{ht, 0.0, 0.0},
                                  Point{0.0, ht, 0.0}, Point{0.0, 0.0, hphi}};
  std::array<double, 4> value;
  for (int i = 0; i < 4; ++i) value[i] = f(simplex[i]);

  Point best_q = simplex[0];
  double best_v = value[0];
  const auto record = [&](const Point& q, double v) {
    if (v < best_v) {
      best_v = v;
      best_q = q;
    }
  };
  for (int i = 1; i < 4; ++i) record(simplex[i], value[i]);

  const auto order = [&]() {
    std::array<int, 4> idx = {0, 1, 2, 3};
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return value[a] < value[b]; });
    std::array<Point, 4> sp;
    std::array<double, 4> sv;
    for (int i = 0; i < 4; ++i) {
      sp[i] = simplex[idx[i]];
      sv[i] = value[idx[i]];
    }
    simplex = sp;
    value = sv;
  };

  for (int iter = 0; iter < 400; ++iter) {
    order();
    double extent = 0.0;
    for (int i = 1; i < 4; ++i) {
      extent = std::max(extent, std::abs(simplex[i][0] - simplex[0][0]));
      extent = std::max(extent, std::abs(simplex[i][1] - simplex[0][1]));
      extent = std::max(extent,
                        std::abs(simplex[i][2] - simplex[0][2]) * diam);
    }
    if (extent < 0.25 * gs.cell) break;
    if (value[3] - value[0] < 1e-14 * (1.0 + std::abs(value[0]))) break;

    Point centroid = {0.0, 0.0, 0.0};
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) centroid[k] += simplex[i][k] / 3.0;
    const auto blend = [&](double t) {
      Point p;
      for (int k = 0; k < 3; ++k)
        p[k] = centroid[k] + t * (simplex[3][k] - centroid[k]);
      return p;
    };

    const Point refl = blend(-1.0);
    const double vr = f(refl);
    record(refl, vr);
    if (vr < value[0]) {
      const Point expd = blend(-2.0);
      const double ve = f(expd);
      record(expd, ve);
      if (ve < vr) {
        simplex[3] = expd;
        value[3] = ve;
      } else {
        simplex[3] = refl;
        value[3] = vr;
      }
      continue;
    }
    if (vr < value[2]) {
      simplex[3] = refl;
      value[3] = vr;
      continue;
    }
    const Point ctr = blend(vr < value[3] ? -0.5 : 0.5);
    const double vc = f(ctr);
    record(ctr, vc);
    if (vc < std::min(vr, value[3])) {
      simplex[3] = ctr;
      value[3] = vc;
      continue;
    }
    for (int i = 1; i < 4; ++i) {
      for (int k = 0; k < 3; ++k)
        simplex[i][k] = simplex[0][k] + 0.5 * (simplex[i][k] - simplex[0][k]);
      value[i] = f(simplex[i]);
      record(simplex[i], value[i]);
    }
  }

  const IsometryParams argmin = f.compose(best_q);
  if (std::hypot(best_q[0], best_q[1]) > diam)
    throw SearchError("isometry search drifted beyond the cluster diameter");

  AsymmetryResult res;
  res.alpha = best_v;
  res.argmin = argmin;
  res.grid = grid;
  res.evaluations = f.evaluations;

  // First-order grid error estimate: same argmin, half resolution.
  {
    const GridSpec gs2 = make_grid({&measured.chamber1, &measured.chamber2,
                                    &reference.chamber1, &reference.chamber2},
                                   grid / 2);
    TwoRasters mr2;
    rasterize_cluster(measured, gs2, mr2);
    std::vector<Vec2> scratch;
    Raster rs;
    const double coarse = distance_on_grid(measured, mr2, reference, argmin,
                                           gs2, scratch, rs);
    res.richardson = std::abs(res.alpha - coarse);
  }
  return res;
}

AsymmetryResult asymmetry(const PerturbedBubble& pb, int grid) {
  check_profiles(pb);
  return asymmetry_clusters(cluster_of(pb), cluster_of(pb.base), grid);
}

std::pair<double, double> asymmetry_upper_chain(const PerturbedBubble& pb,
                                                int grid) {
  check_grid(grid);
  for (const ArcProfile* p : {&pb.profile0, &pb.profile1, &pb.profile2}) {
    if (moments(*p).supbound > 1.0)
      throw GateError("profile sup bound exceeds 1 in the symdiff chain");
  }
  if (!(std::abs(pb.sigma) < 0.5))
    throw GateError("dilation exceeds 1/2 in the symdiff chain");

  const StandardBubble& b = pb.base;
  const EmbeddedCluster measured = cluster_of(pb);
  const EmbeddedCluster reference = cluster_of(b);
  const GridSpec gs =
      make_grid({&measured.chamber1, &reference.chamber1}, grid);
  Raster ra, rb;
  rasterize(measured.chamber1, gs, ra);
  rasterize(reference.chamber1, gs, rb);
  const double lhs =
      gs.cell * gs.cell * static_cast<double>(xor_cells(ra, rb, gs)) / b.m1;

  const double grow = (1.0 + pb.sigma) * (1.0 + pb.sigma);
  double sectors = 0.0;
  if (b.equal_mass) {
    // Straight interface sweeps exactly r^2 int |v0|.
    sectors += b.r1 * b.r1 * abs_mean(pb.profile0);
    sectors += symdiff_sector_bound(pb.profile1) * b.r1 * b.r1;
  } else {
    sectors += symdiff_sector_bound(pb.profile0) * b.r0 * b.r0;
    sectors += symdiff_sector_bound(pb.profile1) * b.r1 * b.r1;
  }
  const double rhs = grow * sectors / b.m1 + std::abs(grow - 1.0);
  return {lhs, rhs};
}

}  // namespace bubblestab
