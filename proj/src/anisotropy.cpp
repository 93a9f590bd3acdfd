#include "anitv/anisotropy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace anitv {

double AnisotropyDensity::phi(std::span<const double> nu) const {
  const Stencil& sigma = potential_.stencil();
  if (static_cast<int>(nu.size()) != sigma.dim())
    throw std::invalid_argument("phi: direction dimension mismatch");
  RealStencilVector dots(sigma.size());
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    double d = 0.0;
    for (int i = 0; i < sigma.dim(); ++i) d += nu[i] * sigma.offset(j)[i];
    dots[j] = d;
  }
  return lovasz_extend(potential_, dots);
}

namespace {

FrankPoint frank_point(const AnisotropyDensity& density, std::vector<double> theta) {
  const double p = density.phi(theta);
  if (!(p > 0.0))
    throw std::domain_error(
        "frank_diagram: phi vanishes at a sampled direction; "
        "coercivity assumption fails");
  FrankPoint fp;
  fp.phi = p;
  fp.point.resize(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) fp.point[i] = theta[i] / p;
  fp.theta = std::move(theta);
  return fp;
}

}  // namespace

std::vector<FrankPoint> frank_diagram(const AnisotropyDensity& density,
                                      int n_samples) {
  if (n_samples < 1) throw std::invalid_argument("frank_diagram: need samples");
  const int dim = density.dim();
  std::vector<FrankPoint> points;
  points.reserve(n_samples);
  if (dim == 2) {
    for (int k = 0; k < n_samples; ++k) {
      const double a = 2.0 * std::numbers::pi * k / n_samples;
      points.push_back(frank_point(density, {std::cos(a), std::sin(a)}));
    }
  } else if (dim == 3) {
    // Fibonacci sphere
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < n_samples; ++k) {
      const double z = 1.0 - 2.0 * (k + 0.5) / n_samples;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double a = golden * k;
      points.push_back(frank_point(density, {r * std::cos(a), r * std::sin(a), z}));
    }
  } else {
    throw std::invalid_argument("frank_diagram: only N=2 or N=3 supported");
  }
  return points;
}

namespace {

double cross(const std::array<double, 2>& o, const std::array<double, 2>& a,
             const std::array<double, 2>& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

bool on_segment(const std::array<double, 2>& p, const std::array<double, 2>& q,
                const std::array<double, 2>& r) {
  return std::min(p[0], r[0]) <= q[0] && q[0] <= std::max(p[0], r[0]) &&
         std::min(p[1], r[1]) <= q[1] && q[1] <= std::max(p[1], r[1]);
}

bool segments_intersect(const std::array<double, 2>& p1, const std::array<double, 2>& p2,
                        const std::array<double, 2>& q1, const std::array<double, 2>& q2) {
  const double d1 = cross(q1, q2, p1);
  const double d2 = cross(q1, q2, p2);
  const double d3 = cross(p1, p2, q1);
  const double d4 = cross(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
      ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (d1 == 0 && on_segment(q1, p1, q2)) return true;
  if (d2 == 0 && on_segment(q1, p2, q2)) return true;
  if (d3 == 0 && on_segment(p1, q1, p2)) return true;
  if (d4 == 0 && on_segment(p1, q2, p2)) return true;
  return false;
}

double signed_area(const Polygon& poly) {
  double a = 0.0;
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& p = v[i];
    const auto& q = v[(i + 1) % v.size()];
    a += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * a;
}

}  // namespace

void validate_polygon(const Polygon& poly) {
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  if (n < 3) throw std::invalid_argument("polygon: need at least 3 vertices");
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = v[i];
    const auto& q = v[(i + 1) % n];
    if (p == q) throw std::invalid_argument("polygon: zero-length edge");
  }
  if (!(signed_area(poly) > 0.0))
    throw std::invalid_argument("polygon: vertices must be counterclockwise");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // skip adjacent edges (they share a vertex)
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]))
        throw std::invalid_argument("polygon: self-intersecting");
    }
  }
}

bool point_in_polygon(const Polygon& poly, double x, double y) {
  // crossing number; boundary points resolve by the half-open ray rule
  bool in = false;
  const auto& v = poly.vertices;
  const std::size_t n = v.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const bool straddles = (v[i][1] > y) != (v[j][1] > y);
    if (straddles) {
      const double xi =
          v[j][0] + (y - v[j][1]) / (v[i][1] - v[j][1]) * (v[i][0] - v[j][0]);
      if (x < xi) in = !in;
    }
  }
  return in;
}

PolyhedralPerimeter polyhedral_perimeter_detailed(const AnisotropyDensity& density,
                                                  const PolyhedralSet& set) {
  if (density.dim() != 2)
    throw std::invalid_argument("polyhedral_perimeter: reference geometry is 2D");
  validate_polygon(set.polygon);
  const auto& lo = set.window_lo;
  const auto& hi = set.window_hi;
  if (!(lo[0] < hi[0] && lo[1] < hi[1]))
    throw std::invalid_argument("polyhedral_perimeter: bad window");

  PolyhedralPerimeter result;
  const auto& v = set.polygon.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& a = v[i];
    const auto& b = v[(i + 1) % v.size()];
    const double dx = b[0] - a[0];
    const double dy = b[1] - a[1];

    // drop edges lying exactly on the window boundary (open-window measure)
    bool on_boundary = false;
    for (int k = 0; k < 2; ++k) {
      const double d = k == 0 ? dx : dy;
      if (d == 0.0 && (a[k] == lo[k] || a[k] == hi[k])) on_boundary = true;
    }
    if (on_boundary) continue;

    // clip the parametrized edge a + t (b-a), t in [0,1], to the window
    double t0 = 0.0, t1 = 1.0;
    bool empty = false;
    for (int k = 0; k < 2 && !empty; ++k) {
      const double d = k == 0 ? dx : dy;
      const double s = a[k];
      if (d == 0.0) {
        if (s < lo[k] || s > hi[k]) empty = true;
      } else {
        double ta = (lo[k] - s) / d;
        double tb = (hi[k] - s) / d;
        if (ta > tb) std::swap(ta, tb);
        t0 = std::max(t0, ta);
        t1 = std::min(t1, tb);
        if (t0 >= t1) empty = true;
      }
    }
    if (empty) continue;

    const double len = (t1 - t0) * std::hypot(dx, dy);
    if (len <= 0.0) continue;

    const double norm = std::hypot(dx, dy);
    const std::array<double, 2> inner{-dy / norm, dx / norm};
    const double p = density.phi(inner[0], inner[1]);
    result.edges.push_back({i, len, inner, p, len * p});
    result.total += len * p;
  }
  return result;
}

double polyhedral_perimeter(const AnisotropyDensity& density,
                            const PolyhedralSet& set) {
  return polyhedral_perimeter_detailed(density, set).total;
}

namespace {

double segment_measure_2d(std::span<const double> unit, double c,
                          std::span<const double> lo, std::span<const double> hi) {
  // line {x . unit = c}, direction orthogonal to unit
  const double px = c * unit[0], py = c * unit[1];
  const double dx = -unit[1], dy = unit[0];
  double t0 = -std::numeric_limits<double>::infinity();
  double t1 = std::numeric_limits<double>::infinity();
  const double p[2] = {px, py}, d[2] = {dx, dy};
  for (int k = 0; k < 2; ++k) {
    if (d[k] == 0.0) {
      if (p[k] <= lo[k] || p[k] >= hi[k]) return 0.0;  // open box
    } else {
      double ta = (lo[k] - p[k]) / d[k];
      double tb = (hi[k] - p[k]) / d[k];
      if (ta > tb) std::swap(ta, tb);
      t0 = std::max(t0, ta);
      t1 = std::min(t1, tb);
    }
  }
  return std::max(0.0, t1 - t0);
}

double cross_section_area_3d(std::span<const double> unit, double c,
                             std::span<const double> lo, std::span<const double> hi) {
  // plane exactly on a box face has zero open-box cross-section
  for (int i = 0; i < 3; ++i) {
    if (std::abs(std::abs(unit[i]) - 1.0) < 1e-15) {
      const double coord = c / unit[i];
      if (coord <= lo[i] || coord >= hi[i]) return 0.0;
      double area = 1.0;
      for (int j = 0; j < 3; ++j)
        if (j != i) area *= hi[j] - lo[j];
      return area;
    }
  }

  // collect plane/edge intersection points over the 12 box edges
  std::vector<std::array<double, 3>> pts;
  auto corner = [&](int bits, std::array<double, 3>& x) {
    for (int i = 0; i < 3; ++i) x[i] = (bits >> i) & 1 ? hi[i] : lo[i];
  };
  auto f = [&](const std::array<double, 3>& x) {
    return x[0] * unit[0] + x[1] * unit[1] + x[2] * unit[2] - c;
  };
  auto push_unique = [&](const std::array<double, 3>& x) {
    for (const auto& q : pts)
      if (std::abs(q[0] - x[0]) + std::abs(q[1] - x[1]) + std::abs(q[2] - x[2]) < 1e-12)
        return;
    pts.push_back(x);
  };
  for (int b = 0; b < 8; ++b) {
    for (int axis = 0; axis < 3; ++axis) {
      if ((b >> axis) & 1) continue;  // each edge once, from its low corner
      const int b2 = b | (1 << axis);
      std::array<double, 3> x1, x2;
      corner(b, x1);
      corner(b2, x2);
      const double f1 = f(x1), f2 = f(x2);
      if (f1 == 0.0) push_unique(x1);
      if (f2 == 0.0) push_unique(x2);
      if ((f1 < 0 && f2 > 0) || (f1 > 0 && f2 < 0)) {
        const double t = f1 / (f1 - f2);
        push_unique({x1[0] + t * (x2[0] - x1[0]), x1[1] + t * (x2[1] - x1[1]),
                     x1[2] + t * (x2[2] - x1[2])});
      }
    }
  }
  if (pts.size() < 3) return 0.0;

  // in-plane basis, angular sort, shoelace
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(unit[i]) < std::abs(unit[k])) k = i;
  std::array<double, 3> e{0, 0, 0};
  e[k] = 1.0;
  std::array<double, 3> u1{e[1] * unit[2] - e[2] * unit[1],
                           e[2] * unit[0] - e[0] * unit[2],
                           e[0] * unit[1] - e[1] * unit[0]};
  const double n1 = std::hypot(u1[0], u1[1], u1[2]);
  for (auto& x : u1) x /= n1;
  const std::array<double, 3> u2{unit[1] * u1[2] - unit[2] * u1[1],
                                 unit[2] * u1[0] - unit[0] * u1[2],
                                 unit[0] * u1[1] - unit[1] * u1[0]};
  std::vector<std::array<double, 2>> plane;
  plane.reserve(pts.size());
  double cx = 0, cy = 0;
  for (const auto& x : pts) {
    const double a = x[0] * u1[0] + x[1] * u1[1] + x[2] * u1[2];
    const double b = x[0] * u2[0] + x[1] * u2[1] + x[2] * u2[2];
    plane.push_back({a, b});
    cx += a;
    cy += b;
  }
  cx /= plane.size();
  cy /= plane.size();
  std::sort(plane.begin(), plane.end(),
            [cx, cy](const auto& p, const auto& q) {
              return std::atan2(p[1] - cy, p[0] - cx) <
                     std::atan2(q[1] - cy, q[0] - cx);
            });
  double area = 0.0;
  for (std::size_t i = 0; i < plane.size(); ++i) {
    const auto& p = plane[i];
    const auto& q = plane[(i + 1) % plane.size()];
    area += p[0] * q[1] - q[0] * p[1];
  }
  return std::abs(area) / 2.0;
}

}  // namespace

double hyperplane_box_measure(std::span<const double> nu, double c,
                              std::span<const double> box_lo,
                              std::span<const double> box_hi) {
  const int dim = static_cast<int>(nu.size());
  if (static_cast<int>(box_lo.size()) != dim || static_cast<int>(box_hi.size()) != dim)
    throw std::invalid_argument("hyperplane_box_measure: dimension mismatch");
  double norm = 0.0;
  for (double x : nu) norm += x * x;
  norm = std::sqrt(norm);
  if (!(norm > 0.0))
    throw std::invalid_argument("hyperplane_box_measure: zero normal");
  std::vector<double> unit(nu.begin(), nu.end());
  for (auto& x : unit) x /= norm;
  const double cn = c / norm;

  switch (dim) {
    case 1: {
      const double x = cn * unit[0];
      return (box_lo[0] < x && x < box_hi[0]) ? 1.0 : 0.0;
    }
    case 2:
      return segment_measure_2d(unit, cn, box_lo, box_hi);
    case 3:
      return cross_section_area_3d(unit, cn, box_lo, box_hi);
    default:
      throw std::invalid_argument("hyperplane_box_measure: N <= 3 only");
  }
}

double axis_box_perimeter(const AnisotropyDensity& density,
                          std::span<const double> box_lo, std::span<const double> box_hi,
                          std::span<const double> window_lo,
                          std::span<const double> window_hi) {
  const int dim = density.dim();
  if (static_cast<int>(box_lo.size()) != dim || static_cast<int>(box_hi.size()) != dim)
    throw std::invalid_argument("axis_box_perimeter: dimension mismatch");
  double total = 0.0;
  for (int i = 0; i < dim; ++i) {
    for (int side = 0; side < 2; ++side) {
      const double b = side == 0 ? box_lo[i] : box_hi[i];
      if (!(window_lo[i] < b && b < window_hi[i])) continue;
      double area = 1.0;
      for (int j = 0; j < dim; ++j) {
        if (j == i) continue;
        area *= std::max(0.0, std::min(box_hi[j], window_hi[j]) -
                                  std::max(box_lo[j], window_lo[j]));
      }
      if (area <= 0.0) continue;
      std::vector<double> inner(dim, 0.0);
      inner[i] = side == 0 ? 1.0 : -1.0;  // pointing into the box
      total += area * density.phi(inner);
    }
  }
  return total;
}

}  // namespace anitv
