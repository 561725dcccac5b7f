#include "nlm/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlm {

namespace {

constexpr double kDegenerateTol = 1e-10;  // below this r the spheres are concentric
constexpr double kSqrtClamp = -1e-12;     // roundoff allowance at tangency

double clamped_sqrt(double x) {
  if (x < 0.0) {
    if (x < kSqrtClamp) throw std::logic_error("negative square-root argument in lens geometry");
    x = 0.0;
  }
  return std::sqrt(x);
}

}  // namespace

GeomQuantities geometry(const Vec& y1, const Vec& y2, double dist1, double dist2,
                        double lipschitz, double inflation) {
  if (y1.size() != y2.size() || y1.size() == 0)
    throw std::invalid_argument("output samples must share a nonzero dimension");
  if (dist1 < 0.0 || dist2 < 0.0) throw std::invalid_argument("distances must be nonnegative");
  if (inflation < 0.0) throw std::invalid_argument("inflation must be nonnegative");

  GeomQuantities g;
  g.r = (y1 - y2).norm();
  g.r1 = lipschitz * dist1 + inflation;
  g.r2 = lipschitz * dist2 + inflation;
  if (g.r1 + g.r2 < g.r - 1e-9) throw std::runtime_error("empty output set");

  if (y1.size() == 1) {
    // Scalar outputs: the set is the interval intersection, exactly.
    const double lo = std::max(y1[0] - g.r1, y2[0] - g.r2);
    const double hi = std::min(y1[0] + g.r1, y2[0] + g.r2);
    g.kind = GeomCase::Lens;
    g.d = std::max(0.0, 0.5 * (hi - lo));
    g.M = Vec::Constant(1, 0.5 * (lo + hi));
    return g;
  }

  if (g.r < kDegenerateTol) {
    g.kind = GeomCase::Degenerate;
    return g;
  }
  const double rr = g.r * g.r;
  if (g.r2 * g.r2 > g.r1 * g.r1 + rr) {
    g.kind = GeomCase::Sample1Inside;
    return g;
  }
  if (g.r1 * g.r1 > g.r2 * g.r2 + rr) {
    g.kind = GeomCase::Sample2Inside;
    return g;
  }

  g.kind = GeomCase::Lens;
  const double a1 = rr - (g.r2 - g.r1) * (g.r2 - g.r1);
  const double a2 = (g.r1 + g.r2) * (g.r1 + g.r2) - rr;
  g.d = clamped_sqrt(a1) * clamped_sqrt(a2) / (2.0 * g.r);
  // Distance from y2 to the chord plane along y1 - y2; equals
  // sqrt(r2^2 - d^2) and is nonnegative in the lens case.
  const double m = (rr + g.r2 * g.r2 - g.r1 * g.r1) / (2.0 * g.r);
  g.M = y2 + (m / g.r) * (y1 - y2);
  return g;
}

double theorem1_value(const Vec& G_at_u, const GeomQuantities& geom, const Vec& y1,
                      const Vec& y2) {
  switch (geom.kind) {
    case GeomCase::Lens:
      return (geom.M - G_at_u).norm() + geom.d;
    case GeomCase::Sample1Inside:
      return (y1 - G_at_u).norm() + geom.r1;
    case GeomCase::Sample2Inside:
      return (y2 - G_at_u).norm() + geom.r2;
    case GeomCase::Degenerate:
      return (y1 - G_at_u).norm() + std::min(geom.r1, geom.r2);
  }
  return 0.0;
}

double triangle_value(const Vec& G_at_u, const GeomQuantities& geom, const Vec& y1,
                      const Vec& y2) {
  return std::min((y1 - G_at_u).norm() + geom.r1, (y2 - G_at_u).norm() + geom.r2);
}

double pointwise_objective(const Vec& G_at_u, const GeomQuantities& geom, const Vec& y1,
                           const Vec& y2, double u_norm, double epsilon) {
  if (u_norm < epsilon) throw std::invalid_argument("input below epsilon");
  const double num =
      std::min(theorem1_value(G_at_u, geom, y1, y2), triangle_value(G_at_u, geom, y1, y2));
  return num / u_norm;
}

}  // namespace nlm
