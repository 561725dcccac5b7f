#pragma once

#include <limits>

#include "nlm/input_space.hpp"

namespace nlm {

enum class GeomCase { Lens, Sample1Inside, Sample2Inside, Degenerate };

/// Geometry of the two-sample output set at one input: spheres of radius
/// r1, r2 around y1, y2 whose intersection carries chord center M and
/// half-chord d in the lens configuration.
struct GeomQuantities {
  double r = 0.0;   // ||y1 - y2||
  double r1 = 0.0;  // L*dist1 + inflation
  double r2 = 0.0;  // L*dist2 + inflation
  double d = std::numeric_limits<double>::quiet_NaN();
  Vec M;  // set in the Lens case only
  GeomCase kind = GeomCase::Degenerate;
};

/// Classifies the two-sphere configuration and computes (d, M) in the lens
/// case. Strict case boundaries: Sample1Inside iff r2^2 > r1^2 + r^2,
/// Sample2Inside symmetric, Degenerate iff r < 1e-10; boundary points fall
/// into Lens. For scalar outputs (n = 1) the output set is an interval and
/// M, d are its exact center and half-length. Throws "empty output set" when
/// r1 + r2 < r - 1e-9.
GeomQuantities geometry(const Vec& y1, const Vec& y2, double dist1, double dist2,
                        double lipschitz, double inflation);

/// Case-wise upper bound on max ||y - G(u)|| over the two-sample output set:
/// ||M - G(u)|| + d in the lens case, ||y_i - G(u)|| + r_i when sample i's
/// sphere is enclosed by the other.
double theorem1_value(const Vec& G_at_u, const GeomQuantities& geom, const Vec& y1,
                      const Vec& y2);

/// min_i ||y_i - G(u)|| + r_i, the tightest convex-weighted triangle bound.
double triangle_value(const Vec& G_at_u, const GeomQuantities& geom, const Vec& y1,
                      const Vec& y2);

/// min(theorem1_value, triangle_value) / u_norm. Throws when u_norm < epsilon
/// (inputs below epsilon are excluded).
double pointwise_objective(const Vec& G_at_u, const GeomQuantities& geom, const Vec& y1,
                           const Vec& y2, double u_norm, double epsilon);

}  // namespace nlm
