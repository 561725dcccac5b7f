#pragma once

#include <nlohmann/json_fwd.hpp>

#include "nlm/envelope.hpp"
#include "nlm/input_space.hpp"

namespace nlm {

/// Causal LTI surrogate: convolution with impulse response g, i.e. the
/// lower-triangular Toeplitz operator with first column g.
struct LinearSurrogate {
  Vec g;
  double op_norm_bound = 0.0;  // >= ||T(g)||_2, certified by ||g||_1

  static LinearSurrogate from_impulse(Vec g);
};

/// y[k] = sum_{j<=k} g[k-j] * u[j].
Vec apply(const LinearSurrogate& G, const Vec& u);

struct FitConfig {
  double tol = -1.0;    // <= 0 resolves to 1e-4 * L
  int max_iters = 300;  // outer prox-linear iterations
};

struct FitResult {
  LinearSurrogate surrogate;
  double objective = 0.0;    // J(g) = max_i ||y_i - T(g) u_i|| / ||u_i||
  double lower_bound = 0.0;  // certified convex lower bound on min_g J(g)
  double gap() const { return objective - lower_bound; }
  int iterations = 0;
  bool gap_met = false;
};

/// Minimax fit of the impulse response: minimizes the largest normalized
/// residual over the dataset. Solved by a prox-linear bundle iteration whose
/// subproblem is a simplex-constrained QP; a dual certificate obtained by
/// projecting the active-set subgradient combination onto the stationarity
/// constraint yields the reported lower bound. Non-convergence within the
/// iteration budget returns the best iterate with gap_met = false.
FitResult fit_minimax(const Dataset& ds, FitConfig cfg = {});

/// Data-driven lower bound max_i ||y_i - G(u_i)|| / ||u_i|| over samples with
/// ||u_i|| >= min_input_norm; under noise the per-sample inflation is
/// subtracted from each numerator and clamped at zero.
double lower_bound(const LinearSurrogate& G, const Dataset& ds, double min_input_norm = 0.0);

nlohmann::json surrogate_to_json(const LinearSurrogate& G);
LinearSurrogate surrogate_from_json(const nlohmann::json& j);

}  // namespace nlm
