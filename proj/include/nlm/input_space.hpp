#pragma once

#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace nlm {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Amplitude-parameterized input set: trajectories u = V*amp where the
/// columns of V are orthonormal signals, amplitudes live in a box with an
/// optional excluded corner sub-box, and inputs below norm epsilon are
/// excluded from the analysis.
struct InputBasis {
  int n = 0;   // trajectory length
  int mu = 0;  // number of basis signals
  Mat V;       // n x mu, orthonormal columns
  Vec box_lo;
  Vec box_hi;
  std::optional<Vec> exclusion_hi;  // excluded sub-box is [box_lo, exclusion_hi]
  double epsilon = 0.0;

  bool amp_in_box(const Vec& amp, double tol = 0.0) const;
  bool amp_in_exclusion_interior(const Vec& amp) const;
  /// In the box, outside the exclusion interior, and with norm >= epsilon.
  bool feasible_amp(const Vec& amp) const;

  /// Trivial basis V = I with an unbounded box; used when data carry raw
  /// trajectories instead of a signal expansion.
  static InputBasis identity(int n, double epsilon = 0.0);
};

enum class SplitKind { AtWorstCase, AtMidpoint };

/// Hyperrectangle of amplitude space together with its local bound state.
struct Cell {
  Vec lo;
  Vec hi;
  double bound = 0.0;
  Vec worst_amp;
  std::pair<int, int> support{-1, -1};
  bool feasible = true;  // false when the cell lies entirely below norm epsilon
  bool gap_met = true;
  long id = -1;

  double volume() const;
  Vec midpoint() const;
  bool contains(const Vec& amp, double tol = 0.0) const;
  /// Distance from the origin to the box (0 if the box contains the origin).
  double min_norm() const;
  /// Norm of the componentwise-largest-magnitude corner.
  double max_norm() const;
  /// Distance from p to the box (0 if inside).
  double clamp_distance(const Vec& p) const;
  /// Distance from p to the farthest point of the box.
  double max_distance(const Vec& p) const;
  Vec clamp(const Vec& p) const;
  double half_diagonal() const;
};

/// Orthonormalizes the raw signals by modified Gram-Schmidt (span and column
/// order preserved, no sign flips). Throws "degenerate basis" when a signal is
/// linearly dependent on its predecessors within 1e-9 relative tolerance.
InputBasis build_basis(const std::vector<Vec>& raw_signals, Vec box_lo, Vec box_hi,
                       std::optional<Vec> exclusion_hi, double epsilon);

/// u = V*amp. Throws when amp is outside the box.
Vec amp_to_input(const InputBasis& basis, const Vec& amp);

/// Covers [box_lo, box_hi] minus the exclusion sub-box exactly with
/// pairwise interior-disjoint cells (staircase decomposition, mu cells when
/// an exclusion is present, one cell otherwise).
std::vector<Cell> initial_partition(const InputBasis& basis);

/// Splits the largest edge (ties: lowest dimension index). The hyperplane
/// passes through amp_star when the resulting child-volume ratio rho
/// satisfies alpha < rho < 1/alpha, and through the edge midpoint otherwise.
/// Children share the split coordinate exactly.
std::tuple<Cell, Cell, SplitKind> split_cell(const Cell& cell, const Vec& amp_star,
                                             double alpha);

}  // namespace nlm
