#include "nlm/input_space.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace nlm {

namespace {

void check_box(const Vec& lo, const Vec& hi) {
  if (lo.size() != hi.size() || lo.size() == 0)
    throw std::invalid_argument("box bounds must have matching nonzero dimension");
  for (Eigen::Index i = 0; i < lo.size(); ++i)
    if (!(lo[i] < hi[i]))
      throw std::invalid_argument(
          fmt::format("box_lo[{}] must be < box_hi[{}]", i, i));
}

}  // namespace

bool InputBasis::amp_in_box(const Vec& amp, double tol) const {
  if (amp.size() != mu) return false;
  for (int i = 0; i < mu; ++i)
    if (amp[i] < box_lo[i] - tol || amp[i] > box_hi[i] + tol) return false;
  return true;
}

bool InputBasis::amp_in_exclusion_interior(const Vec& amp) const {
  if (!exclusion_hi) return false;
  for (int i = 0; i < mu; ++i)
    if (!(amp[i] < (*exclusion_hi)[i])) return false;
  return amp_in_box(amp);
}

bool InputBasis::feasible_amp(const Vec& amp) const {
  return amp_in_box(amp) && !amp_in_exclusion_interior(amp) && amp.norm() >= epsilon;
}

InputBasis InputBasis::identity(int n, double epsilon) {
  if (n <= 0) throw std::invalid_argument("identity basis needs n > 0");
  InputBasis b;
  b.n = n;
  b.mu = n;
  b.V = Mat::Identity(n, n);
  const double inf = std::numeric_limits<double>::infinity();
  b.box_lo = Vec::Constant(n, -inf);
  b.box_hi = Vec::Constant(n, inf);
  b.epsilon = epsilon;
  return b;
}

double Cell::volume() const { return (hi - lo).prod(); }

Vec Cell::midpoint() const { return lo + 0.5 * (hi - lo); }

bool Cell::contains(const Vec& amp, double tol) const {
  if (amp.size() != lo.size()) return false;
  for (Eigen::Index i = 0; i < lo.size(); ++i)
    if (amp[i] < lo[i] - tol || amp[i] > hi[i] + tol) return false;
  return true;
}

double Cell::min_norm() const {
  double s = 0.0;
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    const double c = std::min(std::max(0.0, lo[i]), hi[i]);
    s += c * c;
  }
  return std::sqrt(s);
}

double Cell::max_norm() const {
  double s = 0.0;
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    const double c = std::max(std::abs(lo[i]), std::abs(hi[i]));
    s += c * c;
  }
  return std::sqrt(s);
}

double Cell::clamp_distance(const Vec& p) const {
  double s = 0.0;
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    const double c = std::min(std::max(p[i], lo[i]), hi[i]);
    s += (p[i] - c) * (p[i] - c);
  }
  return std::sqrt(s);
}

double Cell::max_distance(const Vec& p) const {
  double s = 0.0;
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    const double c = std::max(std::abs(p[i] - lo[i]), std::abs(hi[i] - p[i]));
    s += c * c;
  }
  return std::sqrt(s);
}

Vec Cell::clamp(const Vec& p) const {
  Vec q = p;
  for (Eigen::Index i = 0; i < lo.size(); ++i)
    q[i] = std::min(std::max(p[i], lo[i]), hi[i]);
  return q;
}

double Cell::half_diagonal() const { return 0.5 * (hi - lo).norm(); }

InputBasis build_basis(const std::vector<Vec>& raw_signals, Vec box_lo, Vec box_hi,
                       std::optional<Vec> exclusion_hi, double epsilon) {
  if (raw_signals.empty()) throw std::invalid_argument("no basis signals given");
  const int n = static_cast<int>(raw_signals.front().size());
  const int mu = static_cast<int>(raw_signals.size());
  if (n <= 0) throw std::invalid_argument("basis signals must be nonempty");
  if (mu > n) throw std::invalid_argument("more signals than trajectory samples");
  for (const Vec& s : raw_signals)
    if (static_cast<int>(s.size()) != n)
      throw std::invalid_argument("basis signals must share a common length");
  check_box(box_lo, box_hi);
  if (box_lo.size() != mu) throw std::invalid_argument("box dimension must equal signal count");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (exclusion_hi) {
    if (exclusion_hi->size() != mu)
      throw std::invalid_argument("exclusion dimension must equal signal count");
    for (int i = 0; i < mu; ++i)
      if (!(box_lo[i] < (*exclusion_hi)[i] && (*exclusion_hi)[i] < box_hi[i]))
        throw std::invalid_argument("exclusion must be a proper sub-box at the lower corner");
  }

  // Modified Gram-Schmidt with a second re-orthogonalization pass.
  Mat V(n, mu);
  for (int j = 0; j < mu; ++j) {
    Vec v = raw_signals[j];
    const double orig = v.norm();
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i < j; ++i) v -= V.col(i).dot(v) * V.col(i);
    if (orig == 0.0 || v.norm() < 1e-9 * orig)
      throw std::invalid_argument("degenerate basis");
    V.col(j) = v / v.norm();
  }

  InputBasis basis;
  basis.n = n;
  basis.mu = mu;
  basis.V = std::move(V);
  basis.box_lo = std::move(box_lo);
  basis.box_hi = std::move(box_hi);
  basis.exclusion_hi = std::move(exclusion_hi);
  basis.epsilon = epsilon;
  return basis;
}

Vec amp_to_input(const InputBasis& basis, const Vec& amp) {
  if (amp.size() != basis.mu) throw std::invalid_argument("amplitude dimension mismatch");
  if (!basis.amp_in_box(amp, 1e-12))
    throw std::invalid_argument("amplitude outside the input box");
  return basis.V * amp;
}

std::vector<Cell> initial_partition(const InputBasis& basis) {
  std::vector<Cell> cells;
  if (!basis.exclusion_hi) {
    Cell c;
    c.lo = basis.box_lo;
    c.hi = basis.box_hi;
    c.id = 0;
    cells.push_back(std::move(c));
    return cells;
  }
  // Staircase around the excluded corner: cell j spans [exclusion_hi, box_hi]
  // along dimension j, the exclusion slab along dimensions < j, and the full
  // box along dimensions > j.
  const Vec& c = *basis.exclusion_hi;
  for (int j = 0; j < basis.mu; ++j) {
    Cell cell;
    cell.lo = basis.box_lo;
    cell.hi = basis.box_hi;
    for (int i = 0; i < j; ++i) cell.hi[i] = c[i];
    cell.lo[j] = c[j];
    cell.id = j;
    cells.push_back(std::move(cell));
  }
  return cells;
}

std::tuple<Cell, Cell, SplitKind> split_cell(const Cell& cell, const Vec& amp_star,
                                             double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must be in (0,1)");
  if (!cell.contains(amp_star, 1e-9))
    throw std::invalid_argument("split point outside the cell");

  int j = 0;
  double longest = -1.0;
  for (Eigen::Index i = 0; i < cell.lo.size(); ++i) {
    const double e = cell.hi[i] - cell.lo[i];
    if (e > longest) {
      longest = e;
      j = static_cast<int>(i);
    }
  }
  if (!(longest > 0.0)) throw std::runtime_error("cell below resolution");

  const double s_star = std::min(std::max(amp_star[j], cell.lo[j]), cell.hi[j]);
  const double lower_part = s_star - cell.lo[j];
  const double upper_part = cell.hi[j] - s_star;

  SplitKind kind = SplitKind::AtMidpoint;
  double s = 0.0;
  if (lower_part > 0.0 && upper_part > 0.0) {
    const double rho = lower_part / upper_part;
    if (rho > alpha && rho < 1.0 / alpha) {
      kind = SplitKind::AtWorstCase;
      s = s_star;
    }
  }
  if (kind == SplitKind::AtMidpoint) {
    s = cell.lo[j] + 0.5 * longest;
    if (!(s > cell.lo[j] && s < cell.hi[j])) throw std::runtime_error("cell below resolution");
  }

  Cell c1;
  c1.lo = cell.lo;
  c1.hi = cell.hi;
  c1.hi[j] = s;
  Cell c2;
  c2.lo = cell.lo;
  c2.hi = cell.hi;
  c2.lo[j] = s;
  return {std::move(c1), std::move(c2), kind};
}

}  // namespace nlm
