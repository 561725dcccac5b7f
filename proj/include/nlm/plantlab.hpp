#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>

#include "nlm/envelope.hpp"
#include "nlm/input_space.hpp"
#include "nlm/surrogate.hpp"

namespace nlm {

/// The benchmark two-state ODE, simulated by forward Euler with the input
/// held constant over each step and the first state sampled after each step.
struct PaperOde {
  double dt = 0.2;
  int steps = 30;
};

struct LinearLti {
  Vec g;
};

struct Scalar1D {
  std::function<double(double)> f;
  std::string name;
};

struct CustomPlant {
  std::function<Vec(const Vec&)> f;
  int n = 0;
  std::string name;
};

struct PlantOracle {
  std::variant<PaperOde, LinearLti, Scalar1D, CustomPlant> model;
  NoiseModel noise;
  std::uint64_t rng_seed = 0;

  int dim() const;
};

/// Evaluates the plant at u = V*amp and injects noise (seeded determinis-
/// tically from rng_seed and the amplitude bits, so queries are pure in
/// (seed, amp)). Throws "trajectory diverged" when the simulated state
/// leaves the finite range.
Vec query(const PlantOracle& plant, const InputBasis& basis, const Vec& amp);

/// Adds a uniformly drawn vector of norm <= delta (additive bounded) or
/// <= delta*||y|| (SNR-bounded).
Vec inject_noise(const Vec& y, const NoiseModel& noise, std::uint64_t seed);

/// Brute-force maximum of ||y - G_at_u|| over the intersection of the two
/// output balls, from exact rim/antipode candidates plus dense boundary
/// sampling (n = 2 or 3). Test oracle; shares no kernels with the
/// relaxation. Throws on an empty intersection.
double oracle_envelope_max(const Vec& y1, const Vec& y2, double r1, double r2,
                           const Vec& G_at_u, int samples);

/// Ground-truth scalar AE-NLM: max over a dense grid of |f(u) - gain*u| / |u|
/// for u in [lo, hi] with |u| >= epsilon.
double oracle_true_aenlm_1d(const std::function<double(double)>& f, double gain, double lo,
                            double hi, int grid, double epsilon);

/// Brute-force full-envelope inference over a cell: max of ||y - G(u)|| /
/// ||u|| over gridded (amp, y) pairs satisfying all D envelope constraints.
/// Small scale only (n <= 3, mu <= 2). Throws when no gridded pair passes.
double oracle_full_envelope_inference(const Dataset& ds, const LinearSurrogate& G,
                                      const Cell& cell, int amp_grid, int y_grid);

}  // namespace nlm
