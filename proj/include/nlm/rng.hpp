#pragma once

#include <cstdint>
#include <cstring>
#include <random>

#include <Eigen/Core>

namespace nlm {

// Explicit uniform/gaussian draws instead of std:: distributions so that
// streams are fully specified by the mt19937_64 sequence and portable
// across standard libraries.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& gen, double lo, double hi) {
  return lo + (hi - lo) * uniform01(gen);
}

inline double gaussian(std::mt19937_64& gen) {
  // Box-Muller; rejects the measure-zero u = 0 draw.
  double u = 0.0;
  do {
    u = uniform01(gen);
  } while (u <= 0.0);
  const double v = uniform01(gen);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * v);
}

/// Uniform draw from the closed Euclidean ball of given radius.
inline Eigen::VectorXd uniform_in_ball(std::mt19937_64& gen, int dim, double radius) {
  Eigen::VectorXd dir(dim);
  double nrm = 0.0;
  do {
    for (int i = 0; i < dim; ++i) dir[i] = gaussian(gen);
    nrm = dir.norm();
  } while (nrm == 0.0);
  const double rad = radius * std::pow(uniform01(gen), 1.0 / dim);
  return (rad / nrm) * dir;
}

inline std::uint64_t fnv1a64(const void* data, std::size_t len, std::uint64_t seed) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed ^ 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Seed derived from a seed and an amplitude vector; identical amplitudes map
/// to identical seeds, which keeps plant queries pure in (seed, amp).
inline std::uint64_t amp_seed(std::uint64_t seed, const Eigen::VectorXd& amp) {
  std::uint64_t h = seed ^ 0x9e3779b97f4a7c15ULL;
  for (Eigen::Index i = 0; i < amp.size(); ++i) {
    std::uint64_t bits = 0;
    const double x = amp[i];
    std::memcpy(&bits, &x, sizeof(bits));
    h = fnv1a64(&bits, sizeof(bits), h);
  }
  return h;
}

}  // namespace nlm
