#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "nlm/input_space.hpp"

namespace nlm {

enum class NoiseKind { None, AdditiveBounded, RelativeSNR };

struct NoiseModel {
  NoiseKind kind = NoiseKind::None;
  double delta = 0.0;
};

std::string noise_kind_name(NoiseKind kind);
NoiseKind noise_kind_from_name(const std::string& name);

struct Sample {
  Vec amp;     // amplitude coordinates
  Vec input;   // V * amp
  Vec output;  // measured trajectory, possibly noisy
};

struct AddOutcome {
  int index = -1;
  bool merged = false;
  // Pairs (new index, existing index) violating Lipschitz consistency.
  std::vector<std::pair<int, int>> lipschitz_violations;
};

/// Evaluated samples plus the Lipschitz constant; together they define the
/// set-membership envelope of the unknown map. Append-only.
class Dataset {
 public:
  Dataset(InputBasis basis, double lipschitz, NoiseModel noise = {});

  /// Appends (amp, V*amp, output). Amplitudes repeating an existing sample
  /// within 1e-12 are merged; a merged output disagreeing beyond the noise
  /// budget throws "inconsistent data". Consistency violations against the
  /// Lipschitz bound are returned as warnings, not errors.
  AddOutcome add_sample(const Vec& amp, const Vec& output);

  const InputBasis& basis() const { return basis_; }
  double lipschitz() const { return lipschitz_; }
  const NoiseModel& noise() const { return noise_; }
  const std::vector<Sample>& samples() const { return samples_; }
  int size() const { return static_cast<int>(samples_.size()); }

  /// Noise radius of sample i: 0, delta, or delta*L*||u_i|| depending on the
  /// noise model.
  double sample_inflation(int i) const;

 private:
  InputBasis basis_;
  double lipschitz_ = 0.0;
  NoiseModel noise_;
  std::vector<Sample> samples_;
};

/// True iff ||y - y_i|| <= L*||u - u_i|| + inflation_i for every sample.
bool membership(const Dataset& ds, const Vec& amp, const Vec& y);

/// Indices of the two samples closest to the cell in amplitude space
/// (box clamp distance, ties to the lower index), ordered by distance.
std::pair<int, int> closest_two_samples(const Dataset& ds, const Cell& cell);

/// safety * max pairwise slope ||y_i - y_j|| / ||u_i - u_j||.
double estimate_lipschitz(const Dataset& ds, double safety);

/// Radius inflation for the noise model over a cell: 0 for noiseless data,
/// delta for additive bounded noise, delta*L*||u_H|| with u_H the largest
/// input over the cell for SNR-bounded noise.
double radius_inflation(const Dataset& ds, const Cell& cell);

nlohmann::json dataset_to_json(const Dataset& ds);
Dataset dataset_from_json(const nlohmann::json& j, const InputBasis& basis);
/// Variant for datasets without a signal expansion: requires mu == n and
/// interprets amplitudes as raw trajectories.
Dataset dataset_from_json(const nlohmann::json& j);

}  // namespace nlm
