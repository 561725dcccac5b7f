#include "nlm/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace nlm {

std::string noise_kind_name(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::None: return "none";
    case NoiseKind::AdditiveBounded: return "additive_bounded";
    case NoiseKind::RelativeSNR: return "relative_snr";
  }
  return "none";
}

NoiseKind noise_kind_from_name(const std::string& name) {
  if (name == "none") return NoiseKind::None;
  if (name == "additive_bounded") return NoiseKind::AdditiveBounded;
  if (name == "relative_snr") return NoiseKind::RelativeSNR;
  throw std::invalid_argument(fmt::format("unknown noise kind '{}'", name));
}

Dataset::Dataset(InputBasis basis, double lipschitz, NoiseModel noise)
    : basis_(std::move(basis)), lipschitz_(lipschitz), noise_(noise) {
  if (!(lipschitz_ > 0.0)) throw std::invalid_argument("Lipschitz constant must be positive");
  if (noise_.kind != NoiseKind::None && noise_.delta < 0.0)
    throw std::invalid_argument("noise delta must be nonnegative");
}

double Dataset::sample_inflation(int i) const {
  switch (noise_.kind) {
    case NoiseKind::None: return 0.0;
    case NoiseKind::AdditiveBounded: return noise_.delta;
    case NoiseKind::RelativeSNR:
      return noise_.delta * lipschitz_ * samples_[i].input.norm();
  }
  return 0.0;
}

AddOutcome Dataset::add_sample(const Vec& amp, const Vec& output) {
  if (!basis_.amp_in_box(amp, 1e-12))
    throw std::invalid_argument("amplitude outside the input box");
  if (output.size() != basis_.n) throw std::invalid_argument("output dimension mismatch");

  Vec input = basis_.V * amp;

  // Duplicate amplitude: merge, keeping the stored output.
  for (int i = 0; i < size(); ++i) {
    if ((samples_[i].amp - amp).norm() <= 1e-12) {
      const double budget =
          noise_.kind == NoiseKind::None
              ? 1e-12 * std::max(1.0, samples_[i].output.norm())
              : 2.0 * sample_inflation(i) + 1e-12;
      if ((samples_[i].output - output).norm() > budget)
        throw std::runtime_error("inconsistent data");
      AddOutcome out;
      out.index = i;
      out.merged = true;
      return out;
    }
  }

  AddOutcome out;
  out.index = size();
  const double new_infl =
      noise_.kind == NoiseKind::RelativeSNR ? noise_.delta * lipschitz_ * input.norm()
      : noise_.kind == NoiseKind::AdditiveBounded ? noise_.delta
                                                  : 0.0;
  for (int i = 0; i < size(); ++i) {
    const double lhs = (samples_[i].output - output).norm();
    const double rhs = lipschitz_ * (samples_[i].input - input).norm() +
                       sample_inflation(i) + new_infl;
    if (lhs > rhs + 1e-12 * std::max(1.0, rhs))
      out.lipschitz_violations.emplace_back(out.index, i);
  }
  samples_.push_back(Sample{amp, std::move(input), output});
  return out;
}

bool membership(const Dataset& ds, const Vec& amp, const Vec& y) {
  for (int i = 0; i < ds.size(); ++i) {
    const Sample& s = ds.samples()[i];
    const double radius =
        ds.lipschitz() * (s.amp - amp).norm() + ds.sample_inflation(i);
    if ((s.output - y).norm() > radius) return false;
  }
  return true;
}

std::pair<int, int> closest_two_samples(const Dataset& ds, const Cell& cell) {
  if (ds.size() < 2) throw std::runtime_error("insufficient data");
  int best = -1, second = -1;
  double best_d = std::numeric_limits<double>::infinity();
  double second_d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < ds.size(); ++i) {
    const double d = cell.clamp_distance(ds.samples()[i].amp);
    if (d < best_d) {
      second = best;
      second_d = best_d;
      best = i;
      best_d = d;
    } else if (d < second_d) {
      second = i;
      second_d = d;
    }
  }
  return {best, second};
}

double estimate_lipschitz(const Dataset& ds, double safety) {
  if (safety < 1.0) throw std::invalid_argument("safety factor must be >= 1");
  if (ds.size() < 2) throw std::runtime_error("insufficient data");
  double slope = 0.0;
  bool any = false;
  for (int i = 0; i < ds.size(); ++i) {
    for (int j = i + 1; j < ds.size(); ++j) {
      const double du = (ds.samples()[i].amp - ds.samples()[j].amp).norm();
      if (du <= 1e-12) continue;
      any = true;
      slope = std::max(slope, (ds.samples()[i].output - ds.samples()[j].output).norm() / du);
    }
  }
  if (!any) throw std::runtime_error("all amplitudes identical");
  return safety * slope;
}

double radius_inflation(const Dataset& ds, const Cell& cell) {
  switch (ds.noise().kind) {
    case NoiseKind::None: return 0.0;
    case NoiseKind::AdditiveBounded: return ds.noise().delta;
    case NoiseKind::RelativeSNR:
      // ||u_H|| equals the amplitude-space corner norm by orthonormality.
      return ds.noise().delta * ds.lipschitz() * cell.max_norm();
  }
  return 0.0;
}

nlohmann::json dataset_to_json(const Dataset& ds) {
  nlohmann::json j;
  j["n"] = ds.basis().n;
  j["mu"] = ds.basis().mu;
  j["L"] = ds.lipschitz();
  j["noise"] = {{"kind", noise_kind_name(ds.noise().kind)}, {"delta", ds.noise().delta}};
  j["samples"] = nlohmann::json::array();
  for (const Sample& s : ds.samples()) {
    nlohmann::json js;
    js["amp"] = std::vector<double>(s.amp.data(), s.amp.data() + s.amp.size());
    js["output"] = std::vector<double>(s.output.data(), s.output.data() + s.output.size());
    j["samples"].push_back(std::move(js));
  }
  return j;
}

Dataset dataset_from_json(const nlohmann::json& j, const InputBasis& basis) {
  const int n = j.at("n").get<int>();
  const int mu = j.at("mu").get<int>();
  if (n != basis.n || mu != basis.mu)
    throw std::invalid_argument("dataset dimensions do not match the basis");
  NoiseModel noise;
  noise.kind = noise_kind_from_name(j.at("noise").at("kind").get<std::string>());
  noise.delta = j.at("noise").at("delta").get<double>();
  Dataset ds(basis, j.at("L").get<double>(), noise);
  for (const auto& js : j.at("samples")) {
    const auto a = js.at("amp").get<std::vector<double>>();
    const auto y = js.at("output").get<std::vector<double>>();
    ds.add_sample(Eigen::Map<const Vec>(a.data(), a.size()),
                  Eigen::Map<const Vec>(y.data(), y.size()));
  }
  return ds;
}

Dataset dataset_from_json(const nlohmann::json& j) {
  const int n = j.at("n").get<int>();
  const int mu = j.at("mu").get<int>();
  if (n != mu)
    throw std::invalid_argument("dataset without a basis requires mu == n");
  return dataset_from_json(j, InputBasis::identity(n));
}

}  // namespace nlm
