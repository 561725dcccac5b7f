#include "nlm/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

namespace nlm {

namespace {

Mat toeplitz_of(const Vec& u) {
  const Eigen::Index n = u.size();
  Mat T = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) T(i, j) = u[i - j];
  return T;
}

/// Euclidean projection onto the probability simplex.
Vec project_simplex(Vec w) {
  const Eigen::Index d = w.size();
  std::vector<double> s(w.data(), w.data() + d);
  std::sort(s.begin(), s.end(), std::greater<double>());
  double cum = 0.0;
  double theta = 0.0;
  int support = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    cum += s[i];
    const double t = (cum - 1.0) / static_cast<double>(i + 1);
    if (s[i] - t > 0.0) {
      theta = t;
      support = static_cast<int>(i + 1);
    }
  }
  if (support == 0) theta = (cum - 1.0) / static_cast<double>(d);
  for (Eigen::Index i = 0; i < d; ++i) w[i] = std::max(0.0, w[i] - theta);
  return w;
}

/// max_w w'f - (t/2) w'Kw over the simplex, by projected gradient ascent.
Vec simplex_qp(const Vec& f, const Mat& K, double t, int iters) {
  const Eigen::Index d = f.size();
  Vec w = Vec::Constant(d, 1.0 / static_cast<double>(d));
  // f-dominant warm start helps when one residual is clearly maximal.
  Eigen::Index imax = 0;
  f.maxCoeff(&imax);
  w[imax] += 1.0;
  w = project_simplex(w);
  double lip = t * K.cwiseAbs().rowwise().sum().maxCoeff();
  if (!(lip > 0.0)) lip = 1.0;
  const double step = 1.0 / lip;
  for (int it = 0; it < iters; ++it)
    w = project_simplex(w + step * (f - t * (K * w)));
  return w;
}

}  // namespace

LinearSurrogate LinearSurrogate::from_impulse(Vec g) {
  LinearSurrogate G;
  G.op_norm_bound = g.cwiseAbs().sum();
  G.g = std::move(g);
  return G;
}

Vec apply(const LinearSurrogate& G, const Vec& u) {
  const Eigen::Index n = G.g.size();
  if (u.size() != n) throw std::invalid_argument("input length does not match impulse response");
  Vec y = Vec::Zero(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    double acc = 0.0;
    for (Eigen::Index j = 0; j <= k; ++j) acc += G.g[k - j] * u[j];
    y[k] = acc;
  }
  return y;
}

FitResult fit_minimax(const Dataset& ds, FitConfig cfg) {
  const int D = ds.size();
  if (D < 1) throw std::runtime_error("insufficient data");
  const int n = ds.basis().n;
  const double tol = cfg.tol > 0.0 ? cfg.tol : 1e-4 * ds.lipschitz();

  std::vector<Mat> B(D);
  std::vector<Vec> c(D);
  for (int i = 0; i < D; ++i) {
    const Sample& s = ds.samples()[i];
    const double nu = s.input.norm();
    if (nu < std::max(ds.basis().epsilon, 1e-300))
      throw std::invalid_argument("sample input norm below epsilon");
    B[i] = toeplitz_of(s.input) / nu;
    c[i] = s.output / nu;
  }

  Mat gram = Mat::Zero(n, n);
  Vec rhs = Vec::Zero(n);
  for (int i = 0; i < D; ++i) {
    gram.noalias() += B[i].transpose() * B[i];
    rhs.noalias() += B[i].transpose() * c[i];
  }
  // Rank-revealing solve: inputs with leading zeros leave trailing impulse
  // coefficients unobserved.
  Eigen::CompleteOrthogonalDecomposition<Mat> gram_cod(gram);
  Vec g = gram_cod.solve(rhs);

  double prob_scale = 0.0;
  for (int i = 0; i < D; ++i) prob_scale = std::max(prob_scale, c[i].norm() + B[i].norm());

  const auto objective_at = [&](const Vec& gg, std::vector<Vec>& res, Vec& f) {
    double J = 0.0;
    for (int i = 0; i < D; ++i) {
      res[i] = B[i] * gg - c[i];
      f[i] = res[i].norm();
      J = std::max(J, f[i]);
    }
    return J;
  };

  std::vector<Vec> res(D);
  Vec f(D);
  double J = objective_at(g, res, f);
  double best_lb = 0.0;
  double t = 1.0;
  int it = 0;

  Mat bmat(n, D);
  for (; it < cfg.max_iters; ++it) {
    if (J - best_lb <= tol) break;

    for (int i = 0; i < D; ++i) {
      if (f[i] > 1e-14 * std::max(1.0, prob_scale))
        bmat.col(i).noalias() = B[i].transpose() * (res[i] / f[i]);
      else
        bmat.col(i).setZero();
    }
    const Mat K = bmat.transpose() * bmat;

    // Dual certificate: project xi_i = w_i * lambda_i onto the stationarity
    // constraint sum_i B_i' xi_i = 0 and renormalize to unit total mass.
    const auto certify = [&](const Vec& w) {
      const Vec v = bmat * w;
      const Vec mu = gram_cod.solve(-v);
      if ((v + gram * mu).norm() > 1e-9 * std::max(1.0, prob_scale)) return;
      double mass = 0.0;
      double value = 0.0;
      for (int i = 0; i < D; ++i) {
        Vec xi = B[i] * mu;
        if (w[i] > 0.0 && f[i] > 0.0) xi.noalias() += (w[i] / f[i]) * res[i];
        mass += xi.norm();
        value -= xi.dot(c[i]);
      }
      if (mass > 1e-300) best_lb = std::max(best_lb, std::min(value / mass, J));
    };

    bool accepted = false;
    for (int shrink = 0; shrink < 12 && !accepted; ++shrink) {
      const Vec w = simplex_qp(f, K, t, 300);
      certify(w);
      if (J - best_lb <= tol) return [&] {
            FitResult r;
            r.surrogate = LinearSurrogate::from_impulse(g);
            r.objective = J;
            r.lower_bound = best_lb;
            r.iterations = it + 1;
            r.gap_met = true;
            return r;
          }();
      const Vec d = -t * (bmat * w);
      double model = 0.0;
      for (int i = 0; i < D; ++i) model = std::max(model, f[i] + bmat.col(i).dot(d));
      const double pred = J - model;
      std::vector<Vec> res_new(D);
      Vec f_new(D);
      const Vec g_new = g + d;
      const double J_new = objective_at(g_new, res_new, f_new);
      if (J_new <= J - 0.25 * pred) {
        g = g_new;
        res = std::move(res_new);
        f = f_new;
        J = J_new;
        t = std::min(t * 2.0, 1e12);
        accepted = true;
      } else {
        t *= 0.25;
      }
    }
    if (!accepted) break;  // numerically stationary
  }

  FitResult r;
  r.surrogate = LinearSurrogate::from_impulse(g);
  r.objective = J;
  r.lower_bound = best_lb;
  r.iterations = it;
  r.gap_met = (J - best_lb <= tol);
  return r;
}

double lower_bound(const LinearSurrogate& G, const Dataset& ds, double min_input_norm) {
  double lb = 0.0;
  for (int i = 0; i < ds.size(); ++i) {
    const Sample& s = ds.samples()[i];
    const double nu = s.input.norm();
    if (nu < std::max(min_input_norm, 1e-300)) continue;
    const double resid = (s.output - apply(G, s.input)).norm() - ds.sample_inflation(i);
    lb = std::max(lb, std::max(0.0, resid) / nu);
  }
  return lb;
}

nlohmann::json surrogate_to_json(const LinearSurrogate& G) {
  nlohmann::json j;
  j["n"] = static_cast<int>(G.g.size());
  j["g"] = std::vector<double>(G.g.data(), G.g.data() + G.g.size());
  return j;
}

LinearSurrogate surrogate_from_json(const nlohmann::json& j) {
  const auto g = j.at("g").get<std::vector<double>>();
  if (j.at("n").get<int>() != static_cast<int>(g.size()))
    throw std::invalid_argument("surrogate length mismatch");
  return LinearSurrogate::from_impulse(Eigen::Map<const Vec>(g.data(), g.size()));
}

}  // namespace nlm
