// Copyright 2026 The cfgperf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cfgperf/error.h"
#include "cfgperf/kernels.h"
#include "cfgperf/learners.h"
#include "eigen_json.h"

namespace cfgperf {
namespace {

constexpr double kTau = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

// The 2l-variable problem: min 1/2 a'Qa + p'a, s'a = 0, 0 <= a <= C, where
// a = [alpha; alpha_star], s = [+1; -1] and Q_it = s_i s_t K(i mod l, t mod l).
class SmoSolver {
 public:
  SmoSolver(const Eigen::MatrixXd& K, std::span<const double> y, const SvrOptions& o)
      : K_(K), l_(y.size()), n_(2 * y.size()), C_(o.C), a_(n_, 0.0), G_(n_), s_(n_),
        diag_(l_), active_(n_) {
    std::iota(active_.begin(), active_.end(), std::size_t{0});
    for (std::size_t i = 0; i < l_; ++i) {
      diag_[i] = K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
      s_[i] = 1;
      s_[i + l_] = -1;
      G_[i] = o.epsilon - y[i];
      G_[i + l_] = o.epsilon + y[i];
    }
  }

  SvrSolution Run(const SvrOptions& o) {
    const std::size_t cap =
        o.max_iterations ? o.max_iterations : std::max<std::size_t>(100000, 100 * l_);
    const std::size_t period = std::min<std::size_t>(l_, 1000);
    std::size_t counter = period;
    SvrSolution sol;
    std::size_t iter = 0;
    for (; iter < cap; ++iter) {
      if (o.shrinking && --counter == 0) {
        counter = period;
        Shrink();
      }
      std::size_t i = 0, j = 0;
      if (!Select(o.tol, i, j)) {
        if (active_.size() == n_) {
          sol.converged = true;
          break;
        }
        active_.resize(n_);
        std::iota(active_.begin(), active_.end(), std::size_t{0});
        if (!Select(o.tol, i, j)) {
          sol.converged = true;
          break;
        }
        counter = period;
      }
      Update(i, j);
    }
    sol.iterations = iter;
    sol.alpha.resize(static_cast<Eigen::Index>(l_));
    sol.alpha_star.resize(static_cast<Eigen::Index>(l_));
    for (std::size_t i = 0; i < l_; ++i) {
      sol.alpha[static_cast<Eigen::Index>(i)] = a_[i];
      sol.alpha_star[static_cast<Eigen::Index>(i)] = a_[i + l_];
    }
    sol.rho = Rho();
    return sol;
  }

 private:
  double Q(std::size_t i, std::size_t t) const {
    return s_[i] * s_[t] *
           K_(static_cast<Eigen::Index>(i % l_), static_cast<Eigen::Index>(t % l_));
  }
  double QD(std::size_t t) const { return diag_[t < l_ ? t : t - l_]; }
  // Column of K for variable t (K is symmetric and column-major).
  const double* KCol(std::size_t t) const {
    return K_.data() + static_cast<std::ptrdiff_t>((t < l_ ? t : t - l_) * l_);
  }
  bool Upper(std::size_t t) const { return a_[t] >= C_; }
  bool Lower(std::size_t t) const { return a_[t] <= 0.0; }

  // Second-order working-set selection; false when the active set is optimal.
  bool Select(double tol, std::size_t& out_i, std::size_t& out_j) const {
    double gmax = -kInf;
    std::ptrdiff_t gi = -1;
    for (std::size_t t : active_) {
      if (s_[t] == 1) {
        if (!Upper(t) && -G_[t] >= gmax) {
          gmax = -G_[t];
          gi = static_cast<std::ptrdiff_t>(t);
        }
      } else if (!Lower(t) && G_[t] >= gmax) {
        gmax = G_[t];
        gi = static_cast<std::ptrdiff_t>(t);
      }
    }
    if (gi < 0) return false;
    const auto i = static_cast<std::size_t>(gi);
    const double* ki = KCol(i);
    const double qd_i = QD(i);
    double gmax2 = -kInf;
    double best = kInf;
    std::ptrdiff_t gj = -1;
    for (std::size_t t : active_) {
      if (s_[t] == 1) {
        if (Lower(t)) continue;
        const double diff = gmax + G_[t];
        gmax2 = std::max(gmax2, G_[t]);
        if (diff > 0) {
          double quad = qd_i + QD(t) - 2.0 * ki[t < l_ ? t : t - l_];
          if (quad <= 0) quad = kTau;
          const double obj = -(diff * diff) / quad;
          if (obj <= best) {
            best = obj;
            gj = static_cast<std::ptrdiff_t>(t);
          }
        }
      } else {
        if (Upper(t)) continue;
        const double diff = gmax - G_[t];
        gmax2 = std::max(gmax2, -G_[t]);
        if (diff > 0) {
          double quad = qd_i + QD(t) - 2.0 * ki[t < l_ ? t : t - l_];
          if (quad <= 0) quad = kTau;
          const double obj = -(diff * diff) / quad;
          if (obj <= best) {
            best = obj;
            gj = static_cast<std::ptrdiff_t>(t);
          }
        }
      }
    }
    if (gmax + gmax2 < tol || gj < 0) return false;
    out_i = i;
    out_j = static_cast<std::size_t>(gj);
    return true;
  }

  void Update(std::size_t i, std::size_t j) {
    const double old_i = a_[i], old_j = a_[j];
    const double qij = Q(i, j);
    double& ai = a_[i];
    double& aj = a_[j];
    if (s_[i] != s_[j]) {
      double quad = QD(i) + QD(j) + 2.0 * qij;
      if (quad <= 0) quad = kTau;
      const double delta = (-G_[i] - G_[j]) / quad;
      const double diff = ai - aj;
      ai += delta;
      aj += delta;
      if (diff > 0) {
        if (aj < 0) {
          aj = 0;
          ai = diff;
        }
      } else if (ai < 0) {
        ai = 0;
        aj = -diff;
      }
      if (diff > 0) {
        if (ai > C_) {
          ai = C_;
          aj = C_ - diff;
        }
      } else if (aj > C_) {
        aj = C_;
        ai = C_ + diff;
      }
    } else {
      double quad = QD(i) + QD(j) - 2.0 * qij;
      if (quad <= 0) quad = kTau;
      const double delta = (G_[i] - G_[j]) / quad;
      const double sum = ai + aj;
      ai -= delta;
      aj += delta;
      if (sum > C_) {
        if (ai > C_) {
          ai = C_;
          aj = sum - C_;
        }
      } else if (aj < 0) {
        aj = 0;
        ai = sum;
      }
      if (sum > C_) {
        if (aj > C_) {
          aj = C_;
          ai = sum - C_;
        }
      } else if (ai < 0) {
        ai = 0;
        aj = sum;
      }
    }
    const double di = ai - old_i;
    const double dj = aj - old_j;
    // G_k += Q_ik di + Q_jk dj with Q_ik = s_i s_k K(i, k).
    const double* ki = KCol(i);
    const double* kj = KCol(j);
    const double ci = s_[i] * di;
    const double cj = s_[j] * dj;
    double* g_pos = G_.data();
    double* g_neg = G_.data() + l_;
    for (std::size_t k = 0; k < l_; ++k) {
      const double v = ki[k] * ci + kj[k] * cj;
      g_pos[k] += v;
      g_neg[k] -= v;
    }
  }

  // Deactivates bounded variables whose gradients keep them at their bound.
  // Gradients stay exact for every variable, so reactivation is free.
  void Shrink() {
    double g1 = -kInf, g2 = -kInf;
    for (std::size_t t = 0; t < n_; ++t) {
      if (s_[t] == 1) {
        if (!Upper(t)) g1 = std::max(g1, -G_[t]);
        if (!Lower(t)) g2 = std::max(g2, G_[t]);
      } else {
        if (!Upper(t)) g2 = std::max(g2, -G_[t]);
        if (!Lower(t)) g1 = std::max(g1, G_[t]);
      }
    }
    std::erase_if(active_, [&](std::size_t t) {
      if (Upper(t)) return s_[t] == 1 ? -G_[t] > g1 : -G_[t] > g2;
      if (Lower(t)) return s_[t] == 1 ? G_[t] > g2 : G_[t] > g1;
      return false;
    });
  }

  double Rho() const {
    double ub = kInf, lb = -kInf, sum = 0.0;
    std::size_t free = 0;
    for (std::size_t t = 0; t < n_; ++t) {
      const double yg = s_[t] * G_[t];
      if (Upper(t)) {
        if (s_[t] == -1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
      } else if (Lower(t)) {
        if (s_[t] == 1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
      } else {
        ++free;
        sum += yg;
      }
    }
    return free > 0 ? sum / static_cast<double>(free) : (ub + lb) / 2.0;
  }

  const Eigen::MatrixXd& K_;
  std::size_t l_;
  std::size_t n_;
  double C_;
  std::vector<double> a_;
  std::vector<double> G_;
  std::vector<double> s_;
  std::vector<double> diag_;
  std::vector<std::size_t> active_;  // ascending
};

}  // namespace

SvrSolution SolveSvr(const Eigen::MatrixXd& K, std::span<const double> y,
                     const SvrOptions& options) {
  if (y.empty() || K.rows() != static_cast<Eigen::Index>(y.size()) || K.cols() != K.rows()) {
    throw Error(ErrorCode::kInvalidArgument, "SVR kernel matrix does not match the labels");
  }
  if (!(options.C > 0) || options.epsilon < 0 || !(options.tol > 0)) {
    throw Error(ErrorCode::kInvalidArgument, "SVR needs C > 0, epsilon >= 0, tol > 0");
  }
  SmoSolver solver(K, y, options);
  return solver.Run(options);
}

SvrModel::SvrModel(HyperParams hp, FeatureEncoding encoding, Eigen::MatrixXd support,
                   Eigen::VectorXd coef, double rho, KernelSpec kernel)
    : Predictor(std::move(hp), std::move(encoding)),
      support_(std::move(support)),
      coef_(std::move(coef)),
      rho_(rho),
      kernel_(kernel) {
  if (support_.rows() != coef_.size()) {
    throw Error(ErrorCode::kInvalidData, "SVR needs one coefficient per support vector");
  }
}

std::unique_ptr<SvrModel> SvrModel::Fit(const ConfigurationSpace& space,
                                        const LabeledSet& data, const HyperParams& hp) {
  FeatureEncoding enc(space, true);
  const Eigen::MatrixXd X = enc.EncodeAll(data.configs);
  KernelSpec kernel;
  kernel.type = KernelSpec::Type::kRbf;
  kernel.coef0 = hp.Number("coef0");
  const double var =
      X.size() > 0 ? (X.array() - X.mean()).square().mean() : 0.0;
  kernel.gamma = (X.cols() > 0 && var > 0) ? 1.0 / (static_cast<double>(X.cols()) * var) : 1.0;
  const Eigen::MatrixXd K = kernels::parallel::Gram(X, kernel);
  SvrOptions opt;
  opt.C = hp.Number("C");
  opt.epsilon = hp.Number("epsilon");
  opt.tol = hp.Number("tol");
  opt.shrinking = hp.Flag("shrinking");
  const SvrSolution sol = SolveSvr(K, data.performance, opt);

  std::vector<Eigen::Index> sv;
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    if (sol.alpha[i] - sol.alpha_star[i] != 0.0) sv.push_back(i);
  }
  Eigen::MatrixXd support(static_cast<Eigen::Index>(sv.size()), X.cols());
  Eigen::VectorXd coef(static_cast<Eigen::Index>(sv.size()));
  for (std::size_t k = 0; k < sv.size(); ++k) {
    const auto r = static_cast<Eigen::Index>(k);
    support.row(r) = X.row(sv[k]);
    coef[r] = sol.alpha[sv[k]] - sol.alpha_star[sv[k]];
  }
  auto model = std::make_unique<SvrModel>(hp, std::move(enc), std::move(support),
                                          std::move(coef), sol.rho, kernel);
  if (!sol.converged) {
    model->warnings_.push_back("SVR stopped at the iteration cap (" +
                               std::to_string(sol.iterations) + ") before reaching tol");
  }
  return model;
}

double SvrModel::Evaluate(const Eigen::Ref<const Eigen::VectorXd>& features) const {
  double s = -rho_;
  for (Eigen::Index i = 0; i < support_.rows(); ++i) {
    s += coef_[i] * kernel_(support_.row(i).transpose(), features);
  }
  return s;
}

nlohmann::json SvrModel::StateJson() const {
  return {{"support", internal::MatrixToJson(support_)},
          {"coef", internal::VectorToJson(coef_)},
          {"rho", rho_},
          {"kernel", kernel_.ToJson()}};
}

}  // namespace cfgperf
