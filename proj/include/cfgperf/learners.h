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

#ifndef CFGPERF_LEARNERS_H_
#define CFGPERF_LEARNERS_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cfgperf/kernel_functions.h"
#include "cfgperf/predictor.h"

namespace cfgperf {

// ---------------------------------------------------------------------------
// Multiple linear regression with forward term selection.

// One factor of a regression term, evaluated on raw option values.
//   kPower: x^power
//   kLog:   log(1 + x - min_x)
//   kRatio: x / (1 + other - min_other)
struct MrFactor {
  enum class Kind { kPower, kLog, kRatio };
  Kind kind = Kind::kPower;
  std::size_t option = 0;
  std::size_t other = 0;
  int power = 1;
};

// Product of factors; no factors is the intercept.
struct MrTerm {
  std::vector<MrFactor> factors;

  bool is_intercept() const { return factors.empty(); }
  // Canonical text, e.g. "a*n1^2"; "1" for the intercept.
  std::string Name(const std::vector<std::string>& option_names) const;
};

class MrModel final : public Predictor {
 public:
  MrModel(HyperParams hp, FeatureEncoding encoding, std::vector<std::string> names,
          std::vector<double> mins, std::vector<MrTerm> terms,
          std::vector<double> coefficients);

  // Starts from the intercept and greedily adds the candidate term with the
  // lowest validation error (every fifth row is held out; below 10 rows the
  // training rows are scored) until the relative improvement falls below
  // minImprovement. Candidates are single-option functions and products of
  // selected terms with them. Coefficients are refit on all rows.
  static std::unique_ptr<MrModel> Fit(const ConfigurationSpace& space,
                                      const LabeledSet& data, const HyperParams& hp);
  static std::unique_ptr<MrModel> FromState(HyperParams hp, FeatureEncoding encoding,
                                            const nlohmann::json& state);

  const std::vector<MrTerm>& terms() const { return terms_; }
  const std::vector<double>& coefficients() const { return coefficients_; }
  // "5 + 3*a + 2.5*a*n1^2"
  std::string TermString() const;
  double TermValue(const MrTerm& term, const Eigen::Ref<const Eigen::VectorXd>& x) const;

 private:
  double Evaluate(const Eigen::Ref<const Eigen::VectorXd>& features) const override;
  nlohmann::json StateJson() const override;

  std::vector<std::string> names_;
  std::vector<double> mins_;
  std::vector<MrTerm> terms_;
  std::vector<double> coefficients_;
};

// ---------------------------------------------------------------------------
// Regression trees.

// Inner nodes send x[feature] <= threshold left and the rest right.
struct CartNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;
};

struct CartParams {
  bool random_splitter = false;
  double max_features = 1.0;  // fraction of the features examined per split
  std::size_t min_samples_leaf = 1;
  std::uint64_t seed = 0;
};

class CartTree {
 public:
  CartTree() = default;
  // Node 0 is the root. Throws Error(kInvalidData) on dangling children.
  explicit CartTree(std::vector<CartNode> nodes);

  // Variance-reduction growth on the given rows (repeats allowed). "best"
  // splits at midpoints between consecutive distinct values; "random" draws
  // one uniform threshold per examined feature over the node's range.
  static CartTree Fit(const Eigen::MatrixXd& X, std::span<const double> y,
                      std::span<const std::size_t> rows, const CartParams& params);

  double Predict(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  const std::vector<CartNode>& nodes() const { return nodes_; }

  nlohmann::json ToJson() const;
  static CartTree FromJson(const nlohmann::json& j);

 private:
  std::vector<CartNode> nodes_;
};

class CartModel final : public Predictor {
 public:
  CartModel(HyperParams hp, FeatureEncoding encoding, CartTree tree);
  static std::unique_ptr<CartModel> Fit(const ConfigurationSpace& space,
                                        const LabeledSet& data, const HyperParams& hp);
  const CartTree& tree() const { return tree_; }

 private:
  double Evaluate(const Eigen::Ref<const Eigen::VectorXd>& features) const override;
  nlohmann::json StateJson() const override;

  CartTree tree_;
};

class RandomForestModel final : public Predictor {
 public:
  RandomForestModel(HyperParams hp, FeatureEncoding encoding, std::vector<CartTree> trees);
  // Tree t is grown on a bootstrap resample drawn from (random_state, t).
  // `bootstrap` = false grows every tree on the full data (test hook).
  static std::unique_ptr<RandomForestModel> Fit(const ConfigurationSpace& space,
                                                const LabeledSet& data,
                                                const HyperParams& hp,
                                                bool bootstrap = true);
  const std::vector<CartTree>& trees() const { return trees_; }

 private:
  double Evaluate(const Eigen::Ref<const Eigen::VectorXd>& features) const override;
  nlohmann::json StateJson() const override;

  std::vector<CartTree> trees_;
};

// ---------------------------------------------------------------------------
// Nearest neighbours.

class KnnModel final : public Predictor {
 public:
  KnnModel(HyperParams hp, FeatureEncoding encoding, Eigen::MatrixXd rows,
           std::vector<double> labels);
  static std::unique_ptr<KnnModel> Fit(const ConfigurationSpace& space,
                                       const LabeledSet& data, const HyperParams& hp);

 private:
  double Evaluate(const Eigen::Ref<const Eigen::VectorXd>& features) const override;
  nlohmann::json StateJson() const override;

  Eigen::MatrixXd rows_;
  std::vector<double> labels_;
};

// ---------------------------------------------------------------------------
// Kernel methods.

class KrrModel final : public Predictor {
 public:
  KrrModel(HyperParams hp, FeatureEncoding encoding, Eigen::MatrixXd rows,
           Eigen::VectorXd dual, KernelSpec kernel);
  // dual = (K + alpha I)^-1 y. Throws Error(kNumerical) when alpha = 0 and K
  // is singular.
  static std::unique_ptr<KrrModel> Fit(const ConfigurationSpace& space,
                                       const LabeledSet& data, const HyperParams& hp);
  static KernelSpec KernelFor(const HyperParams& hp);
  const Eigen::VectorXd& dual() const { return dual_; }

 private:
  double Evaluate(const Eigen::Ref<const Eigen::VectorXd>& features) const override;
  nlohmann::json StateJson() const override;

  Eigen::MatrixXd rows_;
  Eigen::VectorXd dual_;
  KernelSpec kernel_;
};

// Dual of epsilon-SVR: alpha (pushing up) and alpha_star (pushing down),
// f(x) = sum_i (alpha_i - alpha_star_i) K(x_i, x) - rho.
struct SvrSolution {
  Eigen::VectorXd alpha;
  Eigen::VectorXd alpha_star;
  double rho = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

struct SvrOptions {
  double C = 1.0;
  double epsilon = 0.1;
  double tol = 1e-3;
  bool shrinking = true;
  std::size_t max_iterations = 0;  // 0: max(100000, 100 l)
};

// Pairwise (SMO) decomposition with second-order working-set selection,
// stopping once the maximal KKT violation falls below tol.
SvrSolution SolveSvr(const Eigen::MatrixXd& K, std::span<const double> y,
                     const SvrOptions& options);

class SvrModel final : public Predictor {
 public:
  SvrModel(HyperParams hp, FeatureEncoding encoding, Eigen::MatrixXd support,
           Eigen::VectorXd coef, double rho, KernelSpec kernel);
  // RBF kernel with gamma = 1 / (features * variance of the encoded rows).
  static std::unique_ptr<SvrModel> Fit(const ConfigurationSpace& space,
                                       const LabeledSet& data, const HyperParams& hp);

  std::size_t num_support() const { return static_cast<std::size_t>(support_.rows()); }
  double rho() const { return rho_; }

 private:
  double Evaluate(const Eigen::Ref<const Eigen::VectorXd>& features) const override;
  nlohmann::json StateJson() const override;

  Eigen::MatrixXd support_;
  Eigen::VectorXd coef_;
  double rho_ = 0.0;
  KernelSpec kernel_;
};

}  // namespace cfgperf

#endif  // CFGPERF_LEARNERS_H_
