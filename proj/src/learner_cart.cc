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
#include <cstdint>
#include <numeric>
#include <optional>

#include "cfgperf/error.h"
#include "cfgperf/learners.h"
#include "cfgperf/rng.h"

namespace cfgperf {
namespace {

struct Split {
  int feature = -1;
  double threshold = 0.0;
  double gain = -1.0;
};

double SumSquares(std::span<const double> y, std::span<const std::size_t> rows,
                  double& mean) {
  double s = 0.0;
  for (std::size_t r : rows) s += y[r];
  mean = s / static_cast<double>(rows.size());
  double ss = 0.0;
  for (std::size_t r : rows) ss += (y[r] - mean) * (y[r] - mean);
  return ss;
}

// Distinct values of every feature and each row's rank among them, so that
// splits on low-cardinality features reduce to bucket sums.
struct FeatureLevels {
  std::vector<std::vector<double>> values;        // per feature, ascending
  std::vector<std::vector<std::uint32_t>> rank;   // per feature, per row
};

FeatureLevels BuildLevels(const Eigen::MatrixXd& X) {
  FeatureLevels lv;
  const auto n = static_cast<std::size_t>(X.rows());
  for (Eigen::Index f = 0; f < X.cols(); ++f) {
    std::vector<double> v(X.col(f).data(), X.col(f).data() + n);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    std::vector<std::uint32_t> r(n);
    for (std::size_t i = 0; i < n; ++i) {
      r[i] = static_cast<std::uint32_t>(
          std::lower_bound(v.begin(), v.end(), X(static_cast<Eigen::Index>(i), f)) - v.begin());
    }
    lv.values.push_back(std::move(v));
    lv.rank.push_back(std::move(r));
  }
  return lv;
}

// Best midpoint split of `rows` on one feature; gain = SSE reduction.
// Candidate thresholds lie between consecutive distinct values present in
// the node, scanned in ascending order; the first maximum wins.
Split BestSplitOn(const FeatureLevels& lv, std::span<const double> y,
                  std::span<const std::size_t> rows, int f, std::size_t min_leaf,
                  std::vector<double>& sums, std::vector<std::size_t>& counts) {
  Split best;
  const auto& values = lv.values[static_cast<std::size_t>(f)];
  const auto& rank = lv.rank[static_cast<std::size_t>(f)];
  const std::size_t levels = values.size();
  if (levels < 2) return best;
  const std::size_t n = rows.size();
  // Non-empty buckets in ascending order as (rank, sum, count).
  std::vector<std::size_t> present;
  double total = 0.0;
  const bool bucketed = levels <= 4 * n + 16;
  if (bucketed) {
    sums.assign(levels, 0.0);
    counts.assign(levels, 0);
    for (std::size_t r : rows) {
      sums[rank[r]] += y[r];
      ++counts[rank[r]];
      total += y[r];
    }
    for (std::size_t b = 0; b < levels; ++b) {
      if (counts[b]) present.push_back(b);
    }
  } else {
    // Sparse node on a high-cardinality feature: sort instead of bucketing.
    std::vector<std::pair<std::uint32_t, double>> pairs;
    pairs.reserve(n);
    for (std::size_t r : rows) pairs.emplace_back(rank[r], y[r]);
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    sums.clear();
    counts.clear();
    for (const auto& [b, v] : pairs) {
      if (present.empty() || present.back() != b) {
        present.push_back(b);
        sums.push_back(0.0);
        counts.push_back(0);
      }
      sums.back() += v;
      ++counts.back();
      total += v;
    }
  }
  const double base = total * total / static_cast<double>(n);
  double left_sum = 0.0;
  std::size_t nl = 0;
  for (std::size_t k = 0; k < present.size(); ++k) {
    const std::size_t slot = bucketed ? present[k] : k;
    if (k > 0 && nl >= min_leaf && n - nl >= min_leaf) {
      const std::size_t nr = n - nl;
      const double right_sum = total - left_sum;
      const double gain = left_sum * left_sum / static_cast<double>(nl) +
                          right_sum * right_sum / static_cast<double>(nr) - base;
      if (gain > best.gain) {
        best.gain = gain;
        best.feature = f;
        const double lo = values[present[k - 1]], hi = values[present[k]];
        best.threshold = lo + (hi - lo) / 2.0;
      }
    }
    left_sum += sums[slot];
    nl += counts[slot];
  }
  return best;
}

Split RandomSplitOn(const Eigen::MatrixXd& X, std::span<const double> y,
                    std::span<const std::size_t> rows, int f, std::size_t min_leaf,
                    Rng& rng) {
  Split out;
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t r : rows) {
    lo = std::min(lo, X(static_cast<Eigen::Index>(r), f));
    hi = std::max(hi, X(static_cast<Eigen::Index>(r), f));
  }
  if (!(hi > lo)) return out;
  double t = lo + rng.UniformDouble() * (hi - lo);
  if (t >= hi) t = lo;
  double sl = 0.0, sr = 0.0;
  std::size_t nl = 0, nr = 0;
  for (std::size_t r : rows) {
    if (X(static_cast<Eigen::Index>(r), f) <= t) {
      sl += y[r];
      ++nl;
    } else {
      sr += y[r];
      ++nr;
    }
  }
  if (nl < min_leaf || nr < min_leaf) return out;
  const double total = sl + sr;
  out.feature = f;
  out.threshold = t;
  out.gain = sl * sl / static_cast<double>(nl) + sr * sr / static_cast<double>(nr) -
             total * total / static_cast<double>(rows.size());
  return out;
}

}  // namespace

CartTree::CartTree(std::vector<CartNode> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw Error(ErrorCode::kInvalidData, "tree has no nodes");
  const int n = static_cast<int>(nodes_.size());
  for (const auto& node : nodes_) {
    if (node.feature >= 0 &&
        (node.left <= 0 || node.left >= n || node.right <= 0 || node.right >= n)) {
      throw Error(ErrorCode::kInvalidData, "tree node has a dangling child");
    }
  }
}

CartTree CartTree::Fit(const Eigen::MatrixXd& X, std::span<const double> y,
                       std::span<const std::size_t> rows, const CartParams& params) {
  if (rows.empty()) throw Error(ErrorCode::kInvalidData, "cannot grow a tree on no rows");
  const int d = static_cast<int>(X.cols());
  const std::size_t min_leaf = std::max<std::size_t>(1, params.min_samples_leaf);
  const std::size_t m = std::clamp<std::size_t>(
      static_cast<std::size_t>(params.max_features * d + 1e-9), 1,
      static_cast<std::size_t>(std::max(d, 1)));
  Rng rng(params.seed);
  const FeatureLevels levels = BuildLevels(X);
  std::vector<double> sums;
  std::vector<std::size_t> counts;

  std::vector<CartNode> nodes;
  struct Pending {
    int node;
    std::vector<std::size_t> rows;
  };
  std::vector<Pending> stack;
  nodes.emplace_back();
  stack.push_back({0, std::vector<std::size_t>(rows.begin(), rows.end())});
  std::vector<int> order(static_cast<std::size_t>(d));
  while (!stack.empty()) {
    Pending p = std::move(stack.back());
    stack.pop_back();
    double mean = 0.0;
    const double sse = SumSquares(y, p.rows, mean);
    nodes[static_cast<std::size_t>(p.node)].value = mean;
    if (p.rows.size() < 2 * min_leaf || sse <= 1e-24 * (1.0 + mean * mean) || d == 0) {
      continue;
    }
    // Examined features: a seeded subset of size m, in ascending index
    // order. Features outside the subset are tried only if none splits.
    std::iota(order.begin(), order.end(), 0);
    if (m < static_cast<std::size_t>(d)) {
      const auto pick = PartialShuffle(static_cast<std::size_t>(d), static_cast<std::size_t>(d), rng);
      for (std::size_t k = 0; k < pick.size(); ++k) order[k] = static_cast<int>(pick[k]);
      std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m));
      std::sort(order.begin() + static_cast<std::ptrdiff_t>(m), order.end());
    }
    Split best;
    for (std::size_t k = 0; k < order.size(); ++k) {
      if (k == m && best.feature >= 0) break;
      const int f = order[k];
      const Split s = params.random_splitter
                          ? RandomSplitOn(X, y, p.rows, f, min_leaf, rng)
                          : BestSplitOn(levels, y, p.rows, f, min_leaf, sums, counts);
      if (s.feature >= 0 && s.gain > best.gain) best = s;
    }
    if (best.feature < 0) continue;
    std::vector<std::size_t> left, right;
    for (std::size_t r : p.rows) {
      (X(static_cast<Eigen::Index>(r), best.feature) <= best.threshold ? left : right)
          .push_back(r);
    }
    const int li = static_cast<int>(nodes.size());
    nodes.emplace_back();
    nodes.emplace_back();
    CartNode& node = nodes[static_cast<std::size_t>(p.node)];
    node.feature = best.feature;
    node.threshold = best.threshold;
    node.left = li;
    node.right = li + 1;
    // Right pushed first so the left subtree is grown (and numbered) first.
    stack.push_back({li + 1, std::move(right)});
    stack.push_back({li, std::move(left)});
  }
  return CartTree(std::move(nodes));
}

double CartTree::Predict(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  std::size_t i = 0;
  while (nodes_[i].feature >= 0) {
    const CartNode& n = nodes_[i];
    i = static_cast<std::size_t>(x[n.feature] <= n.threshold ? n.left : n.right);
  }
  return nodes_[i].value;
}

nlohmann::json CartTree::ToJson() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& n : nodes_) {
    if (n.feature < 0) {
      arr.push_back({{"value", n.value}});
    } else {
      arr.push_back({{"feature", n.feature}, {"threshold", n.threshold},
                     {"left", n.left}, {"right", n.right}, {"value", n.value}});
    }
  }
  return arr;
}

CartTree CartTree::FromJson(const nlohmann::json& j) {
  std::vector<CartNode> nodes;
  for (const auto& e : j) {
    CartNode n;
    n.value = e.at("value").get<double>();
    if (e.contains("feature")) {
      n.feature = e.at("feature").get<int>();
      n.threshold = e.at("threshold").get<double>();
      n.left = e.at("left").get<int>();
      n.right = e.at("right").get<int>();
    }
    nodes.push_back(n);
  }
  return CartTree(std::move(nodes));
}

CartModel::CartModel(HyperParams hp, FeatureEncoding encoding, CartTree tree)
    : Predictor(std::move(hp), std::move(encoding)), tree_(std::move(tree)) {}

std::unique_ptr<CartModel> CartModel::Fit(const ConfigurationSpace& space,
                                          const LabeledSet& data, const HyperParams& hp) {
  FeatureEncoding enc(space, false);
  const Eigen::MatrixXd X = enc.EncodeAll(data.configs);
  std::vector<std::size_t> rows(data.size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  CartParams params;
  params.random_splitter = hp.Text("splitter") == "random";
  params.max_features = hp.Number("max_features");
  params.min_samples_leaf = static_cast<std::size_t>(hp.Integer("min_samples_leaf"));
  params.seed = static_cast<std::uint64_t>(hp.Integer("random_state"));
  CartTree tree = CartTree::Fit(X, data.performance, rows, params);
  return std::make_unique<CartModel>(hp, std::move(enc), std::move(tree));
}

double CartModel::Evaluate(const Eigen::Ref<const Eigen::VectorXd>& features) const {
  return tree_.Predict(features);
}

nlohmann::json CartModel::StateJson() const { return {{"tree", tree_.ToJson()}}; }

}  // namespace cfgperf
