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

#include "cfgperf/d_optimal.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "cfgperf/error.h"
#include "cfgperf/kernels.h"
#include "cfgperf/rng.h"

namespace cfgperf {
namespace {

constexpr double kImprovement = 1e-9;
constexpr double kConditionFloor = 1e-10;

Eigen::MatrixXd Information(const Eigen::MatrixXd& X,
                            const std::vector<std::size_t>& rows) {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(X.cols(), X.cols());
  for (std::size_t r : rows) {
    const auto x = X.row(static_cast<Eigen::Index>(r));
    M.noalias() += x.transpose() * x;
  }
  return M;
}

// log det of a symmetric information matrix, -inf when (numerically) singular.
double LogDet(const Eigen::MatrixXd& M) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(M, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = eig.eigenvalues();
  if (ev.size() == 0) return 0.0;
  const double top = ev.maxCoeff();
  if (!(top > 0.0) || ev.minCoeff() <= kConditionFloor * top) {
    return -std::numeric_limits<double>::infinity();
  }
  return ev.array().log().sum();
}

DOptimalRestart RunRestart(const Eigen::MatrixXd& X, const DOptimalOptions& opt,
                           std::size_t restart, std::vector<std::size_t>& selected) {
  DOptimalRestart info;
  const std::size_t N = static_cast<std::size_t>(X.rows());
  Rng rng(HashSeed({opt.seed, restart}));
  double log_det = -std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < std::max<std::size_t>(1, opt.initial_attempts); ++a) {
    selected = PartialShuffle(N, opt.size, rng);
    log_det = LogDet(Information(X, selected));
    if (std::isfinite(log_det)) break;
  }
  if (!std::isfinite(log_det)) return info;
  info.singular = false;
  info.initial_log_det = log_det;

  std::vector<char> chosen(N, 0);
  for (std::size_t s : selected) chosen[s] = 1;
  std::vector<double> d(N), cross(N);
  for (std::size_t it = 0; it < opt.max_iterations; ++it) {
    const Eigen::MatrixXd Minv = Information(X, selected).ldlt().solve(
        Eigen::MatrixXd::Identity(X.cols(), X.cols()));
    kernels::parallel::QuadraticForms(X, Minv, d);

    std::vector<std::size_t> order(selected.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return d[selected[a]] < d[selected[b]];
    });

    bool swapped = false;
    for (std::size_t pos : order) {
      const std::size_t i = selected[pos];
      const Eigen::VectorXd u = Minv * X.row(static_cast<Eigen::Index>(i)).transpose();
      kernels::parallel::RowDots(X, u, cross);
      const double di = d[i];
      double best = kImprovement;
      std::optional<std::size_t> best_j;
      for (std::size_t j = 0; j < N; ++j) {
        if (chosen[j]) continue;
        // det(M') / det(M) = 1 + delta for exchanging i with j.
        const double delta = d[j] - di - di * d[j] + cross[j] * cross[j];
        if (delta > best) {
          best = delta;
          best_j = j;
        }
      }
      if (best_j) {
        chosen[i] = 0;
        chosen[*best_j] = 1;
        selected[pos] = *best_j;
        ++info.swaps;
        swapped = true;
        break;
      }
    }
    if (!swapped) break;
  }
  info.final_log_det = LogDet(Information(X, selected));
  if (!std::isfinite(info.final_log_det)) info.final_log_det = info.initial_log_det;
  std::sort(selected.begin(), selected.end());
  return info;
}

}  // namespace

double LogDetInformation(const Eigen::MatrixXd& candidates,
                         const std::vector<std::size_t>& rows) {
  return LogDet(Information(candidates, rows));
}

DOptimalResult SelectDOptimal(const Eigen::MatrixXd& candidates,
                              const DOptimalOptions& options) {
  const std::size_t N = static_cast<std::size_t>(candidates.rows());
  const std::size_t p = static_cast<std::size_t>(candidates.cols());
  if (options.size > N) {
    throw Error(ErrorCode::kSizeTooLarge,
                "D-optimal size " + std::to_string(options.size) + " exceeds " +
                    std::to_string(N) + " candidates");
  }
  if (options.size < p) {
    throw Error(ErrorCode::kInvalidArgument,
                "D-optimal size " + std::to_string(options.size) +
                    " is below the " + std::to_string(p) + " model columns");
  }
  if (options.restarts == 0) {
    throw Error(ErrorCode::kInvalidArgument, "D-optimal needs at least one restart");
  }
  DOptimalResult result;
  result.log_det = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> selected;
  for (std::size_t r = 0; r < options.restarts; ++r) {
    DOptimalRestart info = RunRestart(candidates, options, r, selected);
    if (!info.singular && info.final_log_det > result.log_det) {
      result.log_det = info.final_log_det;
      result.best_restart = r;
      result.selected = selected;
    }
    result.restarts.push_back(info);
  }
  if (result.selected.empty() && options.size > 0) {
    throw Error(ErrorCode::kSingularDesign, "candidate set deficient for model terms");
  }
  return result;
}

}  // namespace cfgperf
