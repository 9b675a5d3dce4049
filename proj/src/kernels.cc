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

#include "cfgperf/kernels.h"

#include <cmath>

#include "cfgperf/error.h"

namespace cfgperf::kernels {
namespace {

double Minkowski(const Eigen::Ref<const Eigen::VectorXd>& a,
                 const Eigen::Ref<const Eigen::VectorXd>& b, double p) {
  if (p == 2.0) return (a - b).norm();
  if (p == 1.0) return (a - b).cwiseAbs().sum();
  double acc = 0.0;
  for (Eigen::Index k = 0; k < a.size(); ++k) acc += std::pow(std::fabs(a[k] - b[k]), p);
  return std::pow(acc, 1.0 / p);
}

void CheckLengths(std::span<const double> measured, std::span<const double> predicted) {
  if (measured.size() != predicted.size() || measured.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "mean relative error needs equally sized, non-empty inputs");
  }
}

double RelativeError(double measured, double predicted) {
  if (!(measured > 0.0)) {
    throw Error(ErrorCode::kInvalidData, "measured value must be positive");
  }
  return std::fabs(measured - predicted) / measured;
}

}  // namespace

namespace serial {

void QuadraticForms(const Eigen::MatrixXd& X, const Eigen::MatrixXd& A,
                    std::span<double> out) {
  for (Eigen::Index j = 0; j < X.rows(); ++j) {
    const Eigen::VectorXd u = A * X.row(j).transpose();
    out[static_cast<std::size_t>(j)] = X.row(j).dot(u);
  }
}

void RowDots(const Eigen::MatrixXd& X, const Eigen::VectorXd& u,
             std::span<double> out) {
  for (Eigen::Index j = 0; j < X.rows(); ++j) {
    out[static_cast<std::size_t>(j)] = X.row(j).dot(u);
  }
}

Eigen::MatrixXd CrossGram(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                          const KernelSpec& kernel) {
  Eigen::MatrixXd K(A.rows(), B.rows());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < B.rows(); ++j) {
      K(i, j) = kernel(A.row(i).transpose(), B.row(j).transpose());
    }
  }
  return K;
}

Eigen::MatrixXd Gram(const Eigen::MatrixXd& X, const KernelSpec& kernel) {
  return CrossGram(X, X, kernel);
}

void MinkowskiDistances(const Eigen::MatrixXd& rows,
                        const Eigen::Ref<const Eigen::VectorXd>& query, double p,
                        std::span<double> out) {
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    out[static_cast<std::size_t>(i)] = Minkowski(rows.row(i).transpose(), query, p);
  }
}

double MeanRelativeError(std::span<const double> measured,
                         std::span<const double> predicted) {
  CheckLengths(measured, predicted);
  double sum = 0.0;
  for (std::size_t i = 0; i < measured.size(); ++i) {
    sum += RelativeError(measured[i], predicted[i]);
  }
  return sum / static_cast<double>(measured.size());
}

}  // namespace serial

namespace parallel {

void QuadraticForms(const Eigen::MatrixXd& X, const Eigen::MatrixXd& A,
                    std::span<double> out) {
  const Eigen::Index n = X.rows();
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::VectorXd u = A * X.row(j).transpose();
    out[static_cast<std::size_t>(j)] = X.row(j).dot(u);
  }
}

void RowDots(const Eigen::MatrixXd& X, const Eigen::VectorXd& u,
             std::span<double> out) {
  const Eigen::Index n = X.rows();
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < n; ++j) {
    out[static_cast<std::size_t>(j)] = X.row(j).dot(u);
  }
}

Eigen::MatrixXd CrossGram(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                          const KernelSpec& kernel) {
  Eigen::MatrixXd K(A.rows(), B.rows());
  const Eigen::Index n = A.rows();
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < B.rows(); ++j) {
      K(i, j) = kernel(A.row(i).transpose(), B.row(j).transpose());
    }
  }
  return K;
}

Eigen::MatrixXd Gram(const Eigen::MatrixXd& X, const KernelSpec& kernel) {
  const Eigen::Index n = X.rows();
  Eigen::MatrixXd K(n, n);
#pragma omp parallel for schedule(dynamic, 16)
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      K(i, j) = kernel(X.row(i).transpose(), X.row(j).transpose());
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) K(i, j) = K(j, i);
  }
  return K;
}

void MinkowskiDistances(const Eigen::MatrixXd& rows,
                        const Eigen::Ref<const Eigen::VectorXd>& query, double p,
                        std::span<double> out) {
  const Eigen::Index n = rows.rows();
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = Minkowski(rows.row(i).transpose(), query, p);
  }
}

double MeanRelativeError(std::span<const double> measured,
                         std::span<const double> predicted) {
  CheckLengths(measured, predicted);
  const std::size_t n = measured.size();
  std::vector<double> errors(n);
  bool bad = false;
#pragma omp parallel for schedule(static) reduction(|| : bad)
  for (std::size_t i = 0; i < n; ++i) {
    if (!(measured[i] > 0.0)) {
      bad = true;
      continue;
    }
    errors[i] = std::fabs(measured[i] - predicted[i]) / measured[i];
  }
  if (bad) throw Error(ErrorCode::kInvalidData, "measured value must be positive");
  double sum = 0.0;
  for (double e : errors) sum += e;
  return sum / static_cast<double>(n);
}

}  // namespace parallel

}  // namespace cfgperf::kernels
