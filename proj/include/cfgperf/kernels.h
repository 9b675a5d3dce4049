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

#ifndef CFGPERF_KERNELS_H_
#define CFGPERF_KERNELS_H_

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cfgperf/kernel_functions.h"

// Data-parallel inner loops. Every kernel exists twice: `parallel::` is the
// OpenMP version used by the library, `serial::` a plain reference kept for
// tests and benchmarks. Parallel kernels compute each output element on one
// thread in a fixed order, and reductions are finished serially, so results do
// not depend on the thread count.
namespace cfgperf::kernels {

namespace serial {

// out[j] = x_j' A x_j for every row x_j of X.
void QuadraticForms(const Eigen::MatrixXd& X, const Eigen::MatrixXd& A,
                    std::span<double> out);
// out[j] = x_j . u
void RowDots(const Eigen::MatrixXd& X, const Eigen::VectorXd& u,
             std::span<double> out);
// K(i, j) = kernel(a_i, b_j) over rows.
Eigen::MatrixXd CrossGram(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                          const KernelSpec& kernel);
Eigen::MatrixXd Gram(const Eigen::MatrixXd& X, const KernelSpec& kernel);
// Minkowski distance of order p from `query` to each row.
void MinkowskiDistances(const Eigen::MatrixXd& rows,
                        const Eigen::Ref<const Eigen::VectorXd>& query, double p,
                        std::span<double> out);
// mean_i |measured_i - predicted_i| / measured_i
double MeanRelativeError(std::span<const double> measured,
                         std::span<const double> predicted);

}  // namespace serial

namespace parallel {

void QuadraticForms(const Eigen::MatrixXd& X, const Eigen::MatrixXd& A,
                    std::span<double> out);
void RowDots(const Eigen::MatrixXd& X, const Eigen::VectorXd& u,
             std::span<double> out);
Eigen::MatrixXd CrossGram(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                          const KernelSpec& kernel);
Eigen::MatrixXd Gram(const Eigen::MatrixXd& X, const KernelSpec& kernel);
void MinkowskiDistances(const Eigen::MatrixXd& rows,
                        const Eigen::Ref<const Eigen::VectorXd>& query, double p,
                        std::span<double> out);
// Per-element errors in parallel, summed serially in index order; bit-equal
// to a serial left-to-right accumulation.
double MeanRelativeError(std::span<const double> measured,
                         std::span<const double> predicted);

}  // namespace parallel

}  // namespace cfgperf::kernels

#endif  // CFGPERF_KERNELS_H_
