// Copyright 2026 The Sparsedit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

#include "sparsedit/errors.h"

namespace sparsedit::cluster {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

// Rank-r truncated SVD of an n x d matrix, X - mean ~= scores * components^T
// with scores = U_r Sigma_r.
template <typename Scalar>
struct SvdResult {
  Matrix<Scalar> scores;            // n x r
  Matrix<Scalar> components;        // d x r, orthonormal columns
  Vector<Scalar> singular_values;   // r, non-increasing
  RowVector<Scalar> mean;           // d; zero when not centered

  // Projects new rows into the reduced space.
  template <typename Derived>
  Matrix<Scalar> Transform(const Eigen::MatrixBase<Derived>& x) const {
    return (x.rowwise() - mean) * components;
  }
  Matrix<Scalar> Reconstruct() const {
    return (scores * components.transpose()).rowwise() + mean;
  }
};

// Computes the decomposition from the eigenpairs of the d x d Gram matrix.
// Each component is sign-normalized so its largest-magnitude entry is
// positive. Throws UsageError unless 1 <= r <= min(n, d), NoConvergence if
// the eigensolver fails.
template <typename Derived>
SvdResult<typename Derived::Scalar> TruncatedSvd(
    const Eigen::MatrixBase<Derived>& x, Eigen::Index r, bool center = true) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = x.rows(), d = x.cols();
  if (r < 1 || r > std::min(n, d)) {
    throw UsageError("SVD rank " + std::to_string(r) + " outside [1, " +
                     std::to_string(std::min(n, d)) + "]");
  }
  SvdResult<Scalar> out;
  out.mean = center ? RowVector<Scalar>(x.colwise().mean())
                    : RowVector<Scalar>::Zero(d);
  const Matrix<Scalar> centered = x.rowwise() - out.mean;
  const Matrix<Scalar> gram = centered.transpose() * centered;
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> solver(gram);
  if (solver.info() != Eigen::Success) {
    throw NoConvergence(static_cast<int>(
        Eigen::SelfAdjointEigenSolver<Matrix<Scalar>>::m_maxIterations * d));
  }
  // Eigenvalues come back in increasing order.
  out.components.resize(d, r);
  out.singular_values.resize(r);
  for (Eigen::Index j = 0; j < r; ++j) {
    const Eigen::Index src = d - 1 - j;
    Vector<Scalar> v = solver.eigenvectors().col(src);
    Eigen::Index pivot;
    v.cwiseAbs().maxCoeff(&pivot);
    if (v(pivot) < 0) v = -v;
    out.components.col(j) = v;
    out.singular_values(j) =
        std::sqrt(std::max(solver.eigenvalues()(src), Scalar(0)));
  }
  out.scores = centered * out.components;
  return out;
}

}  // namespace sparsedit::cluster
