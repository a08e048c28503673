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

#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "sparsedit/cluster/svd.h"
#include "sparsedit/errors.h"
#include "sparsedit/random.h"

namespace sparsedit::cluster {

template <typename Scalar>
struct ClusterModel {
  Matrix<Scalar> centroids;           // k x d
  std::vector<int> assignments;       // one cluster per row
  Scalar inertia = 0;
  std::vector<Scalar> inertia_history;  // after every Lloyd iteration
  int iterations = 0;
  uint64_t seed = 0;
};

namespace internal {

template <typename Derived>
void CheckEnoughDistinctRows(const Eigen::MatrixBase<Derived>& x, int k) {
  if (k < 1) throw UsageError("k must be positive");
  std::set<std::vector<typename Derived::Scalar>> distinct;
  for (Eigen::Index i = 0; i < x.rows() && distinct.size() < size_t(k); ++i) {
    std::vector<typename Derived::Scalar> row(x.cols());
    for (Eigen::Index j = 0; j < x.cols(); ++j) row[j] = x(i, j);
    distinct.insert(std::move(row));
  }
  if (distinct.size() < static_cast<size_t>(k)) {
    throw DegenerateData("need at least " + std::to_string(k) +
                         " distinct rows, found " +
                         std::to_string(distinct.size()));
  }
}

}  // namespace internal

// Index of the nearest centroid; ties go to the lowest index.
template <typename Row, typename Centroids>
int NearestCentroid(const Eigen::MatrixBase<Row>& row,
                    const Eigen::MatrixBase<Centroids>& centroids,
                    typename Row::Scalar* distance = nullptr) {
  int best = 0;
  auto best_d = std::numeric_limits<typename Row::Scalar>::infinity();
  for (Eigen::Index c = 0; c < centroids.rows(); ++c) {
    const auto d = (centroids.row(c) - row).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  if (distance != nullptr) *distance = best_d;
  return best;
}

// D^2 sampling. Returns the chosen row indices in selection order.
template <typename Derived>
std::vector<Eigen::Index> KMeansPlusPlusInit(const Eigen::MatrixBase<Derived>& x,
                                             int k, uint64_t seed) {
  using Scalar = typename Derived::Scalar;
  internal::CheckEnoughDistinctRows(x, k);
  const Eigen::Index n = x.rows();
  std::mt19937_64 rng(seed);
  std::vector<Eigen::Index> chosen;
  chosen.push_back(static_cast<Eigen::Index>(UniformUnit(rng) * n));
  Vector<Scalar> d2(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    d2(i) = (x.row(i) - x.row(chosen[0])).squaredNorm();
  }
  while (static_cast<int>(chosen.size()) < k) {
    const double total = static_cast<double>(d2.sum());
    const double target = UniformUnit(rng) * total;
    double cumulative = 0;
    Eigen::Index pick = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (d2(i) <= 0) continue;
      pick = i;
      cumulative += static_cast<double>(d2(i));
      if (cumulative > target) break;
    }
    chosen.push_back(pick);
    for (Eigen::Index i = 0; i < n; ++i) {
      d2(i) = std::min(d2(i), Scalar((x.row(i) - x.row(pick)).squaredNorm()));
    }
  }
  return chosen;
}

template <typename Scalar, typename Derived>
Scalar Inertia(const Eigen::MatrixBase<Derived>& x,
               const Matrix<Scalar>& centroids,
               const std::vector<int>& assignments) {
  Scalar total = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    total += (x.row(i) - centroids.row(assignments[i])).squaredNorm();
  }
  return total;
}

namespace internal {

template <typename Derived>
ClusterModel<typename Derived::Scalar> KMeansFitOnce(
    const Eigen::MatrixBase<Derived>& x, int k, uint64_t seed, int max_iter,
    double tol) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = x.rows(), d = x.cols();
  ClusterModel<Scalar> model;
  model.seed = seed;
  const auto init = KMeansPlusPlusInit(x, k, seed);
  model.centroids.resize(k, d);
  for (int c = 0; c < k; ++c) model.centroids.row(c) = x.row(init[c]);
  model.assignments.assign(n, 0);

  Scalar previous = std::numeric_limits<Scalar>::infinity();
  std::vector<Scalar> dist(n);
  for (int iter = 0; iter < max_iter; ++iter) {
    std::vector<int> sizes(k, 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      model.assignments[i] = NearestCentroid(x.row(i), model.centroids, &dist[i]);
      ++sizes[model.assignments[i]];
    }
    for (int c = 0; c < k; ++c) {
      if (sizes[c] > 0) continue;
      Eigen::Index far = -1;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (sizes[model.assignments[i]] < 2) continue;
        if (far < 0 || dist[i] > dist[far]) far = i;
      }
      --sizes[model.assignments[far]];
      model.assignments[far] = c;
      sizes[c] = 1;
      dist[far] = 0;
      model.centroids.row(c) = x.row(far);
    }
    Scalar assigned = 0;
    for (Eigen::Index i = 0; i < n; ++i) assigned += dist[i];

    // Fixed-order per-cluster sums.
    Matrix<Scalar> means = Matrix<Scalar>::Zero(k, d);
    for (Eigen::Index i = 0; i < n; ++i) means.row(model.assignments[i]) += x.row(i);
    for (int c = 0; c < k; ++c) means.row(c) /= Scalar(sizes[c]);
    const Scalar updated = Inertia<Scalar>(x, means, model.assignments);
    Scalar current = assigned;
    if (updated <= assigned) {
      model.centroids = std::move(means);
      current = updated;
    }
    model.inertia_history.push_back(current);
    model.iterations = iter + 1;
    const bool converged = previous - current < tol || current == 0;
    previous = current;
    if (converged) break;
  }
  model.inertia = previous;
  return model;
}

}  // namespace internal

// Lloyd iterations from a k-means++ start. Each iteration assigns points to
// their nearest centroid (repairing empty clusters by moving in the point
// farthest from its centroid) and then moves centroids to cluster means. A
// mean update that would raise the objective through rounding is rejected,
// which makes the recorded inertia exactly non-increasing. Stops when the
// improvement drops below `tol` or after `max_iter` iterations.
//
// The fit is repeated from `n_init` k-means++ starts whose seeds are drawn
// from `seed`; the run with the lowest inertia (earliest on ties) is kept.
template <typename Derived>
ClusterModel<typename Derived::Scalar> KMeansFit(
    const Eigen::MatrixBase<Derived>& x, int k, uint64_t seed,
    int max_iter = 300, double tol = 1e-6, int n_init = 10) {
  if (n_init < 1) throw UsageError("n_init must be positive");
  std::mt19937_64 seeds(seed);
  ClusterModel<typename Derived::Scalar> best;
  for (int run = 0; run < n_init; ++run) {
    auto model = internal::KMeansFitOnce(x, k, seeds(), max_iter, tol);
    if (run == 0 || model.inertia < best.inertia) best = std::move(model);
  }
  best.seed = seed;
  return best;
}

}  // namespace sparsedit::cluster
