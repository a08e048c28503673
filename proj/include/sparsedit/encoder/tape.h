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

#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "sparsedit/errors.h"

namespace sparsedit::encoder {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// A parameter tensor with its accumulated gradient.
template <typename Scalar>
struct Param {
  Matrix<Scalar> value;
  Matrix<Scalar> grad;
  bool trainable = true;
};

// Handle to a node on a Tape.
struct Var {
  int id = -1;
};

// Single-use reverse-mode tape over row-major matrices. Every op records its
// output value and a closure that pushes the output gradient to its inputs.
template <typename Scalar>
class Tape {
 public:
  using Mat = Matrix<Scalar>;

  const Mat& value(Var v) const {
    const Node& n = nodes_[v.id];
    return n.ref != nullptr ? *n.ref : n.value;
  }
  const Mat& grad(Var v) const { return nodes_[v.id].grad; }
  int size() const { return static_cast<int>(nodes_.size()); }

  // Leaf reading `param` in place; its gradient is added to param->grad.
  Var Parameter(Param<Scalar>* param) {
    Var v = NewNode();
    nodes_[v.id].ref = &param->value;
    nodes_[v.id].param = param;
    return v;
  }

  Var Constant(Mat value) {
    Var v = NewNode();
    nodes_[v.id].value = std::move(value);
    return v;
  }

  // Rows of `table` picked by `ids`.
  Var Gather(Var table, std::vector<int> ids) {
    const Mat& t = value(table);
    Mat out(static_cast<Eigen::Index>(ids.size()), t.cols());
    for (size_t i = 0; i < ids.size(); ++i) {
      if (ids[i] < 0 || ids[i] >= t.rows()) {
        throw ShapeMismatch("gather index " + std::to_string(ids[i]) +
                            " outside table of " + std::to_string(t.rows()));
      }
      out.row(i) = t.row(ids[i]);
    }
    Var v = Push(std::move(out));
    Record(v, [this, v, table, ids = std::move(ids)] {
      Mat& g = GradOf(table);
      const Mat& dy = nodes_[v.id].grad;
      for (size_t i = 0; i < ids.size(); ++i) g.row(ids[i]) += dy.row(i);
    });
    return v;
  }

  // Rows of `x` picked by `rows` (same as Gather, for activations).
  Var GatherRows(Var x, std::vector<int> rows) { return Gather(x, std::move(rows)); }

  // Output with `total_rows` rows where row rows[i] = x.row(i), zero elsewhere.
  Var ScatterRows(Var x, std::vector<int> rows, Eigen::Index total_rows) {
    const Mat& xv = value(x);
    Mat out = Mat::Zero(total_rows, xv.cols());
    for (size_t i = 0; i < rows.size(); ++i) out.row(rows[i]) = xv.row(i);
    Var v = Push(std::move(out));
    Record(v, [this, v, x, rows = std::move(rows)] {
      Mat& g = GradOf(x);
      const Mat& dy = nodes_[v.id].grad;
      for (size_t i = 0; i < rows.size(); ++i) g.row(i) += dy.row(rows[i]);
    });
    return v;
  }

  Var MatMul(Var a, Var b) {
    CheckShape(value(a).cols() == value(b).rows(), "matmul");
    Var v = Push(value(a) * value(b));
    Record(v, [this, v, a, b] {
      const Mat& dy = nodes_[v.id].grad;
      GradOf(a).noalias() += dy * value(b).transpose();
      GradOf(b).noalias() += value(a).transpose() * dy;
    });
    return v;
  }

  // x + bias, with the 1 x d bias broadcast over rows.
  Var AddBias(Var x, Var bias) {
    CheckShape(value(bias).rows() == 1 && value(bias).cols() == value(x).cols(),
               "bias");
    Mat out = value(x);
    out.rowwise() += value(bias).row(0);
    Var v = Push(std::move(out));
    Record(v, [this, v, x, bias] {
      const Mat& dy = nodes_[v.id].grad;
      GradOf(x) += dy;
      GradOf(bias) += dy.colwise().sum();
    });
    return v;
  }

  Var Add(Var a, Var b) {
    CheckShape(value(a).rows() == value(b).rows() &&
                   value(a).cols() == value(b).cols(),
               "add");
    Var v = Push(value(a) + value(b));
    Record(v, [this, v, a, b] {
      GradOf(a) += nodes_[v.id].grad;
      GradOf(b) += nodes_[v.id].grad;
    });
    return v;
  }

  Var Scale(Var x, Scalar factor) {
    Var v = Push(value(x) * factor);
    Record(v, [this, v, x, factor] { GradOf(x) += nodes_[v.id].grad * factor; });
    return v;
  }

  // Multiplies row i of x by gate(i, 0).
  Var RowScale(Var x, Var gate) {
    CheckShape(value(gate).cols() == 1 && value(gate).rows() == value(x).rows(),
               "row scale");
    Mat out = value(gate).col(0).asDiagonal() * value(x);
    Var v = Push(std::move(out));
    Record(v, [this, v, x, gate] {
      const Mat& dy = nodes_[v.id].grad;
      GradOf(x) += value(gate).col(0).asDiagonal() * dy;
      GradOf(gate).col(0) += dy.cwiseProduct(value(x)).rowwise().sum();
    });
    return v;
  }

  // GELU, tanh approximation.
  Var Gelu(Var x) {
    static constexpr Scalar kC = Scalar(0.7978845608028654);  // sqrt(2 / pi)
    static constexpr Scalar kA = Scalar(0.044715);
    const Mat& xv = value(x);
    Mat t = (kC * (xv.array() + kA * xv.array().cube())).tanh().matrix();
    Mat out = (Scalar(0.5) * xv.array() * (Scalar(1) + t.array())).matrix();
    Var v = Push(std::move(out));
    Record(v, [this, v, x, t = std::move(t)] {
      const auto xa = value(x).array();
      const auto ta = t.array();
      const auto dydx = Scalar(0.5) * (Scalar(1) + ta) +
                        Scalar(0.5) * xa * (Scalar(1) - ta * ta) * kC *
                            (Scalar(1) + Scalar(3) * kA * xa * xa);
      GradOf(x).array() += nodes_[v.id].grad.array() * dydx;
    });
    return v;
  }

  // Row-wise layer normalization with 1 x d gain and bias.
  Var LayerNorm(Var x, Var gamma, Var beta, Scalar eps = Scalar(1e-5)) {
    const Mat& xv = value(x);
    const Eigen::Index d = xv.cols();
    CheckShape(value(gamma).cols() == d && value(beta).cols() == d, "layernorm");
    Mat xhat(xv.rows(), d);
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> inv_std(xv.rows());
    for (Eigen::Index i = 0; i < xv.rows(); ++i) {
      const Scalar mean = xv.row(i).mean();
      const auto centered = xv.row(i).array() - mean;
      const Scalar var = centered.square().mean();
      inv_std(i) = Scalar(1) / std::sqrt(var + eps);
      xhat.row(i) = (centered * inv_std(i)).matrix();
    }
    Mat out = xhat;
    out.array().rowwise() *= value(gamma).row(0).array();
    out.rowwise() += value(beta).row(0);
    Var v = Push(std::move(out));
    Record(v, [this, v, x, gamma, beta, xhat = std::move(xhat),
               inv_std = std::move(inv_std)] {
      const Mat& dy = nodes_[v.id].grad;
      GradOf(gamma) += dy.cwiseProduct(xhat).colwise().sum();
      GradOf(beta) += dy.colwise().sum();
      Mat dxhat = dy;
      dxhat.array().rowwise() *= value(gamma).row(0).array();
      Mat& gx = GradOf(x);
      for (Eigen::Index i = 0; i < dxhat.rows(); ++i) {
        const Scalar mean_d = dxhat.row(i).mean();
        const Scalar mean_dx = dxhat.row(i).dot(xhat.row(i)) / Scalar(dxhat.cols());
        gx.row(i).array() += inv_std(i) * (dxhat.row(i).array() - mean_d -
                                           xhat.row(i).array() * mean_dx);
      }
    });
    return v;
  }

  // Multi-head scaled dot-product self-attention inside each segment
  // [offsets[s], offsets[s+1]) of the row-stacked batch. q, k, v are N x d.
  Var Attention(Var q, Var k, Var v, std::vector<int> offsets, int heads) {
    const Mat& qv = value(q);
    const Mat& kv = value(k);
    const Mat& vv = value(v);
    const Eigen::Index d = qv.cols();
    CheckShape(kv.cols() == d && vv.cols() == d && d % heads == 0 &&
                   kv.rows() == qv.rows() && vv.rows() == qv.rows(),
               "attention");
    const Eigen::Index dh = d / heads;
    const Scalar scale = Scalar(1) / std::sqrt(Scalar(dh));
    Mat out = Mat::Zero(qv.rows(), d);
    auto probs = std::make_shared<std::vector<Mat>>();
    for (size_t s = 0; s + 1 < offsets.size(); ++s) {
      const Eigen::Index a = offsets[s], len = offsets[s + 1] - offsets[s];
      for (int h = 0; h < heads; ++h) {
        Mat scores = qv.block(a, h * dh, len, dh) *
                     kv.block(a, h * dh, len, dh).transpose() * scale;
        SoftmaxRowsInPlace(scores);
        out.block(a, h * dh, len, dh).noalias() =
            scores * vv.block(a, h * dh, len, dh);
        probs->push_back(std::move(scores));
      }
    }
    Var o = Push(std::move(out));
    Record(o, [this, o, q, k, v, offsets = std::move(offsets), heads, dh, scale,
               probs] {
      const Mat& dy = nodes_[o.id].grad;
      const Mat& qv = value(q);
      const Mat& kv = value(k);
      const Mat& vv = value(v);
      Mat& gq = GradOf(q);
      Mat& gk = GradOf(k);
      Mat& gv = GradOf(v);
      size_t idx = 0;
      for (size_t s = 0; s + 1 < offsets.size(); ++s) {
        const Eigen::Index a = offsets[s], len = offsets[s + 1] - offsets[s];
        for (int h = 0; h < heads; ++h) {
          const Mat& p = (*probs)[idx++];
          const Mat dout = dy.block(a, h * dh, len, dh);
          gv.block(a, h * dh, len, dh).noalias() += p.transpose() * dout;
          Mat dp = dout * vv.block(a, h * dh, len, dh).transpose();
          Mat ds = p.cwiseProduct(dp);
          const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> row_sums =
              ds.rowwise().sum();
          ds.noalias() -= row_sums.asDiagonal() * p;
          ds *= scale;
          gq.block(a, h * dh, len, dh).noalias() += ds * kv.block(a, h * dh, len, dh);
          gk.block(a, h * dh, len, dh).noalias() +=
              ds.transpose() * qv.block(a, h * dh, len, dh);
        }
      }
    });
    return o;
  }

  // Mean of the rows of each segment; one output row per segment.
  Var SegmentMean(Var x, std::vector<int> offsets) {
    const Mat& xv = value(x);
    const Eigen::Index segments = static_cast<Eigen::Index>(offsets.size()) - 1;
    Mat out(segments, xv.cols());
    for (Eigen::Index s = 0; s < segments; ++s) {
      out.row(s) = xv.middleRows(offsets[s], offsets[s + 1] - offsets[s])
                       .colwise()
                       .mean();
    }
    Var v = Push(std::move(out));
    Record(v, [this, v, x, offsets = std::move(offsets)] {
      const Mat& dy = nodes_[v.id].grad;
      Mat& g = GradOf(x);
      for (size_t s = 0; s + 1 < offsets.size(); ++s) {
        const int len = offsets[s + 1] - offsets[s];
        for (int r = offsets[s]; r < offsets[s + 1]; ++r) {
          g.row(r) += dy.row(s) / Scalar(len);
        }
      }
    });
    return v;
  }

  // Top-1 gate: softmax(logits / temperature) per row; returns the m x 1
  // probability of the arg-max column (lowest index on ties) and writes the
  // chosen columns to `choice`.
  Var Top1Gate(Var logits, Scalar temperature, std::vector<int>* choice) {
    Mat p = value(logits) / temperature;
    SoftmaxRowsInPlace(p);
    Mat gate(p.rows(), 1);
    choice->assign(p.rows(), 0);
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      Eigen::Index best = 0;
      for (Eigen::Index c = 1; c < p.cols(); ++c) {
        if (p(i, c) > p(i, best)) best = c;
      }
      (*choice)[i] = static_cast<int>(best);
      gate(i, 0) = p(i, best);
    }
    Var v = Push(std::move(gate));
    Record(v, [this, v, logits, temperature, p = std::move(p), c = *choice] {
      const Mat& dy = nodes_[v.id].grad;
      Mat& g = GradOf(logits);
      for (Eigen::Index i = 0; i < p.rows(); ++i) {
        const Scalar pc = p(i, c[i]);
        const Scalar coeff = dy(i, 0) * pc / temperature;
        g.row(i) -= coeff * p.row(i);
        g(i, c[i]) += coeff;
      }
    });
    return v;
  }

  // Mean cross-entropy of row-wise softmax(logits) against `targets`.
  Var CrossEntropy(Var logits, std::vector<int> targets) {
    const Mat& lv = value(logits);
    CheckShape(static_cast<Eigen::Index>(targets.size()) == lv.rows() &&
                   !targets.empty(),
               "cross entropy");
    Mat p = lv;
    SoftmaxRowsInPlace(p);
    Scalar loss = 0;
    for (Eigen::Index i = 0; i < lv.rows(); ++i) {
      const int t = targets[i];
      if (t < 0 || t >= lv.cols()) throw ShapeMismatch("target out of range");
      const Scalar max = lv.row(i).maxCoeff();
      const Scalar lse =
          max + std::log((lv.row(i).array() - max).exp().sum());
      loss += lse - lv(i, t);
    }
    const Scalar m = Scalar(lv.rows());
    Mat out(1, 1);
    out(0, 0) = loss / m;
    Var v = Push(std::move(out));
    Record(v, [this, v, logits, targets = std::move(targets), p = std::move(p), m] {
      const Scalar dy = nodes_[v.id].grad(0, 0);
      Mat& g = GradOf(logits);
      Mat d = p;
      for (Eigen::Index i = 0; i < d.rows(); ++i) d(i, targets[i]) -= Scalar(1);
      g += d * (dy / m);
    });
    return v;
  }

  // Back-propagates from the 1 x 1 node `root` and adds leaf gradients into
  // their parameters.
  void Backward(Var root) {
    CheckShape(value(root).size() == 1, "backward root must be scalar");
    GradOf(root).setConstant(Scalar(1));
    for (int i = root.id; i >= 0; --i) {
      Node& n = nodes_[i];
      if (n.grad.size() == 0) continue;
      if (n.backward) n.backward();
      if (n.param != nullptr) {
        if (n.param->grad.size() == 0) {
          n.param->grad = Mat::Zero(n.param->value.rows(), n.param->value.cols());
        }
        n.param->grad += n.grad;
      }
    }
  }

  static void SoftmaxRowsInPlace(Mat& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Scalar max = m.row(i).maxCoeff();
      m.row(i) = (m.row(i).array() - max).exp().matrix();
      m.row(i) /= m.row(i).sum();
    }
  }

 private:
  struct Node {
    Mat value;
    const Mat* ref = nullptr;
    Param<Scalar>* param = nullptr;
    Mat grad;
    std::function<void()> backward;
  };

  Var NewNode() {
    nodes_.emplace_back();
    return Var{static_cast<int>(nodes_.size()) - 1};
  }
  Var Push(Mat value) {
    Var v = NewNode();
    nodes_[v.id].value = std::move(value);
    return v;
  }
  void Record(Var v, std::function<void()> fn) { nodes_[v.id].backward = std::move(fn); }

  Mat& GradOf(Var v) {
    Node& n = nodes_[v.id];
    if (n.grad.size() == 0) {
      const Mat& val = n.ref != nullptr ? *n.ref : n.value;
      n.grad = Mat::Zero(val.rows(), val.cols());
    }
    return n.grad;
  }

  static void CheckShape(bool ok, const char* what) {
    if (!ok) throw ShapeMismatch(std::string("shape mismatch in ") + what);
  }

  // std::deque keeps node addresses stable while the tape grows.
  std::deque<Node> nodes_;
};

}  // namespace sparsedit::encoder
