// SPDX-FileCopyrightText: 2026 the bbreprog authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BBR_TENSOR_HPP
#define BBR_TENSOR_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace bbr::autodiff {

using Shape = std::vector<std::size_t>;

std::size_t numel(const Shape& shape);
std::string shape_str(const Shape& shape);

/// Dense double-precision tensor participating in a reverse-mode tape.
///
/// Values are immutable after creation. `node < 0` marks a constant that
/// carries no tape history; `grad_required` is true only for leaves created
/// through Tape::leaf. Detach always yields a constant, so gradient flow
/// terminates there structurally.
struct Tensor {
  Shape shape;
  std::shared_ptr<const std::vector<double>> data;
  int node = -1;
  bool grad_required = false;

  std::size_t size() const { return data ? data->size() : 0; }
  std::size_t rank() const { return shape.size(); }
  const std::vector<double>& values() const { return *data; }
  /// Value of a tensor with exactly one element.
  double scalar() const;
};

/// Constant tensor (no tape history).
Tensor constant(Shape shape, std::vector<double> values);
Tensor constant_scalar(double v);

/// Gradients keyed by leaf node id, as produced by Tape::backward.
using GradMap = std::unordered_map<int, Tensor>;

/// Records operations in topological order; replaying the records in
/// reverse visits each node exactly once. Gradients accumulate by summation
/// in tape order, so a fixed tape gives bitwise identical gradients.
class Tape {
 public:
  /// Upstream gradient of the node, plus one writable accumulation buffer
  /// per parent (nullptr when the parent is a constant).
  using BackwardFn = std::function<void(const std::vector<double>& upstream,
                                        const std::vector<std::vector<double>*>& parent_grads)>;

  /// Grad-required leaf. Returns a tensor whose node id keys the GradMap.
  Tensor leaf(Shape shape, std::vector<double> values);

  /// Record an op with explicit parents. Parent id -1 denotes a constant
  /// input. If every parent is constant, no node is recorded and a constant
  /// tensor is returned instead.
  Tensor record(Shape out_shape, std::vector<double> values,
                std::vector<int> parents, BackwardFn backward);

  /// Reverse sweep from a scalar loss. Accumulates gradients for every
  /// grad-required leaf reachable from it; unreachable leaves are absent.
  GradMap backward(const Tensor& loss) const;

  std::size_t size() const { return nodes_.size(); }

 private:
  struct Node {
    std::vector<int> parents;
    BackwardFn backward;
    Shape shape;
    bool is_leaf = false;
  };
  std::vector<Node> nodes_;
};

// ----- elementwise -----
Tensor add(Tape& tape, const Tensor& a, const Tensor& b);
Tensor sub(Tape& tape, const Tensor& a, const Tensor& b);
Tensor mul(Tape& tape, const Tensor& a, const Tensor& b);
Tensor relu(Tape& tape, const Tensor& t);
Tensor exp(Tape& tape, const Tensor& t);
/// ln(max(x, eps)); backward uses 1/max(x, eps).
Tensor log_floored(Tape& tape, const Tensor& t, double eps = 1e-8);
/// sqrt(max(x, 0)); backward floors the denominator to stay finite at 0.
Tensor sqrt_floored(Tape& tape, const Tensor& t, double grad_floor = 1e-12);
/// 1/sqrt(x); requires x > 0.
Tensor rsqrt(Tape& tape, const Tensor& t);
/// scale * x + shift with scalar coefficients.
Tensor affine(Tape& tape, const Tensor& t, double scale, double shift);

// ----- linear algebra -----
Tensor matmul(Tape& tape, const Tensor& a, const Tensor& b);
Tensor transpose(Tape& tape, const Tensor& t);
/// out[i,j] = m[i,j] * v[i] for m:[r,c], v:[r].
Tensor scale_rows(Tape& tape, const Tensor& m, const Tensor& v);

// ----- reductions -----
enum class Reduce { mean, variance, sum };
/// Rank-1 input with axis 0 reduces to a scalar; rank-2 reduces the given
/// axis away. Variance is the biased (1/N) estimator.
Tensor reduce(Tape& tape, Reduce op, const Tensor& t, int axis);
Tensor sum_all(Tape& tape, const Tensor& t);

// ----- structure -----
Tensor concat(Tape& tape, std::span<const Tensor> parts, int axis);
Tensor slice1d(Tape& tape, const Tensor& t, std::size_t start, std::size_t len);
/// out[k] = t.flat[idx[k]], reshaped to out_shape; backward scatter-adds.
Tensor gather(Tape& tape, const Tensor& t, std::vector<std::size_t> idx, Shape out_shape);
Tensor reshape(Tape& tape, const Tensor& t, Shape new_shape);
/// Rank-1 tensors of equal length d stacked into [n, d].
Tensor stack_rows(Tape& tape, std::span<const Tensor> rows);

/// Value-identical constant; no tape parents, zero gradient contribution.
Tensor detach(const Tensor& t);

/// Mean over the batch of (logsumexp(z_i) - z_i[label_i]); scalar output.
Tensor cross_entropy_with_logits(Tape& tape, const Tensor& logits,
                                 const std::vector<int>& labels);

}  // namespace bbr::autodiff

#endif  // BBR_TENSOR_HPP
