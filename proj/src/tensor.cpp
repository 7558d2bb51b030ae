// SPDX-FileCopyrightText: 2026 the bbreprog authors
// SPDX-License-Identifier: Apache-2.0

#include "bbr/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace bbr::autodiff {

std::size_t numel(const Shape& shape) {
  std::size_t n = 1;
  for (std::size_t d : shape) n *= d;
  return n;
}

std::string shape_str(const Shape& shape) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) os << ",";
    os << shape[i];
  }
  os << "]";
  return os.str();
}

namespace {

void check_shape(const Shape& shape, const std::vector<double>& values) {
  if (shape.empty()) throw std::invalid_argument("tensor shape must have rank >= 1");
  for (std::size_t d : shape) {
    if (d == 0) throw std::invalid_argument("tensor dimensions must be positive, got " + shape_str(shape));
  }
  if (numel(shape) != values.size()) {
    throw std::invalid_argument("shape " + shape_str(shape) + " does not match " +
                                std::to_string(values.size()) + " values");
  }
}

Tensor make_tensor(Shape shape, std::vector<double> values, int node, bool grad_required) {
  Tensor t;
  t.shape = std::move(shape);
  t.data = std::make_shared<const std::vector<double>>(std::move(values));
  t.node = node;
  t.grad_required = grad_required;
  return t;
}

bool all_const(std::span<const int> parents) {
  return std::all_of(parents.begin(), parents.end(), [](int p) { return p < 0; });
}

}  // namespace

double Tensor::scalar() const {
  if (size() != 1) throw std::invalid_argument("expected scalar tensor, got shape " + shape_str(shape));
  return (*data)[0];
}

Tensor constant(Shape shape, std::vector<double> values) {
  check_shape(shape, values);
  return make_tensor(std::move(shape), std::move(values), -1, false);
}

Tensor constant_scalar(double v) { return constant({1}, {v}); }

Tensor Tape::leaf(Shape shape, std::vector<double> values) {
  check_shape(shape, values);
  Node n;
  n.shape = shape;
  n.is_leaf = true;
  nodes_.push_back(std::move(n));
  return make_tensor(std::move(shape), std::move(values), static_cast<int>(nodes_.size()) - 1, true);
}

Tensor Tape::record(Shape out_shape, std::vector<double> values,
                    std::vector<int> parents, BackwardFn backward) {
  check_shape(out_shape, values);
  if (all_const(parents)) return constant(std::move(out_shape), std::move(values));
  for (int p : parents) {
    if (p >= static_cast<int>(nodes_.size())) throw std::logic_error("parent node from a different tape");
  }
  Node n;
  n.parents = std::move(parents);
  n.backward = std::move(backward);
  n.shape = out_shape;
  nodes_.push_back(std::move(n));
  return make_tensor(std::move(out_shape), std::move(values), static_cast<int>(nodes_.size()) - 1, false);
}

GradMap Tape::backward(const Tensor& loss) const {
  if (loss.size() != 1) {
    throw std::invalid_argument("backward requires a scalar loss, got shape " + shape_str(loss.shape));
  }
  GradMap out;
  if (loss.node < 0) return out;  // constant loss: no reachable leaves

  std::vector<std::unique_ptr<std::vector<double>>> grads(nodes_.size());
  grads[loss.node] = std::make_unique<std::vector<double>>(1, 1.0);

  for (int i = loss.node; i >= 0; --i) {
    if (!grads[i]) continue;
    const Node& node = nodes_[i];
    if (node.is_leaf) continue;
    std::vector<std::vector<double>*> parent_grads(node.parents.size(), nullptr);
    for (std::size_t k = 0; k < node.parents.size(); ++k) {
      int p = node.parents[k];
      if (p < 0) continue;
      if (!grads[p]) grads[p] = std::make_unique<std::vector<double>>(numel(nodes_[p].shape), 0.0);
      parent_grads[k] = grads[p].get();
    }
    node.backward(*grads[i], parent_grads);
  }

  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].is_leaf && grads[i]) {
      out.emplace(static_cast<int>(i), make_tensor(nodes_[i].shape, std::move(*grads[i]), -1, false));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// elementwise
// ---------------------------------------------------------------------------

namespace {

enum class Broadcast { none, last_axis };

Broadcast binary_mode(const Tensor& a, const Tensor& b) {
  if (a.shape == b.shape) return Broadcast::none;
  if (b.rank() == 1 && !a.shape.empty() && a.shape.back() == b.shape[0]) return Broadcast::last_axis;
  throw std::invalid_argument("elementwise shape mismatch: " + shape_str(a.shape) +
                              " vs " + shape_str(b.shape));
}

// index of b paired with flat index i of a
inline std::size_t b_index(Broadcast mode, std::size_t i, std::size_t last_dim) {
  return mode == Broadcast::none ? i : i % last_dim;
}

template <class Fwd, class Bwd>
Tensor binary_op(Tape& tape, const Tensor& a, const Tensor& b, Fwd fwd, Bwd bwd) {
  Broadcast mode = binary_mode(a, b);
  const std::size_t last = a.shape.back();
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = fwd((*a.data)[i], (*b.data)[b_index(mode, i, last)]);
  }
  auto da = a.data;
  auto db = b.data;
  return tape.record(
      a.shape, std::move(out), {a.node, b.node},
      [mode, last, da, db, bwd](const std::vector<double>& g,
                                const std::vector<std::vector<double>*>& pg) {
        for (std::size_t i = 0; i < g.size(); ++i) {
          std::size_t j = b_index(mode, i, last);
          auto [ga, gb] = bwd((*da)[i], (*db)[j]);
          if (pg[0]) (*pg[0])[i] += g[i] * ga;
          if (pg[1]) (*pg[1])[j] += g[i] * gb;
        }
      });
}

template <class Fwd, class Bwd>
Tensor unary_op(Tape& tape, const Tensor& t, Fwd fwd, Bwd bwd) {
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fwd((*t.data)[i]);
  auto dt = t.data;
  return tape.record(t.shape, std::move(out), {t.node},
                     [dt, bwd](const std::vector<double>& g,
                               const std::vector<std::vector<double>*>& pg) {
                       if (!pg[0]) return;
                       for (std::size_t i = 0; i < g.size(); ++i) (*pg[0])[i] += g[i] * bwd((*dt)[i]);
                     });
}

}  // namespace

Tensor add(Tape& tape, const Tensor& a, const Tensor& b) {
  return binary_op(tape, a, b, [](double x, double y) { return x + y; },
                   [](double, double) { return std::pair{1.0, 1.0}; });
}

Tensor sub(Tape& tape, const Tensor& a, const Tensor& b) {
  return binary_op(tape, a, b, [](double x, double y) { return x - y; },
                   [](double, double) { return std::pair{1.0, -1.0}; });
}

Tensor mul(Tape& tape, const Tensor& a, const Tensor& b) {
  return binary_op(tape, a, b, [](double x, double y) { return x * y; },
                   [](double x, double y) { return std::pair{y, x}; });
}

Tensor relu(Tape& tape, const Tensor& t) {
  return unary_op(tape, t, [](double x) { return x > 0.0 ? x : 0.0; },
                  [](double x) { return x > 0.0 ? 1.0 : 0.0; });
}

Tensor exp(Tape& tape, const Tensor& t) {
  return unary_op(tape, t, [](double x) { return std::exp(x); },
                  [](double x) { return std::exp(x); });
}

Tensor log_floored(Tape& tape, const Tensor& t, double eps) {
  if (eps <= 0.0) throw std::invalid_argument("log_floored requires eps > 0");
  return unary_op(tape, t, [eps](double x) { return std::log(std::max(x, eps)); },
                  [eps](double x) { return 1.0 / std::max(x, eps); });
}

Tensor sqrt_floored(Tape& tape, const Tensor& t, double grad_floor) {
  return unary_op(tape, t, [](double x) { return std::sqrt(std::max(x, 0.0)); },
                  [grad_floor](double x) {
                    double s = std::sqrt(std::max(x, 0.0));
                    return 0.5 / std::max(s, grad_floor);
                  });
}

Tensor rsqrt(Tape& tape, const Tensor& t) {
  for (double v : *t.data) {
    if (!(v > 0.0)) throw std::invalid_argument("rsqrt requires strictly positive inputs");
  }
  return unary_op(tape, t, [](double x) { return 1.0 / std::sqrt(x); },
                  [](double x) {
                    double r = 1.0 / std::sqrt(x);
                    return -0.5 * r * r * r;
                  });
}

Tensor affine(Tape& tape, const Tensor& t, double scale, double shift) {
  return unary_op(tape, t, [scale, shift](double x) { return scale * x + shift; },
                  [scale](double) { return scale; });
}

// ---------------------------------------------------------------------------
// linear algebra
// ---------------------------------------------------------------------------

Tensor matmul(Tape& tape, const Tensor& a, const Tensor& b) {
  if (a.rank() != 2 || b.rank() != 2) {
    throw std::invalid_argument("matmul requires rank-2 tensors, got " + shape_str(a.shape) +
                                " and " + shape_str(b.shape));
  }
  const std::size_t m = a.shape[0], k = a.shape[1], k2 = b.shape[0], n = b.shape[1];
  if (k != k2) {
    throw std::invalid_argument("matmul inner dimensions disagree: " + shape_str(a.shape) +
                                " x " + shape_str(b.shape));
  }
  std::vector<double> out(m * n, 0.0);
  const auto& av = *a.data;
  const auto& bv = *b.data;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = av[i * k + p];
      if (aip == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] += aip * bv[p * n + j];
    }
  }
  auto da = a.data;
  auto db = b.data;
  return tape.record(
      {m, n}, std::move(out), {a.node, b.node},
      [m, k, n, da, db](const std::vector<double>& g, const std::vector<std::vector<double>*>& pg) {
        if (pg[0]) {  // dA += g * B^T
          for (std::size_t i = 0; i < m; ++i)
            for (std::size_t p = 0; p < k; ++p) {
              double s = 0.0;
              for (std::size_t j = 0; j < n; ++j) s += g[i * n + j] * (*db)[p * n + j];
              (*pg[0])[i * k + p] += s;
            }
        }
        if (pg[1]) {  // dB += A^T * g
          for (std::size_t p = 0; p < k; ++p)
            for (std::size_t j = 0; j < n; ++j) {
              double s = 0.0;
              for (std::size_t i = 0; i < m; ++i) s += (*da)[i * k + p] * g[i * n + j];
              (*pg[1])[p * n + j] += s;
            }
        }
      });
}

Tensor transpose(Tape& tape, const Tensor& t) {
  if (t.rank() != 2) throw std::invalid_argument("transpose requires rank-2, got " + shape_str(t.shape));
  const std::size_t r = t.shape[0], c = t.shape[1];
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) out[j * r + i] = (*t.data)[i * c + j];
  return tape.record({c, r}, std::move(out), {t.node},
                     [r, c](const std::vector<double>& g, const std::vector<std::vector<double>*>& pg) {
                       if (!pg[0]) return;
                       for (std::size_t i = 0; i < r; ++i)
                         for (std::size_t j = 0; j < c; ++j) (*pg[0])[i * c + j] += g[j * r + i];
                     });
}

Tensor scale_rows(Tape& tape, const Tensor& m, const Tensor& v) {
  if (m.rank() != 2 || v.rank() != 1 || m.shape[0] != v.shape[0]) {
    throw std::invalid_argument("scale_rows expects [r,c] and [r], got " + shape_str(m.shape) +
                                " and " + shape_str(v.shape));
  }
  const std::size_t r = m.shape[0], c = m.shape[1];
  std::vector<double> out(m.size());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) out[i * c + j] = (*m.data)[i * c + j] * (*v.data)[i];
  auto dm = m.data;
  auto dv = v.data;
  return tape.record({r, c}, std::move(out), {m.node, v.node},
                     [r, c, dm, dv](const std::vector<double>& g, const std::vector<std::vector<double>*>& pg) {
                       for (std::size_t i = 0; i < r; ++i) {
                         for (std::size_t j = 0; j < c; ++j) {
                           if (pg[0]) (*pg[0])[i * c + j] += g[i * c + j] * (*dv)[i];
                           if (pg[1]) (*pg[1])[i] += g[i * c + j] * (*dm)[i * c + j];
                         }
                       }
                     });
}

// ---------------------------------------------------------------------------
// reductions
// ---------------------------------------------------------------------------

Tensor reduce(Tape& tape, Reduce op, const Tensor& t, int axis) {
  if (t.rank() < 1 || t.rank() > 2) {
    throw std::invalid_argument("reduce supports rank 1 and 2, got " + shape_str(t.shape));
  }
  if (axis < 0 || axis >= static_cast<int>(t.rank())) {
    throw std::invalid_argument("reduce axis " + std::to_string(axis) + " invalid for shape " +
                                shape_str(t.shape));
  }
  // Treat rank-1 [n] as a [n,1] column so axis 0 reduces over the n entries.
  const bool rank1 = t.rank() == 1;
  const std::size_t rows = t.shape[0];
  const std::size_t cols = rank1 ? 1 : t.shape[1];
  const std::size_t red = axis == 0 ? rows : cols;    // reduced-away extent
  const std::size_t keep = axis == 0 ? cols : rows;   // surviving extent
  const auto& x = *t.data;

  auto at = [&](std::size_t k, std::size_t r) {  // k: kept index, r: reduced index
    return axis == 0 ? x[r * cols + k] : x[k * cols + r];
  };

  std::vector<double> mean_v(keep, 0.0);
  for (std::size_t k = 0; k < keep; ++k) {
    double s = 0.0;
    for (std::size_t r = 0; r < red; ++r) s += at(k, r);
    mean_v[k] = s / static_cast<double>(red);
  }

  std::vector<double> out(keep, 0.0);
  switch (op) {
    case Reduce::mean:
      out = mean_v;
      break;
    case Reduce::sum:
      for (std::size_t k = 0; k < keep; ++k) out[k] = mean_v[k] * static_cast<double>(red);
      break;
    case Reduce::variance:
      for (std::size_t k = 0; k < keep; ++k) {
        double s = 0.0;
        for (std::size_t r = 0; r < red; ++r) {
          double d = at(k, r) - mean_v[k];
          s += d * d;
        }
        out[k] = s / static_cast<double>(red);
      }
      break;
  }

  Shape out_shape = rank1 ? Shape{1} : Shape{keep};
  auto dt = t.data;
  auto means = std::make_shared<std::vector<double>>(std::move(mean_v));
  return tape.record(
      std::move(out_shape), std::move(out), {t.node},
      [op, axis, cols, red, keep, dt, means](const std::vector<double>& g,
                                             const std::vector<std::vector<double>*>& pg) {
        if (!pg[0]) return;
        auto idx = [&](std::size_t k, std::size_t r) {
          return axis == 0 ? r * cols + k : k * cols + r;
        };
        const double n = static_cast<double>(red);
        for (std::size_t k = 0; k < keep; ++k) {
          for (std::size_t r = 0; r < red; ++r) {
            double d = 0.0;
            switch (op) {
              case Reduce::mean: d = g[k] / n; break;
              case Reduce::sum: d = g[k]; break;
              case Reduce::variance:
                d = g[k] * 2.0 * ((*dt)[idx(k, r)] - (*means)[k]) / n;
                break;
            }
            (*pg[0])[idx(k, r)] += d;
          }
        }
      });
}

Tensor sum_all(Tape& tape, const Tensor& t) {
  Tensor s = reduce(tape, Reduce::sum, t, t.rank() == 2 ? 1 : 0);
  if (s.size() == 1) return s;
  return reduce(tape, Reduce::sum, s, 0);
}

// ---------------------------------------------------------------------------
// structure
// ---------------------------------------------------------------------------

Tensor concat(Tape& tape, std::span<const Tensor> parts, int axis) {
  if (parts.empty()) throw std::invalid_argument("concat of zero tensors");
  const std::size_t rank = parts[0].rank();
  if (axis < 0 || axis >= static_cast<int>(rank)) {
    throw std::invalid_argument("concat axis " + std::to_string(axis) + " invalid for rank " +
                                std::to_string(rank));
  }
  for (const Tensor& p : parts) {
    if (p.rank() != rank) throw std::invalid_argument("concat rank mismatch");
    for (std::size_t d = 0; d < rank; ++d) {
      if (static_cast<int>(d) != axis && p.shape[d] != parts[0].shape[d]) {
        throw std::invalid_argument("concat shapes incompatible off-axis: " +
                                    shape_str(parts[0].shape) + " vs " + shape_str(p.shape));
      }
    }
  }

  Shape out_shape = parts[0].shape;
  out_shape[axis] = 0;
  for (const Tensor& p : parts) out_shape[axis] += p.shape[axis];

  std::vector<int> parents;
  std::vector<std::size_t> extents;
  for (const Tensor& p : parts) {
    parents.push_back(p.node);
    extents.push_back(p.shape[axis]);
  }

  std::vector<double> out(numel(out_shape));
  if (rank == 1 || axis == 0) {
    // axis-0 concat is a flat copy in both ranks
    std::size_t off = 0;
    std::vector<std::size_t> flat_sizes;
    for (const Tensor& p : parts) {
      std::copy(p.data->begin(), p.data->end(), out.begin() + off);
      off += p.size();
      flat_sizes.push_back(p.size());
    }
    return tape.record(std::move(out_shape), std::move(out), std::move(parents),
                       [flat_sizes](const std::vector<double>& g,
                                    const std::vector<std::vector<double>*>& pg) {
                         std::size_t off = 0;
                         for (std::size_t k = 0; k < pg.size(); ++k) {
                           if (pg[k]) {
                             for (std::size_t i = 0; i < flat_sizes[k]; ++i) (*pg[k])[i] += g[off + i];
                           }
                           off += flat_sizes[k];
                         }
                       });
  }

  // rank-2, axis == 1: interleave columns row by row
  const std::size_t rows = parts[0].shape[0];
  const std::size_t out_cols = out_shape[1];
  std::size_t col_off = 0;
  for (const Tensor& p : parts) {
    const std::size_t c = p.shape[1];
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < c; ++j) out[i * out_cols + col_off + j] = (*p.data)[i * c + j];
    col_off += c;
  }
  return tape.record(std::move(out_shape), std::move(out), std::move(parents),
                     [rows, out_cols, extents](const std::vector<double>& g,
                                               const std::vector<std::vector<double>*>& pg) {
                       std::size_t col_off = 0;
                       for (std::size_t k = 0; k < pg.size(); ++k) {
                         const std::size_t c = extents[k];
                         if (pg[k]) {
                           for (std::size_t i = 0; i < rows; ++i)
                             for (std::size_t j = 0; j < c; ++j)
                               (*pg[k])[i * c + j] += g[i * out_cols + col_off + j];
                         }
                         col_off += c;
                       }
                     });
}

Tensor slice1d(Tape& tape, const Tensor& t, std::size_t start, std::size_t len) {
  if (t.rank() != 1) throw std::invalid_argument("slice1d requires rank-1, got " + shape_str(t.shape));
  if (start + len > t.size()) {
    throw std::invalid_argument("slice [" + std::to_string(start) + "," + std::to_string(start + len) +
                                ") out of range for length " + std::to_string(t.size()));
  }
  if (len == 0) throw std::invalid_argument("slice1d of zero length");
  std::vector<double> out(t.data->begin() + start, t.data->begin() + start + len);
  return tape.record({len}, std::move(out), {t.node},
                     [start, len](const std::vector<double>& g, const std::vector<std::vector<double>*>& pg) {
                       if (!pg[0]) return;
                       for (std::size_t i = 0; i < len; ++i) (*pg[0])[start + i] += g[i];
                     });
}

Tensor gather(Tape& tape, const Tensor& t, std::vector<std::size_t> idx, Shape out_shape) {
  if (numel(out_shape) != idx.size()) {
    throw std::invalid_argument("gather output shape " + shape_str(out_shape) +
                                " does not match index count " + std::to_string(idx.size()));
  }
  std::vector<double> out(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] >= t.size()) throw std::invalid_argument("gather index out of range");
    out[k] = (*t.data)[idx[k]];
  }
  auto shared_idx = std::make_shared<std::vector<std::size_t>>(std::move(idx));
  return tape.record(std::move(out_shape), std::move(out), {t.node},
                     [shared_idx](const std::vector<double>& g, const std::vector<std::vector<double>*>& pg) {
                       if (!pg[0]) return;
                       for (std::size_t k = 0; k < g.size(); ++k) (*pg[0])[(*shared_idx)[k]] += g[k];
                     });
}

Tensor reshape(Tape& tape, const Tensor& t, Shape new_shape) {
  if (numel(new_shape) != t.size()) {
    throw std::invalid_argument("reshape " + shape_str(t.shape) + " -> " + shape_str(new_shape) +
                                " changes element count");
  }
  std::vector<double> out(*t.data);
  return tape.record(std::move(new_shape), std::move(out), {t.node},
                     [](const std::vector<double>& g, const std::vector<std::vector<double>*>& pg) {
                       if (!pg[0]) return;
                       for (std::size_t i = 0; i < g.size(); ++i) (*pg[0])[i] += g[i];
                     });
}

Tensor stack_rows(Tape& tape, std::span<const Tensor> rows) {
  if (rows.empty()) throw std::invalid_argument("stack_rows of zero tensors");
  const std::size_t d = rows[0].size();
  std::vector<int> parents;
  std::vector<double> out;
  out.reserve(rows.size() * d);
  for (const Tensor& r : rows) {
    if (r.rank() != 1 || r.size() != d) {
      throw std::invalid_argument("stack_rows requires equal-length rank-1 tensors");
    }
    parents.push_back(r.node);
    out.insert(out.end(), r.data->begin(), r.data->end());
  }
  return tape.record({rows.size(), d}, std::move(out), std::move(parents),
                     [d](const std::vector<double>& g, const std::vector<std::vector<double>*>& pg) {
                       for (std::size_t k = 0; k < pg.size(); ++k) {
                         if (!pg[k]) continue;
                         for (std::size_t i = 0; i < d; ++i) (*pg[k])[i] += g[k * d + i];
                       }
                     });
}

Tensor detach(const Tensor& t) { return constant(t.shape, *t.data); }

Tensor cross_entropy_with_logits(Tape& tape, const Tensor& logits, const std::vector<int>& labels) {
  if (logits.rank() != 2) {
    throw std::invalid_argument("cross_entropy expects [batch, classes], got " + shape_str(logits.shape));
  }
  const std::size_t b = logits.shape[0], n = logits.shape[1];
  if (labels.size() != b) throw std::invalid_argument("label count does not match batch size");
  for (int y : labels) {
    if (y < 0 || y >= static_cast<int>(n)) {
      throw std::invalid_argument("label " + std::to_string(y) + " out of range [0," +
                                  std::to_string(n) + ")");
    }
  }
  const auto& z = *logits.data;
  auto soft = std::make_shared<std::vector<double>>(b * n);
  double loss = 0.0;
  for (std::size_t i = 0; i < b; ++i) {
    double mx = z[i * n];
    for (std::size_t j = 1; j < n; ++j) mx = std::max(mx, z[i * n + j]);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += std::exp(z[i * n + j] - mx);
    const double lse = mx + std::log(s);
    loss += lse - z[i * n + labels[i]];
    for (std::size_t j = 0; j < n; ++j) (*soft)[i * n + j] = std::exp(z[i * n + j] - lse);
  }
  loss /= static_cast<double>(b);
  auto lab = std::make_shared<std::vector<int>>(labels);
  return tape.record({1}, {loss}, {logits.node},
                     [b, n, soft, lab](const std::vector<double>& g, const std::vector<std::vector<double>*>& pg) {
                       if (!pg[0]) return;
                       const double scale = g[0] / static_cast<double>(b);
                       for (std::size_t i = 0; i < b; ++i)
                         for (std::size_t j = 0; j < n; ++j) {
                           double d = (*soft)[i * n + j] - (j == static_cast<std::size_t>((*lab)[i]) ? 1.0 : 0.0);
                           (*pg[0])[i * n + j] += scale * d;
                         }
                     });
}

}  // namespace bbr::autodiff
