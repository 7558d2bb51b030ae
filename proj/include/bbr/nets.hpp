// SPDX-FileCopyrightText: 2026 the bbreprog authors
// SPDX-License-Identifier: Apache-2.0

#ifndef BBR_NETS_HPP
#define BBR_NETS_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "bbr/tensor.hpp"

namespace bbr::nets {

using autodiff::Shape;
using autodiff::Tape;
using autodiff::Tensor;

/// Deterministic generator used for all weight init and data synthesis;
/// hand-rolled so results do not depend on libstdc++ distribution details.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next_u64();
  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  double gaussian();

 private:
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Mix utility for deriving per-item seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

/// Named mutable weight buffer; bound onto a tape per training step.
struct Param {
  std::string name;
  Shape shape;
  std::vector<double> value;

  std::size_t size() const { return value.size(); }
};

/// Binds Params onto one tape, as grad-required leaves (trainable) or as
/// constants (frozen). Each Param is bound at most once per tape.
class Binder {
 public:
  Binder(Tape& tape, bool trainable) : tape_(&tape), trainable_(trainable) {}

  Tensor bind(const Param& p);
  /// Leaf node id of a bound param, or -1 when constant/unbound.
  int node_of(const Param& p) const;
  bool trainable() const { return trainable_; }

 private:
  Tape* tape_;
  bool trainable_;
  std::unordered_map<const Param*, Tensor> cache_;
};

// ---------------------------------------------------------------------------
// embedder
// ---------------------------------------------------------------------------

/// TDNN-style stand-in: per-frame linears over stacked context, ReLU,
/// mean||std statistics pooling, linear projection.
struct EmbedderSpec {
  std::size_t channels = 32;
  std::size_t n_blocks = 2;
  std::size_t context = 1;
  std::size_t embed_dim = 32;

  void validate() const;
  bool operator==(const EmbedderSpec&) const = default;
};

struct Embedder {
  EmbedderSpec spec;
  std::size_t in_dim = 0;  // feature dim of the fbank input
  std::vector<Param> block_w, block_b;
  Param proj_w, proj_b;

  static Embedder build(const EmbedderSpec& spec, std::size_t in_dim, std::uint64_t seed);

  /// fbank [n_frames, in_dim] -> embedding [embed_dim].
  Tensor forward(Tape& tape, Binder& binder, const Tensor& fbank) const;

  std::vector<Param*> params();
  std::vector<const Param*> params() const;
  std::size_t param_count() const;
};

/// Closed-form parameter count for a would-be embedder.
std::size_t embedder_param_count(const EmbedderSpec& spec, std::size_t in_dim);

// ---------------------------------------------------------------------------
// backend learning modules
// ---------------------------------------------------------------------------

enum class BackendKind { bn_only, fc_residual };

struct BackendSpec {
  BackendKind kind = BackendKind::fc_residual;
  std::size_t k = 16;  // middle width, fc_residual only

  void validate() const;
  bool operator==(const BackendSpec&) const = default;
};

/// bn_only: BN(y).  fc_residual: y + FC2(ReLU(BN(FC1(y)))), FC2 zero-init
/// so the module starts as the identity.
struct Backend {
  BackendSpec spec;
  std::size_t dim = 0;
  Param gamma, beta;
  Param fc1_w, fc1_b, fc2_w, fc2_b;        // fc_residual only
  std::vector<double> run_mean, run_var;   // BN running statistics (state)

  static Backend build(const BackendSpec& spec, std::size_t dim, std::uint64_t seed);

  /// y [batch, dim] -> [batch, dim]; train_mode uses batch statistics and
  /// updates the running ones. Batch of 1 in train_mode is an error.
  Tensor forward(Tape& tape, Binder& binder, const Tensor& y, bool train_mode);

  std::vector<Param*> params();
  std::vector<const Param*> params() const;
  std::size_t param_count() const;
};

std::size_t backend_param_count(const BackendSpec& spec, std::size_t dim);

// ---------------------------------------------------------------------------
// AAM-softmax head
// ---------------------------------------------------------------------------

struct AamHead {
  Param class_weights;  // [n_speakers, embed_dim]
  double margin = 0.3;
  double scale = 20.0;

  static AamHead build(std::size_t n_speakers, std::size_t embed_dim, std::uint64_t seed);
  std::size_t n_speakers() const { return class_weights.shape[0]; }
};

/// Cross-entropy over s*cos(theta + m on the target class), computed with
/// cos(t+m) = cos t cos m - sin t sin m and sin t = sqrt(1 - cos^2) clamped
/// at zero.
Tensor aam_loss(Tape& tape, Binder& binder, const Tensor& emb,
                const std::vector<int>& labels, const AamHead& head);

// ---------------------------------------------------------------------------
// parameter accounting
// ---------------------------------------------------------------------------

enum class MethodKind { none, full_finetune, backend_only, vanilla_reprog, grad_reprog, zo_reprog };

const char* method_name(MethodKind kind);
MethodKind parse_method(const std::string& name);
/// True for methods trainable with forward-only access to the model.
bool blackbox_compatible(MethodKind kind);

struct ParamAccounting {
  std::size_t bp_params = 0;     // parameters on the backward path during training
  std::size_t added_params = 0;  // parameters retained in the adapted system
  std::size_t base_params = 0;   // frozen model size
  double bp_pct = 0.0;
  double add_pct = 0.0;
};

/// Table-style accounting. The classification head is ignored in both
/// columns; the estimator counts toward bp only (it is discarded after
/// training); vanilla reprogramming backpropagates through the whole model.
ParamAccounting count_params(MethodKind kind, std::size_t base_params, std::size_t w_len,
                             std::size_t estimator_params, std::size_t backend_params);

// ---------------------------------------------------------------------------
// weight serialization
// ---------------------------------------------------------------------------

void write_u32(std::ostream& os, std::uint32_t v);
std::uint32_t read_u32(std::istream& is);
void write_f64(std::ostream& os, double v);
double read_f64(std::istream& is);
void write_doubles(std::ostream& os, const std::vector<double>& v);
void read_doubles(std::istream& is, std::vector<double>& v);

/// Flat binary: magic "BBRM", version, spec ints, then doubles in
/// declaration order.
void save_embedder(std::ostream& os, const Embedder& net);
Embedder load_embedder(std::istream& is);

}  // namespace bbr::nets

#endif  // BBR_NETS_HPP
