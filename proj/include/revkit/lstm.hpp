#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace revkit {

// Multi-layer character LSTM with exact backpropagation through time.
// Layer 1 consumes one-hot token ids (implemented as column selection),
// deeper layers consume the hidden state below. All math is double
// precision; matrices are row-major.
//
// Parameters live in one flat buffer so the optimizer, the clipper, the
// serializer and the finite-difference checker can treat the model as a
// single vector. Block order, per layer: W (4H x D), U (4H x H), b (4H);
// then the projection (V x H) and its bias (V). Gate rows within each 4H
// block: input, forget, candidate, output.

struct LstmDims {
  int layers = 1;
  int hidden = 1;
  int vocab = 2;

  int input_dim(int layer) const { return layer == 0 ? vocab : hidden; }
  bool operator==(const LstmDims&) const = default;
};

struct LstmParams {
  LstmDims dims;
  std::vector<double> flat;

  static LstmParams zeros(LstmDims dims);
  // Uniform in [-0.08, 0.08] from the seeded generator, then the forget
  // gate biases are set to 1.0.
  static LstmParams random_init(LstmDims dims, uint64_t seed);

  size_t size() const { return flat.size(); }
  size_t w_offset(int layer) const;
  size_t u_offset(int layer) const;
  size_t b_offset(int layer) const;
  size_t proj_offset() const;
  size_t proj_bias_offset() const;

  double* w(int layer) { return flat.data() + w_offset(layer); }
  double* u(int layer) { return flat.data() + u_offset(layer); }
  double* b(int layer) { return flat.data() + b_offset(layer); }
  double* proj() { return flat.data() + proj_offset(); }
  double* proj_bias() { return flat.data() + proj_bias_offset(); }
  const double* w(int layer) const { return flat.data() + w_offset(layer); }
  const double* u(int layer) const { return flat.data() + u_offset(layer); }
  const double* b(int layer) const { return flat.data() + b_offset(layer); }
  const double* proj() const { return flat.data() + proj_offset(); }
  const double* proj_bias() const { return flat.data() + proj_bias_offset(); }

  bool all_finite() const;

  static size_t param_count(LstmDims dims);
};

struct Gradients {
  std::vector<double> flat;
};

// Recurrent state: h and c per layer, each hidden x batch.
struct LstmState {
  int hidden = 0;
  int batch = 0;
  std::vector<std::vector<double>> h;
  std::vector<std::vector<double>> c;

  static LstmState zeros(const LstmDims& dims, int batch);
};

struct StepCache {
  std::vector<int> input_ids;  // one per batch lane
  // Per layer, hidden x batch, post-activation.
  std::vector<std::vector<double>> gate_i, gate_f, gate_g, gate_o;
  std::vector<std::vector<double>> cell, cell_tanh, hidden;
  std::vector<double> logits;  // vocab x batch
  std::vector<double> probs;   // vocab x batch, temperature-1 softmax
};

struct ForwardCache {
  LstmDims dims;
  int batch = 1;
  LstmState initial;  // state the sequence started from; backward needs it
  std::vector<StepCache> steps;

  size_t length() const { return steps.size(); }
};

// ids[t][b] is the token fed to lane b at step t. `state` is advanced in
// place; pass zeros for a fresh sequence. The cache at step t holds the
// logits predicting position t+1.
ForwardCache forward_batch(const LstmParams& params,
                           const std::vector<std::vector<int>>& ids,
                           LstmState& state);
ForwardCache forward(const LstmParams& params, const std::vector<int>& ids,
                     LstmState& state);
ForwardCache forward(const LstmParams& params, const std::vector<int>& ids);

// Single-lane streaming step used by sampling and scoring.
void lstm_step(const LstmParams& params, int input_id, LstmState& state,
               std::vector<double>& logits_out);

// exp((o_k - max)/T) / sum_j exp((o_j - max)/T). Throws unless T > 0.
std::vector<double> softmax_with_temperature(const std::vector<double>& logits,
                                             double temperature);

// Mean over predictions of -log p(target); computed from cached logits
// via log-sum-exp.
double cross_entropy(const ForwardCache& cache,
                     const std::vector<std::vector<int>>& targets);
double cross_entropy(const ForwardCache& cache, const std::vector<int>& targets);

// Exact gradient of cross_entropy with respect to every parameter.
Gradients backward(const LstmParams& params, const ForwardCache& cache,
                   const std::vector<std::vector<int>>& targets);
Gradients backward(const LstmParams& params, const ForwardCache& cache,
                   const std::vector<int>& targets);

double global_norm(const Gradients& grads);
// Scales all entries by max_norm/||g|| when the global L2 norm exceeds
// max_norm.
void clip_global_norm(Gradients& grads, double max_norm);

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  int64_t step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  static AdamState zeros(size_t n);
};

// Standard Adam with bias correction; increments the step counter and
// verifies the updated parameters stay finite.
void adam_step(LstmParams& params, const Gradients& grads, AdamState& state, double lr);

// Central finite differences against backward() over every parameter;
// returns the maximum relative error, with denominators floored at 1e-6
// so entries whose true gradient sits below the probe's noise resolution
// are compared absolutely. Only sensible for small models.
double gradient_check(const LstmParams& params, const std::vector<int>& ids,
                      const std::vector<int>& targets, double eps);

}  // namespace revkit
