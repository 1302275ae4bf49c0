#include "revkit/lstm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "revkit/kernels.hpp"
#include "revkit/prng.hpp"

namespace revkit {

namespace {

double sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

size_t layer_block(const LstmDims& d, int layer) {
  const size_t gh = 4ull * d.hidden;
  return gh * d.input_dim(layer) + gh * d.hidden + gh;
}

void check_ids(const std::vector<std::vector<int>>& ids, int vocab, int batch) {
  if (ids.empty()) throw std::invalid_argument("forward: empty sequence");
  for (const auto& step : ids) {
    if (static_cast<int>(step.size()) != batch) {
      throw std::invalid_argument("forward: ragged batch");
    }
    for (const int id : step) {
      if (id < 0 || id >= vocab) {
        throw std::out_of_range("forward: token id " + std::to_string(id) +
                                " outside vocabulary of size " + std::to_string(vocab));
      }
    }
  }
}

}  // namespace

size_t LstmParams::param_count(LstmDims dims) {
  size_t n = 0;
  for (int l = 0; l < dims.layers; ++l) n += layer_block(dims, l);
  n += static_cast<size_t>(dims.vocab) * dims.hidden + dims.vocab;
  return n;
}

size_t LstmParams::w_offset(int layer) const {
  size_t off = 0;
  for (int l = 0; l < layer; ++l) off += layer_block(dims, l);
  return off;
}

size_t LstmParams::u_offset(int layer) const {
  return w_offset(layer) + 4ull * dims.hidden * dims.input_dim(layer);
}

size_t LstmParams::b_offset(int layer) const {
  return u_offset(layer) + 4ull * dims.hidden * dims.hidden;
}

size_t LstmParams::proj_offset() const { return w_offset(dims.layers); }

size_t LstmParams::proj_bias_offset() const {
  return proj_offset() + static_cast<size_t>(dims.vocab) * dims.hidden;
}

LstmParams LstmParams::zeros(LstmDims dims) {
  LstmParams p;
  p.dims = dims;
  p.flat.assign(param_count(dims), 0.0);
  return p;
}

LstmParams LstmParams::random_init(LstmDims dims, uint64_t seed) {
  LstmParams p = zeros(dims);
  Rng rng(seed);
  for (auto& v : p.flat) v = rng.uniform(-0.08, 0.08);
  for (int l = 0; l < dims.layers; ++l) {
    double* bias = p.b(l);
    for (int i = dims.hidden; i < 2 * dims.hidden; ++i) bias[i] = 1.0;
  }
  return p;
}

bool LstmParams::all_finite() const {
  for (const double v : flat) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

LstmState LstmState::zeros(const LstmDims& dims, int batch) {
  LstmState s;
  s.hidden = dims.hidden;
  s.batch = batch;
  s.h.assign(dims.layers, std::vector<double>(static_cast<size_t>(dims.hidden) * batch, 0.0));
  s.c = s.h;
  return s;
}

ForwardCache forward_batch(const LstmParams& params,
                           const std::vector<std::vector<int>>& ids,
                           LstmState& state) {
  const LstmDims d = params.dims;
  const int batch = state.batch;
  const int H = d.hidden;
  const int V = d.vocab;
  check_ids(ids, V, batch);
  if (state.hidden != H || static_cast<int>(state.h.size()) != d.layers) {
    throw std::invalid_argument("forward: state shape does not match model");
  }

  ForwardCache cache;
  cache.dims = d;
  cache.batch = batch;
  cache.initial = state;
  cache.steps.resize(ids.size());

  const size_t hb = static_cast<size_t>(H) * batch;
  std::vector<double> z(4 * hb);

  for (size_t t = 0; t < ids.size(); ++t) {
    StepCache& sc = cache.steps[t];
    sc.input_ids = ids[t];
    sc.gate_i.assign(d.layers, std::vector<double>(hb));
    sc.gate_f = sc.gate_i;
    sc.gate_g = sc.gate_i;
    sc.gate_o = sc.gate_i;
    sc.cell = sc.gate_i;
    sc.cell_tanh = sc.gate_i;
    sc.hidden = sc.gate_i;

    for (int l = 0; l < d.layers; ++l) {
      const double* bias = params.b(l);
      for (int r = 0; r < 4 * H; ++r) {
        std::fill_n(z.begin() + static_cast<size_t>(r) * batch, batch, bias[r]);
      }
      if (l == 0) {
        // One-hot input: add the id's column of W to each lane.
        const double* w = params.w(0);
        for (int r = 0; r < 4 * H; ++r) {
          double* zrow = z.data() + static_cast<size_t>(r) * batch;
          const double* wrow = w + static_cast<size_t>(r) * V;
          for (int lane = 0; lane < batch; ++lane) zrow[lane] += wrow[ids[t][lane]];
        }
      } else {
        kernels::matmul(params.w(l), sc.hidden[l - 1].data(), z.data(), 4 * H, H, batch);
      }
      kernels::matmul(params.u(l), state.h[l].data(), z.data(), 4 * H, H, batch);

      const double* c_prev = state.c[l].data();
      double* gi = sc.gate_i[l].data();
      double* gf = sc.gate_f[l].data();
      double* gg = sc.gate_g[l].data();
      double* go = sc.gate_o[l].data();
      double* cc = sc.cell[l].data();
      double* tc = sc.cell_tanh[l].data();
      double* hh = sc.hidden[l].data();
      for (size_t j = 0; j < hb; ++j) {
        gi[j] = sigmoid(z[j]);
        gf[j] = sigmoid(z[hb + j]);
        gg[j] = std::tanh(z[2 * hb + j]);
        go[j] = sigmoid(z[3 * hb + j]);
        cc[j] = gf[j] * c_prev[j] + gi[j] * gg[j];
        tc[j] = std::tanh(cc[j]);
        hh[j] = go[j] * tc[j];
      }
      state.h[l] = sc.hidden[l];
      state.c[l] = sc.cell[l];
    }

    // Projection to logits and temperature-1 probabilities.
    sc.logits.assign(static_cast<size_t>(V) * batch, 0.0);
    const double* pb = params.proj_bias();
    for (int r = 0; r < V; ++r) {
      std::fill_n(sc.logits.begin() + static_cast<size_t>(r) * batch, batch, pb[r]);
    }
    kernels::matmul(params.proj(), sc.hidden[d.layers - 1].data(), sc.logits.data(), V, H, batch);

    sc.probs.resize(sc.logits.size());
    for (int lane = 0; lane < batch; ++lane) {
      double mx = sc.logits[lane];
      for (int r = 1; r < V; ++r) mx = std::max(mx, sc.logits[static_cast<size_t>(r) * batch + lane]);
      double sum = 0.0;
      for (int r = 0; r < V; ++r) {
        const double e = std::exp(sc.logits[static_cast<size_t>(r) * batch + lane] - mx);
        sc.probs[static_cast<size_t>(r) * batch + lane] = e;
        sum += e;
      }
      for (int r = 0; r < V; ++r) sc.probs[static_cast<size_t>(r) * batch + lane] /= sum;
    }
  }
  return cache;
}

ForwardCache forward(const LstmParams& params, const std::vector<int>& ids,
                     LstmState& state) {
  std::vector<std::vector<int>> batch_ids(ids.size());
  for (size_t t = 0; t < ids.size(); ++t) batch_ids[t] = {ids[t]};
  return forward_batch(params, batch_ids, state);
}

ForwardCache forward(const LstmParams& params, const std::vector<int>& ids) {
  LstmState state = LstmState::zeros(params.dims, 1);
  return forward(params, ids, state);
}

void lstm_step(const LstmParams& params, int input_id, LstmState& state,
               std::vector<double>& logits_out) {
  const LstmDims d = params.dims;
  const int H = d.hidden;
  const int V = d.vocab;
  if (state.batch != 1) throw std::invalid_argument("lstm_step: single-lane state required");
  if (input_id < 0 || input_id >= V) {
    throw std::out_of_range("lstm_step: token id outside vocabulary");
  }

  std::vector<double> z(4ull * H);
  std::vector<double> x_below;
  for (int l = 0; l < d.layers; ++l) {
    const double* bias = params.b(l);
    std::copy_n(bias, 4 * H, z.data());
    if (l == 0) {
      const double* w = params.w(0);
      for (int r = 0; r < 4 * H; ++r) z[r] += w[static_cast<size_t>(r) * V + input_id];
    } else {
      kernels::matmul_tb(params.w(l), x_below.data(), z.data(), 4 * H, H, 1);
    }
    kernels::matmul_tb(params.u(l), state.h[l].data(), z.data(), 4 * H, H, 1);

    double* hh = state.h[l].data();
    double* cc = state.c[l].data();
    for (int j = 0; j < H; ++j) {
      const double gi = sigmoid(z[j]);
      const double gf = sigmoid(z[H + j]);
      const double gg = std::tanh(z[2 * H + j]);
      const double go = sigmoid(z[3 * H + j]);
      cc[j] = gf * cc[j] + gi * gg;
      hh[j] = go * std::tanh(cc[j]);
    }
    x_below = state.h[l];
  }

  logits_out.assign(V, 0.0);
  std::copy_n(params.proj_bias(), V, logits_out.data());
  kernels::matmul_tb(params.proj(), state.h[d.layers - 1].data(), logits_out.data(), V, H, 1);
}

std::vector<double> softmax_with_temperature(const std::vector<double>& logits,
                                             double temperature) {
  if (!(temperature > 0.0)) {
    throw std::invalid_argument("softmax temperature must be > 0");
  }
  if (logits.empty()) throw std::invalid_argument("softmax over empty logits");
  const double mx = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double sum = 0.0;
  for (size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp((logits[i] - mx) / temperature);
    sum += out[i];
  }
  for (auto& v : out) v /= sum;
  return out;
}

namespace {

void check_targets(const ForwardCache& cache, const std::vector<std::vector<int>>& targets) {
  if (targets.size() != cache.steps.size()) {
    throw std::invalid_argument("targets length does not match cache length");
  }
  for (const auto& step : targets) {
    if (static_cast<int>(step.size()) != cache.batch) {
      throw std::invalid_argument("targets batch width does not match cache");
    }
    for (const int id : step) {
      if (id < 0 || id >= cache.dims.vocab) {
        throw std::out_of_range("target id outside vocabulary");
      }
    }
  }
}

}  // namespace

double cross_entropy(const ForwardCache& cache,
                     const std::vector<std::vector<int>>& targets) {
  check_targets(cache, targets);
  const int V = cache.dims.vocab;
  const int batch = cache.batch;
  double total = 0.0;
  for (size_t t = 0; t < cache.steps.size(); ++t) {
    const auto& logits = cache.steps[t].logits;
    for (int lane = 0; lane < batch; ++lane) {
      double mx = logits[lane];
      for (int r = 1; r < V; ++r) mx = std::max(mx, logits[static_cast<size_t>(r) * batch + lane]);
      double sum = 0.0;
      for (int r = 0; r < V; ++r) sum += std::exp(logits[static_cast<size_t>(r) * batch + lane] - mx);
      const double target_logit = logits[static_cast<size_t>(targets[t][lane]) * batch + lane];
      total -= target_logit - mx - std::log(sum);
    }
  }
  return total / (static_cast<double>(cache.steps.size()) * batch);
}

double cross_entropy(const ForwardCache& cache, const std::vector<int>& targets) {
  std::vector<std::vector<int>> batch_targets(targets.size());
  for (size_t t = 0; t < targets.size(); ++t) batch_targets[t] = {targets[t]};
  return cross_entropy(cache, batch_targets);
}

Gradients backward(const LstmParams& params, const ForwardCache& cache,
                   const std::vector<std::vector<int>>& targets) {
  check_targets(cache, targets);
  const LstmDims d = params.dims;
  const int H = d.hidden;
  const int V = d.vocab;
  const int batch = cache.batch;
  const size_t hb = static_cast<size_t>(H) * batch;
  const double scale = 1.0 / (static_cast<double>(cache.steps.size()) * batch);

  Gradients grads;
  grads.flat.assign(params.size(), 0.0);
  // Gradient blocks share the parameter layout.
  auto gw = [&](int l) { return grads.flat.data() + params.w_offset(l); };
  auto gu = [&](int l) { return grads.flat.data() + params.u_offset(l); };
  auto gb = [&](int l) { return grads.flat.data() + params.b_offset(l); };
  double* gproj = grads.flat.data() + params.proj_offset();
  double* gproj_b = grads.flat.data() + params.proj_bias_offset();

  std::vector<std::vector<double>> dh_carry(d.layers, std::vector<double>(hb, 0.0));
  std::vector<std::vector<double>> dc_carry(d.layers, std::vector<double>(hb, 0.0));
  std::vector<std::vector<double>> dh_cur(d.layers, std::vector<double>(hb, 0.0));
  std::vector<double> dlogits(static_cast<size_t>(V) * batch);
  std::vector<double> dz(4 * hb);

  for (size_t ts = cache.steps.size(); ts-- > 0;) {
    const StepCache& sc = cache.steps[ts];

    for (size_t j = 0; j < dlogits.size(); ++j) dlogits[j] = sc.probs[j] * scale;
    for (int lane = 0; lane < batch; ++lane) {
      dlogits[static_cast<size_t>(targets[ts][lane]) * batch + lane] -= scale;
    }

    kernels::matmul_tb(dlogits.data(), sc.hidden[d.layers - 1].data(), gproj, V, batch, H);
    for (int r = 0; r < V; ++r) {
      double acc = 0.0;
      const double* row = dlogits.data() + static_cast<size_t>(r) * batch;
      for (int lane = 0; lane < batch; ++lane) acc += row[lane];
      gproj_b[r] += acc;
    }

    dh_cur[d.layers - 1] = dh_carry[d.layers - 1];
    kernels::matmul_ta(params.proj(), dlogits.data(), dh_cur[d.layers - 1].data(), H, V, batch);

    for (int l = d.layers - 1; l >= 0; --l) {
      const double* gi = sc.gate_i[l].data();
      const double* gf = sc.gate_f[l].data();
      const double* gg = sc.gate_g[l].data();
      const double* go = sc.gate_o[l].data();
      const double* tc = sc.cell_tanh[l].data();
      const double* c_prev =
          ts == 0 ? cache.initial.c[l].data() : cache.steps[ts - 1].cell[l].data();
      const double* h_prev =
          ts == 0 ? cache.initial.h[l].data() : cache.steps[ts - 1].hidden[l].data();
      const double* dh = dh_cur[l].data();
      double* dc = dc_carry[l].data();

      for (size_t j = 0; j < hb; ++j) {
        const double d_out = dh[j] * tc[j];
        const double dcj = dc[j] + dh[j] * go[j] * (1.0 - tc[j] * tc[j]);
        const double d_in = dcj * gg[j];
        const double d_forget = dcj * c_prev[j];
        const double d_cand = dcj * gi[j];
        dz[j] = d_in * gi[j] * (1.0 - gi[j]);
        dz[hb + j] = d_forget * gf[j] * (1.0 - gf[j]);
        dz[2 * hb + j] = d_cand * (1.0 - gg[j] * gg[j]);
        dz[3 * hb + j] = d_out * go[j] * (1.0 - go[j]);
        dc[j] = dcj * gf[j];  // carried to step ts-1
      }

      double* bias_grad = gb(l);
      for (int r = 0; r < 4 * H; ++r) {
        double acc = 0.0;
        const double* row = dz.data() + static_cast<size_t>(r) * batch;
        for (int lane = 0; lane < batch; ++lane) acc += row[lane];
        bias_grad[r] += acc;
      }

      kernels::matmul_tb(dz.data(), h_prev, gu(l), 4 * H, batch, H);
      if (l == 0) {
        double* wg = gw(0);
        for (int r = 0; r < 4 * H; ++r) {
          const double* zrow = dz.data() + static_cast<size_t>(r) * batch;
          double* wrow = wg + static_cast<size_t>(r) * V;
          for (int lane = 0; lane < batch; ++lane) wrow[sc.input_ids[lane]] += zrow[lane];
        }
      } else {
        kernels::matmul_tb(dz.data(), sc.hidden[l - 1].data(), gw(l), 4 * H, batch, H);
        dh_cur[l - 1] = dh_carry[l - 1];
        kernels::matmul_ta(params.w(l), dz.data(), dh_cur[l - 1].data(), H, 4 * H, batch);
      }

      std::fill(dh_carry[l].begin(), dh_carry[l].end(), 0.0);
      kernels::matmul_ta(params.u(l), dz.data(), dh_carry[l].data(), H, 4 * H, batch);
    }
  }
  return grads;
}

Gradients backward(const LstmParams& params, const ForwardCache& cache,
                   const std::vector<int>& targets) {
  std::vector<std::vector<int>> batch_targets(targets.size());
  for (size_t t = 0; t < targets.size(); ++t) batch_targets[t] = {targets[t]};
  return backward(params, cache, batch_targets);
}

double global_norm(const Gradients& grads) {
  double sq = 0.0;
  for (const double g : grads.flat) sq += g * g;
  return std::sqrt(sq);
}

void clip_global_norm(Gradients& grads, double max_norm) {
  if (!(max_norm > 0.0)) throw std::invalid_argument("clip_global_norm: max_norm must be > 0");
  const double norm = global_norm(grads);
  if (norm > max_norm) {
    const double s = max_norm / norm;
    for (auto& g : grads.flat) g *= s;
  }
}

AdamState AdamState::zeros(size_t n) {
  AdamState s;
  s.m.assign(n, 0.0);
  s.v.assign(n, 0.0);
  return s;
}

void adam_step(LstmParams& params, const Gradients& grads, AdamState& state, double lr) {
  if (grads.flat.size() != params.size() || state.m.size() != params.size()) {
    throw std::invalid_argument("adam_step: shape mismatch");
  }
  state.step += 1;
  const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  const int64_t n = static_cast<int64_t>(params.size());
#pragma omp parallel for schedule(static)
  for (int64_t i = 0; i < n; ++i) {
    const double g = grads.flat[i];
    state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * g;
    state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * g * g;
    const double mhat = state.m[i] / bc1;
    const double vhat = state.v[i] / bc2;
    params.flat[i] -= lr * mhat / (std::sqrt(vhat) + state.eps);
  }
  if (!params.all_finite()) {
    throw std::runtime_error("adam_step produced non-finite parameters");
  }
}

double gradient_check(const LstmParams& params, const std::vector<int>& ids,
                      const std::vector<int>& targets, double eps) {
  const Gradients analytic = backward(params, forward(params, ids), targets);
  const int64_t n = static_cast<int64_t>(params.size());
  double max_rel = 0.0;
#pragma omp parallel
  {
    LstmParams probe = params;
    double local_max = 0.0;
#pragma omp for schedule(static)
    for (int64_t i = 0; i < n; ++i) {
      const double orig = probe.flat[i];
      probe.flat[i] = orig + eps;
      const double hi = probe.flat[i];
      const double loss_hi = cross_entropy(forward(probe, ids), targets);
      probe.flat[i] = orig - eps;
      const double lo = probe.flat[i];
      const double loss_lo = cross_entropy(forward(probe, ids), targets);
      probe.flat[i] = orig;
      const double numeric = (loss_hi - loss_lo) / (hi - lo);
      const double a = analytic.flat[i];
      // The 1e-6 floor keeps near-zero gradients out of the finite-
      // difference noise zone: the probe resolves the loss difference to
      // about 5e-12, so entries below the floor are compared absolutely.
      const double rel = std::abs(a - numeric) /
                         std::max({std::abs(a), std::abs(numeric), 1e-6});
      local_max = std::max(local_max, rel);
    }
#pragma omp critical
    max_rel = std::max(max_rel, local_max);
  }
  return max_rel;
}

}  // namespace revkit
