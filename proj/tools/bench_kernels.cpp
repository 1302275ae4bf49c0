// Compares the serial reference kernels with the OpenMP variants, both on
// raw matrix products and on full LSTM training steps, and verifies the
// results stay bit-identical.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "revkit/kernels.hpp"
#include "revkit/lstm.hpp"
#include "revkit/prng.hpp"

using namespace revkit;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<double> random_matrix(size_t n, Rng& rng) {
  std::vector<double> m(n);
  for (auto& v : m) v = rng.uniform(-1.0, 1.0);
  return m;
}

void bench_matmul(int m, int k, int n, int reps) {
  Rng rng(1);
  const std::vector<double> a = random_matrix(static_cast<size_t>(m) * k, rng);
  const std::vector<double> b = random_matrix(static_cast<size_t>(k) * n, rng);
  std::vector<double> c_serial(static_cast<size_t>(m) * n, 0.0);
  std::vector<double> c_omp = c_serial;

  auto start = Clock::now();
  for (int r = 0; r < reps; ++r) kernels::matmul_serial(a.data(), b.data(), c_serial.data(), m, k, n);
  const double t_serial = seconds_since(start);

  start = Clock::now();
  for (int r = 0; r < reps; ++r) kernels::matmul_omp(a.data(), b.data(), c_omp.data(), m, k, n);
  const double t_omp = seconds_since(start);

  const double gflop = 2.0 * m * k * n * reps / 1e9;
  std::printf("matmul %4dx%4dx%4d  serial %7.3fs (%5.2f GF/s)  omp %7.3fs (%5.2f GF/s)  "
              "speedup %.2fx  %s\n",
              m, k, n, t_serial, gflop / t_serial, t_omp, gflop / t_omp, t_serial / t_omp,
              c_serial == c_omp ? "bit-identical" : "MISMATCH");
}

struct TrainRun {
  double seconds = 0.0;
  LstmParams params;
};

TrainRun bench_train_steps(bool parallel, int reps) {
  kernels::set_parallel(parallel);
  const LstmDims dims{1, 128, 64};
  TrainRun run;
  run.params = LstmParams::random_init(dims, 3);
  AdamState adam = AdamState::zeros(run.params.size());

  Rng rng(5);
  const int bptt = 64, batch = 16;
  std::vector<std::vector<int>> ids(bptt, std::vector<int>(batch));
  std::vector<std::vector<int>> targets = ids;
  for (auto& step : ids) {
    for (auto& id : step) id = static_cast<int>(rng.next_below(64));
  }
  for (auto& step : targets) {
    for (auto& id : step) id = static_cast<int>(rng.next_below(64));
  }

  const auto start = Clock::now();
  for (int r = 0; r < reps; ++r) {
    LstmState state = LstmState::zeros(dims, batch);
    const ForwardCache cache = forward_batch(run.params, ids, state);
    Gradients grads = backward(run.params, cache, targets);
    clip_global_norm(grads, 5.0);
    adam_step(run.params, grads, adam, 2e-3);
  }
  run.seconds = seconds_since(start);
  return run;
}

}  // namespace

int main(int argc, char** argv) {
  int reps = 6;
  if (argc > 1) reps = std::stoi(argv[1]);
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both variants run serially\n");
#endif

  bench_matmul(256, 256, 256, reps * 4);
  bench_matmul(512, 512, 64, reps * 4);
  bench_matmul(512, 128, 16, reps * 64);

  const TrainRun serial = bench_train_steps(false, reps);
  const TrainRun omp = bench_train_steps(true, reps);
  kernels::set_parallel(true);
  std::printf("train step (H=128, V=64, 64x16 tokens): serial %.3fs  omp %.3fs  speedup %.2fx  %s\n",
              serial.seconds, omp.seconds, serial.seconds / omp.seconds,
              serial.params.flat == omp.params.flat ? "bit-identical weights" : "WEIGHT MISMATCH");
  return serial.params.flat == omp.params.flat ? 0 : 1;
}
