#include "revkit/kernels.hpp"

#include <atomic>

namespace revkit::kernels {

namespace {

std::atomic<bool> g_parallel{true};

// Below this many multiply-adds the OpenMP region costs more than it
// saves; the dispatchers fall back to the serial loop (which computes
// the identical result).
constexpr long long kParallelWorkFloor = 1 << 16;

bool use_parallel(int m, int k, int n) {
  return g_parallel.load() &&
         static_cast<long long>(m) * k * n >= kParallelWorkFloor;
}

}  // namespace

void set_parallel(bool on) { g_parallel.store(on); }
bool parallel_enabled() { return g_parallel.load(); }

void matmul_serial(const double* a, const double* b, double* c, int m, int k, int n) {
  for (int i = 0; i < m; ++i) {
    const double* arow = a + static_cast<size_t>(i) * k;
    double* crow = c + static_cast<size_t>(i) * n;
    for (int p = 0; p < k; ++p) {
      const double av = arow[p];
      if (av == 0.0) continue;
      const double* brow = b + static_cast<size_t>(p) * n;
      for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

void matmul_omp(const double* a, const double* b, double* c, int m, int k, int n) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    const double* arow = a + static_cast<size_t>(i) * k;
    double* crow = c + static_cast<size_t>(i) * n;
    for (int p = 0; p < k; ++p) {
      const double av = arow[p];
      if (av == 0.0) continue;
      const double* brow = b + static_cast<size_t>(p) * n;
      for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

void matmul(const double* a, const double* b, double* c, int m, int k, int n) {
  if (use_parallel(m, k, n)) {
    matmul_omp(a, b, c, m, k, n);
  } else {
    matmul_serial(a, b, c, m, k, n);
  }
}

void matmul_ta_serial(const double* a, const double* b, double* c, int m, int k, int n) {
  for (int i = 0; i < m; ++i) {
    double* crow = c + static_cast<size_t>(i) * n;
    for (int p = 0; p < k; ++p) {
      const double av = a[static_cast<size_t>(p) * m + i];
      if (av == 0.0) continue;
      const double* brow = b + static_cast<size_t>(p) * n;
      for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

void matmul_ta_omp(const double* a, const double* b, double* c, int m, int k, int n) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    double* crow = c + static_cast<size_t>(i) * n;
    for (int p = 0; p < k; ++p) {
      const double av = a[static_cast<size_t>(p) * m + i];
      if (av == 0.0) continue;
      const double* brow = b + static_cast<size_t>(p) * n;
      for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
    }
  }
}

void matmul_ta(const double* a, const double* b, double* c, int m, int k, int n) {
  if (use_parallel(m, k, n)) {
    matmul_ta_omp(a, b, c, m, k, n);
  } else {
    matmul_ta_serial(a, b, c, m, k, n);
  }
}

void matmul_tb_serial(const double* a, const double* b, double* c, int m, int k, int n) {
  for (int i = 0; i < m; ++i) {
    const double* arow = a + static_cast<size_t>(i) * k;
    double* crow = c + static_cast<size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const double* brow = b + static_cast<size_t>(j) * k;
      double acc = 0.0;
      for (int p = 0; p < k; ++p) acc += arow[p] * brow[p];
      crow[j] += acc;
    }
  }
}

void matmul_tb_omp(const double* a, const double* b, double* c, int m, int k, int n) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < m; ++i) {
    const double* arow = a + static_cast<size_t>(i) * k;
    double* crow = c + static_cast<size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const double* brow = b + static_cast<size_t>(j) * k;
      double acc = 0.0;
      for (int p = 0; p < k; ++p) acc += arow[p] * brow[p];
      crow[j] += acc;
    }
  }
}

void matmul_tb(const double* a, const double* b, double* c, int m, int k, int n) {
  if (use_parallel(m, k, n)) {
    matmul_tb_omp(a, b, c, m, k, n);
  } else {
    matmul_tb_serial(a, b, c, m, k, n);
  }
}

}  // namespace revkit::kernels
