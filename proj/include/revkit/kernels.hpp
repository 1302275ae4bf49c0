#pragma once

namespace revkit::kernels {

// Dense row-major kernels behind the LSTM engine. Each kernel has a serial
// reference and an OpenMP variant that partitions output rows, so every
// output element is accumulated in the same order by exactly one thread:
// results are bit-identical for any thread count, which keeps seeded
// training runs reproducible under parallelism.

void set_parallel(bool on);
bool parallel_enabled();

// c (m x n) += a (m x k) * b (k x n)
void matmul_serial(const double* a, const double* b, double* c, int m, int k, int n);
void matmul_omp(const double* a, const double* b, double* c, int m, int k, int n);
void matmul(const double* a, const double* b, double* c, int m, int k, int n);

// c (m x n) += a^T * b, with a stored as (k x m)
void matmul_ta_serial(const double* a, const double* b, double* c, int m, int k, int n);
void matmul_ta_omp(const double* a, const double* b, double* c, int m, int k, int n);
void matmul_ta(const double* a, const double* b, double* c, int m, int k, int n);

// c (m x n) += a * b^T, with b stored as (n x k)
void matmul_tb_serial(const double* a, const double* b, double* c, int m, int k, int n);
void matmul_tb_omp(const double* a, const double* b, double* c, int m, int k, int n);
void matmul_tb(const double* a, const double* b, double* c, int m, int k, int n);

}  // namespace revkit::kernels
