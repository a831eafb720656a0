#pragma once

// Data-parallel inner loops over interleaved complex<double> storage.
//
// Every kernel has a portable scalar reference implementation. On x86-64 an
// AVX2/FMA variant is compiled into a separate translation unit and selected
// at runtime when the CPU supports it. Setting CPLAB_FORCE_SCALAR=1 in the
// environment pins the scalar table.

#include <complex>
#include <cstddef>
#include <span>

namespace cplab::kernels {

using cplx = std::complex<double>;

struct KernelTable {
  const char* name;
  // c[m x n] = a[m x k] * b[k x n], all row-major and densely packed.
  void (*gemm)(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b, cplx* c);
  // y += alpha * x
  void (*axpy)(std::size_t n, cplx alpha, const cplx* x, cplx* y);
  // sum_i conj(x_i) * y_i
  cplx (*dotc)(std::size_t n, const cplx* x, const cplx* y);
  // sum_i |x_i|^2
  double (*norm_sq)(std::size_t n, const cplx* x);
};

const KernelTable& scalar_table() noexcept;

/// nullptr when the variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_table() noexcept;

/// Table chosen once per process.
const KernelTable& active() noexcept;

void gemm(std::size_t m, std::size_t n, std::size_t k, std::span<const cplx> a, std::span<const cplx> b,
          std::span<cplx> c);
void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
cplx dotc(std::span<const cplx> x, std::span<const cplx> y);
double norm_sq(std::span<const cplx> x);

}  // namespace cplab::kernels
