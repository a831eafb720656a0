#include <cstdlib>
#include <cstring>

#include "cplab/kernels.hpp"

namespace cplab::kernels {

#ifdef CPLAB_HAVE_AVX2
const KernelTable& avx2_table_unchecked() noexcept;
#endif

namespace {

bool cpu_has_avx2() noexcept {
#if defined(CPLAB_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

bool force_scalar() noexcept {
  const char* env = std::getenv("CPLAB_FORCE_SCALAR");
  return env != nullptr && std::strcmp(env, "0") != 0 && env[0] != '\0';
}

const KernelTable& select() noexcept {
  if (!force_scalar()) {
    if (const KernelTable* t = avx2_table()) return *t;
  }
  return scalar_table();
}

}  // namespace

const KernelTable* avx2_table() noexcept {
#ifdef CPLAB_HAVE_AVX2
  static const bool ok = cpu_has_avx2();
  return ok ? &avx2_table_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept {
  static const KernelTable& table = select();
  return table;
}

void gemm(std::size_t m, std::size_t n, std::size_t k, std::span<const cplx> a, std::span<const cplx> b,
          std::span<cplx> c) {
  active().gemm(m, n, k, a.data(), b.data(), c.data());
}

void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) { active().axpy(x.size(), alpha, x.data(), y.data()); }

cplx dotc(std::span<const cplx> x, std::span<const cplx> y) { return active().dotc(x.size(), x.data(), y.data()); }

double norm_sq(std::span<const cplx> x) { return active().norm_sq(x.size(), x.data()); }

}  // namespace cplab::kernels
