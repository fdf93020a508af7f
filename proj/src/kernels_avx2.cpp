// AVX2 variants of the exponent-array kernels. This translation unit is compiled
// with -mavx2 on x86-64; runtime dispatch lives in kernels.cpp, so nothing here
// may run on CPUs without AVX2 except avx2_backend() itself.

#include "permlike/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace permlike::kernels {
namespace {

void add_mod(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out,
             std::size_t len, std::uint32_t mask) {
  const __m256i vmask = _mm256_set1_epi32(static_cast<int>(mask));
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i vs = _mm256_and_si256(_mm256_add_epi32(va, vb), vmask);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), vs);
  }
  for (; i < len; ++i) out[i] = (a[i] + b[i]) & mask;
}

void gather(const std::uint32_t* values, const std::uint32_t* idx, std::uint32_t* out,
            std::size_t len) {
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    __m256i vi = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(idx + i));
    __m256i vg = _mm256_i32gather_epi32(reinterpret_cast<const int*>(values), vi, 4);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), vg);
  }
  for (; i < len; ++i) out[i] = values[idx[i]];
}

void gather_add_mod(const std::uint32_t* a, const std::uint32_t* values,
                    const std::uint32_t* idx, std::uint32_t* out, std::size_t len,
                    std::uint32_t mask) {
  const __m256i vmask = _mm256_set1_epi32(static_cast<int>(mask));
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vi = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(idx + i));
    __m256i vg = _mm256_i32gather_epi32(reinterpret_cast<const int*>(values), vi, 4);
    __m256i vs = _mm256_and_si256(_mm256_add_epi32(va, vg), vmask);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), vs);
  }
  for (; i < len; ++i) out[i] = (a[i] + values[idx[i]]) & mask;
}

void add_ramp_mod(const std::uint32_t* a, std::uint32_t* out, std::size_t len,
                  std::uint32_t step, std::uint32_t mask) {
  const __m256i vmask = _mm256_set1_epi32(static_cast<int>(mask));
  const __m256i lane = _mm256_mullo_epi32(_mm256_setr_epi32(0, 1, 2, 3, 4, 5, 6, 7),
                                          _mm256_set1_epi32(static_cast<int>(step)));
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i base = _mm256_set1_epi32(static_cast<int>(static_cast<std::uint32_t>(i) * step));
    __m256i vs = _mm256_add_epi32(va, _mm256_add_epi32(base, lane));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_and_si256(vs, vmask));
  }
  for (; i < len; ++i) out[i] = (a[i] + static_cast<std::uint32_t>(i) * step) & mask;
}

void rescale_mod(const std::uint32_t* coeff, const std::uint32_t* t,
                 const std::uint32_t* perm, std::uint32_t* out, std::size_t len,
                 std::uint32_t mask) {
  const __m256i vmask = _mm256_set1_epi32(static_cast<int>(mask));
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    __m256i vc = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(coeff + i));
    __m256i vt = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(t + i));
    __m256i vp = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(perm + i));
    __m256i vtp = _mm256_i32gather_epi32(reinterpret_cast<const int*>(t), vp, 4);
    __m256i vs = _mm256_sub_epi32(_mm256_add_epi32(vc, vt), vtp);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i), _mm256_and_si256(vs, vmask));
  }
  for (; i < len; ++i) out[i] = (coeff[i] + t[i] - t[perm[i]]) & mask;
}

bool all_zero(const std::uint32_t* a, std::size_t len) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 8 <= len; i += 8) {
    acc = _mm256_or_si256(acc, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i)));
  }
  std::uint32_t tail = 0;
  for (; i < len; ++i) tail |= a[i];
  return _mm256_testz_si256(acc, acc) && tail == 0;
}

}  // namespace

const Backend* avx2_backend_impl() {
  static const Backend backend{"avx2",        add_mod,     gather,  gather_add_mod,
                               add_ramp_mod,  rescale_mod, all_zero};
  return &backend;
}

}  // namespace permlike::kernels

#else

namespace permlike::kernels {
const Backend* avx2_backend_impl() { return nullptr; }
}  // namespace permlike::kernels

#endif
