#pragma once

#include <cstddef>
#include <cstdint>

namespace permlike::kernels {

// Flat-array primitives behind the monomial algebra. Coefficients are exponent
// words in [0, 2^level); `mask` is 2^level - 1. All kernels are pure loops over
// uint32 arrays so they vectorize cleanly; the scalar backend is the reference
// semantics, SIMD backends must match it bit for bit.
//
// Aliasing: `out` may alias `a` everywhere. It must not alias `values`, `idx`,
// `t` or `perm` in the gather-style kernels.
struct Backend {
  const char* name;

  // out[i] = (a[i] + b[i]) & mask
  void (*add_mod)(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out,
                  std::size_t len, std::uint32_t mask);

  // out[i] = values[idx[i]]
  void (*gather)(const std::uint32_t* values, const std::uint32_t* idx, std::uint32_t* out,
                 std::size_t len);

  // out[i] = (a[i] + values[idx[i]]) & mask
  void (*gather_add_mod)(const std::uint32_t* a, const std::uint32_t* values,
                         const std::uint32_t* idx, std::uint32_t* out, std::size_t len,
                         std::uint32_t mask);

  // out[i] = (a[i] + i*step) & mask
  void (*add_ramp_mod)(const std::uint32_t* a, std::uint32_t* out, std::size_t len,
                       std::uint32_t step, std::uint32_t mask);

  // out[i] = (coeff[i] + t[i] - t[perm[i]]) & mask
  void (*rescale_mod)(const std::uint32_t* coeff, const std::uint32_t* t,
                      const std::uint32_t* perm, std::uint32_t* out, std::size_t len,
                      std::uint32_t mask);

  // true iff a[i] == 0 for all i
  bool (*all_zero)(const std::uint32_t* a, std::size_t len);
};

const Backend& scalar();

// Null when the build or the running CPU lacks the extension.
const Backend* avx2();
const Backend* neon();

// Backend selected once per process: PERMLIKE_KERNEL=scalar|avx2|neon overrides,
// otherwise the best supported extension wins. An override naming an unavailable
// backend falls back to scalar.
const Backend& active();

}  // namespace permlike::kernels
