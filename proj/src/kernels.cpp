#include "permlike/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace permlike::kernels {

const Backend* avx2_backend_impl();
const Backend* neon_backend_impl();

const Backend* avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  if (!__builtin_cpu_supports("avx2")) return nullptr;
#endif
  return avx2_backend_impl();
}

const Backend* neon() { return neon_backend_impl(); }

namespace {

const Backend& select() {
  const char* want = std::getenv("PERMLIKE_KERNEL");
  if (want) {
    if (std::strcmp(want, "scalar") == 0) return scalar();
    if (std::strcmp(want, "avx2") == 0) {
      if (const Backend* b = avx2()) return *b;
      return scalar();
    }
    if (std::strcmp(want, "neon") == 0) {
      if (const Backend* b = neon()) return *b;
      return scalar();
    }
    return scalar();
  }
  if (const Backend* b = avx2()) return *b;
  if (const Backend* b = neon()) return *b;
  return scalar();
}

}  // namespace

const Backend& active() {
  static const Backend& chosen = select();
  return chosen;
}

}  // namespace permlike::kernels
