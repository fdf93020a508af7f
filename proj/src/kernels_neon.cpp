// NEON variants. AArch64 has no integer gather, so the gather-style kernels keep
// scalar loops; the streaming kernels use 4-lane vectors. Compiled unguarded on
// ARM (NEON is baseline for AArch64), stubbed elsewhere.

#include "permlike/kernels.hpp"

#if defined(__ARM_NEON) || defined(__ARM_NEON__)

#include <arm_neon.h>

namespace permlike::kernels {
namespace {

void add_mod(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out,
             std::size_t len, std::uint32_t mask) {
  const uint32x4_t vmask = vdupq_n_u32(mask);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    vst1q_u32(out + i, vandq_u32(vaddq_u32(vld1q_u32(a + i), vld1q_u32(b + i)), vmask));
  }
  for (; i < len; ++i) out[i] = (a[i] + b[i]) & mask;
}

void gather(const std::uint32_t* values, const std::uint32_t* idx, std::uint32_t* out,
            std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) out[i] = values[idx[i]];
}

void gather_add_mod(const std::uint32_t* a, const std::uint32_t* values,
                    const std::uint32_t* idx, std::uint32_t* out, std::size_t len,
                    std::uint32_t mask) {
  for (std::size_t i = 0; i < len; ++i) out[i] = (a[i] + values[idx[i]]) & mask;
}

void add_ramp_mod(const std::uint32_t* a, std::uint32_t* out, std::size_t len,
                  std::uint32_t step, std::uint32_t mask) {
  const uint32x4_t vmask = vdupq_n_u32(mask);
  const std::uint32_t lane_init[4] = {0, step, 2 * step, 3 * step};
  const uint32x4_t lane = vld1q_u32(lane_init);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    uint32x4_t base = vdupq_n_u32(static_cast<std::uint32_t>(i) * step);
    uint32x4_t vs = vaddq_u32(vld1q_u32(a + i), vaddq_u32(base, lane));
    vst1q_u32(out + i, vandq_u32(vs, vmask));
  }
  for (; i < len; ++i) out[i] = (a[i] + static_cast<std::uint32_t>(i) * step) & mask;
}

void rescale_mod(const std::uint32_t* coeff, const std::uint32_t* t,
                 const std::uint32_t* perm, std::uint32_t* out, std::size_t len,
                 std::uint32_t mask) {
  for (std::size_t i = 0; i < len; ++i) out[i] = (coeff[i] + t[i] - t[perm[i]]) & mask;
}

bool all_zero(const std::uint32_t* a, std::size_t len) {
  uint32x4_t acc = vdupq_n_u32(0);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) acc = vorrq_u32(acc, vld1q_u32(a + i));
  std::uint32_t tail = vgetq_lane_u32(acc, 0) | vgetq_lane_u32(acc, 1) |
                       vgetq_lane_u32(acc, 2) | vgetq_lane_u32(acc, 3);
  for (; i < len; ++i) tail |= a[i];
  return tail == 0;
}

}  // namespace

const Backend* neon_backend_impl() {
  static const Backend backend{"neon",        add_mod,     gather,  gather_add_mod,
                               add_ramp_mod,  rescale_mod, all_zero};
  return &backend;
}

}  // namespace permlike::kernels

#else

namespace permlike::kernels {
const Backend* neon_backend_impl() { return nullptr; }
}  // namespace permlike::kernels

#endif
