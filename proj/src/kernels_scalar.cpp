#include "permlike/kernels.hpp"

namespace permlike::kernels {
namespace {

void add_mod(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out,
             std::size_t len, std::uint32_t mask) {
  for (std::size_t i = 0; i < len; ++i) out[i] = (a[i] + b[i]) & mask;
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
  std::uint32_t ramp = 0;
  for (std::size_t i = 0; i < len; ++i, ramp += step) out[i] = (a[i] + ramp) & mask;
}

void rescale_mod(const std::uint32_t* coeff, const std::uint32_t* t,
                 const std::uint32_t* perm, std::uint32_t* out, std::size_t len,
                 std::uint32_t mask) {
  for (std::size_t i = 0; i < len; ++i) out[i] = (coeff[i] + t[i] - t[perm[i]]) & mask;
}

bool all_zero(const std::uint32_t* a, std::size_t len) {
  std::uint32_t acc = 0;
  for (std::size_t i = 0; i < len; ++i) acc |= a[i];
  return acc == 0;
}

}  // namespace

const Backend& scalar() {
  static const Backend backend{"scalar",      add_mod,     gather,  gather_add_mod,
                               add_ramp_mod,  rescale_mod, all_zero};
  return backend;
}

}  // namespace permlike::kernels
