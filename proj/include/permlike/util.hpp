#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace permlike {

// Error taxonomy.
//   ParseError         : malformed input (files, CLI arguments, bad shapes).
//   ScopeError         : structurally valid input the engine does not handle
//                        (non-unit relations, cycle not self-centralizing, ...).
//   ContradictionError : a state the structure theory excludes. Reaching one means
//                        a precondition was violated upstream or the library has a bug;
//                        it is never a normal rejection path.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ScopeError : public Error {
 public:
  using Error::Error;
};

class ContradictionError : public Error {
 public:
  using Error::Error;
};

// Deterministic 64-bit generator (splitmix64). Used instead of <random> distributions
// so seeded runs are byte-identical across platforms and standard libraries.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform-enough draw in [0, bound); bound is tiny in all call sites, so the
  // modulo bias is irrelevant, and the result is platform-stable.
  std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }
};

// Worker count for the row-parallel drivers: PERMLIKE_WORKERS if set, else the
// hardware concurrency, always at least 1.
unsigned worker_count();

// Runs body(i) for i in [0, count) on the worker pool. Callers must write results
// into index-addressed slots; completion order is unspecified, results are not.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace permlike
