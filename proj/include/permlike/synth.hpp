#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "permlike/group.hpp"
#include "permlike/monomial.hpp"

namespace permlike {

// The product of a successful analysis: a diagonal rescale of the standard
// basis under which the (possibly substituted) generators become literal
// permutation matrices, plus the image of every generator and of the cycle as
// a permutation of the rescale-then-Fourier basis indices. `substitutions`
// lists cycle-power adjustments applied to the canonical generators, in order,
// each of the form "A:=A*C^k" (or "B:=..."); the verifier replays them.
struct PermBasisCertificate {
  int n = 1;
  int level = 1;
  std::vector<std::uint32_t> rescale;  // exponent t_j: basis vector j scales by lambda^{t_j}
  std::vector<std::string> substitutions;
  std::vector<std::pair<std::string, std::vector<std::uint32_t>>> generator_permutations;
  std::vector<std::string> trace;
};

struct SynthesisResult {
  PermBasisCertificate cert;
  std::optional<MonomialMatrix> A;  // canonical generators after substitutions
  std::optional<MonomialMatrix> B;
  std::uint32_t rA = 1;
};

// Assign-once rescale accumulator; double assignment or an unassigned slot at
// harvest time is a ContradictionError (the constructions cover each index
// exactly once).
class RescaleBuilder {
 public:
  explicit RescaleBuilder(std::size_t dim, std::uint32_t mask)
      : mask_(mask), slot_(dim), set_(dim, false) {}
  void assign(std::uint32_t index, std::uint32_t exp);
  bool assigned(std::uint32_t index) const { return set_[index]; }
  std::vector<std::uint32_t> values() const;

 private:
  std::uint32_t mask_;
  std::vector<std::uint32_t> slot_;
  std::vector<bool> set_;
};

// Recursive rescale construction for one cyclic generator with collapsed
// torsion (A^ord = I): forward propagation along the odd-index orbits, then
// recursion on the invariant even half. `to_orig` maps the current restricted
// coordinates back to original indices. Throws ContradictionError when the
// matrix violates a structural consequence of the similarity gate.
void build_cycle_rescale(const MonomialMatrix& a, const std::vector<std::uint32_t>& to_orig,
                         RescaleBuilder& out, std::vector<std::string>& trace, int depth);

// Fourier-index images: the cycle acts as the +1 shift, a rescaled generator
// with relation r acts as multiplication by r^-1.
std::vector<std::uint32_t> shift_permutation(int n);
std::vector<std::uint32_t> mult_permutation(int n, std::uint32_t factor);

// Full drivers. Both require an in-scope, gate-passing group; structural
// violations surface as ContradictionError.
SynthesisResult synthesize_trivial(const ValidatedGroup& vg);
SynthesisResult synthesize_cyclic(const ValidatedGroup& vg);
SynthesisResult synthesize_product(const ValidatedGroup& vg);
SynthesisResult synthesize(const ValidatedGroup& vg);

}  // namespace permlike
