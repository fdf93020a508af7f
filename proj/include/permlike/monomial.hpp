#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "permlike/cyclotomic.hpp"
#include "permlike/util.hpp"

namespace permlike {

// A monomial matrix of dimension 2^n whose nonzero entries are 2-power roots of
// unity: column j carries lambda^coeffs[j] in row perm[j], where lambda is the
// primitive 2^level-th root. level >= n so the maximal cycle's eigenvalues are
// expressible. Composition, inverse and powers stay in this representation;
// dense expansion lives in the oracle layer.
struct MonomialMatrix {
  int n = 0;
  int level = 1;
  std::vector<std::uint32_t> perm;
  std::vector<std::uint32_t> coeffs;

  std::size_t dim() const { return perm.size(); }
  std::uint32_t coeff_mask() const { return (static_cast<std::uint32_t>(1) << level) - 1; }
  bool operator==(const MonomialMatrix&) const = default;
};

MonomialMatrix mono_identity(int n, int level);

// The diagonal matrix with entry lambda_{2^n}^j at position j: the maximal
// 2-power cycle all groups here are built around.
MonomialMatrix maximal_cycle(int n, int level);
MonomialMatrix cycle_power(int n, int level, std::uint32_t k);

// Matrix sending e_j to lambda^{coeff_exps[j]} e_{r*j mod 2^n}.
MonomialMatrix mult_map_matrix(int n, int level, std::uint32_t r,
                               std::span<const std::uint32_t> coeff_exps);

MonomialMatrix compose(const MonomialMatrix& m, const MonomialMatrix& n);  // m applied after n
MonomialMatrix mono_inverse(const MonomialMatrix& m);
MonomialMatrix mono_power(const MonomialMatrix& m, std::uint64_t e);
std::uint64_t mono_order(const MonomialMatrix& m);

bool is_identity(const MonomialMatrix& m);
bool is_permutation_matrix(const MonomialMatrix& m);  // every coefficient is 1

// r with perm = multiplication by r, when the permutation has that shape.
std::optional<std::uint32_t> relation_of(const MonomialMatrix& m);

// k with m == maximal_cycle^k, when m is diagonal of that shape.
std::optional<std::uint32_t> as_cycle_power(const MonomialMatrix& m);

// Conjugation by the diagonal rescale e'_j = lambda^{t[j]} e_j: coefficients
// become coeff[j] + t[j] - t[perm[j]], the permutation is unchanged.
MonomialMatrix rescaled(const MonomialMatrix& m, std::span<const std::uint32_t> t);

// Restriction to an invariant coordinate subset (sorted, perm-closed); indices
// are renumbered by their position in `indices`. The coefficient level is kept.
MonomialMatrix restrict_to(const MonomialMatrix& m, std::span<const std::uint32_t> indices,
                           int new_n);
MonomialMatrix restrict_even(const MonomialMatrix& m);  // the even coordinates, new index t -> old 2t

// Characteristic polynomial of a monomial matrix, as the product over
// permutation cycles of x^(cycle length) - (product of the cycle's entries).
struct CharFactor {
  std::uint64_t block = 1;   // cycle length
  RootOfUnity corner;        // product of the entries along the cycle
  bool operator==(const CharFactor&) const = default;
};

struct CharPolyFactors {
  std::vector<CharFactor> factors;  // sorted by (block, corner)
  std::uint64_t degree() const;
  std::string to_string() const;    // grouped, e.g. "(x-1)^2 (x^2+1) (x^4-1)"
  bool operator==(const CharPolyFactors&) const = default;
};

CharPolyFactors char_factors(const MonomialMatrix& m);
CycloPoly expand_factors(const CharPolyFactors& f, int level);

// Eigenvalue multiset: every factor x^(2^b) - w contributes the 2^b solutions.
// Exponents are reported at one common level for the whole multiset.
struct EigenMultiset {
  int level = 0;
  std::map<std::uint32_t, std::uint64_t> mult;  // exponent of lambda_{2^level} -> count
  std::uint64_t total() const;
};
EigenMultiset eigen_multiset(const CharPolyFactors& f);

// Decides whether a matrix with these factors is similar to a permutation
// matrix. Such a matrix is diagonalizable with all eigenvalues roots of unity,
// so the criterion is purely about the eigenvalue multiset: writing m(d) for
// the shared multiplicity of the primitive 2^d-th roots, similarity to a
// permutation matrix means every m(d) is constant across its level and
// m(0) >= m(1) >= ... ; the permutation then has m(d) - m(d+1) cycles of
// length 2^d.
struct PermVerdict {
  bool permutation_type = false;
  bool diagonalizable = true;  // every factor x^m - w is squarefree since w != 0
  std::vector<std::uint64_t> cycle_counts;  // index d -> number of cycles of length 2^d
  std::string reason;  // empty when permutation_type
  int fail_level = -1;
};
PermVerdict perm_similarity(const CharPolyFactors& f);

std::string cycle_type_string(const std::vector<std::uint64_t>& cycle_counts);

}  // namespace permlike
