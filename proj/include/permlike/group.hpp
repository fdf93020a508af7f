#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permlike/monomial.hpp"
#include "permlike/residue.hpp"
#include "permlike/util.hpp"

namespace permlike {

// Input model: a finite monomial group over 2-power roots of unity containing
// the maximal cycle C. Generators are given modulo C as multiplication maps
// j -> r*j with root-of-unity coefficients per column.
struct GeneratorSpec {
  std::string name;
  std::uint32_t r = 1;
  std::vector<std::uint32_t> coeffs;  // exponents of lambda_{2^level}, length 2^n
};

struct GroupSpec {
  int n = 1;
  int level = 1;
  std::vector<GeneratorSpec> generators;
};

/// Validation canonicalizes the generator system: A generates the cyclic part of
// the relation subgroup H (with the standard residue as its relation), B covers
// the -1 relation when H is a direct product. Both are derived as words in the
// input generators; `derivations` records those words. When the group fails the
// self-centralized-cycle model, `scope_violation` names the failed condition
// and only C, gen_matrices and the closure scan remain meaningful.
struct ValidatedGroup {
  GroupSpec spec;
  MonomialMatrix C;
  std::vector<MonomialMatrix> gen_matrices;
  SubgroupDescriptor H;
  std::uint64_t group_order = 0;  // |H| * 2^n when in scope
  std::optional<std::string> scope_violation;

  std::optional<MonomialMatrix> A;
  std::uint32_t rA = 1;
  std::uint64_t a_order = 1;  // order of rA in the units, = |cyclic part|
  std::optional<MonomialMatrix> B;
  std::vector<std::string> derivations;
};

ValidatedGroup validate(const GroupSpec& spec);

struct Element {
  std::string word;  // "I", "A^2*B*C^3", ...
  std::uint64_t a_pow = 0;
  std::uint64_t b_pow = 0;
  std::uint64_t c_pow = 0;
  MonomialMatrix m;
};

// All |H| * 2^n elements as canonical words A^l B^m C^k, in lexicographic
// (l, m, k) order. Requires an in-scope group.
std::vector<Element> enumerate_elements(const ValidatedGroup& vg);

// Breadth-first closure of {generators, C}; works for out-of-scope groups too.
// Throws ScopeError beyond `cap` elements.
std::vector<Element> closure_elements(const ValidatedGroup& vg, std::size_t cap = 1u << 17);

struct Witness {
  std::string word;
  CharPolyFactors factors;
  PermVerdict verdict;
};

struct GroupAnalysis {
  SubgroupDescriptor H;
  std::uint64_t order = 0;
  bool permutation_like = false;
  std::optional<Witness> witness;  // first violation in canonical order
};

// Scans every element's characteristic factors through the eigenvalue
// criterion. Uses canonical enumeration in scope, closure otherwise.
GroupAnalysis permutation_like_scan(const ValidatedGroup& vg);

enum class TorsionKind { Split, Dihedral, Quaternion };
std::string torsion_kind_label(TorsionKind k);

struct NormalizedTorsion {
  MonomialMatrix matrix;       // A * C^shift
  std::uint32_t shift = 0;
  TorsionKind kind = TorsionKind::Split;
};

/// Adjusts a generator by a cycle power so its 2-power torsion collapses:
// A^(2^a) = C^w becomes (A C^s)^(2^a) = I via the geometric-sum inverse. For
// relation -1 no adjustment can change A^2, so the result only classifies the
// dihedral (A^2 = I) versus quaternion (A^2 = C^(2^(n-1))) alternative, which
// is invariant under A -> A C^k.
NormalizedTorsion normalize_torsion(const MonomialMatrix& a, std::uint32_t r);

// Given normalized A (A^(2^a) = I) and an involution B with relation -1 and
// B^2 = I, finds h with B' = B C^h commuting with A. The commutator defect
// [A, B] is a cycle power C^k with 2^(n-a) | k; h solves h * (rA - 1) = k.
struct CommutingAdjust {
  MonomialMatrix matrix;  // B * C^h
  std::uint32_t h = 0;
};
CommutingAdjust commuting_adjust(const MonomialMatrix& a, std::uint32_t ra,
                                 const MonomialMatrix& b);

}  // namespace permlike
