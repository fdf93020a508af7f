#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "permlike/util.hpp"

namespace permlike {

// Arithmetic in Z/2^n and the structure of its unit group. Residues are kept
// reduced to [0, 2^n); n is passed explicitly and must stay within [0, 30] so
// everything fits comfortably in uint32/uint64 math.

int v2(std::uint64_t k);  // 2-adic valuation; throws Error on k = 0

std::uint32_t pow2(int n);
std::uint32_t reduce(std::uint64_t v, int n);
std::uint32_t neg_mod(std::uint32_t a, int n);
std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, int n);
std::uint32_t pow_mod(std::uint32_t r, std::uint64_t e, int n);
std::uint32_t inv_mod(std::uint32_t r, int n);  // r must be odd

// Multiplicative order of an odd residue; always a power of two.
std::uint64_t unit_order(std::uint32_t r, int n);

// Every odd r mod 2^n is sign + 2^b * v with sign in {+1,-1}, v odd. For
// r = +-1 the tail vanishes and we set v = 0, b = n. The order is then 2^(n-b)
// (clamped to 1), which unit_decompose records directly.
struct UnitDecomposition {
  int n = 0;
  std::uint32_t value = 1;
  int sign = 1;           // +1 or -1
  int b = 0;              // v2(r - sign); == n when v == 0
  std::uint32_t v = 0;    // odd tail, 0 iff r == +-1
  std::uint64_t order = 1;
};
UnitDecomposition unit_decompose(std::uint32_t r, int n);

// The subgroups of the units mod 2^n (n >= 3) fall into five shapes: trivial,
// {+-1}, a cyclic group generated by 1 + 2^(n-a), a cyclic group generated by
// -1 + 2^(n-a), or the direct product of {+-1} with the plus-type cyclic group.
// `a` ranges over [1, n-2] and fixes the order: 2^a for the cyclic shapes,
// 2^(a+1) for the product.
struct SubgroupDescriptor {
  enum class Kind { Trivial, MinusOne, CyclicPlus, CyclicMinus, Product };
  Kind kind = Kind::Trivial;
  int a = 0;

  bool operator==(const SubgroupDescriptor&) const = default;
  std::uint64_t order() const;
  bool is_cyclic() const { return kind != Kind::Product; }
  bool contains_minus_one() const {
    return kind == Kind::MinusOne || kind == Kind::Product || kind == Kind::CyclicMinus;
  }
  std::string label() const;  // e.g. "cyclic-plus(a=2)"
};

// Classifies the closure of `gens`; set equality against the reconstructed
// subgroup is re-checked, a mismatch is a ContradictionError.
SubgroupDescriptor subgroup_classify(std::span<const std::uint32_t> gens, int n);

std::vector<std::uint32_t> subgroup_elements(const SubgroupDescriptor& d, int n);  // sorted
std::uint32_t canonical_plus_generator(int n, int a);   // 1 + 2^(n-a)
std::uint32_t canonical_minus_generator(int n, int a);  // -1 + 2^(n-a)

// Residue generating the same subgroup as r with the standard shape above;
// r itself for the trivial/minus-one shapes.
std::uint32_t canonical_unit_generator(std::uint32_t r, int n);

// 1 + r + r^2 + ... + r^(terms-1) mod 2^n.
std::uint32_t geom_sum(std::uint32_t r, std::uint64_t terms, int n);

// Valuation of the geometric sum over a full period (terms = order of r).
// For r = -1 (n >= 2) the sum vanishes mod 2^n, flagged by `zero`. Otherwise
// sum = 2^valuation * odd_part with odd_part odd and valuation < n:
//   r = 1            -> valuation = 0 (sum is the single term 1)
//   r = 1 + 2^b v    -> valuation = n - b  (the order exponent)
//   r = -1 + 2^b v, v odd -> valuation = n - 1
struct GeomSumValuation {
  bool zero = false;
  int valuation = 0;
  std::uint32_t odd_part = 1;  // reduced mod 2^(n - valuation)
};
GeomSumValuation geom_sum_valuation(std::uint32_t r, int n);

// Orbits of j -> r*j on a chosen slice of Z/2^n. Orbits are listed by
// increasing representative (= minimum element); each orbit is stored in walk
// order starting at the representative.
struct Orbit {
  std::vector<std::uint32_t> elements;
  std::uint32_t rep() const { return elements.front(); }
  std::size_t size() const { return elements.size(); }
};

enum class OrbitDomain { All, Units, Evens, NonFixed };

struct OrbitPartition {
  std::uint32_t r = 1;
  int n = 0;
  std::vector<Orbit> orbits;
};
OrbitPartition orbits(std::uint32_t r, int n, OrbitDomain domain);

// Pairs each multiplication orbit on Z/2^n minus {0, 2^(n-1)} with its negation.
// Defined for r of the canonical plus shape (r = 1 mod 4, r != 1): there no
// orbit can meet its own negation, so the pairing is a perfect matching. The
// kept side is the one holding the smaller minimum.
struct OrbitPairing {
  std::uint32_t r = 1;
  int n = 0;
  struct Pair {
    Orbit kept;
    Orbit negated;
    std::uint32_t rep = 0;  // kept.rep(), the global minimum of the union
  };
  std::vector<Pair> pairs;  // sorted by rep
};
OrbitPairing orbit_pairing(std::uint32_t r, int n);

}  // namespace permlike
