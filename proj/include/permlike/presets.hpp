#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "permlike/group.hpp"
#include "permlike/residue.hpp"

namespace permlike {

// A named input family for the analysis pipeline: the expected relation
// subgroup shape plus a concrete generator system realizing one torsion class.
struct Presentation {
  std::string h_label;
  std::string torsion_label;
  SubgroupDescriptor H;
  GroupSpec spec;
};

// Coefficients giving a multiplication-map generator with relation r the exact
// torsion A^ord(r) = C^w: each multiplication orbit carries its whole
// exponent sum on the smallest index. Needs v2(w) compatible with r's orbit
// structure; the canonical torsions 0 and 2^(n-1) always are.
std::vector<std::uint32_t> torsion_coeffs(int n, int level, std::uint32_t r, std::uint32_t w);

// Every canonical subgroup shape realizable at this n, each with its full set
// of torsion classes (split/half-cycle for the cyclic shapes, dihedral and
// quaternion variants on the reflection side). level 0 means level = n.
std::vector<Presentation> canonical_presentations(int n, int level = 0);

// A same-group disguise of the given spec: conjugates every generator by one seeded
// diagonal matrix, multiplies each by a seeded cycle power, and sometimes
// appends a redundant generator. The generated group is diagonally conjugate
// to the original, so classification and the similarity gate are unchanged.
GroupSpec seeded_twist(const GroupSpec& spec, std::uint64_t seed);

}  // namespace permlike
