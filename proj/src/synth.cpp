#include "permlike/synth.hpp"

#include <algorithm>
#include <numeric>

#include "permlike/residue.hpp"

namespace permlike {

void RescaleBuilder::assign(std::uint32_t index, std::uint32_t exp) {
  if (index >= slot_.size()) throw ContradictionError("rescale index out of range");
  if (set_[index]) throw ContradictionError("rescale index assigned twice");
  slot_[index] = exp & mask_;
  set_[index] = true;
}

std::vector<std::uint32_t> RescaleBuilder::values() const {
  for (std::size_t i = 0; i < set_.size(); ++i)
    if (!set_[i]) throw ContradictionError("rescale construction left an index unassigned");
  return slot_;
}

namespace {

std::string level_tag(int depth, int n_cur) {
  return "depth " + std::to_string(depth) + " (2^" + std::to_string(n_cur) + " coordinates)";
}

}  // namespace

void build_cycle_rescale(const MonomialMatrix& a, const std::vector<std::uint32_t>& to_orig,
                         RescaleBuilder& out, std::vector<std::string>& trace, int depth) {
  const int n_cur = a.n;
  const std::uint32_t dim = pow2(n_cur);
  const std::uint32_t mask = a.coeff_mask();
  if (to_orig.size() != dim) throw ContradictionError("index map size mismatch");

  auto r_opt = relation_of(a);
  if (!r_opt) throw ContradictionError("restricted generator is not a multiplication map");
  const std::uint32_t r = *r_opt;

  if (n_cur == 0) {
    if (a.coeffs[0] != 0)
      throw ContradictionError(
          "fixed line carries a nontrivial coefficient; excluded by the similarity gate");
    out.assign(to_orig[0], 0);
    return;
  }

  if (r == reduce(1, n_cur)) {
    for (std::uint32_t j = 0; j < dim; ++j) {
      if (a.perm[j] != j || a.coeffs[j] != 0)
        throw ContradictionError(
            "action on the invariant core must be the identity; excluded by the similarity gate");
      out.assign(to_orig[j], 0);
    }
    trace.push_back(level_tag(depth, n_cur) + ": identity action, zero rescale");
    return;
  }

  if (n_cur >= 2 && r == dim - 1) {
    // Relation -1: an involution pairing j with -j and fixing 0 and dim/2.
    if (!is_identity(compose(a, a)))
      throw ContradictionError("reflection-type generator must be an involution here");
    const std::uint32_t half = dim / 2;
    if (a.coeffs[0] != 0)
      throw ContradictionError(
          "zero line must carry coefficient 1; excluded by the similarity gate");
    if (a.coeffs[half] != 0)
      throw ContradictionError(
          "half line must carry coefficient 1 at this point; excluded by the similarity gate");
    out.assign(to_orig[0], 0);
    out.assign(to_orig[half], 0);
    for (std::uint32_t j = 1; j < half; ++j) {
      out.assign(to_orig[j], 0);
      out.assign(to_orig[dim - j], a.coeffs[j]);
    }
    trace.push_back(level_tag(depth, n_cur) + ": reflection pairing, " +
                    std::to_string(half - 1) + " index pairs");
    return;
  }

  UnitDecomposition ud = unit_decompose(r, n_cur);
  if (ud.v == 0) throw ContradictionError("unexpected sign relation in recursion dispatch");

  // Odd coordinates: every multiplication orbit has full length ord(r); walk it
  // from the representative accumulating coefficient exponents.
  OrbitPartition odd = orbits(r, n_cur, OrbitDomain::Units);
  for (const Orbit& orb : odd.orbits) {
    if (orb.size() != ud.order)
      throw ContradictionError("odd-index orbit shorter than the relation order");
    std::uint32_t acc = 0;
    out.assign(to_orig[orb.elements[0]], 0);
    for (std::size_t i = 1; i < orb.elements.size(); ++i) {
      acc = (acc + a.coeffs[orb.elements[i - 1]]) & mask;
      out.assign(to_orig[orb.elements[i]], acc);
    }
    std::uint32_t corner = (acc + a.coeffs[orb.elements.back()]) & mask;
    if (corner != 0)
      throw ContradictionError(
          "coefficient product around an odd-index orbit is not 1; torsion not collapsed");
  }
  trace.push_back(level_tag(depth, n_cur) + ": propagated " + std::to_string(odd.orbits.size()) +
                  " odd-index orbits of length " + std::to_string(ud.order));

  if (ud.sign == 1 && ud.b == n_cur - 1) {
    // Half-period relation 1 + 2^(n_cur - 1): the even lines are fixed and must
    // carry coefficient 1.
    for (std::uint32_t j = 0; j < dim; j += 2) {
      if (a.perm[j] != j || a.coeffs[j] != 0)
        throw ContradictionError(
            "even lines must be fixed with coefficient 1; excluded by the similarity gate");
      out.assign(to_orig[j], 0);
    }
    trace.push_back(level_tag(depth, n_cur) + ": even lines fixed, zero rescale");
    return;
  }

  MonomialMatrix a2 = restrict_even(a);
  std::vector<std::uint32_t> to_orig2(dim / 2);
  for (std::uint32_t t = 0; t < dim / 2; ++t) to_orig2[t] = to_orig[2 * t];
  build_cycle_rescale(a2, to_orig2, out, trace, depth + 1);
}

std::vector<std::uint32_t> shift_permutation(int n) {
  const std::uint32_t dim = pow2(n);
  std::vector<std::uint32_t> p(dim);
  for (std::uint32_t t = 0; t < dim; ++t) p[t] = reduce(static_cast<std::uint64_t>(t) + 1, n);
  return p;
}

std::vector<std::uint32_t> mult_permutation(int n, std::uint32_t factor) {
  if ((factor & 1u) == 0) throw Error("index permutation needs an odd factor");
  const std::uint32_t dim = pow2(n);
  std::vector<std::uint32_t> p(dim);
  for (std::uint32_t t = 0; t < dim; ++t)
    p[t] = reduce(static_cast<std::uint64_t>(factor) * t, n);
  return p;
}

namespace {

void seal_certificate(const ValidatedGroup& vg, SynthesisResult& res) {
  PermBasisCertificate& cert = res.cert;
  cert.n = vg.spec.n;
  cert.level = vg.spec.level;
  cert.generator_permutations.emplace_back("C", shift_permutation(vg.spec.n));
  if (res.A)
    cert.generator_permutations.emplace_back(
        "A", mult_permutation(vg.spec.n, inv_mod(res.rA, vg.spec.n)));
  if (res.B)
    cert.generator_permutations.emplace_back(
        "B", mult_permutation(vg.spec.n, neg_mod(reduce(1, vg.spec.n), vg.spec.n)));

  // Final wall: the substituted generators must be literal permutation
  // matrices in the rescaled basis.
  if (res.A && !is_permutation_matrix(rescaled(*res.A, cert.rescale)))
    throw ContradictionError("rescaled cyclic generator is not a permutation matrix");
  if (res.B && !is_permutation_matrix(rescaled(*res.B, cert.rescale)))
    throw ContradictionError("rescaled reflection generator is not a permutation matrix");
  cert.trace.push_back("verified: substituted generators are permutation matrices in the "
                       "rescaled basis");
}

}  // namespace

SynthesisResult synthesize_trivial(const ValidatedGroup& vg) {
  SynthesisResult res;
  res.cert.rescale.assign(std::size_t{1} << vg.spec.n, 0);
  res.cert.trace.push_back("relation subgroup is trivial: the group is the cycle itself, "
                           "zero rescale suffices");
  seal_certificate(vg, res);
  return res;
}

SynthesisResult synthesize_cyclic(const ValidatedGroup& vg) {
  SynthesisResult res;
  const int n = vg.spec.n;
  const std::uint32_t dim = pow2(n);
  MonomialMatrix a = *vg.A;
  res.rA = vg.rA;

  NormalizedTorsion nt = normalize_torsion(a, vg.rA);
  if (nt.kind == TorsionKind::Quaternion)
    throw ContradictionError("quaternionic torsion cannot pass the similarity gate");
  a = nt.matrix;
  if (nt.shift != 0) {
    res.cert.substitutions.push_back("A:=A*C^" + std::to_string(nt.shift));
    res.cert.trace.push_back("collapsed the cyclic generator's torsion with a cycle power");
  }

  if (nt.kind == TorsionKind::Dihedral) {
    // Relation -1. The half-line coefficient is a sign; -1 flips to +1 by one
    // extra cycle twist, which preserves the involution property.
    const std::uint32_t half = dim / 2;
    const std::uint32_t minus = (a.coeff_mask() + 1u) >> 1;
    if (a.coeffs[half] == minus) {
      a = compose(a, vg.C);
      res.cert.substitutions.push_back("A:=A*C");
      res.cert.trace.push_back("flipped the half-line coefficient sign with one cycle twist");
    }
  }

  RescaleBuilder rb(dim, a.coeff_mask());
  std::vector<std::uint32_t> to_orig(dim);
  std::iota(to_orig.begin(), to_orig.end(), 0u);
  build_cycle_rescale(a, to_orig, rb, res.cert.trace, 0);
  res.cert.rescale = rb.values();
  res.A = a;
  seal_certificate(vg, res);
  return res;
}

SynthesisResult synthesize_product(const ValidatedGroup& vg) {
  SynthesisResult res;
  const int n = vg.spec.n;
  const std::uint32_t dim = pow2(n);
  const std::uint32_t half = dim / 2;
  MonomialMatrix a = *vg.A;
  MonomialMatrix b = *vg.B;
  res.rA = vg.rA;

  NormalizedTorsion nta = normalize_torsion(a, vg.rA);
  if (nta.kind != TorsionKind::Split)
    throw ContradictionError("plus-shape torsion must be normalizable");
  a = nta.matrix;
  if (nta.shift != 0) {
    res.cert.substitutions.push_back("A:=A*C^" + std::to_string(nta.shift));
    res.cert.trace.push_back("collapsed the cyclic part's torsion with a cycle power");
  }

  NormalizedTorsion ntb =
      normalize_torsion(b, neg_mod(reduce(1, n), n));
  if (ntb.kind == TorsionKind::Quaternion)
    throw ContradictionError("quaternionic reflection cannot pass the similarity gate");

  CommutingAdjust ca = commuting_adjust(a, vg.rA, b);
  b = ca.matrix;
  if (ca.h != 0) {
    res.cert.substitutions.push_back("B:=B*C^" + std::to_string(ca.h));
    res.cert.trace.push_back("twisted the reflection by a cycle power to commute with the "
                             "cyclic part");
  }
  if (b.coeffs[0] != 0)
    throw ContradictionError(
        "reflection must fix the zero line with coefficient 1; excluded by the similarity gate");
  if (b.coeffs[half] != 0)
    throw ContradictionError(
        "reflection must fix the half line with coefficient 1 after the commuting twist; "
        "excluded by the similarity gate");

  // Phase 1: the cyclic rescale ignoring B.
  RescaleBuilder rb(dim, a.coeff_mask());
  std::vector<std::uint32_t> to_orig(dim);
  std::iota(to_orig.begin(), to_orig.end(), 0u);
  build_cycle_rescale(a, to_orig, rb, res.cert.trace, 0);
  std::vector<std::uint32_t> t = rb.values();

  // Phase 2: B pairs each multiplication orbit with its negation; re-seed the
  // negated side so B maps the kept basis lines onto it exactly, then propagate
  // along A again. A stays a permutation matrix because each orbit's
  // coefficient sum is already zero.
  OrbitPairing pairing = orbit_pairing(vg.rA, n);
  const std::uint32_t mask = a.coeff_mask();
  for (const auto& pair : pairing.pairs) {
    std::uint32_t j = pair.rep;
    std::uint32_t x = neg_mod(j, n);
    std::uint32_t val = (t[j] + b.coeffs[j]) & mask;
    t[x] = val;
    for (std::size_t i = 1; i < pair.negated.size(); ++i) {
      val = (val + a.coeffs[x]) & mask;
      x = a.perm[x];
      t[x] = val;
    }
    std::uint32_t corner = (val + a.coeffs[x]) & mask;
    if (corner != t[neg_mod(j, n)])
      throw ContradictionError("negated orbit propagation failed to close");
  }
  res.cert.trace.push_back("re-seeded " + std::to_string(pairing.pairs.size()) +
                           " negated orbits through the reflection");

  res.cert.rescale = std::move(t);
  res.A = a;
  res.B = b;
  seal_certificate(vg, res);
  return res;
}

SynthesisResult synthesize(const ValidatedGroup& vg) {
  if (vg.scope_violation)
    throw ScopeError("synthesis requires an in-scope group: " + *vg.scope_violation);
  switch (vg.H.kind) {
    case SubgroupDescriptor::Kind::Trivial: return synthesize_trivial(vg);
    case SubgroupDescriptor::Kind::MinusOne:
    case SubgroupDescriptor::Kind::CyclicPlus:
    case SubgroupDescriptor::Kind::CyclicMinus: return synthesize_cyclic(vg);
    case SubgroupDescriptor::Kind::Product: return synthesize_product(vg);
  }
  throw ContradictionError("bad subgroup kind");
}

}  // namespace permlike
