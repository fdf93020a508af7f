#include "permlike/presets.hpp"

#include "permlike/monomial.hpp"

namespace permlike {

std::vector<std::uint32_t> torsion_coeffs(int n, int level, std::uint32_t r, std::uint32_t w) {
  const std::uint32_t dim = pow2(n);
  const int shift = level - n;
  if (shift < 0) throw Error("torsion coefficients need level >= n");
  std::vector<std::uint32_t> coeffs(dim, 0);
  const std::uint32_t rr = reduce(r, n);
  const std::uint32_t ww = reduce(w, n);
  const std::uint64_t ord = unit_order(rr, n);

  // Preferred section: A = C^s * M_r, whose coefficient vector is the ramp
  // s*r*j. Then A^ord = C^(s*G) with G the full geometric sum of the inverse
  // relation, so every torsion with v2(w) >= v2(G) is reachable while the
  // group stays conjugate to an affine permutation model.
  const std::uint32_t g = geom_sum(inv_mod(rr, n), ord, n);
  bool ramp = false;
  std::uint32_t s = 0;
  if (ww == 0) {
    ramp = true;
  } else if (g != 0 && v2(ww) >= v2(g)) {
    const int t = v2(g);
    s = reduce(static_cast<std::uint64_t>(ww >> t) * inv_mod(g >> t, n), n);
    ramp = true;
  }
  if (ramp) {
    for (std::uint32_t j = 0; j < dim; ++j)
      coeffs[j] = reduce(static_cast<std::uint64_t>(s) * rr * j, n) << shift;
  } else {
    // No affine section reaches this torsion. Spread the target w*j evenly
    // along each multiplication orbit instead: this still realizes the
    // relation and torsion (the quaternion class lives here), and the even
    // spread is symmetric under negation, so the generator commutes with the
    // reflection in product presentations.
    const int a = v2(ord);
    for (std::uint32_t j = 0; j < dim; ++j) {
      std::uint32_t target = reduce(static_cast<std::uint64_t>(ww) * j, n);
      if (target & ((std::uint32_t{1} << a) - 1))
        throw Error("requested torsion is not realizable for this relation");
      coeffs[j] = (target >> a) << shift;
    }
  }
  MonomialMatrix mat = mult_map_matrix(n, level, rr, coeffs);
  MonomialMatrix tor = mono_power(mat, ord);
  auto k = as_cycle_power(tor);
  if (!k || *k != ww)
    throw Error("requested torsion is not realizable for this relation");
  return coeffs;
}

namespace {

GeneratorSpec make_gen(const std::string& name, int n, int level, std::uint32_t r,
                       std::uint32_t w) {
  GeneratorSpec g;
  g.name = name;
  g.r = reduce(r, n);
  g.coeffs = torsion_coeffs(n, level, g.r, w);
  return g;
}

Presentation base(int n, int level, SubgroupDescriptor::Kind kind, int a,
                  const std::string& torsion_label) {
  Presentation p;
  p.H.kind = kind;
  p.H.a = a;
  p.h_label = p.H.label();
  p.torsion_label = torsion_label;
  p.spec.n = n;
  p.spec.level = level;
  return p;
}

}  // namespace

std::vector<Presentation> canonical_presentations(int n, int level) {
  if (level == 0) level = n;
  if (n < 1) throw Error("presentations need n >= 1");
  if (level < n) throw Error("presentations need level >= n");
  using K = SubgroupDescriptor::Kind;
  std::vector<Presentation> out;
  const std::uint32_t half = pow2(n) / 2;
  const std::uint32_t minus_one = neg_mod(reduce(1, n), n);
  const std::uint32_t coeff_half = std::uint32_t{1} << (level - 1);

  out.push_back(base(n, level, K::Trivial, 0, "-"));

  if (n >= 2) {
    Presentation p = base(n, level, K::MinusOne, 0, "dihedral");
    p.spec.generators.push_back(make_gen("A", n, level, minus_one, 0));
    out.push_back(p);

    // Same torsion class, but the paired-line coefficient carries a sign that
    // the synthesizer must flip away with one cycle twist.
    Presentation q = base(n, level, K::MinusOne, 0, "dihedral-flip");
    GeneratorSpec g = make_gen("A", n, level, minus_one, 0);
    g.coeffs[half] = coeff_half;
    q.spec.generators.push_back(std::move(g));
    out.push_back(q);

    Presentation s = base(n, level, K::MinusOne, 0, "quaternion");
    s.spec.generators.push_back(make_gen("A", n, level, minus_one, half));
    out.push_back(s);
  }

  for (int a = 1; a <= n - 2; ++a) {
    std::uint32_t rp = canonical_plus_generator(n, a);
    std::uint32_t rm = canonical_minus_generator(n, a);
    for (std::uint32_t w : {std::uint32_t{0}, half}) {
      std::string tl = w == 0 ? "I" : "C^half";
      Presentation p = base(n, level, K::CyclicPlus, a, tl);
      p.spec.generators.push_back(make_gen("A", n, level, rp, w));
      out.push_back(p);

      Presentation m = base(n, level, K::CyclicMinus, a, tl);
      m.spec.generators.push_back(make_gen("A", n, level, rm, w));
      out.push_back(m);

      for (std::uint32_t wb : {std::uint32_t{0}, half}) {
        Presentation pr = base(n, level, K::Product, a,
                               tl + (wb == 0 ? "|dihedral" : "|quaternion"));
        pr.spec.generators.push_back(make_gen("A", n, level, rp, w));
        pr.spec.generators.push_back(make_gen("B", n, level, minus_one, wb));
        out.push_back(pr);
      }
    }
  }
  return out;
}

GroupSpec seeded_twist(const GroupSpec& spec, std::uint64_t seed) {
  GroupSpec out = spec;
  SplitMix64 rng{seed};
  const int n = spec.n;
  const int level = spec.level;
  const std::uint32_t dim = pow2(n);
  const std::uint32_t mask = pow2(level) - 1u;
  const int shift = level - n;

  std::vector<std::uint32_t> t(dim);
  for (auto& x : t) x = static_cast<std::uint32_t>(rng.below(std::uint64_t{mask} + 1));

  for (auto& g : out.generators) {
    std::uint32_t r = reduce(g.r, n);
    std::uint32_t k = static_cast<std::uint32_t>(rng.below(dim));
    for (std::uint32_t j = 0; j < dim; ++j) {
      std::uint32_t rj = reduce(static_cast<std::uint64_t>(r) * j, n);
      std::uint64_t ramp = (static_cast<std::uint64_t>(k) * j & (dim - 1)) << shift;
      g.coeffs[j] = static_cast<std::uint32_t>((g.coeffs[j] + t[rj] - t[j] + ramp) & mask);
    }
  }

  // Sometimes hand the validator a redundant generator: a word in the twisted
  // system (or a bare cycle power) that must reduce to the canonical ones.
  if (rng.next() & 1) {
    std::uint32_t k = static_cast<std::uint32_t>(rng.below(dim));
    GeneratorSpec extra;
    extra.name = "Zred";
    if (out.generators.empty()) {
      extra.r = reduce(1, n);
      MonomialMatrix ck = cycle_power(n, level, k);
      extra.coeffs = ck.coeffs;
    } else {
      const GeneratorSpec& g0 = out.generators[static_cast<std::size_t>(
          rng.below(out.generators.size()))];
      MonomialMatrix m = mult_map_matrix(n, level, reduce(g0.r, n), g0.coeffs);
      MonomialMatrix prod = compose(compose(m, m), cycle_power(n, level, k));
      extra.r = reduce(static_cast<std::uint64_t>(reduce(g0.r, n)) * reduce(g0.r, n), n);
      extra.coeffs = prod.coeffs;
    }
    out.generators.push_back(std::move(extra));
  }
  return out;
}

}  // namespace permlike
