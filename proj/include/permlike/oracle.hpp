#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permlike/cyclotomic.hpp"
#include "permlike/group.hpp"
#include "permlike/monomial.hpp"
#include "permlike/synth.hpp"

namespace permlike {

// Dense matrix over the 2-power cyclotomic field. Row-major; dim stays small
// (the dense layer is a verification oracle, not the engine).
struct DenseMatrix {
  int level = 1;
  std::size_t dim = 0;
  std::vector<CycloNum> e;

  static DenseMatrix zero(std::size_t dim, int level);
  static DenseMatrix identity(std::size_t dim, int level);
  CycloNum& at(std::size_t i, std::size_t j) { return e[i * dim + j]; }
  const CycloNum& at(std::size_t i, std::size_t j) const { return e[i * dim + j]; }
  bool operator==(const DenseMatrix&) const = default;
};

DenseMatrix dense_expand(const MonomialMatrix& m);
DenseMatrix dense_mul(const DenseMatrix& a, const DenseMatrix& b);

// Characteristic polynomial det(xI - A) by the trace-recurrence method
// (Faddeev-LeVerrier), exact over rationals. dim <= 16.
CycloPoly brute_char_poly(const DenseMatrix& a);

// T[j][k] = lambda_{2^n}^{jk}; its inverse is (1/2^n) [lambda^{-jk}]. The
// columns of T are the eigenvector lines the synthesized groups permute.
DenseMatrix vandermonde(int n, int level);
DenseMatrix vandermonde_inverse(int n, int level);
DenseMatrix vandermonde_conjugate(const DenseMatrix& a, int n);  // T^-1 a T

// Strictly 0/1 entries forming a permutation matrix: returns perm with
// at(perm[t], t) == 1. The literalness is the point; anything else is nullopt.
std::optional<std::vector<std::uint32_t>> as_permutation_matrix(const DenseMatrix& a);

// Evaluates every entry of T^-1 w T (w already rescaled) and demands it is
// literally 1 at (phi[t], t) and literally 0 elsewhere. Each entry is a sum of
// dim roots of unity divided by dim, so the evaluation folds exponents into
// the power basis with integer counts; exact, and much cheaper than the
// rational route, but the same matrix entry by entry.
bool dense_conjugate_matches(const MonomialMatrix& w, const std::vector<std::uint32_t>& phi);

enum class VerifyTier { Fast, Dense, Both };

struct VerificationReport {
  bool ok = true;
  std::string failure;  // first failing check, with the element word
  std::uint64_t elements_checked = 0;
  bool fast_ran = false;
  bool dense_ran = false;
  std::string note;  // tier downgrades, e.g. dense skipped for n > 4
};

// Replays a certificate against the validated group from scratch: rebuilds the
// substituted generators, re-enumerates all elements, and checks that the
// rescale turns every element into a shifted permutation of the Fourier lines
// matching the word-replayed certificate permutations. The fast tier works on
// exponent patterns (n <= 8); the dense tier re-checks every element against
// the Vandermonde columns with exact root arithmetic (n <= 4). Faithfulness
// (|image| = |group|) is checked on the replayed permutations.
VerificationReport verify_certificate(const ValidatedGroup& vg, const PermBasisCertificate& cert,
                                      VerifyTier tier);

}  // namespace permlike
