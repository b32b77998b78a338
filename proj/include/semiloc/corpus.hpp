// Reference maps and seeded random generators.
//
// Randomness comes from std::mt19937_64 seeded with the 64-bit seed. A
// complex Gaussian entry consumes two draws x1, x2, mapped to
// u = ((x >> 11) + 1)·2⁻⁵³ ∈ (0, 1], and is
//
//   sqrt(−2 ln u1)·(cos 2πu2 + i sin 2πu2)      (Box–Muller).
//
// Matrices are filled row by row. Isometries are the Q factor of a
// Householder QR of such a matrix, with column phases fixed so that R has a
// positive diagonal.

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>

#include "semiloc/causality.hpp"

namespace semiloc {

struct VerdictSkeleton {
  bool semicausal_BtoA_blocked = false;
  bool semicausal_AtoB_blocked = false;
  bool causal = false;
  bool product_localizable = false;

  bool operator==(const VerdictSkeleton&) const = default;
};

VerdictSkeleton skeleton_of(const CausalityVerdict& v);

struct NamedExample {
  std::string name;
  BipartiteMap map;
  VerdictSkeleton expected;
};

class UnknownExample : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::span<const std::string_view> named_example_names();

/// All named examples are qubit pairs, dA = dB = 2.
NamedExample named_example(std::string_view name);

/// Complex Gaussian rows × cols matrix drawn in the documented order.
Matrix gaussian_matrix(Index rows, Index cols, std::mt19937_64& rng);

/// Haar-style rows × cols isometry (rows ≥ cols).
Matrix random_isometry(Index rows, Index cols, std::mt19937_64& rng);

/// Unital channel B(H_out) → B(H_in) with kraus_rank Kraus operators sliced
/// from a random (dout·kraus_rank) × din isometry. Requires
/// 1 ≤ kraus_rank ≤ din·dout and dout·kraus_rank ≥ din.
CpMap random_channel(Index din, Index dout, Index kraus_rank, std::uint64_t seed);

struct SemilocalFactors {
  CpMap G;  // B(H_A ⊗ H_C) → B(H_A): x ↦ W* x W
  CpMap F;  // B(H_B) → B(H_C ⊗ H_B), unital
};

/// F has Kraus rank dC·dB. G uses a random isometry W, or when selective a
/// contraction W with ‖W‖ = 0.9.
SemilocalFactors random_semilocal_factors(Index dA, Index dB, Index dC, std::uint64_t seed,
                                          bool selective);

/// reconstruct(G, F) for random_semilocal_factors with the same arguments.
BipartiteMap random_semicausal(Index dA, Index dB, Index dC, std::uint64_t seed, bool selective);

}  // namespace semiloc
