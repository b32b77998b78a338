// Signaling tests for operations on a bipartite system H_A ⊗ H_B.
//
// "B→A blocked" (semicausal): E(a ⊗ 1_B) = T(a) ⊗ 1_B for a CP map T on A.
// "A→B blocked" is the same test after exchanging the parties:
// E(1_A ⊗ b) = 1_A ⊗ T'(b). Causal means both hold. Product localizable
// means E = G ⊗ F with F unital.

#pragma once

#include <optional>
#include <vector>

#include "semiloc/qmap.hpp"

namespace semiloc {

inline constexpr double kSemicausalTol = 1e-8;

/// A CP map on B(H_A ⊗ H_B), input and output leg order (A, B).
class BipartiteMap {
 public:
  BipartiteMap(BipartiteDims dims, CpMap e);

  const BipartiteDims& dims() const { return dims_; }
  const CpMap& map() const { return e_; }

 private:
  BipartiteDims dims_;
  CpMap e_;
};

struct MarginalResult {
  CpMap T;
  double residual = 0.0;
};

struct SemicausalResult {
  bool holds = false;
  CpMap T;
  double residual = 0.0;
};

struct CausalityVerdict {
  bool semicausal_BtoA_blocked = false;
  bool semicausal_AtoB_blocked = false;
  bool causal = false;
  bool product_localizable = false;
  double residual_A = 0.0;
  double residual_B = 0.0;
  std::optional<CpMap> T;
  std::optional<CpMap> Tprime;
};

struct ProductFactors {
  CpMap G;  // on A
  CpMap F;  // on B, unital
};

struct LocalizabilityResult {
  bool localizable = false;
  std::optional<ProductFactors> factors;
  std::vector<double> schmidt_values;  // descending
};

/// T(a) := Tr_B[E(a ⊗ 1_B)]/dB on every matrix unit a, and the largest
/// ‖E(a ⊗ 1_B) − T(a) ⊗ 1_B‖_F over those units.
MarginalResult marginal_map_A(const BipartiteMap& m);

SemicausalResult is_semicausal(const BipartiteMap& m, double tol = kSemicausalTol);

/// x ↦ S E(S* x S) S* with S the swap H_A ⊗ H_B → H_B ⊗ H_A.
BipartiteMap swap_parties(const BipartiteMap& m);

CausalityVerdict is_causal(const BipartiteMap& m, double tol = kSemicausalTol);

/// Operator Schmidt decomposition of the Choi matrix across
/// (A_in A_out) | (B_in B_out).
LocalizabilityResult is_product_localizable(const BipartiteMap& m, double tol = kSemicausalTol);

}  // namespace semiloc
