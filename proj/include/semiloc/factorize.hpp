// Factorization of a semicausal operation into one-way communication form
//
//   E = (G ⊗ id_B) ∘ (id_A ⊗ F),
//
// F: B(H_B) → B(H_C ⊗ H_B) unital, G: B(H_A ⊗ H_C) → B(H_A) CP. Leg orders:
// W maps H_A → H_A ⊗ H_C; U maps H_C ⊗ H_B → H_B ⊗ H_D; the Stinespring
// operator of E maps H_A ⊗ H_B → H_A ⊗ H_B ⊗ H_D, and
//
//   V = (1_A ⊗ U)(W ⊗ 1_B).

#pragma once

#include <stdexcept>

#include "semiloc/causality.hpp"
#include "semiloc/dilation.hpp"

namespace semiloc {

/// The input map signals from B to A, so no decomposition exists.
class NotSemicausal : public std::runtime_error {
 public:
  explicit NotSemicausal(double residual);
  double residual() const { return residual_; }

 private:
  double residual_;
};

struct Decomposition {
  Index dC = 0;
  Index dD = 0;
  Matrix W;    // (dA·dC) × dA
  Isometry U;  // H_C ⊗ H_B → H_B ⊗ H_D
  CpMap G;     // din = dA, dout = dA·dC
  CpMap F;     // din = dC·dB, dout = dB
  double reconstruction_residual = 0.0;
  double F_unitality = 0.0;  // ‖U*U − 1‖_F
  double compo_residual = 0.0;  // ‖(1_A ⊗ U)(W ⊗ 1_B) − V‖_F
};

struct VerificationReport {
  double choi_distance = 0.0;
  double f_unitality_defect = 0.0;
  double g_cp_margin = 0.0;  // min eigenvalue of Choi(G)
  Index dC = 0;
  Index dD = 0;
  bool passed = false;
};

Decomposition semilocalize(const BipartiteMap& m, double tol = kSemicausalTol);

/// (G ⊗ id_B) ∘ (id_A ⊗ F) with H_C between the two factors.
BipartiteMap reconstruct(const CpMap& G, const CpMap& F, BipartiteDims dims, Index dC);

VerificationReport verify_decomposition(const BipartiteMap& m, const Decomposition& d,
                                        double tol = kSemicausalTol);

/// Same checks from the factor maps alone; the unitality defect is
/// ‖F(1) − 1‖_F and dD is reported as 0 (no isometry available).
VerificationReport verify_factors(const BipartiteMap& m, const CpMap& G, const CpMap& F,
                                  double tol = kSemicausalTol);

}  // namespace semiloc
