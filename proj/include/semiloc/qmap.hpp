// Completely positive maps between finite-dimensional operator algebras.
//
// A map E: B(H_out) → B(H_in) is given in the Heisenberg picture and stored
// through the Choi matrix of its trace dual E_*: B(H_in) → B(H_out),
//
//   C(E) = Σ_ij |i⟩⟨j| ⊗ E_*(|i⟩⟨j|),      (din·dout) × (din·dout),
//
// input leg slow, output leg fast. E is CP iff C(E) ⪰ 0. A Kraus operator
// K_α is a dout×din matrix (H_in → H_out) and
//
//   E(a) = Σ_α K_α* a K_α,   E_*(ρ) = Σ_α K_α ρ K_α*.
//
// See docs/CONVENTIONS.md for the worked index formulas.

#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "semiloc/linalg.hpp"

namespace semiloc {

/// Dimensions of a bipartite space H_A ⊗ H_B.
struct BipartiteDims {
  Index dA = 1;
  Index dB = 1;

  Index total() const { return dA * dB; }
  bool operator==(const BipartiteDims&) const = default;
};

void validate(const BipartiteDims& dims);

/// Raised when a Choi matrix has an eigenvalue below the CP tolerance.
class NotCompletelyPositive : public std::domain_error {
 public:
  explicit NotCompletelyPositive(double min_eigenvalue);
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

struct KrausSet {
  Index din = 0;
  Index dout = 0;
  std::vector<Matrix> operators;  // each dout × din
};

/// Throws DimensionError on an empty set or mis-shaped operators.
void validate(const KrausSet& k);

class CpMap {
 public:
  /// Symmetrizes choi when its anti-Hermitian part is below tol, then checks
  /// min eigenvalue ≥ −tol·max(1, λ_max). Throws NotCompletelyPositive or
  /// std::invalid_argument.
  static CpMap from_choi(Index din, Index dout, const Matrix& choi, double tol = kRankTol);

  Index din() const { return din_; }
  Index dout() const { return dout_; }
  const Matrix& choi() const { return choi_; }

 private:
  friend CpMap choi_from_kraus(const KrausSet&);
  friend CpMap dual(const CpMap&);
  friend CpMap compose(const CpMap&, const CpMap&);
  friend CpMap tensor(const CpMap&, const CpMap&);

  CpMap(Index din, Index dout, Matrix choi) : din_(din), dout_(dout), choi_(std::move(choi)) {}

  Index din_;
  Index dout_;
  Matrix choi_;
};

CpMap choi_from_kraus(const KrausSet& k);

/// Kraus operators from the eigendecomposition of the Choi matrix, keeping
/// eigenvalues above tol·λ_max, largest first.
KrausSet kraus_from_choi(const CpMap& e, double tol = kRankTol);

/// E(a) for a dout×dout observable a; result is din×din.
Matrix apply_heisenberg(const CpMap& e, const Matrix& a);

/// E_*(ρ) for a din×din density matrix ρ; result is dout×dout.
Matrix apply_schrodinger(const CpMap& e, const Matrix& rho);

/// The trace dual: its Heisenberg action is E_*. din and dout swap.
CpMap dual(const CpMap& e);

bool is_cp(const Matrix& choi, double tol = kRankTol);
bool is_cp(const CpMap& e, double tol = kRankTol);
bool is_subunital(const CpMap& e, double tol = kRankTol);
bool is_unital(const CpMap& e, double tol = kRankTol);

/// compose(e2, e1): e1 acts first in the Schrödinger picture, so the
/// Heisenberg action is a ↦ e1(e2(a)). Requires e1.dout == e2.din.
CpMap compose(const CpMap& e2, const CpMap& e1);

/// e1 ⊗ e2 on H_in1 ⊗ H_in2 → H_out1 ⊗ H_out2.
CpMap tensor(const CpMap& e1, const CpMap& e2);

CpMap identity_map(Index d);

/// x ↦ K* x K, a single-Kraus map.
CpMap conjugation_map(const Matrix& k);

/// Choi matrix of an arbitrary linear Heisenberg-picture map, sampled on
/// matrix units. The result is not checked for positivity.
Matrix choi_from_heisenberg(Index din, Index dout,
                            const std::function<Matrix(const Matrix&)>& heisenberg);

}  // namespace semiloc
