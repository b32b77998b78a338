// Stinespring dilations E(a) = V*(a ⊗ 1_K)V and the connecting isometry
// between two dilations of the same map.
//
// V is (dout·k) × din with output legs ordered (H_out, K). In a Kraus
// basis ε_α of K, V ψ = Σ_α (K_α ψ) ⊗ ε_α, so V[(p, α), i] = K_α(p, i).

#pragma once

#include <stdexcept>

#include "semiloc/qmap.hpp"

namespace semiloc {

struct Dilation {
  Index din = 0;
  Index dout = 0;
  Index k = 0;
  Matrix V;  // (dout·k) × din
  bool minimal = false;
};

struct Isometry {
  Index dsrc = 0;
  Index ddst = 0;
  Matrix U;  // ddst × dsrc
};

class NotMinimal : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The two dilations passed to connecting_isometry realize different maps.
class DilationMismatch : public std::invalid_argument {
 public:
  DilationMismatch(double choi_distance, double limit);
  double choi_distance() const { return choi_distance_; }

 private:
  double choi_distance_;
};

/// Raised by extract_tensor_factor when Ũ does not commute with B(H) ⊗ 1.
class IntertwiningError : public std::runtime_error {
 public:
  explicit IntertwiningError(double residual);
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Minimal dilation assembled from the Kraus operators of the rank-revealing
/// Choi eigendecomposition (eigenvalues descending). k = numerical rank.
Dilation minimal_stinespring(const CpMap& e, double rank_tol = kRankTol);

/// V = Σ_α K_α ⊗ ε_α with ε_α the standard basis; minimal flag is computed.
Dilation dilation_from_kraus(const KrausSet& k, double tol = kRankTol);

/// Span test: {(a ⊗ 1_K) V φ} spans H_out ⊗ K.
bool is_minimal(const Dilation& d, double tol = kRankTol);

/// V*(a ⊗ 1_K)V.
Matrix apply_dilation(const Dilation& d, const Matrix& a);

KrausSet kraus_of(const Dilation& d);
CpMap map_of(const Dilation& d);

/// Isometry U: K → K₁ with (1 ⊗ U)·minimal.V = other.V.
///
/// Solves Ũ·X = Y in the least-squares sense, where the columns of X and Y
/// are (E_ij ⊗ 1)V e_m for the two dilations, then factors Ũ = 1 ⊗ U and
/// snaps U to the nearest isometry. Throws NotMinimal, DilationMismatch,
/// IntertwiningError or NumericalFailure.
Isometry connecting_isometry(const Dilation& minimal, const Dilation& other, double tol = 1e-8);

/// U = (1/d)·Σ_m (⟨m| ⊗ 1) Ũ (|m⟩ ⊗ 1) for Ũ of shape (d·k₁) × (d·k).
Isometry extract_tensor_factor(const Matrix& utilde, Index dcommon, double tol = 1e-8);

/// max over matrix units a of ‖Ũ(a ⊗ 1_k) − (a ⊗ 1_k₁)Ũ‖_F.
double intertwining_residual(const Matrix& utilde, Index dcommon);

double isometry_defect(const Matrix& u);

}  // namespace semiloc
