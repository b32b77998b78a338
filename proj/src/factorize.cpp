#include "semiloc/factorize.hpp"

#include <string>

namespace semiloc {
namespace {

double min_choi_eigenvalue(const CpMap& e) { return hermitian_eigenvalues(e.choi())(0); }

Index intermediate_dim(const CpMap& G, const CpMap& F, BipartiteDims dims) {
  validate(dims);
  if (G.din() != dims.dA || G.dout() % dims.dA != 0) {
    throw DimensionError("G must map B(H_A ⊗ H_C) to B(H_A) with dA=" + std::to_string(dims.dA));
  }
  const Index dC = G.dout() / dims.dA;
  if (F.din() != dC * dims.dB || F.dout() != dims.dB) {
    throw DimensionError("F must map B(H_B) to B(H_C ⊗ H_B) with dC=" + std::to_string(dC) +
                         " dB=" + std::to_string(dims.dB));
  }
  return dC;
}

}  // namespace

NotSemicausal::NotSemicausal(double residual)
    : std::runtime_error("map is not semicausal: residual " + std::to_string(residual)),
      residual_(residual) {}

Decomposition semilocalize(const BipartiteMap& m, double tol) {
  const Index dA = m.dims().dA;
  const Index dB = m.dims().dB;

  auto marginal = is_semicausal(m, tol);
  if (!marginal.holds) throw NotSemicausal(marginal.residual);

  const Dilation t_dil = minimal_stinespring(marginal.T);
  const Dilation e_dil = minimal_stinespring(m.map());
  const Index dC = t_dil.k;
  const Index dD = e_dil.k;

  // Both realize a ↦ E(a ⊗ 1_B) = T(a) ⊗ 1_B on B(H_A) with input H_A ⊗ H_B:
  // the W side with dilation space H_C ⊗ H_B, the E side with H_B ⊗ H_D.
  Dilation w_side{dA * dB, dA, dC * dB, kron(t_dil.V, identity(dB)), false};
  w_side.minimal = is_minimal(w_side);
  if (!w_side.minimal) throw NumericalFailure("W ⊗ 1_B dilation failed the minimality span test");
  const Dilation v_side{dA * dB, dA, dB * dD, e_dil.V, false};

  Isometry u = connecting_isometry(w_side, v_side, tol);

  Decomposition d{dC,
                  dD,
                  t_dil.V,
                  u,
                  conjugation_map(t_dil.V),
                  map_of(Dilation{dC * dB, dB, dD, u.U, false}),
                  0.0,
                  isometry_defect(u.U),
                  0.0};
  d.compo_residual =
      frobenius_distance(kron(identity(dA), u.U) * kron(t_dil.V, identity(dB)), e_dil.V);
  d.reconstruction_residual =
      frobenius_distance(m.map().choi(), reconstruct(d.G, d.F, m.dims(), dC).map().choi());
  if (d.reconstruction_residual >= 10.0 * tol) {
    throw NumericalFailure("reconstruction residual " + std::to_string(d.reconstruction_residual) +
                           " exceeds 10·tol");
  }
  return d;
}

BipartiteMap reconstruct(const CpMap& G, const CpMap& F, BipartiteDims dims, Index dC) {
  if (intermediate_dim(G, F, dims) != dC) {
    throw DimensionError("G and F disagree with dC=" + std::to_string(dC));
  }
  const CpMap bob = tensor(identity_map(dims.dA), F);    // B(H_AB) → B(H_ACB)
  const CpMap alice = tensor(G, identity_map(dims.dB));  // B(H_ACB) → B(H_AB)
  // Heisenberg a ↦ alice(bob(a)): Bob's map acts first on observables.
  return {dims, compose(bob, alice)};
}

VerificationReport verify_decomposition(const BipartiteMap& m, const Decomposition& d, double tol) {
  VerificationReport r;
  r.choi_distance =
      frobenius_distance(m.map().choi(), reconstruct(d.G, d.F, m.dims(), d.dC).map().choi());
  r.f_unitality_defect = isometry_defect(d.U.U);
  r.g_cp_margin = min_choi_eigenvalue(d.G);
  r.dC = d.dC;
  r.dD = d.dD;
  r.passed = r.choi_distance < tol && r.f_unitality_defect < tol && r.g_cp_margin >= -tol;
  return r;
}

VerificationReport verify_factors(const BipartiteMap& m, const CpMap& G, const CpMap& F,
                                  double tol) {
  const Index dC = intermediate_dim(G, F, m.dims());
  VerificationReport r;
  r.choi_distance = frobenius_distance(m.map().choi(), reconstruct(G, F, m.dims(), dC).map().choi());
  r.f_unitality_defect =
      frobenius_distance(apply_heisenberg(F, identity(F.dout())), identity(F.din()));
  r.g_cp_margin = min_choi_eigenvalue(G);
  r.dC = dC;
  r.passed = r.choi_distance < tol && r.f_unitality_defect < tol && r.g_cp_margin >= -tol;
  return r;
}

}  // namespace semiloc
