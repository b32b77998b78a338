#include "semiloc/causality.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace semiloc {

BipartiteMap::BipartiteMap(BipartiteDims dims, CpMap e) : dims_(dims), e_(std::move(e)) {
  validate(dims_);
  if (e_.din() != dims_.total() || e_.dout() != dims_.total()) {
    throw DimensionError("bipartite map must act on dimension " + std::to_string(dims_.total()) +
                         ", got " + std::to_string(e_.din()) + " -> " + std::to_string(e_.dout()));
  }
}

MarginalResult marginal_map_A(const BipartiteMap& m) {
  const Index dA = m.dims().dA;
  const Index dB = m.dims().dB;
  const Matrix one_b = identity(dB);
  double residual = 0.0;
  const Matrix choi = choi_from_heisenberg(dA, dA, [&](const Matrix& a) {
    const Matrix img = apply_heisenberg(m.map(), kron(a, one_b));
    Matrix t = partial_trace(img, dA, dB, TraceOut::kSecond) / static_cast<double>(dB);
    residual = std::max(residual, frobenius_distance(img, kron(t, one_b)));
    return t;
  });
  return {CpMap::from_choi(dA, dA, choi), residual};
}

SemicausalResult is_semicausal(const BipartiteMap& m, double tol) {
  auto [t, residual] = marginal_map_A(m);
  return {residual < tol, std::move(t), residual};
}

BipartiteMap swap_parties(const BipartiteMap& m) {
  const Index dA = m.dims().dA;
  const Index dB = m.dims().dB;
  const Index dims[] = {dA, dB, dA, dB};
  const Index perm[] = {1, 0, 3, 2};
  const Matrix c = permute_legs(m.map().choi(), dims, perm);
  return {{dB, dA}, CpMap::from_choi(dB * dA, dB * dA, c)};
}

CausalityVerdict is_causal(const BipartiteMap& m, double tol) {
  CausalityVerdict v;
  auto forward = is_semicausal(m, tol);
  auto mirrored = is_semicausal(swap_parties(m), tol);
  v.semicausal_BtoA_blocked = forward.holds;
  v.semicausal_AtoB_blocked = mirrored.holds;
  v.causal = forward.holds && mirrored.holds;
  v.residual_A = forward.residual;
  v.residual_B = mirrored.residual;
  if (forward.holds) v.T = std::move(forward.T);
  if (mirrored.holds) v.Tprime = std::move(mirrored.T);
  v.product_localizable = is_product_localizable(m, tol).localizable;
  return v;
}

LocalizabilityResult is_product_localizable(const BipartiteMap& m, double tol) {
  const Index dA = m.dims().dA;
  const Index dB = m.dims().dB;
  const Index dG = dA * dA;
  const Index dF = dB * dB;

  // Choi legs (A_in, B_in, A_out, B_out) → (A_in, A_out, B_in, B_out).
  const Index dims[] = {dA, dB, dA, dB};
  const Index perm[] = {0, 2, 1, 3};
  const Matrix c = permute_legs(m.map().choi(), dims, perm);

  // Realignment: G ⊗ F becomes vec(C_G)·vec(C_F)ᵀ.
  Matrix r(dG * dG, dF * dF);
  for (Index r1 = 0; r1 < dG; ++r1)
    for (Index c1 = 0; c1 < dG; ++c1)
      for (Index r2 = 0; r2 < dF; ++r2)
        for (Index c2 = 0; c2 < dF; ++c2) r(r1 * dG + c1, r2 * dF + c2) = c(r1 * dF + r2, c1 * dF + c2);

  Eigen::JacobiSVD<Matrix> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  LocalizabilityResult out;
  out.schmidt_values.assign(s.data(), s.data() + s.size());
  if (s.size() == 0 || s(0) == 0.0) return out;
  const auto rank = std::count_if(out.schmidt_values.begin(), out.schmidt_values.end(),
                                  [&](double x) { return x > tol * s(0); });
  if (rank != 1) return out;

  Matrix mg(dG, dG);
  Matrix mf(dF, dF);
  for (Index a = 0; a < dG; ++a)
    for (Index b = 0; b < dG; ++b) mg(a, b) = svd.matrixU()(a * dG + b, 0);
  for (Index a = 0; a < dF; ++a)
    for (Index b = 0; b < dF; ++b) mf(a, b) = std::conj(svd.matrixV()(a * dF + b, 0));

  // Fix the free phase so that tr(M_G) > 0; M_F follows.
  const Complex tr_g = mg.trace();
  if (std::abs(tr_g) == 0.0) return out;
  const Complex phase = tr_g / std::abs(tr_g);
  mg /= phase;
  mf *= phase;

  // F̃(1)ᵀ = Tr_out C_F; F must be unital after rescaling by a positive c.
  const Matrix f_one = partial_trace(mf, dB, dB, TraceOut::kSecond).transpose();
  const Complex scale = f_one.trace() / static_cast<double>(dB);
  if (scale.real() <= 0.0 || std::abs(scale.imag()) > tol * std::abs(scale)) return out;
  const double cscale = scale.real();
  if (frobenius_distance(f_one, cscale * identity(dB)) > tol * f_one.norm()) return out;

  try {
    CpMap g = CpMap::from_choi(dA, dA, mg * (s(0) * cscale), tol);
    CpMap f = CpMap::from_choi(dB, dB, mf / cscale, tol);
    out.factors = ProductFactors{std::move(g), std::move(f)};
    out.localizable = true;
  } catch (const std::logic_error&) {
    // Rank one, but the factors are not both CP.
  }
  return out;
}

}  // namespace semiloc
