#include "semiloc/causality.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "semiloc/corpus.hpp"
#include "test_support.hpp"

namespace semiloc {
namespace {

using namespace semiloc::testing;

// Tr_B computed entry by entry, no library partial trace.
Matrix trace_out_b(const Matrix& x, Index dA, Index dB) {
  Matrix out = Matrix::Zero(dA, dA);
  for (Index i = 0; i < dA; ++i)
    for (Index j = 0; j < dA; ++j)
      for (Index p = 0; p < dB; ++p) out(i, j) += x(i * dB + p, j * dB + p);
  return out;
}

// max_a ‖E(a ⊗ 1) − Tr_B[E(a ⊗ 1)]/dB ⊗ 1‖_F over the given test operators,
// with E evaluated as a Kraus sum.
double residual_oracle(const std::vector<Matrix>& ks, Index dA, Index dB,
                       const std::vector<Matrix>& tests) {
  double worst = 0.0;
  for (const Matrix& a : tests) {
    const Matrix x = kraus_heisenberg(ks, kron(a, identity(dB)));
    const Matrix t = trace_out_b(x, dA, dB) / static_cast<double>(dB);
    worst = std::max(worst, (x - kron(t, identity(dB))).norm());
  }
  return worst;
}

BipartiteMap from_kraus(Index dA, Index dB, std::vector<Matrix> ks) {
  const Index d = dA * dB;
  return BipartiteMap({dA, dB}, choi_from_kraus({d, d, std::move(ks)}));
}

std::vector<Matrix> measure_and_correct_kraus() {
  return {kron(matrix_unit(2, 0, 0), identity(2)), kron(matrix_unit(2, 1, 1), pauli_x())};
}

CpMap dephasing() { return choi_from_kraus({2, 2, {matrix_unit(2, 0, 0), matrix_unit(2, 1, 1)}}); }

// ---- marginal_map_A / is_semicausal ---------------------------------------

TEST(MarginalMap, IdentityHasIdentityMarginal) {
  const BipartiteMap m({2, 3}, identity_map(6));
  const MarginalResult r = marginal_map_A(m);
  EXPECT_LT(frobenius_distance(r.T.choi(), identity_map(2).choi()), 1e-14);
  EXPECT_EQ(r.residual, 0.0);
}

TEST(MarginalMap, SwapResidualIsSqrtTwo) {
  const BipartiteMap m = from_kraus(2, 2, {swap_operator(2, 2)});
  const MarginalResult r = marginal_map_A(m);
  EXPECT_NEAR(r.residual, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(residual_oracle({swap_operator(2, 2)}, 2, 2, matrix_unit_basis(2)), std::sqrt(2.0), 1e-12);
  // T(|0⟩⟨1|) = 0.
  EXPECT_LT(apply_heisenberg(r.T, matrix_unit(2, 0, 1)).norm(), 1e-14);
  const SemicausalResult s = is_semicausal(m);
  EXPECT_FALSE(s.holds);
  EXPECT_NEAR(s.residual, std::sqrt(2.0), 1e-12);
}

TEST(MarginalMap, MeasureAndCorrectMarginalIsDephasing) {
  const BipartiteMap m = from_kraus(2, 2, measure_and_correct_kraus());
  const MarginalResult r = marginal_map_A(m);
  EXPECT_LT(r.residual, 1e-12);
  EXPECT_LT(frobenius_distance(r.T.choi(), dephasing().choi()), 1e-12);
}

TEST(MarginalMap, ResidualMatchesKrausOracle) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const Index dA = 2 + static_cast<Index>(rng() % 2);
    const Index dB = 2 + static_cast<Index>(rng() % 2);
    const CpMap e = random_channel(dA * dB, dA * dB, 2, rng());
    const BipartiteMap m({dA, dB}, e);
    const double oracle = residual_oracle(kraus_from_choi(e).operators, dA, dB, matrix_unit_basis(dA));
    EXPECT_NEAR(marginal_map_A(m).residual, oracle, 1e-10);
  }
}

TEST(IsSemicausal, ProductWithUnitalSecondFactor) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const CpMap g = random_channel(2, 2, 2, rng());
    const CpMap f = random_channel(3, 3, 3, rng());
    const BipartiteMap m({2, 3}, tensor(g, f));
    const SemicausalResult s = is_semicausal(m);
    EXPECT_TRUE(s.holds);
    EXPECT_LT(s.residual, 1e-12);
    EXPECT_LT(frobenius_distance(s.T.choi(), g.choi()), 1e-12);
  }
}

TEST(IsSemicausal, RandomSemicausalPasses) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const Index dA = 2 + static_cast<Index>(rng() % 2);
    const Index dB = 2 + static_cast<Index>(rng() % 2);
    const Index dC = 1 + static_cast<Index>(rng() % 2);
    const SemicausalResult s = is_semicausal(random_semicausal(dA, dB, dC, rng(), trial % 4 == 0));
    EXPECT_TRUE(s.holds);
    EXPECT_LT(s.residual, 1e-10);
  }
}

TEST(IsSemicausal, MarginalIsCompletelyPositive) {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 50; ++trial) {
    const SemicausalResult s = is_semicausal(random_semicausal(3, 2, 2, rng(), trial % 2 == 0));
    ASSERT_TRUE(s.holds);
    EXPECT_GT(hermitian_eigenvalues(s.T.choi())(0), -1e-10);
  }
}

TEST(IsSemicausal, UnitalMapHasUnitalMarginal) {
  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 50; ++trial) {
    const Index dA = 2 + static_cast<Index>(rng() % 2);
    const SemicausalResult s = is_semicausal(random_semicausal(dA, 2, 2, rng(), false));
    ASSERT_TRUE(s.holds);
    EXPECT_LT(frobenius_distance(apply_heisenberg(s.T, identity(dA)), identity(dA)), 1e-10);
  }
}

// Rotating the matrix-unit basis keeps zero residuals at zero and moves
// nonzero ones by at most a factor dA.
TEST(IsSemicausal, ResidualIsBasisRobust) {
  std::mt19937_64 rng(46);
  for (int trial = 0; trial < 40; ++trial) {
    const Index dA = 2 + static_cast<Index>(rng() % 2);
    const Index dB = 2;
    const BipartiteMap m = trial % 2 == 0 ? random_semicausal(dA, dB, 2, rng(), false)
                                          : BipartiteMap({dA, dB}, random_channel(dA * dB, dA * dB, 3, rng()));
    const MarginalResult r = marginal_map_A(m);
    const Matrix u = random_unitary(dA, rng);
    std::vector<Matrix> rotated;
    for (const auto& unit : matrix_unit_basis(dA)) rotated.push_back(u * unit * u.adjoint());
    double rotated_residual = 0.0;
    for (const Matrix& a : rotated) {
      const Matrix x = apply_heisenberg(m.map(), kron(a, identity(dB)));
      const Matrix t = apply_heisenberg(r.T, a);
      rotated_residual = std::max(rotated_residual, (x - kron(t, identity(dB))).norm());
    }
    EXPECT_EQ(r.residual < kSemicausalTol, rotated_residual < kSemicausalTol);
    if (r.residual > kSemicausalTol) {
      const double ratio = rotated_residual / r.residual;
      EXPECT_GE(ratio, 1.0 / static_cast<double>(dA) - 1e-12);
      EXPECT_LE(ratio, static_cast<double>(dA) + 1e-12);
    } else {
      EXPECT_LT(std::abs(rotated_residual - r.residual), 1e-10);
    }
  }
}

// ---- swap_parties / is_causal ---------------------------------------------

TEST(SwapParties, ConjugatesBySwap) {
  std::mt19937_64 rng(47);
  const CpMap e = random_channel(6, 6, 2, 9);
  const BipartiteMap swapped = swap_parties(BipartiteMap({2, 3}, e));
  EXPECT_EQ(swapped.dims(), (BipartiteDims{3, 2}));
  const Matrix s = swap_operator(2, 3);  // H_A ⊗ H_B → H_B ⊗ H_A
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix x = random_matrix(6, 6, rng);
    const Matrix expected = s * apply_heisenberg(e, s.adjoint() * x * s) * s.adjoint();
    EXPECT_LT(frobenius_distance(apply_heisenberg(swapped.map(), x), expected), 1e-12);
  }
}

TEST(IsCausal, MeasureAndCorrectSignalsAToB) {
  const BipartiteMap m = from_kraus(2, 2, measure_and_correct_kraus());
  const CausalityVerdict v = is_causal(m);
  EXPECT_TRUE(v.semicausal_BtoA_blocked);
  EXPECT_FALSE(v.semicausal_AtoB_blocked);
  EXPECT_FALSE(v.causal);
  EXPECT_LT(v.residual_A, 1e-12);
  // Mirror oracle: E(1 ⊗ b) against its A-average, on Bob's matrix units.
  const std::vector<Matrix> ks = measure_and_correct_kraus();
  double mirror = 0.0;
  for (const auto& b : matrix_unit_basis(2)) {
    const Matrix x = kraus_heisenberg(ks, kron(identity(2), b));
    Matrix tb = Matrix::Zero(2, 2);
    for (Index i = 0; i < 2; ++i) tb += x.block(i * 2, i * 2, 2, 2);
    mirror = std::max(mirror, (x - kron(identity(2), tb / 2.0)).norm());
  }
  EXPECT_NEAR(v.residual_B, mirror, 1e-12);
  EXPECT_NEAR(v.residual_B, 1.0, 1e-12);
}

TEST(IsCausal, SwapFailsBothWays) {
  const CausalityVerdict v = is_causal(from_kraus(2, 2, {swap_operator(2, 2)}));
  EXPECT_FALSE(v.causal);
  EXPECT_NEAR(v.residual_A, std::sqrt(2.0), 1e-10);
  EXPECT_NEAR(v.residual_B, std::sqrt(2.0), 1e-10);
}

TEST(IsCausal, UnitalProductIsCausal) {
  const CpMap g = random_channel(2, 2, 3, 11);
  const CpMap f = random_channel(3, 3, 2, 12);
  const CausalityVerdict v = is_causal(BipartiteMap({2, 3}, tensor(g, f)));
  EXPECT_TRUE(v.causal);
  EXPECT_TRUE(v.product_localizable);
  ASSERT_TRUE(v.T && v.Tprime);
  EXPECT_LT(frobenius_distance(v.T->choi(), g.choi()), 1e-12);
  EXPECT_LT(frobenius_distance(v.Tprime->choi(), f.choi()), 1e-12);
}

TEST(IsCausal, VerdictInvariants) {
  std::mt19937_64 rng(48);
  for (int trial = 0; trial < 30; ++trial) {
    const BipartiteMap m({2, 2}, random_channel(4, 4, 1 + static_cast<Index>(rng() % 3), rng()));
    const CausalityVerdict v = is_causal(m);
    EXPECT_EQ(v.causal, v.semicausal_BtoA_blocked && v.semicausal_AtoB_blocked);
    EXPECT_GE(v.residual_A, 0.0);
    EXPECT_GE(v.residual_B, 0.0);
  }
}

// ---- is_product_localizable -----------------------------------------------

TEST(ProductLocalizable, IdentityHasSchmidtRankOne) {
  const LocalizabilityResult r = is_product_localizable(BipartiteMap({2, 2}, identity_map(4)));
  EXPECT_TRUE(r.localizable);
  ASSERT_EQ(r.schmidt_values.size(), 16u);
  EXPECT_GT(r.schmidt_values[0], 1.0);
  for (std::size_t i = 1; i < r.schmidt_values.size(); ++i) EXPECT_LT(r.schmidt_values[i], 1e-12);
}

// The swap unitary has operator Schmidt rank 4; its Choi matrix |S⟩⟩⟨⟨S| then
// realigns to rank 4² = 16.
TEST(ProductLocalizable, SwapIsFarFromProduct) {
  const LocalizabilityResult r = is_product_localizable(from_kraus(2, 2, {swap_operator(2, 2)}));
  EXPECT_FALSE(r.localizable);
  const auto rank = std::count_if(r.schmidt_values.begin(), r.schmidt_values.end(),
                                  [&](double s) { return s > 1e-10 * r.schmidt_values[0]; });
  EXPECT_EQ(rank, 16);
  // S = Σ E_ij ⊗ E_ji, realigned to (A_out A_in) | (B_out B_in).
  const Matrix s = swap_operator(2, 2);
  Matrix realigned(4, 4);
  for (Index ao = 0; ao < 2; ++ao)
    for (Index ai = 0; ai < 2; ++ai)
      for (Index bo = 0; bo < 2; ++bo)
        for (Index bi = 0; bi < 2; ++bi) realigned(ao * 2 + ai, bo * 2 + bi) = s(ao * 2 + bo, ai * 2 + bi);
  EXPECT_EQ(numerical_rank(realigned), 4);
}

TEST(ProductLocalizable, MeasureAndCorrectHasSchmidtRankTwo) {
  const LocalizabilityResult r = is_product_localizable(from_kraus(2, 2, measure_and_correct_kraus()));
  EXPECT_FALSE(r.localizable);
  const auto rank = std::count_if(r.schmidt_values.begin(), r.schmidt_values.end(),
                                  [&](double s) { return s > 1e-10 * r.schmidt_values[0]; });
  EXPECT_EQ(rank, 2);
}

TEST(ProductLocalizable, FactorsReconstructAndFIsUnital) {
  std::mt19937_64 rng(49);
  for (int trial = 0; trial < 20; ++trial) {
    const CpMap g = random_channel(2, 2, 2, rng());
    const CpMap f = random_channel(3, 3, 3, rng());
    // Scale G down so the split has to put the whole scale on Alice's side.
    const CpMap g_sub = CpMap::from_choi(2, 2, 0.5 * g.choi());
    const LocalizabilityResult r = is_product_localizable(BipartiteMap({2, 3}, tensor(g_sub, f)));
    ASSERT_TRUE(r.localizable);
    ASSERT_TRUE(r.factors.has_value());
    EXPECT_LT(frobenius_distance(tensor(r.factors->G, r.factors->F).choi(), tensor(g_sub, f).choi()), 1e-10);
    EXPECT_LT(frobenius_distance(apply_heisenberg(r.factors->F, identity(3)), identity(3)), 1e-10);
    EXPECT_LT(frobenius_distance(r.factors->G.choi(), g_sub.choi()), 1e-10);
  }
}

TEST(ProductLocalizable, NonUnitalSecondFactorIsRejected) {
  // E = id_A ⊗ (b ↦ P b P): rank one, but no split makes F unital.
  const CpMap f = conjugation_map(matrix_unit(2, 0, 0));
  const LocalizabilityResult r = is_product_localizable(BipartiteMap({2, 2}, tensor(identity_map(2), f)));
  EXPECT_FALSE(r.localizable);
}

// ---- diagram (1) -----------------------------------------------------------

TEST(Diagram, ImplicationsHoldOnChannels) {
  std::mt19937_64 rng(50);
  std::vector<BipartiteMap> maps;
  for (int trial = 0; trial < 100; ++trial) {
    maps.push_back(random_semicausal(2 + static_cast<Index>(rng() % 2), 2 + static_cast<Index>(rng() % 2),
                                     1 + static_cast<Index>(rng() % 2), rng(), false));
  }
  for (int trial = 0; trial < 20; ++trial) maps.emplace_back(BipartiteDims{2, 2}, random_channel(4, 4, 2, rng()));
  for (int trial = 0; trial < 20; ++trial) {
    maps.emplace_back(BipartiteDims{2, 3}, tensor(random_channel(2, 2, 2, rng()), random_channel(3, 3, 2, rng())));
  }
  for (const auto name : named_example_names()) {
    if (name != "selective_projective") maps.push_back(named_example(name).map);
  }
  int localizable = 0;
  for (const BipartiteMap& m : maps) {
    const CausalityVerdict v = is_causal(m);
    if (v.product_localizable) {
      ++localizable;
      EXPECT_TRUE(v.causal);
    }
    if (v.causal) EXPECT_TRUE(v.semicausal_BtoA_blocked && v.semicausal_AtoB_blocked);
  }
  EXPECT_GE(localizable, 20);
}

// A selective product P·P ⊗ id is localizable (G need not be unital) but
// E(1 ⊗ b) = P ⊗ b, so the A→B test fails. Pinned so a change in either
// definition shows up here.
TEST(Diagram, SelectiveProductIsLocalizableButNotCausal) {
  const BipartiteMap m({2, 2}, tensor(conjugation_map(matrix_unit(2, 0, 0)), identity_map(2)));
  const CausalityVerdict v = is_causal(m);
  EXPECT_TRUE(v.semicausal_BtoA_blocked);
  EXPECT_FALSE(v.semicausal_AtoB_blocked);
  EXPECT_NEAR(v.residual_B, 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_TRUE(v.product_localizable);
}

}  // namespace
}  // namespace semiloc
