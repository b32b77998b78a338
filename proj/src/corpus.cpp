#include "semiloc/corpus.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "semiloc/dilation.hpp"
#include "semiloc/factorize.hpp"

namespace semiloc {
namespace {

constexpr std::array<std::string_view, 6> kNames = {
    "identity", "swap", "measure_and_correct", "product_depolarizing", "cz_unitary",
    "selective_projective"};

double unit_interval(std::mt19937_64& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

Matrix pauli(char which) {
  Matrix m = Matrix::Zero(2, 2);
  switch (which) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("unknown Pauli");
  }
  return m;
}

CpMap dephasing_qubit() {
  return choi_from_kraus({2, 2, {matrix_unit(2, 0, 0), matrix_unit(2, 1, 1)}});
}

CpMap depolarizing_qubit() {
  KrausSet k{2, 2, {}};
  for (char p : {'I', 'X', 'Y', 'Z'}) k.operators.push_back(pauli(p) / 2.0);
  return choi_from_kraus(k);
}

}  // namespace

VerdictSkeleton skeleton_of(const CausalityVerdict& v) {
  return {v.semicausal_BtoA_blocked, v.semicausal_AtoB_blocked, v.causal, v.product_localizable};
}

std::span<const std::string_view> named_example_names() { return kNames; }

NamedExample named_example(std::string_view name) {
  const BipartiteDims qubits{2, 2};
  if (name == "identity") {
    return {"identity", {qubits, identity_map(4)}, {true, true, true, true}};
  }
  if (name == "swap") {
    return {"swap", {qubits, conjugation_map(swap_operator(2, 2))}, {false, false, false, false}};
  }
  if (name == "measure_and_correct") {
    // Alice's basis measurement, result sent to Bob who applies X on outcome 1.
    KrausSet k{4, 4, {kron(matrix_unit(2, 0, 0), pauli('I')), kron(matrix_unit(2, 1, 1), pauli('X'))}};
    return {"measure_and_correct", {qubits, choi_from_kraus(k)}, {true, false, false, false}};
  }
  if (name == "product_depolarizing") {
    return {"product_depolarizing",
            {qubits, tensor(dephasing_qubit(), depolarizing_qubit())},
            {true, true, true, true}};
  }
  if (name == "cz_unitary") {
    Matrix cz = identity(4);
    cz(3, 3) = -1.0;
    return {"cz_unitary", {qubits, conjugation_map(cz)}, {false, false, false, false}};
  }
  if (name == "selective_projective") {
    return {"selective_projective",
            {qubits, tensor(conjugation_map(matrix_unit(2, 0, 0)), identity_map(2))},
            {true, true, true, true}};
  }
  throw UnknownExample("unknown named example: " + std::string(name));
}

Matrix gaussian_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    for (Index c = 0; c < cols; ++c) {
      const double u1 = unit_interval(rng);
      const double u2 = unit_interval(rng);
      const double radius = std::sqrt(-2.0 * std::log(u1));
      const double angle = 2.0 * std::numbers::pi * u2;
      m(r, c) = Complex(radius * std::cos(angle), radius * std::sin(angle));
    }
  }
  return m;
}

Matrix random_isometry(Index rows, Index cols, std::mt19937_64& rng) {
  if (rows < cols || cols < 1) throw DimensionError("random_isometry needs rows >= cols >= 1");
  const Matrix g = gaussian_matrix(rows, cols, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  const Matrix& r = qr.matrixQR();
  for (Index c = 0; c < cols; ++c) {
    const Complex diag = r(c, c);
    if (std::abs(diag) > 0.0) q.col(c) *= diag / std::abs(diag);
  }
  return q;
}

CpMap random_channel(Index din, Index dout, Index kraus_rank, std::uint64_t seed) {
  if (din < 1 || dout < 1) throw DimensionError("random_channel: dimensions must be >= 1");
  if (kraus_rank < 1 || kraus_rank > din * dout) {
    throw DimensionError("random_channel: kraus_rank " + std::to_string(kraus_rank) +
                         " outside [1, " + std::to_string(din * dout) + "]");
  }
  if (dout * kraus_rank < din) {
    throw DimensionError("random_channel: kraus_rank too small for a unital map");
  }
  std::mt19937_64 rng(seed);
  const Matrix v = random_isometry(dout * kraus_rank, din, rng);
  return map_of(Dilation{din, dout, kraus_rank, v, false});
}

SemilocalFactors random_semilocal_factors(Index dA, Index dB, Index dC, std::uint64_t seed,
                                          bool selective) {
  if (dA < 1 || dB < 1 || dC < 1) throw DimensionError("random_semilocal_factors: dims must be >= 1");
  std::mt19937_64 rng(seed);
  const Index rank = dC * dB;
  const Matrix u = random_isometry(dB * rank, dC * dB, rng);
  CpMap f = map_of(Dilation{dC * dB, dB, rank, u, false});

  Matrix w;
  if (selective) {
    w = gaussian_matrix(dA * dC, dA, rng);
    const double norm = Eigen::JacobiSVD<Matrix>(w).singularValues()(0);
    w *= 0.9 / norm;
  } else {
    w = random_isometry(dA * dC, dA, rng);
  }
  return {conjugation_map(w), std::move(f)};
}

BipartiteMap random_semicausal(Index dA, Index dB, Index dC, std::uint64_t seed, bool selective) {
  auto [g, f] = random_semilocal_factors(dA, dB, dC, seed, selective);
  return reconstruct(g, f, {dA, dB}, dC);
}

}  // namespace semiloc
