// Dense complex linear algebra helpers shared by every module.
//
// Tensor index convention, used everywhere in this library: for a product
// space H_1 ⊗ H_2 ⊗ ... the left factor is the slow index, so the basis
// vector |x_1 x_2 ...⟩ sits at position ((x_1·d_2 + x_2)·d_3 + x_3)... in
// row-major order. This matches Eigen's kroneckerProduct ordering.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace semiloc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Default cutoff for numerical rank decisions, relative to the largest
/// eigen/singular value.
inline constexpr double kRankTol = 1e-10;

/// Raised when operand shapes do not fit together.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an iterative or factorization step produces a result that
/// fails its own postcondition.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Matrix identity(Index d);
Matrix kron(const Matrix& a, const Matrix& b);

/// E_ij = |i⟩⟨j| on a d-dimensional space.
Matrix matrix_unit(Index d, Index i, Index j);

/// All d² matrix units, ordered E_00, E_01, ..., E_{d-1,d-1}.
std::vector<Matrix> matrix_unit_basis(Index d);

enum class TraceOut { kFirst, kSecond };

/// Partial trace of an operator on H_1 ⊗ H_2 (dims d1, d2).
Matrix partial_trace(const Matrix& m, Index d1, Index d2, TraceOut which);

/// Permutation operator P with P|x_0 … x_{n-1}⟩ = |x_{perm[0]} … x_{perm[n-1]}⟩,
/// i.e. leg t of the result is leg perm[t] of the input. dims are the input
/// leg dimensions.
Matrix leg_permutation(std::span<const Index> dims, std::span<const Index> perm);

/// P·op·P* for the leg permutation above; op acts on the legs `dims`.
Matrix permute_legs(const Matrix& op, std::span<const Index> dims,
                    std::span<const Index> perm);

/// Swap operator on H_1 ⊗ H_2, mapping |x⟩|y⟩ to |y⟩|x⟩ in H_2 ⊗ H_1.
Matrix swap_operator(Index d1, Index d2);

double frobenius_distance(const Matrix& a, const Matrix& b);

/// Number of singular values above rel_tol·σ_max. Zero matrix has rank 0.
Index numerical_rank(const Matrix& m, double rel_tol = kRankTol);

/// Nearest isometry in Frobenius norm (unitary polar factor A·B* of A·Σ·B*).
Matrix nearest_isometry(const Matrix& m);

/// Hermitian part (m + m*)/2, or DimensionError / std::invalid_argument when
/// m is not square or its anti-Hermitian part exceeds tol·max(1, ‖m‖_F).
Matrix hermitize(const Matrix& m, double tol);

/// Eigenvalues of a Hermitian matrix in ascending order.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& m);

void require_square(const Matrix& m, Index d, const std::string& what);

}  // namespace semiloc
