#include "semiloc/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace semiloc {
namespace {

// Columns (E_ij ⊗ 1_K)V e_m for all matrix units and input basis vectors.
Matrix spanning_vectors(const Dilation& d) {
  const Index dim = d.dout * d.k;
  Matrix x = Matrix::Zero(dim, d.dout * d.dout * d.din);
  Index col = 0;
  for (Index i = 0; i < d.dout; ++i) {
    for (Index j = 0; j < d.dout; ++j) {
      for (Index m = 0; m < d.din; ++m, ++col) {
        // (E_ij ⊗ 1) moves the j-th output block of V e_m to block i.
        x.block(i * d.k, col, d.k, 1) = d.V.block(j * d.k, m, d.k, 1);
      }
    }
  }
  return x;
}

void check_shape(const Dilation& d) {
  if (d.din < 1 || d.dout < 1 || d.k < 1 || d.V.rows() != d.dout * d.k || d.V.cols() != d.din) {
    throw DimensionError("dilation V has shape " + std::to_string(d.V.rows()) + "x" +
                         std::to_string(d.V.cols()) + ", inconsistent with din/dout/k");
  }
}

}  // namespace

DilationMismatch::DilationMismatch(double choi_distance, double limit)
    : std::invalid_argument("dilations realize different maps: Choi distance " +
                            std::to_string(choi_distance) + " exceeds " + std::to_string(limit)),
      choi_distance_(choi_distance) {}

IntertwiningError::IntertwiningError(double residual)
    : std::runtime_error("operator does not intertwine a ⊗ 1: residual " + std::to_string(residual)),
      residual_(residual) {}

Dilation dilation_from_kraus(const KrausSet& k, double tol) {
  validate(k);
  const auto rank = static_cast<Index>(k.operators.size());
  Dilation d{k.din, k.dout, rank, Matrix::Zero(k.dout * rank, k.din), false};
  for (Index alpha = 0; alpha < rank; ++alpha) {
    const Matrix& op = k.operators[static_cast<std::size_t>(alpha)];
    for (Index p = 0; p < k.dout; ++p) d.V.row(p * rank + alpha) = op.row(p);
  }
  d.minimal = is_minimal(d, tol);
  return d;
}

Dilation minimal_stinespring(const CpMap& e, double rank_tol) {
  // Eigenvector Kraus operators are linearly independent, so the flag comes
  // out true for every nonzero map. The zero map keeps one zero operator.
  return dilation_from_kraus(kraus_from_choi(e, rank_tol), rank_tol);
}

bool is_minimal(const Dilation& d, double tol) {
  check_shape(d);
  // span{(a ⊗ 1)Vφ} = H_out ⊗ span{(⟨j| ⊗ 1)V e_m}, so the span test reduces
  // to the rank of the k × (dout·din) matrix of K-components.
  Matrix comps(d.k, d.dout * d.din);
  for (Index j = 0; j < d.dout; ++j) comps.middleCols(j * d.din, d.din) = d.V.middleRows(j * d.k, d.k);
  return numerical_rank(comps, tol) == d.k;
}

Matrix apply_dilation(const Dilation& d, const Matrix& a) {
  check_shape(d);
  require_square(a, d.dout, "apply_dilation observable");
  return d.V.adjoint() * kron(a, identity(d.k)) * d.V;
}

KrausSet kraus_of(const Dilation& d) {
  check_shape(d);
  KrausSet out{d.din, d.dout, {}};
  for (Index alpha = 0; alpha < d.k; ++alpha) {
    Matrix op(d.dout, d.din);
    for (Index p = 0; p < d.dout; ++p) op.row(p) = d.V.row(p * d.k + alpha);
    out.operators.push_back(std::move(op));
  }
  return out;
}

CpMap map_of(const Dilation& d) { return choi_from_kraus(kraus_of(d)); }

double intertwining_residual(const Matrix& utilde, Index dcommon) {
  if (dcommon < 1 || utilde.rows() % dcommon != 0 || utilde.cols() % dcommon != 0) {
    throw DimensionError("intertwining_residual: shape not divisible by common dimension");
  }
  const Index k1 = utilde.rows() / dcommon;
  const Index k = utilde.cols() / dcommon;
  double worst = 0.0;
  for (const auto& a : matrix_unit_basis(dcommon)) {
    const Matrix lhs = utilde * kron(a, identity(k));
    const Matrix rhs = kron(a, identity(k1)) * utilde;
    worst = std::max(worst, (lhs - rhs).norm());
  }
  return worst;
}

double isometry_defect(const Matrix& u) {
  return (u.adjoint() * u - identity(u.cols())).norm();
}

Isometry extract_tensor_factor(const Matrix& utilde, Index dcommon, double tol) {
  const double residual = intertwining_residual(utilde, dcommon);
  if (residual > tol) throw IntertwiningError(residual);
  const Index k1 = utilde.rows() / dcommon;
  const Index k = utilde.cols() / dcommon;

  Matrix u = Matrix::Zero(k1, k);
  for (Index m = 0; m < dcommon; ++m) u += utilde.block(m * k1, m * k, k1, k);
  u /= static_cast<double>(dcommon);

  const double recon = frobenius_distance(utilde, kron(identity(dcommon), u));
  if (recon > tol) {
    throw NumericalFailure("tensor factor reconstruction error " + std::to_string(recon));
  }
  const double defect = isometry_defect(u);
  if (k > k1 || defect > tol) {
    throw NumericalFailure("extracted tensor factor is not an isometry (defect " +
                           std::to_string(defect) + ")");
  }
  return {k, k1, std::move(u)};
}

Isometry connecting_isometry(const Dilation& minimal, const Dilation& other, double tol) {
  check_shape(minimal);
  check_shape(other);
  if (minimal.din != other.din || minimal.dout != other.dout) {
    throw DimensionError("connecting_isometry: dilations have different din/dout");
  }
  if (!minimal.minimal || !is_minimal(minimal, kRankTol)) {
    throw NotMinimal("connecting_isometry: first dilation fails the minimality span test");
  }
  const double limit = std::max(1e-8, tol) * static_cast<double>(minimal.din * minimal.dout);
  const double gap = frobenius_distance(map_of(minimal).choi(), map_of(other).choi());
  if (gap >= limit) throw DilationMismatch(gap, limit);

  const Matrix x = spanning_vectors(minimal);
  const Matrix y = spanning_vectors(other);
  // Ũ X = Y  ⇔  Xᵀ Ũᵀ = Yᵀ; X has full row rank because the dilation is minimal.
  const Matrix utilde =
      x.transpose().completeOrthogonalDecomposition().solve(y.transpose()).transpose();

  Isometry iso = extract_tensor_factor(utilde, minimal.dout, tol);
  iso.U = nearest_isometry(iso.U);

  const double fit = frobenius_distance(kron(identity(minimal.dout), iso.U) * minimal.V, other.V);
  if (fit >= tol * std::sqrt(static_cast<double>(minimal.din))) {
    throw NumericalFailure("connecting isometry does not map one dilation onto the other (residual " +
                           std::to_string(fit) + ")");
  }
  return iso;
}

}  // namespace semiloc
