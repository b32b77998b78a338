#include "semiloc/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace semiloc {

Matrix identity(Index d) { return Matrix::Identity(d, d); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix matrix_unit(Index d, Index i, Index j) {
  Matrix e = Matrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

std::vector<Matrix> matrix_unit_basis(Index d) {
  std::vector<Matrix> basis;
  basis.reserve(static_cast<std::size_t>(d * d));
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) basis.push_back(matrix_unit(d, i, j));
  }
  return basis;
}

Matrix partial_trace(const Matrix& m, Index d1, Index d2, TraceOut which) {
  require_square(m, d1 * d2, "partial_trace operand");
  if (which == TraceOut::kSecond) {
    Matrix out = Matrix::Zero(d1, d1);
    for (Index i = 0; i < d1; ++i) {
      for (Index j = 0; j < d1; ++j) {
        out(i, j) = m.block(i * d2, j * d2, d2, d2).trace();
      }
    }
    return out;
  }
  Matrix out = Matrix::Zero(d2, d2);
  for (Index k = 0; k < d1; ++k) out += m.block(k * d2, k * d2, d2, d2);
  return out;
}

Matrix leg_permutation(std::span<const Index> dims, std::span<const Index> perm) {
  const auto n = dims.size();
  if (perm.size() != n) throw DimensionError("leg_permutation: perm/dims length mismatch");
  std::vector<Index> seen(perm.begin(), perm.end());
  std::sort(seen.begin(), seen.end());
  for (std::size_t t = 0; t < n; ++t) {
    if (seen[t] != static_cast<Index>(t)) throw DimensionError("leg_permutation: not a permutation");
  }
  const Index total = std::accumulate(dims.begin(), dims.end(), Index{1}, std::multiplies<>());

  std::vector<Index> new_dims(n);
  for (std::size_t t = 0; t < n; ++t) new_dims[t] = dims[static_cast<std::size_t>(perm[t])];

  Matrix p = Matrix::Zero(total, total);
  std::vector<Index> digits(n, 0);
  for (Index src = 0; src < total; ++src) {
    Index rest = src;
    for (std::size_t t = n; t-- > 0;) {
      digits[t] = rest % dims[t];
      rest /= dims[t];
    }
    Index dst = 0;
    for (std::size_t t = 0; t < n; ++t) {
      dst = dst * new_dims[t] + digits[static_cast<std::size_t>(perm[t])];
    }
    p(dst, src) = 1.0;
  }
  return p;
}

Matrix permute_legs(const Matrix& op, std::span<const Index> dims,
                    std::span<const Index> perm) {
  const Matrix p = leg_permutation(dims, perm);
  require_square(op, p.rows(), "permute_legs operand");
  return p * op * p.adjoint();
}

Matrix swap_operator(Index d1, Index d2) {
  const Index dims[] = {d1, d2};
  const Index perm[] = {1, 0};
  return leg_permutation(dims, perm);
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("frobenius_distance: shape mismatch");
  }
  return (a - b).norm();
}

Index numerical_rank(const Matrix& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  Index rank = 0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * s(0)) ++rank;
  }
  return rank;
}

Matrix nearest_isometry(const Matrix& m) {
  if (m.rows() < m.cols()) throw DimensionError("nearest_isometry: more columns than rows");
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

Matrix hermitize(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) throw DimensionError("hermitize: matrix is not square");
  const double asym = (m - m.adjoint()).norm();
  if (asym > tol * std::max(1.0, m.norm())) {
    throw std::invalid_argument("matrix is not Hermitian (asymmetry " + std::to_string(asym) + ")");
  }
  return (m + m.adjoint()) / 2.0;
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

void require_square(const Matrix& m, Index d, const std::string& what) {
  if (m.rows() != d || m.cols() != d) {
    throw DimensionError(what + ": expected " + std::to_string(d) + "x" + std::to_string(d) +
                         ", got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

}  // namespace semiloc
