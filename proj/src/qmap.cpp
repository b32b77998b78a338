#include "semiloc/qmap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace semiloc {
namespace {

// Block (i, j) of the Choi matrix is E_*(|i⟩⟨j|).
auto choi_block(const Matrix& choi, Index dout, Index i, Index j) {
  return choi.block(i * dout, j * dout, dout, dout);
}

// Liouville matrix of E_* for row-major vec: L[(p,q),(i,j)] = C[(i,p),(j,q)].
Matrix liouville_from_choi(const Matrix& choi, Index din, Index dout) {
  Matrix l(dout * dout, din * din);
  for (Index i = 0; i < din; ++i)
    for (Index p = 0; p < dout; ++p)
      for (Index j = 0; j < din; ++j)
        for (Index q = 0; q < dout; ++q) l(p * dout + q, i * din + j) = choi(i * dout + p, j * dout + q);
  return l;
}

Matrix choi_from_liouville(const Matrix& l, Index din, Index dout) {
  Matrix c(din * dout, din * dout);
  for (Index i = 0; i < din; ++i)
    for (Index p = 0; p < dout; ++p)
      for (Index j = 0; j < din; ++j)
        for (Index q = 0; q < dout; ++q) c(i * dout + p, j * dout + q) = l(p * dout + q, i * din + j);
  return c;
}

}  // namespace

void validate(const BipartiteDims& dims) {
  if (dims.dA < 1 || dims.dB < 1) {
    throw DimensionError("bipartite dimensions must be >= 1, got dA=" + std::to_string(dims.dA) +
                         " dB=" + std::to_string(dims.dB));
  }
}

NotCompletelyPositive::NotCompletelyPositive(double min_eigenvalue)
    : std::domain_error("map is not completely positive: Choi eigenvalue " +
                        std::to_string(min_eigenvalue)),
      min_eigenvalue_(min_eigenvalue) {}

void validate(const KrausSet& k) {
  if (k.din < 1 || k.dout < 1) throw DimensionError("Kraus set dimensions must be >= 1");
  if (k.operators.empty()) throw DimensionError("Kraus set is empty");
  for (const auto& op : k.operators) {
    if (op.rows() != k.dout || op.cols() != k.din) {
      throw DimensionError("Kraus operator is " + std::to_string(op.rows()) + "x" +
                           std::to_string(op.cols()) + ", expected " + std::to_string(k.dout) +
                           "x" + std::to_string(k.din));
    }
  }
}

CpMap CpMap::from_choi(Index din, Index dout, const Matrix& choi, double tol) {
  if (din < 1 || dout < 1) throw DimensionError("map dimensions must be >= 1");
  require_square(choi, din * dout, "Choi matrix");
  if (!choi.allFinite()) throw std::invalid_argument("Choi matrix has non-finite entries");
  Matrix herm = hermitize(choi, tol);
  const Eigen::VectorXd ev = hermitian_eigenvalues(herm);
  const double scale = std::max(1.0, ev(ev.size() - 1));
  if (ev(0) < -tol * scale) throw NotCompletelyPositive(ev(0));
  return CpMap(din, dout, std::move(herm));
}

CpMap choi_from_kraus(const KrausSet& k) {
  validate(k);
  const Index n = k.din * k.dout;
  Matrix choi = Matrix::Zero(n, n);
  for (const auto& op : k.operators) {
    // Column-major storage of K gives exactly the index i·dout + p.
    const Matrix kc = op;
    const Eigen::Map<const Vector> v(kc.data(), n);
    choi.noalias() += v * v.adjoint();
  }
  return CpMap(k.din, k.dout, std::move(choi));
}

KrausSet kraus_from_choi(const CpMap& e, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(e.choi());
  const auto& ev = es.eigenvalues();
  const Index n = ev.size();
  const double top = ev(n - 1);
  if (ev(0) < -tol * std::max(1.0, top)) throw NotCompletelyPositive(ev(0));

  KrausSet out{e.din(), e.dout(), {}};
  for (Index idx = n; idx-- > 0;) {
    if (top <= 0.0 || ev(idx) <= tol * top) break;
    const Vector v = es.eigenvectors().col(idx) * std::sqrt(ev(idx));
    out.operators.push_back(Eigen::Map<const Matrix>(v.data(), e.dout(), e.din()));
  }
  if (out.operators.empty()) out.operators.push_back(Matrix::Zero(e.dout(), e.din()));
  return out;
}

Matrix apply_heisenberg(const CpMap& e, const Matrix& a) {
  require_square(a, e.dout(), "apply_heisenberg observable");
  Matrix out(e.din(), e.din());
  const Matrix at = a.transpose();
  for (Index i = 0; i < e.din(); ++i)
    for (Index j = 0; j < e.din(); ++j) out(j, i) = choi_block(e.choi(), e.dout(), i, j).cwiseProduct(at).sum();
  return out;
}

Matrix apply_schrodinger(const CpMap& e, const Matrix& rho) {
  require_square(rho, e.din(), "apply_schrodinger state");
  Matrix out = Matrix::Zero(e.dout(), e.dout());
  for (Index i = 0; i < e.din(); ++i)
    for (Index j = 0; j < e.din(); ++j) out += rho(i, j) * choi_block(e.choi(), e.dout(), i, j);
  return out;
}

CpMap dual(const CpMap& e) {
  const Index din = e.din();
  const Index dout = e.dout();
  Matrix c(din * dout, din * dout);
  for (Index i = 0; i < din; ++i)
    for (Index p = 0; p < dout; ++p)
      for (Index j = 0; j < din; ++j)
        for (Index q = 0; q < dout; ++q)
          c(p * din + i, q * din + j) = std::conj(e.choi()(i * dout + p, j * dout + q));
  return CpMap(dout, din, std::move(c));
}

bool is_cp(const Matrix& choi, double tol) {
  if (choi.rows() != choi.cols() || choi.size() == 0) return false;
  if ((choi - choi.adjoint()).norm() > tol * std::max(1.0, choi.norm())) return false;
  const Matrix herm = (choi + choi.adjoint()) / 2.0;
  return hermitian_eigenvalues(herm)(0) >= -tol;
}

bool is_cp(const CpMap& e, double tol) { return is_cp(e.choi(), tol); }

bool is_subunital(const CpMap& e, double tol) {
  const Matrix one = apply_heisenberg(e, identity(e.dout()));
  const Matrix herm = (one + one.adjoint()) / 2.0;
  const auto ev = hermitian_eigenvalues(herm);
  return ev(ev.size() - 1) <= 1.0 + tol;
}

bool is_unital(const CpMap& e, double tol) {
  return frobenius_distance(apply_heisenberg(e, identity(e.dout())), identity(e.din())) <= tol;
}

CpMap compose(const CpMap& e2, const CpMap& e1) {
  if (e1.dout() != e2.din()) {
    throw DimensionError("compose: first map outputs dimension " + std::to_string(e1.dout()) +
                         " but second expects " + std::to_string(e2.din()));
  }
  const Matrix l = liouville_from_choi(e2.choi(), e2.din(), e2.dout()) *
                   liouville_from_choi(e1.choi(), e1.din(), e1.dout());
  Matrix c = choi_from_liouville(l, e1.din(), e2.dout());
  c = (c + c.adjoint()) / 2.0;
  return CpMap(e1.din(), e2.dout(), std::move(c));
}

CpMap tensor(const CpMap& e1, const CpMap& e2) {
  const Index dims[] = {e1.din(), e1.dout(), e2.din(), e2.dout()};
  const Index perm[] = {0, 2, 1, 3};
  Matrix c = permute_legs(kron(e1.choi(), e2.choi()), dims, perm);
  return CpMap(e1.din() * e2.din(), e1.dout() * e2.dout(), std::move(c));
}

CpMap identity_map(Index d) { return choi_from_kraus({d, d, {identity(d)}}); }

CpMap conjugation_map(const Matrix& k) { return choi_from_kraus({k.cols(), k.rows(), {k}}); }

Matrix choi_from_heisenberg(Index din, Index dout,
                            const std::function<Matrix(const Matrix&)>& heisenberg) {
  // C[(i,p),(j,q)] = E(E_qp)_{ji}
  Matrix c(din * dout, din * dout);
  for (Index q = 0; q < dout; ++q) {
    for (Index p = 0; p < dout; ++p) {
      const Matrix img = heisenberg(matrix_unit(dout, q, p));
      require_square(img, din, "Heisenberg image");
      for (Index i = 0; i < din; ++i)
        for (Index j = 0; j < din; ++j) c(i * dout + p, j * dout + q) = img(j, i);
    }
  }
  return c;
}

}  // namespace semiloc
