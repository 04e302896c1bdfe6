#include "hptp/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace hptp {

Matrix unvec(const Vector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) throw DimensionMismatch("unvec: size mismatch");
  Matrix out(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) out(i, j) = v(i * cols + j);
  return out;
}

Matrix partial_trace(const Matrix& a, Index dim1, Index dim2, Factor which) {
  if (a.rows() != dim1 * dim2 || a.cols() != dim1 * dim2)
    throw DimensionMismatch("partial_trace: matrix is not (dim1*dim2) square");
  if (which == Factor::First) {
    Matrix out = Matrix::Zero(dim2, dim2);
    for (Index b = 0; b < dim2; ++b)
      for (Index bp = 0; bp < dim2; ++bp)
        for (Index a1 = 0; a1 < dim1; ++a1) out(b, bp) += a(a1 * dim2 + b, a1 * dim2 + bp);
    return out;
  }
  Matrix out = Matrix::Zero(dim1, dim1);
  for (Index a1 = 0; a1 < dim1; ++a1)
    for (Index a2 = 0; a2 < dim1; ++a2)
      for (Index b = 0; b < dim2; ++b) out(a1, a2) += a(a1 * dim2 + b, a2 * dim2 + b);
  return out;
}

bool is_hermitian(const Matrix& a, double eq_tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint()) <= eq_tol;
}

HermitianEig eig_hermitian(const Matrix& a, double eq_tol) {
  if (!is_hermitian(a, eq_tol)) throw NonHermitianInput("eig_hermitian: input not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
  HermitianEig out;
  const Index n = a.rows();
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors.resize(n, n);
  for (Index k = 0; k < n; ++k) out.eigenvectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  return out;
}

bool is_psd(const Matrix& a, double tol) {
  if (!is_hermitian(a, std::max(tol, 1e-12))) throw NonHermitianInput("is_psd: input not Hermitian");
  return min_eig_hermitian(a) >= -tol;
}

double min_eig_hermitian(const Matrix& a) {
  const Index n = a.rows();
  if (n == 1) return a(0, 0).real();
  if (n == 2) {
    // closed form: tr/2 - sqrt((d/2)^2 + |b|^2)
    const double p = a(0, 0).real();
    const double q = a(1, 1).real();
    const double half_diff = 0.5 * (p - q);
    return 0.5 * (p + q) - std::sqrt(half_diff * half_diff + std::norm(a(0, 1)));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

void min_eig_pair(const Matrix& a, double& value, Vector& eigvec) {
  const Index n = a.rows();
  if (n == 1) {
    value = a(0, 0).real();
    eigvec = Vector::Ones(1);
    return;
  }
  if (n == 2) {
    const double p = a(0, 0).real();
    const double q = a(1, 1).real();
    const Complex b = a(0, 1);
    const double half_diff = 0.5 * (p - q);
    const double r = std::sqrt(half_diff * half_diff + std::norm(b));
    value = 0.5 * (p + q) - r;
    eigvec.resize(2);
    // (a - value I) v = 0; pick the better-conditioned row
    const Complex v0 = b;
    const Complex v1 = Complex(value - p, 0.0);
    const double norm01 = std::sqrt(std::norm(v0) + std::norm(v1));
    if (norm01 > 1e-14 * (std::abs(p) + std::abs(q) + 1.0)) {
      eigvec(0) = v0 / norm01;
      eigvec(1) = v1 / norm01;
    } else {
      // b ~ 0 and value ~ p: diagonal matrix
      if (p <= q) {
        eigvec << 1.0, 0.0;
      } else {
        eigvec << 0.0, 1.0;
      }
    }
    return;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
  value = solver.eigenvalues()(0);
  eigvec = solver.eigenvectors().col(0);
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) m = std::max(m, std::abs(a(i, j)));
  return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch("max_abs_diff: shape mismatch");
  return max_abs(a - b);
}

double trace_norm_hermitian(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

Matrix sqrt_psd(const Matrix& a, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
  RealVector vals = solver.eigenvalues();
  for (Index k = 0; k < vals.size(); ++k) vals(k) = vals(k) > tol ? std::sqrt(vals(k)) : 0.0;
  return solver.eigenvectors() * vals.asDiagonal() * solver.eigenvectors().adjoint();
}

Matrix complete_unitary(const Matrix& q, double tol) {
  const Index n = q.rows();
  const Index r = q.cols();
  if (r > n) throw DimensionMismatch("complete_unitary: more columns than rows");
  Matrix u(n, n);
  u.leftCols(r) = q;
  Index filled = r;
  for (Index k = 0; k < n && filled < n; ++k) {
    Vector v = Vector::Zero(n);
    v(k) = 1.0;
    // two Gram-Schmidt passes for stability
    for (int pass = 0; pass < 2; ++pass)
      for (Index c = 0; c < filled; ++c) v -= u.col(c).dot(v) * u.col(c);
    const double norm = v.norm();
    if (norm > std::max(tol, 1e-8)) {
      u.col(filled++) = v / norm;
    }
  }
  if (filled < n) throw Error("complete_unitary: completion failed");
  return u;
}

Matrix polar_unitary_on_subspace(const Matrix& a, const Matrix& p, double tol) {
  if (a.rows() != a.cols() || p.rows() != p.cols() || a.rows() != p.rows())
    throw DimensionMismatch("polar_unitary_on_subspace: square matrices of equal size required");
  if (max_abs(p * p - p) > 1e-8 || !is_hermitian(p, 1e-8))
    throw Error("polar_unitary_on_subspace: p is not an orthogonal projector");
  const Matrix b = a * p;
  if (max_abs(b) <= tol) throw NullRestriction("polar_unitary_on_subspace: a*p vanishes");
  Eigen::JacobiSVD<Matrix> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sing = svd.singularValues();
  Index rank = 0;
  while (rank < sing.size() && sing(rank) > tol * std::max(1.0, sing(0))) ++rank;
  const Matrix w = svd.matrixU().leftCols(rank);
  const Matrix v = svd.matrixV().leftCols(rank);
  // pair the orthonormal completions of the column space and the row space
  const Matrix wfull = complete_unitary(w, tol);
  const Matrix vfull = complete_unitary(v, tol);
  return wfull * vfull.adjoint();
}

Matrix psd_clip(const Matrix& a, double floor) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
  RealVector vals = solver.eigenvalues();
  for (Index k = 0; k < vals.size(); ++k) vals(k) = std::max(vals(k), floor);
  return solver.eigenvectors() * vals.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace hptp
