#pragma once

#include "hptp/types.hpp"

namespace hptp {

/// Kronecker product. Works on any pair of dense expressions.
template <typename DerivedA, typename DerivedB>
Matrix kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  const Matrix am = a;
  const Matrix bm = b;
  Matrix out(am.rows() * bm.rows(), am.cols() * bm.cols());
  for (Index i = 0; i < am.rows(); ++i)
    for (Index j = 0; j < am.cols(); ++j)
      out.block(i * bm.rows(), j * bm.cols(), bm.rows(), bm.cols()) = am(i, j) * bm;
  return out;
}

/// Row-stacking vectorization: vec(|i><j|) = |i> (x) |j>, i.e. vec(A) lists A
/// row by row. It is a linear isometry: vec(A)^dag vec(B) = Tr(A^dag B), and
/// kron(A, B) vec(C) = vec(A C B^T).
template <typename Derived>
Vector vec(const Eigen::MatrixBase<Derived>& a) {
  const Matrix am = a;
  Vector v(am.rows() * am.cols());
  for (Index i = 0; i < am.rows(); ++i)
    for (Index j = 0; j < am.cols(); ++j) v(i * am.cols() + j) = am(i, j);
  return v;
}

Matrix unvec(const Vector& v, Index rows, Index cols);

enum class Factor { First, Second };

/// Trace over one tensor factor of a (dim1*dim2) x (dim1*dim2) matrix whose
/// index layout is (first-major): row = a*dim2 + b.
Matrix partial_trace(const Matrix& a, Index dim1, Index dim2, Factor which);

bool is_hermitian(const Matrix& a, double eq_tol);

struct HermitianEig {
  RealVector eigenvalues;  // descending
  Matrix eigenvectors;     // columns, matching order
};

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
/// Rejects (rather than symmetrizes) non-Hermitian input.
HermitianEig eig_hermitian(const Matrix& a, double eq_tol = 1e-9);

bool is_psd(const Matrix& a, double tol);

/// Smallest eigenvalue, assuming Hermitian input. Closed-form for 1x1/2x2,
/// iterative otherwise.
double min_eig_hermitian(const Matrix& a);

/// Smallest eigenvalue and a unit eigenvector for it.
void min_eig_pair(const Matrix& a, double& value, Vector& eigvec);

double max_abs(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);

/// Sum of |eigenvalues| of a Hermitian matrix.
double trace_norm_hermitian(const Matrix& a);

/// Principal square root of a PSD matrix (eigenvalues below tol clamped to 0).
Matrix sqrt_psd(const Matrix& a, double tol = 1e-12);

/// Extend a set of orthonormal columns q (N x r) to a full N x N unitary.
/// Completion by Gram-Schmidt over the standard basis with pivoting, so the
/// result is deterministic.
Matrix complete_unitary(const Matrix& q, double tol = 1e-9);

/// Unitary factor U of the polar decomposition of a*p restricted to the
/// support of the projector p: a p = U sqrt(p a^dag a p), with U extended to
/// a full unitary by orthonormal completion. Throws NullRestriction when
/// a*p vanishes within tol.
Matrix polar_unitary_on_subspace(const Matrix& a, const Matrix& p, double tol = 1e-9);

/// PSD projection of a Hermitian matrix: negative eigenvalues clamped at
/// floor (default 0), then optionally renormalized to unit trace.
Matrix psd_clip(const Matrix& a, double floor = 0.0);

}  // namespace hptp
