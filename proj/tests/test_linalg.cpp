#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "hptp/linalg.hpp"
#include "hptp/rng.hpp"

using namespace hptp;
using namespace hptp::testing;

namespace {

Matrix random_complex(Index rows, Index cols, std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = rng.next_complex_normal();
  return m;
}

Matrix random_hermitian_local(Index n, std::uint64_t seed) {
  const Matrix g = random_complex(n, n, seed);
  return 0.5 * (g + g.adjoint());
}

}  // namespace

TEST_CASE("kron identity and diagonal cases") {
  const Matrix i2 = Matrix::Identity(2, 2);
  CHECK(max_abs_diff(kron(i2, i2), Matrix::Identity(4, 4)) == 0.0);

  Matrix d1 = Matrix::Zero(2, 2), d2 = Matrix::Zero(2, 2);
  d1.diagonal() << 1, 2;
  d2.diagonal() << 3, 4;
  Matrix expected = Matrix::Zero(4, 4);
  expected.diagonal() << 3, 4, 6, 8;
  CHECK(max_abs_diff(kron(d1, d2), expected) == 0.0);
}

TEST_CASE("vec follows row stacking and is an isometry") {
  const Vector v = vec(Matrix::Identity(2, 2));
  CHECK(v(0) == Complex(1, 0));
  CHECK(v(1) == Complex(0, 0));
  CHECK(v(2) == Complex(0, 0));
  CHECK(v(3) == Complex(1, 0));

  // vec(|i><j|) = |i> (x) |j|
  const Vector e01 = vec(unit_matrix(2, 0, 1));
  CHECK(e01(1) == Complex(1, 0));

  for (std::uint64_t s = 0; s < 5; ++s) {
    const Matrix a = random_complex(3, 3, 100 + s);
    const Matrix b = random_complex(3, 3, 200 + s);
    const Complex lhs = (a.adjoint() * b).trace();
    const Complex rhs = (vec(a).adjoint() * vec(b))(0);
    CHECK(std::abs(lhs - rhs) < 1e-12);
    CHECK(max_abs_diff(unvec(vec(a), 3, 3), a) == 0.0);
  }
}

TEST_CASE("transfer-matrix identity kron(A,B) vec(C) = vec(A C B^T)") {
  for (Index n : {Index(2), Index(3)}) {
    for (std::uint64_t s = 0; s < 5; ++s) {
      const Matrix a = random_complex(n, n, 300 + s);
      const Matrix b = random_complex(n, n, 400 + s);
      const Matrix c = random_complex(n, n, 500 + s);
      const Vector lhs = kron(a, b) * vec(c);
      const Vector rhs = vec(a * c * b.transpose());
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("partial trace on product and entangled inputs") {
  const Matrix rho = random_hermitian_local(2, 1);
  const Matrix sigma = random_hermitian_local(3, 2);
  const Matrix joint = kron(rho, sigma);
  CHECK(max_abs_diff(partial_trace(joint, 2, 3, Factor::Second), sigma.trace() * rho) < 1e-12);
  CHECK(max_abs_diff(partial_trace(joint, 2, 3, Factor::First), rho.trace() * sigma) < 1e-12);

  const Vector bell = vec(Matrix::Identity(2, 2));
  const Matrix proj = bell * bell.adjoint();
  CHECK(max_abs_diff(partial_trace(proj, 2, 2, Factor::First), Matrix::Identity(2, 2)) < 1e-12);

  const Matrix h6 = random_hermitian_local(6, 3);
  const Complex t1 = partial_trace(h6, 2, 3, Factor::First).trace();
  const Complex t2 = partial_trace(h6, 3, 2, Factor::Second).trace();
  CHECK(std::abs(t1 - h6.trace()) < 1e-12);
  CHECK(std::abs(t2 - h6.trace()) < 1e-12);

  CHECK_THROWS_AS(partial_trace(h6, 2, 2, Factor::First), DimensionMismatch);
}

TEST_CASE("partial trace is linear") {
  const Matrix a = random_complex(6, 6, 11);
  const Matrix b = random_complex(6, 6, 12);
  const Matrix lhs = partial_trace(a + 2.0 * b, 2, 3, Factor::Second);
  const Matrix rhs =
      partial_trace(a, 2, 3, Factor::Second) + 2.0 * partial_trace(b, 2, 3, Factor::Second);
  CHECK(max_abs_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("eig_hermitian known spectra and reconstruction") {
  const HermitianEig id3 = eig_hermitian(Matrix::Identity(3, 3));
  for (int k = 0; k < 3; ++k) CHECK(id3.eigenvalues(k) == doctest::Approx(1.0));

  const HermitianEig z = eig_hermitian(pauli_z());
  CHECK(z.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(z.eigenvalues(1) == doctest::Approx(-1.0));

  const Matrix a = random_hermitian_local(8, 21);
  const HermitianEig eig = eig_hermitian(a);
  const Matrix rebuilt = eig.eigenvectors *
                         eig.eigenvalues.cast<Complex>().asDiagonal() *
                         eig.eigenvectors.adjoint();
  CHECK(max_abs_diff(rebuilt, a) < 1e-10);
  CHECK(max_abs_diff(eig.eigenvectors.adjoint() * eig.eigenvectors, Matrix::Identity(8, 8)) <
        1e-10);

  CHECK_THROWS_AS(eig_hermitian(random_complex(3, 3, 5)), NonHermitianInput);
}

TEST_CASE("2x2 eigenvalues match the characteristic polynomial roots") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Matrix a = random_hermitian_local(2, 600 + s);
    const double tr = a.trace().real();
    const double det = (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)).real();
    const double disc = std::sqrt(tr * tr - 4.0 * det);
    const HermitianEig eig = eig_hermitian(a);
    CHECK(eig.eigenvalues(0) == doctest::Approx(0.5 * (tr + disc)).epsilon(1e-10));
    CHECK(eig.eigenvalues(1) == doctest::Approx(0.5 * (tr - disc)).epsilon(1e-10));
    CHECK(min_eig_hermitian(a) == doctest::Approx(0.5 * (tr - disc)).epsilon(1e-10));
  }
}

TEST_CASE("is_psd basic and the example1 Xi Choi at the boundary") {
  CHECK(is_psd(Matrix::Identity(3, 3), 1e-9));
  Matrix neg = Matrix::Zero(2, 2);
  neg.diagonal() << 1.0, -0.5;
  CHECK_FALSE(is_psd(neg, 1e-9));

  // J(Xi) at lambda = 1/3: swap/3 + (1/3) I4, smallest eigenvalue (1-3l)/2 = 0
  Matrix swap = Matrix::Zero(4, 4);
  for (Index a = 0; a < 2; ++a)
    for (Index b = 0; b < 2; ++b) swap(a * 2 + b, b * 2 + a) = 1.0;
  const double lambda = 1.0 / 3.0;
  const Matrix j_xi = lambda * swap + (1.0 - lambda) / 2.0 * Matrix::Identity(4, 4);
  CHECK(is_psd(j_xi, 1e-9));
  CHECK(min_eig_hermitian(j_xi) == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(is_psd(random_complex(2, 2, 77), 1e-9), NonHermitianInput);
}

TEST_CASE("polar unitary on a subspace") {
  // unitary input with full projector returns the input
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  const Matrix u = polar_unitary_on_subspace(h, Matrix::Identity(2, 2));
  CHECK(max_abs_diff(u, h) < 1e-12);

  // positive scaling collapses to the identity
  const Matrix v = polar_unitary_on_subspace(2.0 * Matrix::Identity(3, 3),
                                             Matrix::Identity(3, 3));
  CHECK(max_abs_diff(v, Matrix::Identity(3, 3)) < 1e-12);

  // random 4x4 against a rank-2 projector: a p = U sqrt(p a^dag a p)
  Matrix p = Matrix::Zero(4, 4);
  p(0, 0) = 1.0;
  p(2, 2) = 1.0;
  const Matrix a = random_complex(4, 4, 99);
  const Matrix w = polar_unitary_on_subspace(a, p);
  CHECK(max_abs_diff(w.adjoint() * w, Matrix::Identity(4, 4)) < 1e-10);
  const Matrix sqrt_part = sqrt_psd(p * a.adjoint() * a * p);
  CHECK(max_abs_diff(a * p, w * sqrt_part) < 1e-10);

  CHECK_THROWS_AS(polar_unitary_on_subspace(Matrix::Zero(2, 2), Matrix::Identity(2, 2)),
                  NullRestriction);
}

TEST_CASE("complete_unitary extends orthonormal columns deterministically") {
  Matrix q(3, 1);
  q << Complex(0, 1) / std::sqrt(2.0), 0, 1 / std::sqrt(2.0);
  const Matrix u = complete_unitary(q);
  CHECK(max_abs_diff(u.adjoint() * u, Matrix::Identity(3, 3)) < 1e-12);
  CHECK(max_abs_diff(u.col(0), q.col(0)) == 0.0);
  const Matrix u2 = complete_unitary(q);
  CHECK(max_abs_diff(u, u2) == 0.0);
}
