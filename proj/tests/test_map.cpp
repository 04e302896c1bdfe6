#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "hptp/atlas.hpp"

using namespace hptp;
using namespace hptp::testing;

TEST_CASE("apply through the Choi contraction") {
  Matrix x(2, 2);
  x << Complex(0.3, 0), Complex(0.1, 0.2), Complex(0.1, -0.2), Complex(0.7, 0);

  CHECK(max_abs_diff(QuantumMap::identity(2).apply(x), x) < 1e-14);
  CHECK(max_abs_diff(atlas::transpose_map(2).apply(x), x.transpose()) < 1e-14);

  // [[a,b],[c,d]] -> [[a+2d,b],[c,-d]]
  Matrix expected(2, 2);
  expected << x(0, 0) + 2.0 * x(1, 1), x(0, 1), x(1, 0), -x(1, 1);
  CHECK(max_abs_diff(atlas::example2_psi().apply(x), expected) < 1e-14);

  CHECK_THROWS_AS(QuantumMap::identity(2).apply(Matrix::Identity(3, 3)), DimensionMismatch);
}

TEST_CASE("is_hp detects Hermitian Choi matrices") {
  CHECK(is_hp(atlas::transpose_map(2)));

  Matrix j = Matrix::Zero(4, 4);
  j(1, 2) = 1.0;  // |01><10| alone
  CHECK_FALSE(is_hp(QuantumMap(2, 2, j)));

  Matrix d(2, 2);
  d << 2, 0, 0, -1;
  CHECK(is_hp(atlas::indefinite_replacement(d)));
}

TEST_CASE("is_tp through the output marginal") {
  CHECK(is_tp(QuantumMap::identity(3)));

  Matrix sigma(2, 2);
  sigma << 0.25, 0, 0, 0.75;
  CHECK(is_tp(atlas::replacement(sigma)));

  CHECK_FALSE(is_tp(scale(QuantumMap::identity(2), 2.0)));
}

TEST_CASE("is_cp through Choi positivity") {
  CHECK_FALSE(is_cp(atlas::transpose_map(2)));
  CHECK(is_cp(atlas::example1_xi(0.25)));
  CHECK(is_cp(QuantumMap::identity(2)));

  Matrix j = Matrix::Zero(4, 4);
  j(0, 1) = 1.0;
  CHECK_THROWS_AS(is_cp(QuantumMap(2, 2, j)), NonHermitianChoi);
}

TEST_CASE("jordan_hahn splits and normalizes") {
  const JordanHahnSplit cp = jordan_hahn(atlas::depolarizing(0.7));
  CHECK(cp.p0 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(cp.p1 == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(approx_equal(cp.phi0, atlas::depolarizing(0.7), 1e-9));

  const JordanHahnSplit t = jordan_hahn(atlas::transpose_map(2));
  CHECK(t.p0 == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(t.p1 == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(is_cp(t.phi0));
  CHECK(is_cp(t.phi1));

  const JordanHahnSplit e2 = jordan_hahn(atlas::example2_psi());
  CHECK(e2.p0 - e2.p1 == doctest::Approx(1.0).epsilon(1e-10));

  CHECK_THROWS_AS(jordan_hahn(scale(QuantumMap::identity(2), 2.0)), NonHptpInput);
}

TEST_CASE("to_signed_kraus spectra") {
  const SignedKrausRep id = to_signed_kraus(QuantumMap::identity(2));
  REQUIRE(id.terms.size() == 1);
  CHECK(id.terms[0].sign == +1);
  CHECK(max_abs_diff(id.terms[0].op * id.terms[0].op.adjoint(), Matrix::Identity(2, 2)) < 1e-12);

  const SignedKrausRep t = to_signed_kraus(atlas::transpose_map(2));
  REQUIRE(t.terms.size() == 4);
  int negatives = 0;
  for (const auto& term : t.terms) negatives += term.sign < 0;
  CHECK(negatives == 1);
  CHECK(t.p0 == doctest::Approx(1.5));
  CHECK(t.p1 == doctest::Approx(0.5));

  const QuantumMap depol = atlas::depolarizing(1.0);
  CHECK(max_abs_diff(from_signed_kraus(to_signed_kraus(depol)).choi(), depol.choi()) < 1e-10);
}

TEST_CASE("from_signed_kraus assembles Choi matrices") {
  SignedKrausRep id;
  id.dim_in = id.dim_out = 2;
  id.terms.push_back({+1, Matrix::Identity(2, 2)});
  CHECK(approx_equal(from_signed_kraus(id), QuantumMap::identity(2), 1e-12));

  // example2_phi sends every density matrix to |0><0|
  const QuantumMap phi = atlas::example2_phi();
  Matrix rho(2, 2);
  rho << 0.4, Complex(0, 0.1), Complex(0, -0.1), 0.6;
  CHECK(max_abs_diff(phi.apply(rho), unit_matrix(2, 0, 0)) < 1e-14);

  SignedKrausRep signed_rep;
  signed_rep.dim_in = signed_rep.dim_out = 2;
  signed_rep.terms.push_back({+1, std::sqrt(1.1) * Matrix::Identity(2, 2)});
  signed_rep.terms.push_back({-1, std::sqrt(0.1) * pauli_z()});
  const QuantumMap m = from_signed_kraus(signed_rep);
  CHECK(is_hp(m));
  CHECK(is_tp(m));

  SignedKrausRep bad = signed_rep;
  bad.terms[0].op = Matrix::Identity(3, 3);
  CHECK_THROWS_AS(from_signed_kraus(bad), DimensionMismatch);
}

TEST_CASE("dual map pairing identity and involution") {
  CHECK(approx_equal(dual(QuantumMap::identity(2)), QuantumMap::identity(2), 1e-12));

  // dual of x -> Tr(x) sigma is y -> Tr(sigma y) I
  Matrix sigma(2, 2);
  sigma << 0.3, Complex(0.05, 0.02), Complex(0.05, -0.02), 0.7;
  const QuantumMap repl = atlas::replacement(sigma);
  const QuantumMap repl_dual = dual(repl);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j) {
      const Matrix y = unit_matrix(2, i, j);
      const Matrix expected = (sigma * y).trace() * Matrix::Identity(2, 2);
      CHECK(max_abs_diff(repl_dual.apply(y), expected) < 1e-12);
    }

  // Tr(dual(Psi)(y) x) = Tr(y Psi(x)) for arbitrary complex x, y
  for (std::uint64_t s = 0; s < 5; ++s) {
    const QuantumMap psi = atlas::random_hptp(3, 3, 900 + s);
    const QuantumMap psi_dual = dual(psi);
    Rng rng(1000 + s);
    Matrix x(3, 3), y(3, 3);
    for (Index i = 0; i < 3; ++i)
      for (Index j = 0; j < 3; ++j) {
        x(i, j) = rng.next_complex_normal();
        y(i, j) = rng.next_complex_normal();
      }
    const Complex lhs = (psi_dual.apply(y) * x).trace();
    const Complex rhs = (y * psi.apply(x)).trace();
    CHECK(std::abs(lhs - rhs) < 1e-10);
    CHECK(approx_equal(dual(psi_dual), psi, 1e-9));
  }

  // dual of a TP map is unital
  const QuantumMap m = atlas::random_hptp(2, 2, 5);
  CHECK(max_abs_diff(dual(m).apply(Matrix::Identity(2, 2)), Matrix::Identity(2, 2)) < 1e-9);

  // rectangular maps: dims swap and the pairing still holds
  const QuantumMap rect = atlas::random_cptp(2, 3, 5);
  const QuantumMap rect_dual = dual(rect);
  CHECK(rect_dual.dim_in() == 3);
  CHECK(rect_dual.dim_out() == 2);
  Rng rect_rng(17);
  Matrix x2(2, 2), y3(3, 3);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j) x2(i, j) = rect_rng.next_complex_normal();
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) y3(i, j) = rect_rng.next_complex_normal();
  CHECK(std::abs((rect_dual.apply(y3) * x2).trace() - (y3 * rect.apply(x2)).trace()) < 1e-12);
  CHECK(approx_equal(dual(rect_dual), rect, 1e-12));
}

TEST_CASE("compose chains transfer matrices") {
  const QuantumMap t = atlas::transpose_map(2);
  CHECK(approx_equal(compose(t, t), QuantumMap::identity(2), 1e-12));

  // example2 pair: Psi o Phi = Phi
  const QuantumMap psi = atlas::example2_psi();
  const QuantumMap phi = atlas::example2_phi();
  CHECK(approx_equal(compose(psi, phi), phi, 1e-12));

  const QuantumMap f = atlas::random_cptp(2, 3, 7);
  CHECK(approx_equal(compose(f, QuantumMap::identity(2)), f, 1e-12));

  // associativity on random triples
  for (std::uint64_t s = 0; s < 5; ++s) {
    const QuantumMap a = atlas::random_hptp(2, 2, 10 + s);
    const QuantumMap b = atlas::random_hptp(2, 2, 20 + s);
    const QuantumMap c = atlas::random_hptp(2, 2, 30 + s);
    CHECK(approx_equal(compose(compose(a, b), c), compose(a, compose(b, c)), 1e-9));
  }

  CHECK_THROWS_AS(compose(atlas::transpose_map(2), atlas::transpose_map(3)), DimensionMismatch);
}

TEST_CASE("inverse through the transfer representation") {
  CHECK(approx_equal(inverse(QuantumMap::identity(2)), QuantumMap::identity(2), 1e-12));

  // example1_phi has the closed-form inverse y -> (y - (1-l)Tr(y)I/2)/l
  const double lambda = 0.25;
  const QuantumMap phi = atlas::example1_phi(lambda);
  const QuantumMap phi_inv = inverse(phi);
  Matrix y(2, 2);
  y << 0.6, Complex(0.1, -0.3), Complex(0.1, 0.3), 0.4;
  const Matrix expected =
      (y - (1.0 - lambda) * y.trace() * Matrix::Identity(2, 2) / 2.0) / lambda;
  CHECK(max_abs_diff(phi_inv.apply(y), expected) < 1e-10);
  CHECK(approx_equal(compose(phi_inv, phi), QuantumMap::identity(2), 1e-10));
  CHECK(is_hp(phi_inv));
  CHECK(is_tp(phi_inv));

  CHECK_THROWS_AS(inverse(atlas::example2_phi()), SingularMap);
}

TEST_CASE("signed-Kraus round trip and TP identity over random HPTP maps") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Index n = 2 + (s % 2);
    const QuantumMap m = atlas::random_hptp(n, n, 4000 + s);
    const SignedKrausRep rep = to_signed_kraus(m);
    CHECK(max_abs_diff(from_signed_kraus(rep).choi(), m.choi()) < 1e-9);
    CHECK(rep.p0 - rep.p1 == doctest::Approx(1.0).epsilon(1e-9));
    Matrix norm_sum = Matrix::Zero(n, n);
    for (const auto& term : rep.terms)
      norm_sum += static_cast<double>(term.sign) * term.op.adjoint() * term.op;
    CHECK(max_abs_diff(norm_sum, Matrix::Identity(n, n)) < 1e-9);
  }
}

TEST_CASE("inverse round trips when the transfer matrix is well conditioned") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const QuantumMap raw = atlas::random_cptp(2, 2, 7000 + s);
    const QuantumMap phi = add(scale(raw, 0.5), scale(QuantumMap::identity(2), 0.5));
    const QuantumMap phi_inv = inverse(phi);
    CHECK(approx_equal(compose(phi_inv, phi), QuantumMap::identity(2), 1e-8));
    CHECK(approx_equal(compose(phi, phi_inv), QuantumMap::identity(2), 1e-8));
  }
}
