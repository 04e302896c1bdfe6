#pragma once

#include "hptp/map.hpp"
#include "hptp/rng.hpp"

#include <cmath>
#include <vector>

namespace hptp::testing {

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline Matrix unit_matrix(Index n, Index i, Index j) {
  Matrix m = Matrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

/// X on one qubit of a 3-qubit register.
inline Matrix pauli_x_on(int qubit) {
  Matrix op = Matrix::Identity(1, 1);
  for (int b = 0; b < 3; ++b)
    op = kron(op, b == qubit ? pauli_x() : Matrix::Identity(2, 2)).eval();
  return op;
}

inline Matrix pauli_z_on(int qubit) {
  Matrix op = Matrix::Identity(1, 1);
  for (int b = 0; b < 3; ++b)
    op = kron(op, b == qubit ? pauli_z() : Matrix::Identity(2, 2)).eval();
  return op;
}

/// Projector onto span{|000>, |111>}.
inline Matrix bit_flip_projector() {
  Matrix p = Matrix::Zero(8, 8);
  p(0, 0) = 1.0;
  p(7, 7) = 1.0;
  return p;
}

/// TP-normalized signed bit-flip noise {sqrt(a0) I, sqrt(a1) X1, sqrt(a2) X2, -sqrt(a3) X3}
/// with a0 + a1 + a2 - a3 = 1 and one negative-sign term.
inline SignedKrausRep signed_bit_flip_noise(std::uint64_t seed) {
  Rng rng(seed);
  const double a1 = 0.05 + 0.15 * rng.next_double();
  const double a2 = 0.05 + 0.15 * rng.next_double();
  const double a3 = 0.01 + 0.09 * rng.next_double();
  const double a0 = 1.0 + a3 - a1 - a2;
  SignedKrausRep noise;
  noise.dim_in = noise.dim_out = 8;
  noise.terms.push_back({+1, std::sqrt(a0) * Matrix::Identity(8, 8)});
  noise.terms.push_back({+1, std::sqrt(a1) * pauli_x_on(0)});
  noise.terms.push_back({+1, std::sqrt(a2) * pauli_x_on(1)});
  noise.terms.push_back({-1, std::sqrt(a3) * pauli_x_on(2)});
  return noise;
}

}  // namespace hptp::testing
