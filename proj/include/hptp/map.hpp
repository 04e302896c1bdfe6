#pragma once

#include "hptp/linalg.hpp"

#include <vector>

namespace hptp {

/// A linear map B(C^n) -> B(C^m) stored as its Choi matrix
///
///   J(Psi) = sum_ij Psi(E_ij) (x) E_ij      (output factor first),
///
/// equivalently J = (Psi (x) Id)(vec(I_n) vec(I_n)^dag) under the
/// row-stacking vec convention. The Choi matrix is the universal currency of
/// the library; every other representation converts through it.
class QuantumMap {
 public:
  QuantumMap(Index dim_in, Index dim_out, Matrix choi);

  static QuantumMap identity(Index n);
  /// Build from the transfer (natural) representation K, vec(Psi(X)) = K vec(X).
  static QuantumMap from_transfer(Index dim_in, Index dim_out, const Matrix& transfer);

  Index dim_in() const { return dim_in_; }
  Index dim_out() const { return dim_out_; }
  const Matrix& choi() const { return choi_; }

  /// Transfer matrix (m^2 x n^2 reshuffle of the Choi matrix).
  Matrix transfer() const;

  /// Evaluate Psi(x) by contracting the input factor of the Choi matrix.
  Matrix apply(const Matrix& x) const;

 private:
  Index dim_in_;
  Index dim_out_;
  Matrix choi_;
};

struct SignedKrausTerm {
  int sign;   // +1 or -1
  Matrix op;  // m x n
};

/// Operator-sum form Psi(rho) = sum_i sign(i) E_i rho E_i^dag obtained from
/// the Jordan-Hahn split of the Choi matrix. For a trace-preserving map the
/// weights satisfy p0 - p1 = 1 and sum_i sign(i) E_i^dag E_i = I.
struct SignedKrausRep {
  Index dim_in = 0;
  Index dim_out = 0;
  std::vector<SignedKrausTerm> terms;
  double p0 = 0.0;
  double p1 = 0.0;
};

struct JordanHahnSplit {
  double p0;
  QuantumMap phi0;
  double p1;
  QuantumMap phi1;
};

/// Choi matrix Hermitian within eq_tol.
bool is_hp(const QuantumMap& map, double eq_tol = 1e-9);

/// Partial trace of the Choi matrix over the output factor equals I_n.
bool is_tp(const QuantumMap& map, double eq_tol = 1e-9);

/// Choi matrix PSD. Requires a Hermitian Choi (throws NonHermitianChoi).
bool is_cp(const QuantumMap& map, const Tolerances& tol = {});

bool is_hptp(const QuantumMap& map, double eq_tol = 1e-9);

/// Split an HPTP map as Psi = p0 Phi0 - p1 Phi1 from the positive/negative
/// eigenspaces of the Choi matrix, p0 - p1 = 1. Phi0/Phi1 are CP with
/// trace-normalized Choi matrices (Tr J = dim_in).
JordanHahnSplit jordan_hahn(const QuantumMap& map, const Tolerances& tol = {});

/// Minimal signed operator-sum representation from the spectral decomposition
/// of the Choi matrix; eigenvalues within eig_tol of zero are dropped.
SignedKrausRep to_signed_kraus(const QuantumMap& map, const Tolerances& tol = {});

QuantumMap from_signed_kraus(const SignedKrausRep& rep);
QuantumMap from_kraus(const std::vector<Matrix>& ops, Index dim_in, Index dim_out);

/// Dual (adjoint) map under the trace pairing: Tr(dual(Psi)(y) x) = Tr(y Psi(x)).
QuantumMap dual(const QuantumMap& map);

/// (f o g)(x) = f(g(x)).
QuantumMap compose(const QuantumMap& f, const QuantumMap& g);

QuantumMap scale(const QuantumMap& map, double factor);
QuantumMap add(const QuantumMap& a, const QuantumMap& b);

/// Inverse through the transfer representation (LU with partial pivoting).
/// Throws SingularMap when the transfer condition number exceeds 1/eig_tol.
QuantumMap inverse(const QuantumMap& map, const Tolerances& tol = {});

bool approx_equal(const QuantumMap& a, const QuantumMap& b, double eq_tol = 1e-9);

}  // namespace hptp
