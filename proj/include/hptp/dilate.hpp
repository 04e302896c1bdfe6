#pragma once

#include "hptp/decompose.hpp"

#include <utility>

namespace hptp {

/// Unitary dilation of a CPTP map: Psi(rho) = Tr_E[U (env_state (x) rho) U^dag].
/// The joint space is ordered environment (x) system, so the unitary of a
/// Kraus set {E_k} has the stacked isometry [E_0; E_1; ...] as its first
/// sys_dim columns.
struct Dilation {
  Matrix unitary;
  Index env_dim = 1;
  Index sys_dim = 1;
  Matrix env_state;  // density matrix on the environment, default |0><0|
};

/// Two-stage joint circuit: the context unitary u_c prepares the
/// system-environment correlation, u acts afterwards on the same joint space.
struct ContextCircuit {
  Dilation u_c;
  Matrix u;
};

/// Stinespring dilation of an all-positive-sign Kraus set (square maps only).
/// Environment dimension = number of Kraus operators; completion by pivoted
/// Gram-Schmidt.
Dilation stinespring(const SignedKrausRep& rep, const Tolerances& tol = {});

/// The explicit 8x8 block unitaries dilating the example1 maps Phi and Xi
/// with a 4-dimensional environment in |0>. Valid for 0 < lambda <= 1/3.
std::pair<Matrix, Matrix> example1_unitaries(double lambda);

/// Evolve env_state (x) rho_s through u_c and then u, returning the reduced
/// system states after each step. The second unitary acts on the full joint
/// state, not a re-prepared product.
std::pair<Matrix, Matrix> simulate_context_circuit(const ContextCircuit& c, const Matrix& rho_s);

/// Realize a verified SP decomposition as a context circuit: u_c dilates Phi,
/// u = U_Xi U_Phi^dag, so that rho_S'' = Psi(rho_S') for every input.
ContextCircuit realize_sp_map(const SpDecomposition& d, const Tolerances& tol = {});

}  // namespace hptp
