#include "hptp/dilate.hpp"

#include <array>
#include <cmath>

namespace hptp {

namespace {

Matrix block_matrix_4x4(const std::array<std::array<Matrix, 4>, 4>& blocks) {
  const Index b = blocks[0][0].rows();
  Matrix out(4 * b, 4 * b);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out.block(i * b, j * b, b, b) = blocks[i][j];
  return out;
}

}  // namespace

Dilation stinespring(const SignedKrausRep& rep, const Tolerances& tol) {
  if (rep.dim_in != rep.dim_out)
    throw DimensionMismatch("stinespring: only square maps dilate to a joint unitary");
  if (rep.terms.empty()) throw NotCptp("stinespring: empty Kraus set");
  const Index n = rep.dim_in;
  Matrix normalization = Matrix::Zero(n, n);
  for (const auto& term : rep.terms) {
    if (term.sign != +1) throw NotCptp("stinespring: negative-sign Kraus term");
    if (term.op.rows() != n || term.op.cols() != n)
      throw DimensionMismatch("stinespring: operator shape mismatch");
    normalization += term.op.adjoint() * term.op;
  }
  if (max_abs_diff(normalization, Matrix::Identity(n, n)) > tol.eq_tol)
    throw NotCptp("stinespring: Kraus set is not trace-preserving");

  const Index env = static_cast<Index>(rep.terms.size());
  // isometry V = sum_k |k>_E (x) E_k : the stacked Kraus operators
  Matrix v(env * n, n);
  for (Index k = 0; k < env; ++k) v.middleRows(k * n, n) = rep.terms[k].op;
  Dilation d;
  d.unitary = complete_unitary(v, tol.eig_tol);
  d.env_dim = env;
  d.sys_dim = n;
  d.env_state = Matrix::Zero(env, env);
  d.env_state(0, 0) = 1.0;
  return d;
}

std::pair<Matrix, Matrix> example1_unitaries(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0 / 3.0))
    throw ParameterOutOfRange("example1_unitaries: lambda must lie in (0, 1/3]");
  Matrix e01 = Matrix::Zero(2, 2), e10 = Matrix::Zero(2, 2);
  e01(0, 1) = 1.0;
  e10(1, 0) = 1.0;
  const Matrix id = Matrix::Identity(2, 2);
  Matrix pauli_x = Matrix::Zero(2, 2), pauli_z = Matrix::Zero(2, 2), i_pauli_y = Matrix::Zero(2, 2);
  pauli_x << 0, 1, 1, 0;
  pauli_z << 1, 0, 0, -1;
  i_pauli_y << 0, 1, -1, 0;
  Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;

  const double s = std::sqrt(0.5);
  const Matrix a0 = std::sqrt((1.0 - lambda) / 2.0) * e01;
  const Matrix a1 = std::sqrt((1.0 - lambda) / 2.0) * e10;
  const Matrix a2 = std::sqrt(1.0 + 3.0 * lambda) / 2.0 * id;
  const Matrix a3 = std::sqrt(1.0 - lambda) / 2.0 * pauli_z;
  const Matrix b0 = std::sqrt((1.0 + lambda) / 2.0) * p0;
  const Matrix b1 = std::sqrt((1.0 + lambda) / 2.0) * p1;
  const Matrix b2 = std::sqrt(1.0 + lambda) / 2.0 * pauli_x;
  const Matrix b3 = std::sqrt(1.0 - 3.0 * lambda) / 2.0 * i_pauli_y;

  const Matrix c0 = a0, c1 = a1;
  const Matrix c2 = s * (a2 + a3), c3 = s * (a2 - a3);
  const Matrix d0 = b0, d1 = b1;
  const Matrix d2 = s * (b2 + b3), d3 = s * (b2 - b3);

  const Matrix u_phi = block_matrix_4x4({{{c2, -c3, c0.adjoint(), c1.adjoint()},
                                          {c3, c2, c1.adjoint(), -c0.adjoint()},
                                          {c0, c1, -c3, c2},
                                          {c1, -c0, -c2, -c3}}});
  const Matrix u_xi = block_matrix_4x4({{{d0, -d1, d2.adjoint(), d3.adjoint()},
                                         {d1, d0, d3.adjoint(), -d2.adjoint()},
                                         {d2, d3, -d1, d0},
                                         {d3, -d2, -d0, -d1}}});
  return {u_phi, u_xi};
}

std::pair<Matrix, Matrix> simulate_context_circuit(const ContextCircuit& c, const Matrix& rho_s) {
  const Index n = c.u_c.sys_dim;
  const Index env = c.u_c.env_dim;
  const Index joint_dim = env * n;
  if (rho_s.rows() != n || rho_s.cols() != n)
    throw DimensionMismatch("simulate_context_circuit: system state has wrong dimension");
  if (c.u_c.unitary.rows() != joint_dim || c.u.rows() != joint_dim || c.u.cols() != joint_dim)
    throw DimensionMismatch("simulate_context_circuit: unitaries do not act on the joint space");
  const Matrix joint0 = kron(c.u_c.env_state, rho_s);
  const Matrix joint1 = c.u_c.unitary * joint0 * c.u_c.unitary.adjoint();
  Matrix rho_s1 = partial_trace(joint1, env, n, Factor::First);
  const Matrix joint2 = c.u * joint1 * c.u.adjoint();
  Matrix rho_s2 = partial_trace(joint2, env, n, Factor::First);
  return {std::move(rho_s1), std::move(rho_s2)};
}

ContextCircuit realize_sp_map(const SpDecomposition& d, const Tolerances& tol) {
  if (d.xi.dim_out() != d.xi.dim_in())
    throw DimensionMismatch("realize_sp_map: circuit realization needs dim_out == dim_in");
  SignedKrausRep phi_rep = to_signed_kraus(d.phi, tol);
  SignedKrausRep xi_rep = to_signed_kraus(d.xi, tol);
  const std::size_t count = std::max(phi_rep.terms.size(), xi_rep.terms.size());
  const Matrix zero = Matrix::Zero(d.phi.dim_out(), d.phi.dim_in());
  while (phi_rep.terms.size() < count) phi_rep.terms.push_back({+1, zero});
  while (xi_rep.terms.size() < count) xi_rep.terms.push_back({+1, zero});

  const Dilation u_phi = stinespring(phi_rep, tol);
  const Dilation u_xi = stinespring(xi_rep, tol);
  ContextCircuit circuit;
  circuit.u_c = u_phi;
  circuit.u = u_xi.unitary * u_phi.unitary.adjoint();
  return circuit;
}

}  // namespace hptp
