#pragma once

#include "hptp/map.hpp"

#include <cstdint>
#include <vector>

namespace hptp {

/// Orthonormal Hermitian basis of C^{n x n} under the trace inner product
/// (generalized Gell-Mann construction). The first element is I/sqrt(n); all
/// others are traceless.
struct HermitianBasis {
  Index dim = 0;
  std::vector<Matrix> elements;
};

HermitianBasis hermitian_basis(Index n);

enum class SdpStatus { Converged, IterationLimit };

struct SdpSettings {
  double tol = 1e-7;
  int max_iters = 5000;  // per restart
  int restarts = 64;
  std::uint64_t seed = 0;  // restart stream seed
  double norm_cap = 1e6;   // Frobenius cap on the iterate X
};

/// Outcome of the feasibility program
///
///   min y  s.t.  y I + sum_k x_k (V_k (+) Psi(V_k)) >= 0,  sum_k x_k Tr(V_k) = 1.
///
/// y_star < 0 certifies a strictly positive witness pair (X, Psi(X));
/// y_star = 0 puts the map on the SN boundary; y_star > 0 rules SN out.
struct SdpResult {
  double y_star = 0.0;
  RealVector x;          // coordinates of the witness in the Hermitian basis
  Matrix witness_state;  // X = sum_k x_k V_k, Tr X = 1
  SdpStatus status = SdpStatus::Converged;
  int best_restart = 0;
  double restart_spread = 0.0;  // disagreement across converged restarts
  bool bundle_used = false;
  double certified_gap = 0.0;  // upper bound on y_true - y_star when bundle ran
  long evals = 0;              // objective evaluations across restarts and bundle
};

/// Solve the program by maximizing the concave function
/// f(X) = lambda_min(X (+) Psi(X)) over the trace-one Hermitian slice:
/// projected supergradient ascent with Polyak-style steps and deterministic
/// random restarts; a cutting-plane bundle stage certifies the result when
/// restarts disagree by more than tol. Requires a Hermitian Choi matrix
/// (trace preservation is not used by the program).
SdpResult solve_sn_program(const QuantumMap& map, const SdpSettings& settings = {},
                           const Tolerances& tol = {});

}  // namespace hptp
