#pragma once

#include "hptp/classify.hpp"

#include <optional>
#include <utility>

namespace hptp {

/// Realization Psi = Xi o Phi^{-1} with Phi(x) = lambda x + (1-lambda) Tr(x) rho
/// and Xi = Psi o Phi, both CPTP, rho an invertible density matrix.
struct SpDecomposition {
  QuantumMap phi;
  QuantumMap xi;
  double lambda = 0.0;
  Matrix rho;
};

/// Factorization Psi o Phi = Xi with Phi(x) = Tr(x) rho and
/// Xi(x) = Tr(x) Psi(rho), both CPTP.
struct SnDecomposition {
  QuantumMap phi;
  QuantumMap xi;
  Matrix rho;
};

/// Construct the SP decomposition, choosing the largest lambda in (0,1] that
/// keeps J(Xi_lambda) PSD (bisection to width 1e-12; the closed endpoint is
/// accepted). When rho is absent the SDP witness anchors the construction.
SpDecomposition sp_decompose(const QuantumMap& map, std::optional<Matrix> rho = std::nullopt,
                             const Tolerances& tol = {}, const SdpSettings& sdp = {});

SnDecomposition sn_decompose(const QuantumMap& map, const Tolerances& tol = {},
                             const SdpSettings& sdp = {});

/// Split an HPTP map as the average of two SP maps (convex-hull construction
/// over a Hermitian basis with two invertible density elements).
std::pair<QuantumMap, QuantumMap> convex_split(const QuantumMap& map, const Tolerances& tol = {});

struct SpVerification {
  double residual = 0.0;  // max-entry Choi distance of Xi o Phi^{-1} from the target
  bool phi_cp = false, phi_tp = false;
  bool xi_cp = false, xi_tp = false;
  double xi_choi_min_eig = 0.0;
  bool pass = false;
};

SpVerification verify_sp_decomposition(const SpDecomposition& d, const QuantumMap& target,
                                       const Tolerances& tol = {});

/// Fraction of the state space covered by Range(Phi): lambda^(n^2-1); for
/// qubits the Bloch ball shrinks radially by lambda, giving lambda^3.
double coverage_ratio(const SpDecomposition& d, const Tolerances& tol = {});

}  // namespace hptp
