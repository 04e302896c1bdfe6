#pragma once

#include "hptp/map.hpp"

#include <optional>
#include <vector>

namespace hptp {

struct CodeSpace {
  Index ambient_dim = 0;
  Matrix projector;
  Index code_dim = 0;
};

/// Validates Hermiticity, idempotence and rank of the projector.
CodeSpace make_code_space(const Matrix& projector, const Tolerances& tol = {});

/// Condition P E_i E_j^dag P = alpha_ij P for every pair of noise terms.
/// Note the E_i E_j^dag ordering: the variant with E_i^dag E_j coincides for
/// self-adjoint noise operators (Pauli-type corpora) but not in general; the
/// recovery construction relies on the adjoint form and cross-checks it.
struct KlReport {
  Matrix alpha;                // Hermitian, indexed by noise terms
  double max_violation = 0.0;  // max-entry residual over all pairs
  bool satisfied = false;
};

KlReport check_kl(const CodeSpace& code, const SignedKrausRep& noise, const Tolerances& tol = {});

/// Syndrome-recovery channel built from the polar decompositions
/// E_k P = sqrt(alpha_kk) U_k P, with R_k = U_k^dag P_k and a projector onto
/// the unused complement appended so the map is exactly CPTP.
struct RecoveryPlan {
  QuantumMap recovery;
  std::vector<Matrix> kraus;
  std::vector<double> diagonalized_alpha;
  std::vector<int> signs;                // per diagonalized term
  std::vector<Index> skipped_terms;      // indices with alpha_kk <= eig_tol
  double signed_alpha_sum = 0.0;         // sum_i sign(i) alpha_ii
};

/// alpha is diagonalized within each sign sector; coupling between the +1 and
/// -1 sectors beyond eq_tol throws SignSectorObstruction. The noise must be
/// TP-normalized (sum sign E^dag E = I); unnormalized input is rejected.
RecoveryPlan build_recovery(const CodeSpace& code, const SignedKrausRep& noise,
                            const KlReport& report, const Tolerances& tol = {});

struct RecoveryCheck {
  double residual = 0.0;  // max over a code-operator basis of |R(N(P s P)) - P s P|
  double signed_alpha_sum = 0.0;
  bool pass = false;
};

RecoveryCheck verify_recovery(const RecoveryPlan& plan, const SignedKrausRep& noise,
                              const CodeSpace& code, const Tolerances& tol = {});

/// R = N^{-1} when the inverse exists and is CPTP; no code space needed.
/// Empty when the noise is singular or the inverse fails CP/TP.
std::optional<QuantumMap> inverse_recovery_shortcut(const SignedKrausRep& noise,
                                                    const Tolerances& tol = {});

}  // namespace hptp
