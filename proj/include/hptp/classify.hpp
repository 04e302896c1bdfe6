#pragma once

#include "hptp/sdp.hpp"

#include <optional>

namespace hptp {

/// Most specific class within CP <= P <= SPR <= SN <= HPTP (and SP <= SPR).
enum class Verdict { NotHptp, NonSnHptp, SnNotSp, SprNotSp, Sp, Positive, Cp };

/// Positivity checking is sound for rejection but only probabilistic for
/// acceptance; True is returned when CP already certifies it.
enum class PositivityVerdict { False, ProbablyTrue, True };

const char* to_string(Verdict v);
const char* to_string(PositivityVerdict v);

struct MapClass {
  Verdict verdict = Verdict::NotHptp;
  bool hp = false;
  bool tp = false;
  bool cp = false;
  PositivityVerdict positive = PositivityVerdict::False;
  bool sp = false;
  bool spr = false;
  bool sn = false;
  std::optional<Matrix> sp_witness;           // strictly positive density
  std::optional<Matrix> sn_witness;           // density with Psi(rho) >= 0
  std::optional<Matrix> positivity_violator;  // pure state with indefinite image
  std::optional<SdpResult> sdp;
};

struct PositivitySettings {
  int starts = 64;
  int max_iters = 300;
  std::uint64_t seed = 0;
};

struct SpReport {
  bool sp = false;
  std::optional<Matrix> witness;
  SdpResult sdp;
};

struct SnReport {
  bool sn = false;
  std::optional<Matrix> witness;
  SdpResult sdp;
};

struct PositivityReport {
  PositivityVerdict verdict = PositivityVerdict::ProbablyTrue;
  std::optional<Matrix> violator;  // pure state rho = phi phi^dag
  double min_value = 0.0;          // smallest lambda_min(Psi(phi phi^dag)) found
};

/// SP test: y* < -sdp_tol with the witness upgraded to a strictly positive
/// density matrix. Requires HPTP.
SpReport is_sp(const QuantumMap& map, const Tolerances& tol = {}, const SdpSettings& sdp = {});

/// SN test: y* <= +sdp_tol; near the boundary the witness is re-validated by
/// an exact eigenvalue check. Requires HPTP.
SnReport is_sn(const QuantumMap& map, const Tolerances& tol = {}, const SdpSettings& sdp = {});

/// SP after compressing the codomain onto the maximal output range K_Psi
/// (range of Psi(rho) for a generic invertible density rho).
bool is_spr(const QuantumMap& map, const Tolerances& tol = {}, const SdpSettings& sdp = {});

/// Multi-start minimization of lambda_min(Psi(phi phi^dag)) over unit phi.
PositivityReport is_positive(const QuantumMap& map, const Tolerances& tol = {},
                             const PositivitySettings& settings = {});

MapClass classify(const QuantumMap& map, const Tolerances& tol = {}, const SdpSettings& sdp = {},
                  const PositivitySettings& positivity = {});

enum class DichotomyBranch { SpSide, SnDualSide, Inconclusive };

struct DichotomyReport {
  DichotomyBranch branch = DichotomyBranch::Inconclusive;
  SdpResult sp_program;    // program for Psi
  SdpResult dual_program;  // program for -Psi*
};

/// Exactly one of {Psi is SP, -Psi* is SN} holds. Near-boundary inputs are
/// reported Inconclusive; a disagreement outside the tolerance band throws
/// DichotomyViolation.
DichotomyReport duality_dichotomy(const QuantumMap& map, const Tolerances& tol = {},
                                  const SdpSettings& sdp = {});

}  // namespace hptp
