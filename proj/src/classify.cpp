#include "hptp/classify.hpp"

#include "hptp/atlas.hpp"
#include "hptp/rng.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace hptp {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::NotHptp: return "NotHPTP";
    case Verdict::NonSnHptp: return "NonSN_HPTP";
    case Verdict::SnNotSp: return "SN_not_SP";
    case Verdict::SprNotSp: return "SPR_not_SP";
    case Verdict::Sp: return "SP";
    case Verdict::Positive: return "Positive";
    case Verdict::Cp: return "CP";
  }
  return "?";
}

const char* to_string(PositivityVerdict v) {
  switch (v) {
    case PositivityVerdict::False: return "False";
    case PositivityVerdict::ProbablyTrue: return "ProbablyTrue";
    case PositivityVerdict::True: return "True";
  }
  return "?";
}

namespace {

Matrix normalized_density(const Matrix& x) {
  const double tr = x.trace().real();
  return x / tr;
}

/// Strictly-positive witness for an SP verdict, re-checked by eig.
std::optional<Matrix> sp_witness_from(const QuantumMap& map, const SdpResult& sdp,
                                      const Tolerances& tol) {
  const Matrix rho = normalized_density(sdp.witness_state);
  if (min_eig_hermitian(rho) > tol.eig_tol && min_eig_hermitian(map.apply(rho)) > tol.eig_tol)
    return rho;
  return std::nullopt;
}

/// SN witness: clip the solver state to the PSD cone, then walk down the
/// rank ladder until both X and Psi(X) pass the exact eigenvalue check.
std::optional<Matrix> sn_witness_from(const QuantumMap& map, const SdpResult& sdp,
                                      const Tolerances& tol) {
  const Matrix x = 0.5 * (sdp.witness_state + sdp.witness_state.adjoint());
  const HermitianEig eig = eig_hermitian(x, 1e-8);
  const Index n = x.rows();
  Index rank = 0;
  while (rank < n && eig.eigenvalues(rank) > 0.0) ++rank;
  for (Index r = rank; r >= 1; --r) {
    Matrix cand = Matrix::Zero(n, n);
    double tr = 0.0;
    for (Index k = 0; k < r; ++k) {
      cand += eig.eigenvalues(k) * (eig.eigenvectors.col(k) * eig.eigenvectors.col(k).adjoint());
      tr += eig.eigenvalues(k);
    }
    if (tr <= 0.0) continue;
    cand /= tr;
    if (min_eig_hermitian(cand) >= -tol.eig_tol &&
        min_eig_hermitian(map.apply(cand)) >= -tol.eig_tol)
      return cand;
  }
  return std::nullopt;
}

void require_hptp(const QuantumMap& map, const Tolerances& tol, const char* who) {
  if (!is_hptp(map, tol.eq_tol)) throw NonHptpInput(std::string(who) + ": map is not HPTP");
}

/// Least-squares projection onto {Choi Hermitian, Tr_out J = I}; used to
/// scrub float dust off compressed maps before re-running the program.
QuantumMap hptp_project(const QuantumMap& map) {
  const Index n = map.dim_in();
  const Index m = map.dim_out();
  Matrix j = 0.5 * (map.choi() + map.choi().adjoint());
  const Matrix defect = partial_trace(j, m, n, Factor::First) - Matrix::Identity(n, n);
  j -= kron(Matrix::Identity(m, m), defect) / static_cast<double>(m);
  return QuantumMap(n, m, j);
}

/// Maximal output range K_Psi and the isometry onto it. The target rank comes
/// from the stacked images of a Hermitian basis (exact for any HP map); a
/// generic full-rank density realizing it is then found by Dirichlet draws,
/// escalating to the deterministic eps*X + I construction if they disagree.
Matrix output_range_isometry(const QuantumMap& map, const Tolerances& tol, Index& rank_out) {
  const Index n = map.dim_in();
  const Index m = map.dim_out();
  const HermitianBasis basis = hermitian_basis(n);
  Matrix stacked(m, m * static_cast<Index>(basis.elements.size()));
  for (std::size_t k = 0; k < basis.elements.size(); ++k)
    stacked.middleCols(static_cast<Index>(k) * m, m) = map.apply(basis.elements[k]);
  Eigen::ColPivHouseholderQR<Matrix> qr(stacked);
  qr.setThreshold(tol.eig_tol);
  const Index target = qr.rank();
  rank_out = target;
  if (target == m) return Matrix::Identity(m, m);  // nothing to compress

  const auto range_of = [&](const Matrix& rho) -> std::optional<Matrix> {
    const HermitianEig eig = eig_hermitian(map.apply(rho), 1e-8);
    std::vector<Index> keep;
    for (Index k = 0; k < eig.eigenvalues.size(); ++k)
      if (std::abs(eig.eigenvalues(k)) > tol.eig_tol) keep.push_back(k);
    if (static_cast<Index>(keep.size()) != target) return std::nullopt;
    Matrix w(m, target);
    for (Index k = 0; k < target; ++k) w.col(k) = eig.eigenvectors.col(keep[k]);
    return w;
  };

  Rng rng(0x5e11c0de);
  std::vector<std::optional<Matrix>> ranges;
  bool agree = true;
  for (int t = 0; t < 3; ++t) {
    const double weight = rng.next_double();
    const Matrix rho = weight * atlas::random_density(n, rng.next_u64()) +
                       (1.0 - weight) * Matrix::Identity(n, n) / static_cast<double>(n);
    ranges.push_back(range_of(rho));
    if (!ranges.back()) agree = false;
  }
  if (agree) return *ranges.front();

  // deterministic escalation: rho' = (eps X + I)/Tr with X generic Hermitian
  for (int j = 0; j < 64; ++j) {
    const Matrix x = atlas::random_hermitian(n, 0xe5ca1a7e + static_cast<std::uint64_t>(j));
    for (double eps = 0.5; eps > 1e-12; eps *= 0.5) {
      Matrix rho = eps * x + Matrix::Identity(n, n);
      if (min_eig_hermitian(rho) <= tol.eig_tol) continue;
      rho /= rho.trace().real();
      if (auto w = range_of(rho)) return *w;
    }
  }
  throw Error("output_range_isometry: could not realize the maximal output range");
}

/// SP after compressing the codomain onto K_Psi. Assumes the full-space
/// program already came back non-SP.
bool spr_by_reduction(const QuantumMap& map, const Tolerances& tol, const SdpSettings& sdp) {
  Index rank = 0;
  const Matrix w = output_range_isometry(map, tol, rank);
  if (rank == map.dim_out()) return false;  // no reduction available
  const Matrix lift = kron(w, Matrix::Identity(map.dim_in(), map.dim_in()));
  const QuantumMap compressed =
      hptp_project(QuantumMap(map.dim_in(), rank, lift.adjoint() * map.choi() * lift));
  return solve_sn_program(compressed, sdp, tol).y_star < -tol.sdp_tol;
}

}  // namespace

SpReport is_sp(const QuantumMap& map, const Tolerances& tol, const SdpSettings& sdp) {
  require_hptp(map, tol, "is_sp");
  SpReport report;
  report.sdp = solve_sn_program(map, sdp, tol);
  report.sp = report.sdp.y_star < -tol.sdp_tol;
  if (report.sp) report.witness = sp_witness_from(map, report.sdp, tol);
  return report;
}

SnReport is_sn(const QuantumMap& map, const Tolerances& tol, const SdpSettings& sdp) {
  require_hptp(map, tol, "is_sn");
  SnReport report;
  report.sdp = solve_sn_program(map, sdp, tol);
  report.sn = report.sdp.y_star <= tol.sdp_tol;
  if (report.sn) report.witness = sn_witness_from(map, report.sdp, tol);
  return report;
}

bool is_spr(const QuantumMap& map, const Tolerances& tol, const SdpSettings& sdp) {
  require_hptp(map, tol, "is_spr");
  const SdpResult full = solve_sn_program(map, sdp, tol);
  if (full.y_star < -tol.sdp_tol) return true;  // SP implies SPR
  return spr_by_reduction(map, tol, sdp);
}

PositivityReport is_positive(const QuantumMap& map, const Tolerances& tol,
                             const PositivitySettings& settings) {
  if (!is_hp(map, tol.eq_tol)) throw NonHptpInput("is_positive: map is not HP");
  PositivityReport report;
  if (is_cp(map, tol)) {
    report.verdict = PositivityVerdict::True;
    return report;
  }
  const Index n = map.dim_in();
  const QuantumMap adj = dual(map);
  const auto value_at = [&](const Vector& phi) {
    return min_eig_hermitian(map.apply(phi * phi.adjoint()));
  };

  double best = std::numeric_limits<double>::infinity();
  Vector best_phi;
  Rng rng(settings.seed ^ 0x90517e11);
  for (int s = 0; s < std::max(settings.starts, static_cast<int>(n)); ++s) {
    Vector phi;
    if (s < n) {
      phi = Vector::Zero(n);
      phi(s) = 1.0;
    } else {
      phi.resize(n);
      for (Index i = 0; i < n; ++i) phi(i) = rng.next_complex_normal();
      phi /= phi.norm();
    }
    double h = value_at(phi);
    double step = 0.25;
    for (int it = 0; it < settings.max_iters; ++it) {
      double lam;
      Vector w;
      min_eig_pair(map.apply(phi * phi.adjoint()), lam, w);
      const Vector g = adj.apply(w * w.adjoint()) * phi;
      const Vector g_t = g - phi * (phi.adjoint() * g)(0);
      if (g_t.norm() < 1e-12) break;
      bool moved = false;
      while (step > 1e-13) {
        Vector cand = phi - step * g_t;
        cand /= cand.norm();
        const double h_cand = value_at(cand);
        if (h_cand < h - 1e-12) {
          phi = cand;
          h = h_cand;
          moved = true;
          step *= 1.6;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
    if (h < best) {
      best = h;
      best_phi = phi;
    }
  }
  report.min_value = best;
  if (best < -tol.eig_tol) {
    report.verdict = PositivityVerdict::False;
    report.violator = Matrix(best_phi * best_phi.adjoint());
  } else {
    report.verdict = PositivityVerdict::ProbablyTrue;
  }
  return report;
}

MapClass classify(const QuantumMap& map, const Tolerances& tol, const SdpSettings& sdp,
                  const PositivitySettings& positivity) {
  MapClass out;
  out.hp = is_hp(map, tol.eq_tol);
  out.tp = is_tp(map, tol.eq_tol);
  if (!out.hp || !out.tp) {
    out.verdict = Verdict::NotHptp;
    return out;
  }
  out.cp = is_cp(map, tol);
  out.sdp = solve_sn_program(map, sdp, tol);
  out.sp = out.sdp->y_star < -tol.sdp_tol;
  out.sn = out.sdp->y_star <= tol.sdp_tol;
  if (out.sp) out.sp_witness = sp_witness_from(map, *out.sdp, tol);
  if (out.sn) out.sn_witness = sn_witness_from(map, *out.sdp, tol);

  out.spr = out.sp ? true : spr_by_reduction(map, tol, sdp);

  const PositivityReport pos = is_positive(map, tol, positivity);
  out.positive = pos.verdict;
  out.positivity_violator = pos.violator;

  if (out.cp)
    out.verdict = Verdict::Cp;
  else if (out.positive != PositivityVerdict::False)
    out.verdict = Verdict::Positive;
  else if (out.sp)
    out.verdict = Verdict::Sp;
  else if (out.spr)
    out.verdict = Verdict::SprNotSp;
  else if (out.sn)
    out.verdict = Verdict::SnNotSp;
  else
    out.verdict = Verdict::NonSnHptp;
  return out;
}

DichotomyReport duality_dichotomy(const QuantumMap& map, const Tolerances& tol,
                                  const SdpSettings& sdp) {
  require_hptp(map, tol, "duality_dichotomy");
  DichotomyReport report;
  report.sp_program = solve_sn_program(map, sdp, tol);
  // -Psi* is HP but not TP; the program never uses trace preservation
  const QuantumMap neg_dual = scale(dual(map), -1.0);
  report.dual_program = solve_sn_program(neg_dual, sdp, tol);

  const bool sp = report.sp_program.y_star < -tol.sdp_tol;
  const bool sn_dual = report.dual_program.y_star <= tol.sdp_tol;
  if (sp && !sn_dual) {
    report.branch = DichotomyBranch::SpSide;
    return report;
  }
  if (!sp && sn_dual) {
    report.branch = DichotomyBranch::SnDualSide;
    return report;
  }
  const double band = 10.0 * tol.sdp_tol;
  if (std::min(std::abs(report.sp_program.y_star), std::abs(report.dual_program.y_star)) <= band) {
    report.branch = DichotomyBranch::Inconclusive;
    return report;
  }
  throw DichotomyViolation("duality_dichotomy: both or neither branch holds outside the band");
}

}  // namespace hptp
