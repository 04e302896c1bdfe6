#include "hptp/qec.hpp"

#include "hptp/sdp.hpp"

#include <cmath>
#include <vector>

namespace hptp {

CodeSpace make_code_space(const Matrix& projector, const Tolerances& tol) {
  if (projector.rows() != projector.cols())
    throw DimensionMismatch("make_code_space: projector must be square");
  if (!is_hermitian(projector, tol.eq_tol))
    throw NonHermitianInput("make_code_space: projector must be Hermitian");
  if (max_abs(projector * projector - projector) > 1e-8)
    throw Error("make_code_space: projector is not idempotent");
  CodeSpace code;
  code.ambient_dim = projector.rows();
  code.projector = projector;
  code.code_dim = static_cast<Index>(std::lround(projector.trace().real()));
  if (code.code_dim < 1) throw Error("make_code_space: projector has rank zero");
  return code;
}

KlReport check_kl(const CodeSpace& code, const SignedKrausRep& noise, const Tolerances& tol) {
  const Index dim = code.ambient_dim;
  if (noise.dim_in != dim || noise.dim_out != dim)
    throw DimensionMismatch("check_kl: noise does not act on the ambient dimension");
  const Index t = static_cast<Index>(noise.terms.size());
  const double k = static_cast<double>(code.code_dim);
  KlReport report;
  report.alpha = Matrix::Zero(t, t);
  report.max_violation = 0.0;
  for (Index i = 0; i < t; ++i)
    for (Index j = 0; j < t; ++j) {
      const Matrix m = code.projector * noise.terms[i].op * noise.terms[j].op.adjoint() *
                       code.projector;
      const Complex alpha = m.trace() / k;
      report.alpha(i, j) = alpha;
      report.max_violation =
          std::max(report.max_violation, max_abs(m - alpha * code.projector));
    }
  report.satisfied = report.max_violation <= tol.eq_tol;
  return report;
}

RecoveryPlan build_recovery(const CodeSpace& code, const SignedKrausRep& noise,
                            const KlReport& report, const Tolerances& tol) {
  if (!report.satisfied)
    throw KlViolated("build_recovery: the code/noise pair violates the Knill-Laflamme condition");
  const Index dim = code.ambient_dim;
  Matrix normalization = Matrix::Zero(dim, dim);
  for (const auto& term : noise.terms)
    normalization += static_cast<double>(term.sign) * term.op.adjoint() * term.op;
  if (max_abs_diff(normalization, Matrix::Identity(dim, dim)) > tol.eq_tol)
    throw Error("build_recovery: noise is not TP-normalized (sum sign E^dag E != I)");

  // group terms by sign; diagonalize alpha within each sector
  std::vector<Index> plus_idx, minus_idx;
  for (Index i = 0; i < static_cast<Index>(noise.terms.size()); ++i)
    (noise.terms[i].sign > 0 ? plus_idx : minus_idx).push_back(i);
  for (Index i : plus_idx)
    for (Index j : minus_idx)
      if (std::abs(report.alpha(i, j)) > tol.eq_tol)
        throw SignSectorObstruction(
            "build_recovery: alpha couples the +1 and -1 sign sectors");

  std::vector<Matrix> transformed_ops;
  std::vector<double> diag_alpha;
  std::vector<int> signs;
  const auto diagonalize_sector = [&](const std::vector<Index>& idx, int sign) {
    if (idx.empty()) return;
    const Index s = static_cast<Index>(idx.size());
    Matrix block(s, s);
    for (Index a = 0; a < s; ++a)
      for (Index b = 0; b < s; ++b) block(a, b) = report.alpha(idx[a], idx[b]);
    const HermitianEig eig = eig_hermitian(block, 1e-8);
    for (Index kcol = 0; kcol < s; ++kcol) {
      Matrix op = Matrix::Zero(dim, dim);
      for (Index a = 0; a < s; ++a)
        op += std::conj(eig.eigenvectors(a, kcol)) * noise.terms[idx[a]].op;
      transformed_ops.push_back(std::move(op));
      diag_alpha.push_back(eig.eigenvalues(kcol));
      signs.push_back(sign);
    }
  };
  diagonalize_sector(plus_idx, +1);
  diagonalize_sector(minus_idx, -1);

  double signed_alpha_sum = 0.0;
  for (std::size_t k = 0; k < diag_alpha.size(); ++k) signed_alpha_sum += signs[k] * diag_alpha[k];

  std::vector<Index> skipped;
  std::vector<Matrix> kraus;
  std::vector<Matrix> projectors;
  for (std::size_t k = 0; k < transformed_ops.size(); ++k) {
    if (diag_alpha[k] <= tol.eig_tol) {
      skipped.push_back(static_cast<Index>(k));
      continue;
    }
    const Matrix u_k = polar_unitary_on_subspace(transformed_ops[k], code.projector, tol.eig_tol);
    const Matrix p_k = u_k * code.projector * u_k.adjoint();
    kraus.push_back(u_k.adjoint() * p_k);
    projectors.push_back(p_k);
  }
  for (std::size_t a = 0; a < projectors.size(); ++a)
    for (std::size_t b = a + 1; b < projectors.size(); ++b)
      if (max_abs(projectors[a] * projectors[b]) > 1e-8)
        throw KlViolated(
            "build_recovery: syndrome projectors overlap; the E E^dag form of the condition "
            "held but the E^dag E form it relies on does not");

  Matrix complement = Matrix::Identity(dim, dim);
  for (const auto& p_k : projectors) complement -= p_k;
  if (max_abs(complement) > tol.eig_tol) kraus.push_back(complement);

  return RecoveryPlan{from_kraus(kraus, dim, dim), std::move(kraus), std::move(diag_alpha),
                      std::move(signs), std::move(skipped), signed_alpha_sum};
}

RecoveryCheck verify_recovery(const RecoveryPlan& plan, const SignedKrausRep& noise,
                              const CodeSpace& code, const Tolerances& tol) {
  const QuantumMap noise_map = from_signed_kraus(noise);
  RecoveryCheck check;
  check.signed_alpha_sum = plan.signed_alpha_sum;

  // orthonormal code basis from the projector's unit eigenspace
  const HermitianEig eig = eig_hermitian(code.projector, 1e-8);
  Matrix code_basis(code.ambient_dim, code.code_dim);
  Index found = 0;
  for (Index k = 0; k < eig.eigenvalues.size() && found < code.code_dim; ++k)
    if (eig.eigenvalues(k) > 0.5) code_basis.col(found++) = eig.eigenvectors.col(k);

  const HermitianBasis sigma_basis = hermitian_basis(code.code_dim);
  for (const auto& sigma : sigma_basis.elements) {
    const Matrix embedded = code_basis * sigma * code_basis.adjoint();  // = P sigma P
    const Matrix recovered = plan.recovery.apply(noise_map.apply(embedded));
    check.residual = std::max(check.residual, max_abs_diff(recovered, embedded));
  }
  check.pass = check.residual <= tol.eq_tol;
  return check;
}

std::optional<QuantumMap> inverse_recovery_shortcut(const SignedKrausRep& noise,
                                                    const Tolerances& tol) {
  const QuantumMap noise_map = from_signed_kraus(noise);
  if (noise_map.dim_in() != noise_map.dim_out()) return std::nullopt;
  try {
    QuantumMap candidate = inverse(noise_map, tol);
    if (!is_hp(candidate, tol.eq_tol)) return std::nullopt;
    if (!is_cp(candidate, tol) || !is_tp(candidate, tol.eq_tol)) return std::nullopt;
    return candidate;
  } catch (const SingularMap&) {
    return std::nullopt;
  }
}

}  // namespace hptp
