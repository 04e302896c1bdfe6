#include "hptp/decompose.hpp"

#include <Eigen/LU>

#include <cmath>

namespace hptp {

namespace {

Matrix replacement_choi(const Matrix& target, Index dim_in) {
  // Choi of x -> Tr(x) * target
  return kron(target, Matrix::Identity(dim_in, dim_in));
}

Matrix xi_lambda_choi(const QuantumMap& map, const Matrix& psi_rho, double lambda) {
  return lambda * map.choi() + (1.0 - lambda) * replacement_choi(psi_rho, map.dim_in());
}

Matrix phi_lambda_choi(Index n, const Matrix& rho, double lambda) {
  const Vector v = vec(Matrix::Identity(n, n));
  return lambda * (v * v.adjoint()) + (1.0 - lambda) * replacement_choi(rho, n);
}

}  // namespace

SpDecomposition sp_decompose(const QuantumMap& map, std::optional<Matrix> rho,
                             const Tolerances& tol, const SdpSettings& sdp) {
  if (!is_hptp(map, tol.eq_tol)) throw NonHptpInput("sp_decompose: map is not HPTP");
  const Index n = map.dim_in();

  Matrix anchor;
  if (rho) {
    anchor = *rho;
    if (anchor.rows() != n || anchor.cols() != n)
      throw InvalidAnchor("sp_decompose: rho has wrong dimension");
    if (!is_hermitian(anchor, tol.eq_tol) || std::abs(anchor.trace().real() - 1.0) > 1e-6 ||
        min_eig_hermitian(anchor) <= tol.eig_tol)
      throw InvalidAnchor("sp_decompose: rho is not a strictly positive density matrix");
    if (min_eig_hermitian(map.apply(anchor)) <= tol.eig_tol)
      throw InvalidAnchor("sp_decompose: Psi(rho) is not strictly positive");
  } else {
    const SpReport report = is_sp(map, tol, sdp);
    if (!report.sp) throw NotSp("sp_decompose: map does not classify SP");
    Matrix clipped = psd_clip(report.sdp.witness_state, tol.eig_tol);
    clipped /= clipped.trace().real();
    anchor = 0.99 * clipped + 0.01 * Matrix::Identity(n, n) / static_cast<double>(n);
    if (min_eig_hermitian(anchor) <= 0.0 || min_eig_hermitian(map.apply(anchor)) <= 0.0)
      throw InvalidAnchor("sp_decompose: derived anchor failed the strict positivity check");
  }

  const Matrix psi_rho = map.apply(anchor);
  // boundary PSD is accepted, but only to float precision: the bisection pins
  // lambda* so tightly that a loose floor would overshoot the CP boundary
  const auto psd_at = [&](double lambda) {
    return min_eig_hermitian(xi_lambda_choi(map, psi_rho, lambda)) >= -1e-12;
  };

  double lambda = 1.0;
  if (!psd_at(1.0)) {
    double lo = 0.0;
    double hi = 1.0;
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      if (psd_at(mid))
        lo = mid;
      else
        hi = mid;
    }
    lambda = lo;
  }

  SpDecomposition d{QuantumMap(n, n, phi_lambda_choi(n, anchor, lambda)),
                    QuantumMap(n, map.dim_out(), xi_lambda_choi(map, psi_rho, lambda)), lambda,
                    anchor};
  const SpVerification check = verify_sp_decomposition(d, map, tol);
  if (!check.pass) throw Error("sp_decompose: constructed decomposition failed verification");
  return d;
}

SnDecomposition sn_decompose(const QuantumMap& map, const Tolerances& tol,
                             const SdpSettings& sdp) {
  if (!is_hptp(map, tol.eq_tol)) throw NonHptpInput("sn_decompose: map is not HPTP");
  const SnReport report = is_sn(map, tol, sdp);
  if (!report.sn || !report.witness)
    throw NotSn("sn_decompose: map does not classify SN with a validated witness");
  const Matrix& rho = *report.witness;
  const Index n = map.dim_in();
  SnDecomposition d{QuantumMap(n, n, replacement_choi(psd_clip(rho), n)),
                    QuantumMap(n, map.dim_out(), replacement_choi(psd_clip(map.apply(rho)), n)),
                    rho};
  const QuantumMap recomposed = compose(map, d.phi);
  if (max_abs_diff(recomposed.choi(), d.xi.choi()) > 10.0 * tol.eq_tol + 1e-8)
    throw Error("sn_decompose: Psi o Phi differs from Xi beyond tolerance");
  return d;
}

std::pair<QuantumMap, QuantumMap> convex_split(const QuantumMap& map, const Tolerances& tol) {
  if (!is_hptp(map, tol.eq_tol)) throw NonHptpInput("convex_split: map is not HPTP");
  const Index n = map.dim_in();
  const Index m = map.dim_out();
  if (n < 2) throw UnsupportedForm("convex_split: input dimension must be >= 2");

  // Hermitian basis with two invertible density elements up front.
  Matrix g = Matrix::Zero(n, n);
  g(0, 0) = 1.0;
  g(1, 1) = -1.0;  // operator norm 1
  const Matrix h1 = Matrix::Identity(n, n) / static_cast<double>(n);
  const Matrix h2 = (Matrix::Identity(n, n) + 0.5 * g) / static_cast<double>(n);

  const HermitianBasis ggm = hermitian_basis(n);
  std::vector<Matrix> h_basis{h1, h2};
  const Index diag1_index = 1 + n * (n - 1);  // first traceless diagonal element
  for (Index k = 0; k < static_cast<Index>(ggm.elements.size()); ++k) {
    if (k == 0 || k == diag1_index) continue;  // span{I, G} is covered by h1, h2
    Matrix e = ggm.elements[k];
    // Gram-Schmidt against span{h1, h2} under the trace inner product
    const Matrix u1 = ggm.elements[0];
    const Matrix u2 = ggm.elements[diag1_index];
    e -= (u1.adjoint() * e).trace().real() * u1;
    e -= (u2.adjoint() * e).trace().real() * u2;
    h_basis.push_back(std::move(e));
  }

  const Matrix rho_target = Matrix::Identity(m, m) / static_cast<double>(m);
  Matrix basis_cols(n * n, n * n);
  Matrix img1(m * m, n * n);
  Matrix img2(m * m, n * n);
  for (Index k = 0; k < static_cast<Index>(h_basis.size()); ++k) {
    basis_cols.col(k) = vec(h_basis[k]);
    Matrix image1, image2;
    if (k == 0) {
      image1 = rho_target;
      image2 = 2.0 * map.apply(h_basis[k]) - rho_target;
    } else if (k == 1) {
      image1 = 2.0 * map.apply(h_basis[k]) - rho_target;
      image2 = rho_target;
    } else {
      image1 = map.apply(h_basis[k]);
      image2 = image1;
    }
    img1.col(k) = vec(image1);
    img2.col(k) = vec(image2);
  }
  const Eigen::PartialPivLU<Matrix> lu(basis_cols);
  const Matrix binv = lu.inverse();
  QuantumMap psi1 = QuantumMap::from_transfer(n, m, img1 * binv);
  QuantumMap psi2 = QuantumMap::from_transfer(n, m, img2 * binv);

  const QuantumMap mid = scale(add(psi1, psi2), 0.5);
  if (max_abs_diff(mid.choi(), map.choi()) > 10.0 * tol.eq_tol)
    throw Error("convex_split: halves do not average back to the input");
  return {std::move(psi1), std::move(psi2)};
}

SpVerification verify_sp_decomposition(const SpDecomposition& d, const QuantumMap& target,
                                       const Tolerances& tol) {
  SpVerification out;
  const QuantumMap reconstructed = compose(d.xi, inverse(d.phi, tol));
  out.residual = max_abs_diff(reconstructed.choi(), target.choi());
  out.phi_cp = is_cp(d.phi, tol);
  out.phi_tp = is_tp(d.phi, tol.eq_tol);
  out.xi_cp = is_cp(d.xi, tol);
  out.xi_tp = is_tp(d.xi, tol.eq_tol);
  out.xi_choi_min_eig = min_eig_hermitian(d.xi.choi());
  out.pass = out.residual <= 10.0 * tol.eq_tol && out.phi_cp && out.phi_tp && out.xi_cp &&
             out.xi_tp;
  return out;
}

double coverage_ratio(const SpDecomposition& d, const Tolerances& tol) {
  const Index n = d.phi.dim_in();
  const Matrix expected = phi_lambda_choi(n, d.rho, d.lambda);
  if (max_abs_diff(expected, d.phi.choi()) > 10.0 * tol.eq_tol)
    throw UnsupportedForm("coverage_ratio: Phi is not of the affine form lambda x + (1-lambda)Tr(x)rho");
  return std::pow(d.lambda, static_cast<double>(n * n - 1));
}

}  // namespace hptp
