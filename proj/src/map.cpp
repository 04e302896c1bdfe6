#include "hptp/map.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

#include <cmath>

namespace hptp {

QuantumMap::QuantumMap(Index dim_in, Index dim_out, Matrix choi)
    : dim_in_(dim_in), dim_out_(dim_out), choi_(std::move(choi)) {
  if (dim_in_ < 1 || dim_out_ < 1) throw DimensionMismatch("QuantumMap: dimensions must be >= 1");
  if (choi_.rows() != dim_in_ * dim_out_ || choi_.cols() != dim_in_ * dim_out_)
    throw DimensionMismatch("QuantumMap: Choi matrix has wrong shape");
  if (!choi_.allFinite()) throw Error("QuantumMap: Choi matrix has non-finite entries");
}

QuantumMap QuantumMap::identity(Index n) {
  const Vector v = vec(Matrix::Identity(n, n));
  return QuantumMap(n, n, v * v.adjoint());
}

QuantumMap QuantumMap::from_transfer(Index dim_in, Index dim_out, const Matrix& transfer) {
  const Index n = dim_in;
  const Index m = dim_out;
  if (transfer.rows() != m * m || transfer.cols() != n * n)
    throw DimensionMismatch("from_transfer: transfer matrix has wrong shape");
  Matrix choi(n * m, n * m);
  for (Index a = 0; a < m; ++a)
    for (Index i = 0; i < n; ++i)
      for (Index b = 0; b < m; ++b)
        for (Index j = 0; j < n; ++j) choi(a * n + i, b * n + j) = transfer(a * m + b, i * n + j);
  return QuantumMap(n, m, std::move(choi));
}

Matrix QuantumMap::transfer() const {
  const Index n = dim_in_;
  const Index m = dim_out_;
  Matrix k(m * m, n * n);
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b)
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) k(a * m + b, i * n + j) = choi_(a * n + i, b * n + j);
  return k;
}

Matrix QuantumMap::apply(const Matrix& x) const {
  const Index n = dim_in_;
  const Index m = dim_out_;
  if (x.rows() != n || x.cols() != n) throw DimensionMismatch("apply: input is not dim_in square");
  Matrix out = Matrix::Zero(m, m);
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b) {
      Complex acc = 0.0;
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) acc += choi_(a * n + i, b * n + j) * x(i, j);
      out(a, b) = acc;
    }
  return out;
}

bool is_hp(const QuantumMap& map, double eq_tol) { return is_hermitian(map.choi(), eq_tol); }

bool is_tp(const QuantumMap& map, double eq_tol) {
  const Matrix marginal = partial_trace(map.choi(), map.dim_out(), map.dim_in(), Factor::First);
  return max_abs_diff(marginal, Matrix::Identity(map.dim_in(), map.dim_in())) <= eq_tol;
}

bool is_cp(const QuantumMap& map, const Tolerances& tol) {
  if (!is_hp(map, tol.eq_tol)) throw NonHermitianChoi("is_cp: Choi matrix not Hermitian");
  return min_eig_hermitian(map.choi()) >= -tol.eig_tol;
}

bool is_hptp(const QuantumMap& map, double eq_tol) {
  return is_hp(map, eq_tol) && is_tp(map, eq_tol);
}

JordanHahnSplit jordan_hahn(const QuantumMap& map, const Tolerances& tol) {
  if (!is_hptp(map, tol.eq_tol)) throw NonHptpInput("jordan_hahn: map is not HPTP");
  const Index n = map.dim_in();
  const Index m = map.dim_out();
  const HermitianEig eig = eig_hermitian(map.choi(), tol.eq_tol);
  Matrix pos = Matrix::Zero(n * m, n * m);
  Matrix neg = Matrix::Zero(n * m, n * m);
  double trace_pos = 0.0;
  double trace_neg = 0.0;
  for (Index k = 0; k < eig.eigenvalues.size(); ++k) {
    const double lam = eig.eigenvalues(k);
    const Vector v = eig.eigenvectors.col(k);
    if (lam > tol.eig_tol) {
      pos += lam * (v * v.adjoint());
      trace_pos += lam;
    } else if (lam < -tol.eig_tol) {
      neg += (-lam) * (v * v.adjoint());
      trace_neg += -lam;
    }
  }
  const double p0 = trace_pos / static_cast<double>(n);
  const double p1 = trace_neg / static_cast<double>(n);
  QuantumMap phi0 = p0 > 0 ? QuantumMap(n, m, pos / p0) : QuantumMap(n, m, pos);
  QuantumMap phi1 = p1 > 0 ? QuantumMap(n, m, neg / p1) : QuantumMap(n, m, neg);
  return JordanHahnSplit{p0, std::move(phi0), p1, std::move(phi1)};
}

SignedKrausRep to_signed_kraus(const QuantumMap& map, const Tolerances& tol) {
  if (!is_hp(map, tol.eq_tol)) throw NonHermitianChoi("to_signed_kraus: Choi matrix not Hermitian");
  const Index n = map.dim_in();
  const Index m = map.dim_out();
  const HermitianEig eig = eig_hermitian(map.choi(), tol.eq_tol);
  SignedKrausRep rep;
  rep.dim_in = n;
  rep.dim_out = m;
  for (Index k = 0; k < eig.eigenvalues.size(); ++k) {
    const double lam = eig.eigenvalues(k);
    if (std::abs(lam) <= tol.eig_tol) continue;
    const Matrix op = std::sqrt(std::abs(lam)) * unvec(eig.eigenvectors.col(k), m, n);
    rep.terms.push_back({lam > 0 ? +1 : -1, op});
    if (lam > 0)
      rep.p0 += lam / static_cast<double>(n);
    else
      rep.p1 += -lam / static_cast<double>(n);
  }
  return rep;
}

QuantumMap from_signed_kraus(const SignedKrausRep& rep) {
  if (rep.dim_in < 1 || rep.dim_out < 1)
    throw DimensionMismatch("from_signed_kraus: dimensions must be >= 1");
  Matrix choi = Matrix::Zero(rep.dim_in * rep.dim_out, rep.dim_in * rep.dim_out);
  for (const auto& term : rep.terms) {
    if (term.op.rows() != rep.dim_out || term.op.cols() != rep.dim_in)
      throw DimensionMismatch("from_signed_kraus: operator shape mismatch");
    if (term.sign != 1 && term.sign != -1)
      throw Error("from_signed_kraus: sign must be +1 or -1");
    const Vector v = vec(term.op);
    choi += static_cast<double>(term.sign) * (v * v.adjoint());
  }
  return QuantumMap(rep.dim_in, rep.dim_out, std::move(choi));
}

QuantumMap from_kraus(const std::vector<Matrix>& ops, Index dim_in, Index dim_out) {
  SignedKrausRep rep;
  rep.dim_in = dim_in;
  rep.dim_out = dim_out;
  for (const auto& op : ops) rep.terms.push_back({+1, op});
  return from_signed_kraus(rep);
}

QuantumMap dual(const QuantumMap& map) {
  const Index n = map.dim_in();
  const Index m = map.dim_out();
  const Matrix k = map.transfer();
  Matrix kd(n * n, m * m);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index a = 0; a < m; ++a)
        for (Index b = 0; b < m; ++b) kd(i * n + j, a * m + b) = k(b * m + a, j * n + i);
  return QuantumMap::from_transfer(m, n, kd);
}

QuantumMap compose(const QuantumMap& f, const QuantumMap& g) {
  if (f.dim_in() != g.dim_out()) throw DimensionMismatch("compose: inner dimensions disagree");
  return QuantumMap::from_transfer(g.dim_in(), f.dim_out(), f.transfer() * g.transfer());
}

QuantumMap scale(const QuantumMap& map, double factor) {
  return QuantumMap(map.dim_in(), map.dim_out(), factor * map.choi());
}

QuantumMap add(const QuantumMap& a, const QuantumMap& b) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out())
    throw DimensionMismatch("add: dimension mismatch");
  return QuantumMap(a.dim_in(), a.dim_out(), a.choi() + b.choi());
}

QuantumMap inverse(const QuantumMap& map, const Tolerances& tol) {
  if (map.dim_in() != map.dim_out()) throw DimensionMismatch("inverse: map must be square");
  const Matrix k = map.transfer();
  Eigen::JacobiSVD<Matrix> svd(k);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  const double cond_cap = 1.0 / std::max(tol.eig_tol, 1e-300);
  if (smin <= 0.0 || smax / smin > cond_cap)
    throw SingularMap("inverse: transfer matrix is singular or ill-conditioned");
  const Matrix kinv = Eigen::PartialPivLU<Matrix>(k).inverse();
  return QuantumMap::from_transfer(map.dim_in(), map.dim_out(), kinv);
}

bool approx_equal(const QuantumMap& a, const QuantumMap& b, double eq_tol) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) return false;
  return max_abs_diff(a.choi(), b.choi()) <= eq_tol;
}

}  // namespace hptp
