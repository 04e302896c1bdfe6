#include "hptp/atlas.hpp"

#include "hptp/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

namespace hptp::atlas {

namespace {

/// Assemble a map from its images on the standard matrix units E_ij.
QuantumMap map_from_images(Index n, Index m, const std::function<Matrix(Index, Index)>& image) {
  Matrix transfer(m * m, n * n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) transfer.col(i * n + j) = vec(image(i, j));
  return QuantumMap::from_transfer(n, m, transfer);
}

Matrix complex_gaussian(Index rows, Index cols, Rng& rng) {
  Matrix g(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) g(i, j) = rng.next_complex_normal();
  return g;
}

void check_density(const Matrix& sigma, const char* who) {
  if (sigma.rows() != sigma.cols()) throw ParameterOutOfRange(std::string(who) + ": not square");
  if (!is_hermitian(sigma, 1e-9)) throw ParameterOutOfRange(std::string(who) + ": not Hermitian");
  if (std::abs(sigma.trace().real() - 1.0) > 1e-9)
    throw ParameterOutOfRange(std::string(who) + ": trace must be 1");
  if (min_eig_hermitian(sigma) < -1e-9)
    throw ParameterOutOfRange(std::string(who) + ": not positive semidefinite");
}

}  // namespace

QuantumMap identity_map(Index n) { return QuantumMap::identity(n); }

QuantumMap transpose_map(Index n) {
  Matrix choi = Matrix::Zero(n * n, n * n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) choi(a * n + b, b * n + a) = 1.0;  // the swap matrix
  return QuantumMap(n, n, std::move(choi));
}

QuantumMap example1_phi(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0 / 3.0))
    throw ParameterOutOfRange("example1_phi: lambda must lie in (0, 1/3]");
  const Vector v = vec(Matrix::Identity(2, 2));
  const Matrix choi = lambda * (v * v.adjoint()) + (1.0 - lambda) / 2.0 * Matrix::Identity(4, 4);
  return QuantumMap(2, 2, choi);
}

QuantumMap example1_xi(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0 / 3.0))
    throw ParameterOutOfRange("example1_xi: lambda must lie in (0, 1/3]");
  const Matrix choi =
      lambda * transpose_map(2).choi() + (1.0 - lambda) / 2.0 * Matrix::Identity(4, 4);
  return QuantumMap(2, 2, choi);
}

QuantumMap example2_psi() {
  return map_from_images(2, 2, [](Index i, Index j) {
    Matrix out = Matrix::Zero(2, 2);
    out(i, j) = 1.0;
    if (i == 1 && j == 1) {
      out(1, 1) = -1.0;
      out(0, 0) = 2.0;
    }
    return out;
  });
}

QuantumMap example2_phi() {
  Matrix e00 = Matrix::Zero(2, 2);
  e00(0, 0) = 1.0;
  Matrix e01 = Matrix::Zero(2, 2);
  e01(0, 1) = 1.0;
  return from_kraus({e00, e01}, 2, 2);
}

QuantumMap replacement(const Matrix& sigma) {
  check_density(sigma, "replacement");
  const Index n = sigma.rows();
  return QuantumMap(n, n, kron(sigma, Matrix::Identity(n, n)));
}

QuantumMap indefinite_replacement(const Matrix& d) {
  if (d.rows() != d.cols()) throw ParameterOutOfRange("indefinite_replacement: not square");
  if (!is_hermitian(d, 1e-9))
    throw ParameterOutOfRange("indefinite_replacement: matrix must be Hermitian");
  if (std::abs(d.trace().real() - 1.0) > 1e-9)
    throw ParameterOutOfRange("indefinite_replacement: trace must be 1 for a TP map");
  const Index n = d.rows();
  return QuantumMap(n, n, kron(d, Matrix::Identity(n, n)));
}

QuantumMap depolarizing(double p, Index n) {
  const double nn = static_cast<double>(n * n);
  if (p < 0.0 || p > nn / (nn - 1.0))
    throw ParameterOutOfRange("depolarizing: p outside the CP range [0, n^2/(n^2-1)]");
  const Vector v = vec(Matrix::Identity(n, n));
  const Matrix choi = (1.0 - p) * (v * v.adjoint()) +
                      (p / static_cast<double>(n)) * Matrix::Identity(n * n, n * n);
  return QuantumMap(n, n, choi);
}

QuantumMap unbounded_family(double k, Index n) {
  if (k < 0.0) throw ParameterOutOfRange("unbounded_family: k must be nonnegative");
  if (n < 2) throw ParameterOutOfRange("unbounded_family: n must be >= 2");
  Matrix z = Matrix::Zero(n, n);
  z(0, 0) = 1.0 / std::sqrt(2.0);
  z(1, 1) = -1.0 / std::sqrt(2.0);
  const Matrix sigma = Matrix::Identity(n, n) / static_cast<double>(n);
  // J(Tr(.)sigma) = sigma (x) I ; J(Tr(Z1 .)Z2) = Z2 (x) Z1^T
  const Matrix choi = kron(sigma, Matrix::Identity(n, n)) + k * kron(z, z.transpose());
  return QuantumMap(n, n, choi);
}

QuantumMap gamma_eps(double eps, Index n) {
  if (!(eps > 0.0 && eps < 1.0)) throw ParameterOutOfRange("gamma_eps: eps must lie in (0,1)");
  if (n < 2) throw ParameterOutOfRange("gamma_eps: n must be >= 2");
  Matrix d = Matrix::Zero(n, n);
  d(0, 0) = 1.0;
  for (Index j = 0; j < n - 1; ++j) d(j, j) += eps;
  d(n - 1, n - 1) -= eps * static_cast<double>(n - 1);
  return QuantumMap(n, n, kron(d, Matrix::Identity(n, n)));
}

QuantumMap phi_eps(double eps, Index n) {
  if (!(eps > 0.0 && eps <= 1.0)) throw ParameterOutOfRange("phi_eps: eps must lie in (0,1]");
  Matrix d = Matrix::Zero(n, n);
  d(0, 0) = 1.0 - eps;
  d += eps / static_cast<double>(n) * Matrix::Identity(n, n);
  return QuantumMap(n, n, kron(d, Matrix::Identity(n, n)));
}

Matrix random_hermitian(Index n, std::uint64_t seed) {
  Rng rng(seed);
  const Matrix g = complex_gaussian(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

Matrix random_density(Index n, std::uint64_t seed) {
  Rng rng(seed);
  const Matrix g = complex_gaussian(n, n, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return rho;
}

Vector random_pure_state(Index n, std::uint64_t seed) {
  Rng rng(seed);
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = rng.next_complex_normal();
  return v / v.norm();
}

QuantumMap random_cptp(Index n, Index m, std::uint64_t seed) {
  Rng rng(Rng(seed).split(0x1));
  const Matrix g = complex_gaussian(n * m, n * m, rng);
  const Matrix w = g * g.adjoint();
  // condition the input marginal to the identity
  const Matrix marginal = partial_trace(w, m, n, Factor::First);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(marginal);
  RealVector vals = solver.eigenvalues();
  for (Index k = 0; k < vals.size(); ++k) vals(k) = 1.0 / std::sqrt(vals(k));
  const Matrix inv_half = solver.eigenvectors() * vals.asDiagonal() * solver.eigenvectors().adjoint();
  const Matrix cond = kron(Matrix::Identity(m, m), inv_half);
  return QuantumMap(n, m, cond * w * cond.adjoint());
}

QuantumMap random_hptp(Index n, Index m, std::uint64_t seed) {
  Rng rng(Rng(seed).split(0x2));
  const Matrix g = complex_gaussian(n * m, n * m, rng);
  const Matrix h = 0.5 * (g + g.adjoint());
  // least-squares affine projection onto {Tr_out J = I}
  const Matrix defect = partial_trace(h, m, n, Factor::First) - Matrix::Identity(n, n);
  const Matrix choi = h - kron(Matrix::Identity(m, m), defect) / static_cast<double>(m);
  return QuantumMap(n, m, choi);
}

QuantumMap random_sp(Index n, std::uint64_t seed) {
  Rng root(seed);
  const std::uint64_t s1 = root.next_u64();
  const std::uint64_t s2 = root.next_u64();
  const QuantumMap xi = random_cptp(n, n, s1);
  const QuantumMap phi_raw = random_cptp(n, n, s2);
  const QuantumMap phi =
      add(scale(phi_raw, 0.5), scale(QuantumMap::identity(n), 0.5));  // forces invertibility
  return compose(xi, inverse(phi));
}

QuantumMap named_map(const MapRecipe& recipe) {
  std::string name = recipe.name;
  std::replace(name.begin(), name.end(), '-', '_');
  const auto param = [&](const char* key, std::optional<double> fallback =
                                              std::nullopt) -> double {
    const auto it = recipe.params.find(key);
    if (it != recipe.params.end()) return it->second;
    if (fallback) return *fallback;
    throw ParameterOutOfRange("named_map: missing parameter '" + std::string(key) + "' for " +
                              name);
  };
  const auto diag_matrix = [&]() -> Matrix {
    if (recipe.diag.empty())
      throw ParameterOutOfRange("named_map: recipe '" + name + "' needs diagonal entries");
    Matrix d = Matrix::Zero(recipe.diag.size(), recipe.diag.size());
    for (std::size_t i = 0; i < recipe.diag.size(); ++i) d(i, i) = recipe.diag[i];
    return d;
  };

  if (name == "identity") return identity_map(recipe.n);
  if (name == "transpose") return transpose_map(recipe.n);
  if (name == "example1_phi") return example1_phi(param("lambda"));
  if (name == "example1_xi") return example1_xi(param("lambda"));
  if (name == "example2_psi") return example2_psi();
  if (name == "example2_phi") return example2_phi();
  if (name == "replacement") return replacement(diag_matrix());
  if (name == "indefinite_replacement") return indefinite_replacement(diag_matrix());
  if (name == "depolarizing") return depolarizing(param("p"), recipe.n);
  if (name == "unbounded_family") return unbounded_family(param("k"), recipe.n);
  if (name == "gamma_eps") return gamma_eps(param("eps"), recipe.n);
  if (name == "phi_eps") return phi_eps(param("eps"), recipe.n);
  if (name == "random_cptp") return random_cptp(recipe.n, recipe.m, recipe.seed);
  if (name == "random_hptp") return random_hptp(recipe.n, recipe.m, recipe.seed);
  if (name == "random_sp") return random_sp(recipe.n, recipe.seed);
  throw UnknownRecipe("named_map: unknown recipe '" + recipe.name + "'");
}

std::vector<std::string> registered_recipes() {
  return {"identity",       "transpose",   "example1_phi", "example1_xi",
          "example2_psi",   "example2_phi", "replacement",  "indefinite_replacement",
          "depolarizing",   "unbounded_family", "gamma_eps", "phi_eps",
          "random_cptp",    "random_hptp", "random_sp"};
}

}  // namespace hptp::atlas
