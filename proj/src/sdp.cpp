#include "hptp/sdp.hpp"

#include "hptp/rng.hpp"
#include "hptp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace hptp {

HermitianBasis hermitian_basis(Index n) {
  if (n < 1) throw DimensionMismatch("hermitian_basis: n must be >= 1");
  HermitianBasis basis;
  basis.dim = n;
  basis.elements.reserve(n * n);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  basis.elements.push_back(Matrix::Identity(n, n) / std::sqrt(static_cast<double>(n)));
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      Matrix sym = Matrix::Zero(n, n);
      sym(i, j) = inv_sqrt2;
      sym(j, i) = inv_sqrt2;
      basis.elements.push_back(std::move(sym));
    }
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      Matrix asym = Matrix::Zero(n, n);
      asym(i, j) = Complex(0.0, -inv_sqrt2);
      asym(j, i) = Complex(0.0, inv_sqrt2);
      basis.elements.push_back(std::move(asym));
    }
  for (Index l = 1; l < n; ++l) {
    Matrix diag = Matrix::Zero(n, n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (Index j = 0; j < l; ++j) diag(j, j) = norm;
    diag(l, l) = -static_cast<double>(l) * norm;
    basis.elements.push_back(std::move(diag));
  }
  return basis;
}

namespace {

/// Inner-loop eigenpair: closed form for 2x2, the direct (non-iterative)
/// solver for 3x3, iterative otherwise. The final reported y* is always
/// re-evaluated with the iterative solver.
void min_eig_pair_fast(const Matrix& a, double& value, Vector& eigvec) {
  if (a.rows() == 3) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> solver;
    solver.computeDirect(a);
    value = solver.eigenvalues()(0);
    eigvec = solver.eigenvectors().col(0);
    return;
  }
  min_eig_pair(a, value, eigvec);
}

double quadratic_form(const Vector& v, const Matrix& m) {
  Complex acc = 0.0;
  for (Index j = 0; j < m.cols(); ++j) {
    Complex col = 0.0;
    for (Index i = 0; i < m.rows(); ++i) col += std::conj(v(i)) * m(i, j);
    acc += col * v(j);
  }
  return acc.real();
}

/// f(x) = lambda_min(X (+) Psi(X)) on the trace-one slice x_0 = 1/sqrt(n).
class SliceObjective {
 public:
  SliceObjective(const QuantumMap& map, const HermitianBasis& basis) : map_(map), basis_(basis) {
    images_.reserve(basis.elements.size());
    for (const auto& v : basis.elements) images_.push_back(map.apply(v));
  }

  Index dim() const { return static_cast<Index>(basis_.elements.size()); }
  Index n() const { return basis_.dim; }

  Matrix state(const RealVector& x) const {
    Matrix out = Matrix::Zero(n(), n());
    for (Index k = 0; k < dim(); ++k) out += x(k) * basis_.elements[k];
    return out;
  }

  Matrix image(const RealVector& x) const {
    Matrix out = Matrix::Zero(map_.dim_out(), map_.dim_out());
    for (Index k = 0; k < dim(); ++k) out += x(k) * images_[k];
    return out;
  }

  double eval(const RealVector& x, RealVector* grad, double tie_window = 1e-11) const {
    ++evals_;
    const Matrix xs = state(x);
    const Matrix ps = image(x);
    double l1, l2;
    Vector u, w;
    min_eig_pair_fast(xs, l1, u);
    min_eig_pair_fast(ps, l2, w);
    const double f = std::min(l1, l2);
    if (grad) {
      grad->setZero(dim());
      const bool take1 = l1 <= l2 + tie_window;
      const bool take2 = l2 <= l1 + tie_window;
      if (take1 && take2) {
        // minimum-norm supergradient over the two-block active set;
        // kills the zigzag the plain active-block rule produces at the kink
        RealVector g1(dim()), g2(dim());
        for (Index k = 0; k < dim(); ++k) {
          g1(k) = quadratic_form(u, basis_.elements[k]);
          g2(k) = quadratic_form(w, images_[k]);
        }
        g1(0) = g2(0) = 0.0;
        const RealVector diff = g1 - g2;
        const double denom = diff.squaredNorm();
        double theta = denom > 1e-30 ? (g2.dot(g2) - g1.dot(g2)) / denom : 0.5;
        theta = std::clamp(theta, 0.0, 1.0);
        *grad = theta * g1 + (1.0 - theta) * g2;
      } else {
        const Vector& v = take1 ? u : w;
        const std::vector<Matrix>& mats = take1 ? basis_.elements : images_;
        for (Index k = 0; k < dim(); ++k) (*grad)(k) = quadratic_form(v, mats[k]);
        (*grad)(0) = 0.0;
      }
    }
    return f;
  }

  long evals() const { return evals_; }

 private:
  const QuantumMap& map_;
  const HermitianBasis& basis_;
  std::vector<Matrix> images_;
  mutable long evals_ = 0;
};

struct RestartOutcome {
  double f_best = -std::numeric_limits<double>::infinity();
  RealVector x_best;
  bool converged = false;
};

RestartOutcome ascend(const SliceObjective& obj, RealVector x, const SdpSettings& settings) {
  RestartOutcome out;
  out.x_best = x;
  double delta = 0.25;
  // restarts are cheap scouts; the bundle stage supplies the final precision
  const double delta_min = std::max(settings.tol * 10.0, 1e-12);
  // only improvements comparable to the current level reset the stall counter,
  // otherwise slow crawls pin delta at a coarse value for thousands of steps
  double marker = -std::numeric_limits<double>::infinity();
  int stall = 0;
  RealVector grad(obj.dim());
  for (int it = 0; it < settings.max_iters; ++it) {
    const double f = obj.eval(x, &grad, std::max(1e-12, 0.02 * delta));
    if (f > out.f_best) {
      out.f_best = f;
      out.x_best = x;
    }
    if (f > marker + 0.05 * delta) {
      marker = f;
      stall = 0;
    } else {
      ++stall;
    }
    const double gnorm2 = grad.squaredNorm();
    if (gnorm2 < 1e-26) {  // stationary (constant-image maps and exact optima)
      out.converged = true;
      return out;
    }
    if (stall > 5) {
      delta *= 0.5;
      stall = 0;
      marker = out.f_best;
      x = out.x_best;
      if (delta < delta_min) {
        out.converged = true;
        return out;
      }
      continue;
    }
    // Polyak step toward the level f_best + delta
    const double step = (out.f_best + delta - f) / gnorm2;
    x += step * grad;
    if (x.norm() > settings.norm_cap) return out;  // runaway iterate
  }
  return out;
}

struct Cut {
  double f;
  RealVector x;  // full coordinates
  RealVector g;  // full coordinates, g(0) == 0
};

/// Cutting-plane refinement around x_center. Maximizes the polyhedral upper
/// model of f over a box on the free coordinates, evaluating f at each model
/// maximizer. Returns a certified gap when the model max and the best value
/// meet within tol.
struct BundleOutcome {
  double f_best;
  RealVector x_best;
  double gap = std::numeric_limits<double>::infinity();
  bool certified = false;
};

BundleOutcome bundle_refine(const SliceObjective& obj, const RealVector& x_center,
                            std::vector<Cut> cuts, double tol) {
  const Index d = obj.dim() - 1;  // free coordinates 1..dim-1
  BundleOutcome out;
  out.f_best = -std::numeric_limits<double>::infinity();
  out.x_best = x_center;
  for (const auto& cut : cuts)
    if (cut.f > out.f_best) {
      out.f_best = cut.f;
      out.x_best = cut.x;
    }

  double radius = 2.0;
  const int rounds = 40 + 20 * static_cast<int>(d);
  for (int round = 0; round < rounds; ++round) {
    // keep the bundle small: drop the loosest cut once past the cap
    if (cuts.size() > 120) {
      std::size_t worst = 0;
      double worst_slack = -1.0;
      for (std::size_t i = 0; i < cuts.size(); ++i) {
        double value = cuts[i].f;
        for (Index j = 1; j < obj.dim(); ++j)
          value += cuts[i].g(j) * (out.x_best(j) - cuts[i].x(j));
        const double slack = value - out.f_best;
        if (slack > worst_slack) {
          worst_slack = slack;
          worst = i;
        }
      }
      cuts.erase(cuts.begin() + static_cast<std::ptrdiff_t>(worst));
    }
    // LP over z = (t_hat, u), u_j = x_j - center_j + radius ∈ [0, 2 radius]
    const Index rows = static_cast<Index>(cuts.size()) + d;
    RealMatrix a = RealMatrix::Zero(rows, d + 1);
    RealVector b(rows);
    double shift = std::numeric_limits<double>::infinity();
    std::vector<double> beta(cuts.size());
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      double value = cuts[i].f;
      for (Index j = 0; j < d; ++j)
        value += cuts[i].g(j + 1) * (x_center(j + 1) - radius - cuts[i].x(j + 1));
      beta[i] = value;
      shift = std::min(shift, value);
    }
    shift -= 1.0;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      a(static_cast<Index>(i), 0) = 1.0;
      for (Index j = 0; j < d; ++j) a(static_cast<Index>(i), j + 1) = -cuts[i].g(j + 1);
      b(static_cast<Index>(i)) = beta[i] - shift;
    }
    for (Index j = 0; j < d; ++j) {
      a(static_cast<Index>(cuts.size()) + j, j + 1) = 1.0;
      b(static_cast<Index>(cuts.size()) + j) = 2.0 * radius;
    }
    RealVector c = RealVector::Zero(d + 1);
    c(0) = 1.0;
    const detail::LpResult lp = detail::simplex_max(c, a, b);
    if (!lp.ok) return out;  // LP trouble: hand back uncertified

    const double model_max = lp.value + shift;
    bool on_boundary = false;
    RealVector x_new = x_center;
    for (Index j = 0; j < d; ++j) {
      const double u = lp.z(j + 1);
      if (u < 1e-9 || u > 2.0 * radius - 1e-9) on_boundary = true;
      x_new(j + 1) = x_center(j + 1) + u - radius;
    }

    Cut cut;
    cut.x = x_new;
    cut.g.resize(obj.dim());
    cut.f = obj.eval(x_new, &cut.g);
    cuts.push_back(cut);
    if (cut.f > out.f_best) {
      out.f_best = cut.f;
      out.x_best = x_new;
    } else {
      // stabilization: a cut halfway to the incumbent tames Kelley zigzag
      Cut mid;
      mid.x = 0.5 * (x_new + out.x_best);
      mid.g.resize(obj.dim());
      mid.f = obj.eval(mid.x, &mid.g);
      if (mid.f > out.f_best) {
        out.f_best = mid.f;
        out.x_best = mid.x;
      }
      cuts.push_back(std::move(mid));
    }
    out.gap = model_max - out.f_best;
    if (out.gap <= tol && !on_boundary) {
      out.certified = true;
      return out;
    }
    if (on_boundary && radius < 64.0) radius *= 2.0;
  }
  return out;
}

}  // namespace

SdpResult solve_sn_program(const QuantumMap& map, const SdpSettings& settings,
                           const Tolerances& tol) {
  if (!is_hp(map, tol.eq_tol))
    throw NonHptpInput("solve_sn_program: Choi matrix not Hermitian");
  const Index n = map.dim_in();
  const HermitianBasis basis = hermitian_basis(n);
  const SliceObjective obj(map, basis);
  const double trace_coord = 1.0 / std::sqrt(static_cast<double>(n));

  std::vector<RestartOutcome> outcomes;
  outcomes.reserve(settings.restarts);
  Rng root(settings.seed);
  const double scout_band = std::max(100.0 * settings.tol, 1e-6);
  for (int r = 0; r < std::max(1, settings.restarts); ++r) {
    RealVector x0 = RealVector::Zero(obj.dim());
    x0(0) = trace_coord;  // X = I/n, always feasible
    if (r > 0) {
      Rng stream = root.split(static_cast<std::uint64_t>(r));
      for (Index k = 1; k < obj.dim(); ++k) x0(k) = 0.5 * stream.next_normal();
    }
    outcomes.push_back(ascend(obj, std::move(x0), settings));
    // the objective is concave, so restarts only hedge nonconvergence; once a
    // prefix of scouts lands together the remaining budget is redundant
    if (r >= 15) {
      double hi = -std::numeric_limits<double>::infinity();
      double lo = std::numeric_limits<double>::infinity();
      bool all_converged = true;
      for (const auto& oc : outcomes) {
        hi = std::max(hi, oc.f_best);
        lo = std::min(lo, oc.f_best);
        all_converged = all_converged && oc.converged;
      }
      if (all_converged && hi - lo <= scout_band) break;
    }
  }

  int best = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r)
    if (outcomes[r].f_best > outcomes[best].f_best) best = static_cast<int>(r);

  double spread = 0.0;
  for (const auto& oc : outcomes)
    if (oc.converged) spread = std::max(spread, outcomes[best].f_best - oc.f_best);

  SdpResult result;
  result.best_restart = best;
  result.restart_spread = spread;
  RealVector x_best = outcomes[best].x_best;
  double f_best = outcomes[best].f_best;
  bool certified = outcomes[best].converged && spread <= settings.tol;

  if (!certified) {
    // restarts disagree (or the winner never settled): certify with a bundle
    std::vector<Cut> cuts;
    for (const auto& oc : outcomes) {
      if (!std::isfinite(oc.f_best)) continue;
      Cut cut;
      cut.x = oc.x_best;
      cut.g.resize(obj.dim());
      cut.f = obj.eval(oc.x_best, &cut.g);
      cuts.push_back(std::move(cut));
      if (cuts.size() >= 16) break;
    }
    const BundleOutcome bundle = bundle_refine(obj, x_best, std::move(cuts), settings.tol);
    result.bundle_used = true;
    result.certified_gap = bundle.gap;
    if (bundle.f_best > f_best) {
      f_best = bundle.f_best;
      x_best = bundle.x_best;
    }
    certified = bundle.certified;
  }

  // exact re-evaluation at the winner (full-precision eigensolver)
  const Matrix xs = obj.state(x_best);
  const Matrix ps = obj.image(x_best);
  Eigen::SelfAdjointEigenSolver<Matrix> sx(xs, Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Matrix> sp(ps, Eigen::EigenvaluesOnly);
  const double f_exact = std::min(sx.eigenvalues()(0), sp.eigenvalues()(0));

  result.y_star = -f_exact;
  result.x = x_best;
  result.witness_state = xs;
  result.status = certified ? SdpStatus::Converged : SdpStatus::IterationLimit;
  result.evals = obj.evals();
  return result;
}

}  // namespace hptp
