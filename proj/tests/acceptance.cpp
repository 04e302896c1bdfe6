// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run through ctest or directly; every tolerance is pinned here.

#include "helpers.hpp"
#include "hptp/atlas.hpp"
#include "hptp/classify.hpp"
#include "hptp/decompose.hpp"
#include "hptp/dilate.hpp"
#include "hptp/qec.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace hptp;
using namespace hptp::testing;

namespace {

struct Criterion {
  std::string name;
  std::function<void(std::ostringstream&)> run;  // throws or streams "FAIL..." on failure
};

struct Failure {
  std::string detail;
};

void require(bool ok, const std::string& detail) {
  if (!ok) throw Failure{detail};
}

std::string fmt(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.3e", v);
  return buffer;
}

// ---------------------------------------------------------------------------

void criterion_transpose_realization(std::ostringstream& note) {
  const QuantumMap t = atlas::transpose_map(2);
  const Matrix half_id = 0.5 * Matrix::Identity(2, 2);
  const SpDecomposition d = sp_decompose(t, half_id);
  require(std::abs(d.lambda - 1.0 / 3.0) <= 1e-9,
          "lambda = " + fmt(d.lambda) + " != 1/3 within 1e-9");

  const HermitianEig eig = eig_hermitian(d.xi.choi());
  const double big = (1.0 + d.lambda) / 2.0;
  const double small = (1.0 - 3.0 * d.lambda) / 2.0;
  for (int k = 0; k < 3; ++k)
    require(std::abs(eig.eigenvalues(k) - big) <= 1e-10, "J(Xi) eigenvalue mismatch");
  require(std::abs(eig.eigenvalues(3) - small) <= 1e-10, "J(Xi) smallest eigenvalue mismatch");

  const double recon = max_abs_diff(compose(d.xi, inverse(d.phi)).choi(), t.choi());
  require(recon <= 1e-10, "Xi o Phi^-1 residual " + fmt(recon));

  const double lambda = std::min(d.lambda, 1.0 / 3.0);
  const auto [u_phi, u_xi] = example1_unitaries(lambda);
  const Matrix id8 = Matrix::Identity(8, 8);
  require(max_abs_diff(u_phi.adjoint() * u_phi, id8) <= 1e-10, "U_Phi not unitary");
  require(max_abs_diff(u_xi.adjoint() * u_xi, id8) <= 1e-10, "U_Xi not unitary");

  Matrix env = Matrix::Zero(4, 4);
  env(0, 0) = 1.0;
  const Dilation dil_phi{u_phi, 4, 2, env};
  const Dilation dil_xi{u_xi, 4, 2, env};
  const QuantumMap phi = atlas::example1_phi(lambda);
  const QuantumMap xi = atlas::example1_xi(lambda);
  double dil_residual = 0.0;
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j) {
      const Matrix basis = unit_matrix(2, i, j);
      const Matrix joint_phi = u_phi * kron(env, basis) * u_phi.adjoint();
      const Matrix joint_xi = u_xi * kron(env, basis) * u_xi.adjoint();
      dil_residual = std::max(
          dil_residual, max_abs_diff(partial_trace(joint_phi, 4, 2, Factor::First),
                                     phi.apply(basis)));
      dil_residual = std::max(
          dil_residual,
          max_abs_diff(partial_trace(joint_xi, 4, 2, Factor::First), xi.apply(basis)));
    }
  require(dil_residual <= 1e-10, "dilation residual " + fmt(dil_residual));

  const ContextCircuit circuit{dil_phi, u_xi * u_phi.adjoint()};
  double circuit_residual = 0.0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Matrix rho = atlas::random_density(2, 1000 + s);
    const auto [s1, s2] = simulate_context_circuit(circuit, rho);
    circuit_residual = std::max(circuit_residual, max_abs_diff(s2, Matrix(s1.transpose())));
  }
  require(circuit_residual <= 1e-9, "circuit residual " + fmt(circuit_residual));
  note << "lambda=" << d.lambda << ", circuit residual " << fmt(circuit_residual);
}

void criterion_coverage(std::ostringstream& note) {
  const QuantumMap t = atlas::transpose_map(2);
  const SpDecomposition d = sp_decompose(t, Matrix(0.5 * Matrix::Identity(2, 2)));
  const double ratio = coverage_ratio(d);
  require(std::abs(ratio - 1.0 / 27.0) <= 1e-12, "coverage " + fmt(ratio) + " != 1/27");

  // Monte-Carlo membership: a Bloch point lies in Range(Phi) iff Phi^-1 of its
  // state is a density matrix
  const QuantumMap phi_inv = inverse(d.phi);
  Rng rng(20240517);
  const int samples = 100000;
  int inside = 0;
  int drawn = 0;
  while (drawn < samples) {
    const double x = 2.0 * rng.next_double() - 1.0;
    const double y = 2.0 * rng.next_double() - 1.0;
    const double z = 2.0 * rng.next_double() - 1.0;
    if (x * x + y * y + z * z > 1.0) continue;
    ++drawn;
    Matrix state(2, 2);
    state << 1.0 + z, Complex(x, -y), Complex(x, y), 1.0 - z;
    state *= 0.5;
    if (min_eig_hermitian(phi_inv.apply(state)) >= -1e-12) ++inside;
  }
  const double estimate = static_cast<double>(inside) / samples;
  require(std::abs(estimate - 1.0 / 27.0) <= 0.02 * (1.0 / 27.0),
          "Monte-Carlo estimate " + fmt(estimate) + " off 1/27 by more than 2%");
  note << "exact " << ratio << ", Monte-Carlo " << estimate;
}

void criterion_example2(std::ostringstream& note) {
  const QuantumMap psi = atlas::example2_psi();
  const MapClass verdict = classify(psi);
  require(verdict.verdict == Verdict::SnNotSp,
          std::string("verdict ") + to_string(verdict.verdict));
  require(std::abs(verdict.sdp->y_star) <= 1e-6, "y* = " + fmt(verdict.sdp->y_star));
  require(verdict.sn_witness.has_value(), "no SN witness attached");
  require(max_abs_diff(*verdict.sn_witness, unit_matrix(2, 0, 0)) <= 1e-6,
          "SN witness is not |0><0|");

  const QuantumMap phi = atlas::example2_phi();
  const double comp = max_abs_diff(compose(psi, phi).choi(), phi.choi());
  require(comp <= 1e-10, "Psi o Phi != Phi, residual " + fmt(comp));

  const PositivityReport pos = is_positive(psi);
  require(pos.verdict == PositivityVerdict::False, "positivity not refuted");
  require(pos.violator.has_value(), "no positivity violator");
  require(std::abs(pos.min_value + 1.0) <= 1e-6,
          "violator output eigenvalue " + fmt(pos.min_value) + " != -1");
  require(std::abs(min_eig_hermitian(psi.apply(*pos.violator)) + 1.0) <= 1e-6,
          "violator state does not achieve the -1 output eigenvalue");
  note << "y*=" << fmt(verdict.sdp->y_star) << ", violator value " << fmt(pos.min_value);
}

void criterion_nonphysical(std::ostringstream& note) {
  Matrix d(2, 2);
  d << 2, 0, 0, -1;
  const QuantumMap upsilon = atlas::indefinite_replacement(d);
  const MapClass verdict = classify(upsilon);
  require(verdict.verdict == Verdict::NonSnHptp,
          std::string("verdict ") + to_string(verdict.verdict));
  require(verdict.sdp->y_star >= 1.0 - 1e-6, "y* = " + fmt(verdict.sdp->y_star));

  // dense sampling of the Bloch ball: min over states of
  // max(-lambda_min(rho), -lambda_min(Psi(rho)))
  Rng rng(99);
  double grid_min = std::numeric_limits<double>::infinity();
  int drawn = 0;
  while (drawn < 10000) {
    const double x = 2.0 * rng.next_double() - 1.0;
    const double y = 2.0 * rng.next_double() - 1.0;
    const double z = 2.0 * rng.next_double() - 1.0;
    if (x * x + y * y + z * z > 1.0) continue;
    ++drawn;
    Matrix rho(2, 2);
    rho << 1.0 + z, Complex(x, -y), Complex(x, y), 1.0 - z;
    rho *= 0.5;
    const double value =
        std::max(-min_eig_hermitian(rho), -min_eig_hermitian(upsilon.apply(rho)));
    grid_min = std::min(grid_min, value);
  }
  require(std::abs(grid_min - verdict.sdp->y_star) <= 1e-6,
          "grid minimum " + fmt(grid_min) + " disagrees with y*");
  note << "y*=" << verdict.sdp->y_star << ", grid min " << grid_min;
}

void criterion_channel_inverses(std::ostringstream& note) {
  int failures = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const QuantumMap raw = atlas::random_cptp(2, 2, 5000 + s);
    const QuantumMap phi = add(scale(raw, 0.5), scale(QuantumMap::identity(2), 0.5));
    const QuantumMap phi_inv = inverse(phi);
    if (!is_sp(phi_inv).sp) ++failures;
  }
  require(failures == 0, std::to_string(failures) + " of 100 inverses failed to classify SP");
  note << "100/100 inverses classify SP";
}

void criterion_dichotomy(std::ostringstream& note) {
  const double band = 10.0 * Tolerances{}.sdp_tol;
  int decisive = 0;
  int skipped = 0;
  for (int half = 0; half < 2; ++half) {
    const Index n = half == 0 ? 2 : 3;
    for (std::uint64_t s = 0; s < 100; ++s) {
      const QuantumMap map = atlas::random_hptp(n, n, 31000 + 100 * half + s);
      const DichotomyReport report = duality_dichotomy(map);  // throws on violation
      const bool high_margin = std::abs(report.sp_program.y_star) > band &&
                               std::abs(report.dual_program.y_star) > band;
      if (!high_margin) {
        ++skipped;
        continue;
      }
      require(report.branch != DichotomyBranch::Inconclusive,
              "high-margin sample came back inconclusive");
      ++decisive;
    }
  }
  note << decisive << " decisive, " << skipped << " inside the margin band, 0 violations";
}

void criterion_geometry(std::ostringstream& note) {
  // flag monotonicity over a mixed population
  Matrix d(2, 2);
  d << 2, 0, 0, -1;
  std::vector<QuantumMap> population{atlas::transpose_map(2),
                                     atlas::example2_psi(),
                                     atlas::indefinite_replacement(d),
                                     QuantumMap::identity(2),
                                     atlas::depolarizing(0.5),
                                     atlas::replacement(unit_matrix(2, 0, 0))};
  for (std::uint64_t s = 0; s < 20; ++s) population.push_back(atlas::random_hptp(2, 2, 400 + s));
  for (const QuantumMap& map : population) {
    const MapClass c = classify(map);
    if (c.verdict == Verdict::NotHptp) continue;
    if (c.cp) require(c.positive != PositivityVerdict::False, "cp without positive");
    if (c.positive == PositivityVerdict::True) require(c.spr, "positive without spr");
    if (c.sp) require(c.spr, "sp without spr");
    if (c.spr) require(c.sn, "spr without sn");
  }

  // star center: 50 pairs x 3 mixing weights stay SN
  for (std::uint64_t s = 0; s < 50; ++s) {
    const QuantumMap sn_map =
        s % 2 == 0 ? atlas::random_cptp(2, 2, 800 + s)
                   : add(scale(atlas::example2_psi(), 0.5),
                         scale(atlas::random_cptp(2, 2, 800 + s), 0.5));
    const QuantumMap positive =
        compose(atlas::transpose_map(2), atlas::random_cptp(2, 2, 900 + s));
    for (double w : {0.25, 0.5, 0.75}) {
      const QuantumMap mix = add(scale(sn_map, w), scale(positive, 1.0 - w));
      require(is_sn(mix).sn, "star-center mixture left SN");
    }
  }

  // convex split over 50 HPTP maps including non-SN ones
  for (int i = 0; i < 50; ++i) {
    QuantumMap target = i == 0   ? atlas::indefinite_replacement(d)
                        : i == 1 ? atlas::gamma_eps(0.5)
                        : i == 2 ? atlas::example2_psi()
                                 : atlas::random_hptp(2, 2, 1200 + i);
    const auto [psi1, psi2] = convex_split(target);
    const double mid = max_abs_diff(scale(add(psi1, psi2), 0.5).choi(), target.choi());
    require(mid <= 1e-9, "convex split midpoint residual " + fmt(mid));
    require(is_sp(psi1).sp && is_sp(psi2).sp, "a convex-split half is not SP");
  }

  // SN boundary points move into SP under mixing with the center
  const QuantumMap center = atlas::replacement(Matrix(0.5 * Matrix::Identity(2, 2)));
  for (const QuantumMap& boundary : {atlas::example2_psi()}) {
    for (double w : {0.1, 0.5}) {
      const QuantumMap mix = add(scale(boundary, 1.0 - w), scale(center, w));
      require(is_sp(mix).sp, "SN-to-SP mixing failed");
    }
  }
  note << "monotonicity, 150 star-center cases, 50 splits, boundary mixing";
}

void criterion_qec(std::ostringstream& note) {
  const CodeSpace code = make_code_space(bit_flip_projector());
  double worst_residual = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const SignedKrausRep noise = signed_bit_flip_noise(s);
    const KlReport report = check_kl(code, noise);
    require(report.satisfied, "KL condition violated for seed " + std::to_string(s));
    for (Index i = 0; i < 4; ++i)
      for (Index j = 0; j < 4; ++j)
        if (i != j)
          require(std::abs(report.alpha(i, j)) <= 1e-9, "alpha not diagonal");
    const RecoveryPlan plan = build_recovery(code, noise, report);
    require(std::abs(plan.signed_alpha_sum - 1.0) <= 1e-9,
            "sum sign*alpha = " + fmt(plan.signed_alpha_sum));
    const RecoveryCheck check = verify_recovery(plan, noise, code);
    require(check.pass && check.residual <= 1e-9, "recovery residual " + fmt(check.residual));
    worst_residual = std::max(worst_residual, check.residual);
  }

  // negative control: a Z1 term must be rejected
  SignedKrausRep contaminated = signed_bit_flip_noise(0);
  contaminated.terms[1].op = contaminated.terms[1].op.norm() / std::sqrt(8.0) * pauli_z_on(0);
  require(!check_kl(code, contaminated).satisfied,
          "Z-contaminated noise passed the KL condition");

  // inverse shortcut: unitary noise yes, depolarizing(0.5) no
  SignedKrausRep unitary_noise;
  unitary_noise.dim_in = unitary_noise.dim_out = 2;
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  unitary_noise.terms.push_back({+1, h});
  const auto shortcut = inverse_recovery_shortcut(unitary_noise);
  require(shortcut.has_value(), "no inverse recovery for unitary noise");
  require(approx_equal(compose(*shortcut, from_signed_kraus(unitary_noise)),
                       QuantumMap::identity(2), 1e-9),
          "inverse recovery does not invert the noise");
  require(!inverse_recovery_shortcut(to_signed_kraus(atlas::depolarizing(0.5))).has_value(),
          "depolarizing(0.5) inverse wrongly accepted as CPTP");
  note << "20 signed noises, worst residual " << fmt(worst_residual);
}

void criterion_round_trips(std::ostringstream& note) {
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Index n = 2 + (s % 2);
    const QuantumMap map = atlas::random_hptp(n, n, 60000 + s);
    const SignedKrausRep rep = to_signed_kraus(map);
    worst = std::max(worst, max_abs_diff(from_signed_kraus(rep).choi(), map.choi()));
    require(worst <= 1e-9, "round-trip residual " + fmt(worst));
    Matrix norm_sum = Matrix::Zero(n, n);
    for (const auto& term : rep.terms)
      norm_sum += static_cast<double>(term.sign) * term.op.adjoint() * term.op;
    require(max_abs_diff(norm_sum, Matrix::Identity(n, n)) <= 1e-9,
            "sum sign E^dag E != I");
    const JordanHahnSplit jh = jordan_hahn(map);
    require(std::abs(jh.p0 - jh.p1 - 1.0) <= 1e-9, "p0 - p1 = " + fmt(jh.p0 - jh.p1));
  }
  note << "100 maps, worst Choi residual " << fmt(worst);
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"transpose realization and dilation", criterion_transpose_realization},
      {"coverage figure 1/27", criterion_coverage},
      {"example2 boundary map", criterion_example2},
      {"non-physical replacement map", criterion_nonphysical},
      {"inverses of invertible channels are SP", criterion_channel_inverses},
      {"SP/SN duality dichotomy over 200 maps", criterion_dichotomy},
      {"geometry of the map hierarchy", criterion_geometry},
      {"signed-noise error correction", criterion_qec},
      {"representation round-trips", criterion_round_trips},
  };

  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    std::ostringstream note;
    try {
      criteria[k].run(note);
      std::printf("PASS criterion %zu: %s (%s)\n", k + 1, criteria[k].name.c_str(),
                  note.str().c_str());
    } catch (const Failure& f) {
      ++failures;
      std::printf("FAIL criterion %zu: %s (%s)\n", k + 1, criteria[k].name.c_str(),
                  f.detail.c_str());
    } catch (const std::exception& e) {
      ++failures;
      std::printf("FAIL criterion %zu: %s (exception: %s)\n", k + 1, criteria[k].name.c_str(),
                  e.what());
    }
    std::fflush(stdout);
  }
  if (failures == 0) std::printf("all %zu acceptance criteria passed\n", criteria.size());
  return failures;
}
