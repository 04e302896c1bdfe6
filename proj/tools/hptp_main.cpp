#include "hptp/atlas.hpp"
#include "hptp/classify.hpp"
#include "hptp/decompose.hpp"
#include "hptp/dilate.hpp"
#include "hptp/io.hpp"
#include "hptp/qec.hpp"
#include "hptp/rng.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace hptp;
using hptp::io::json;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitNotHptp = 3;
constexpr int kExitWrongClass = 4;
constexpr int kExitVerification = 5;

struct RunConfig {
  Tolerances tol;
  SdpSettings sdp;
  std::uint64_t seed = 0;
  std::string output = "human";
  int threads = 1;
};

json config_to_json(const RunConfig& cfg) {
  return json{{"tolerances",
               {{"eig_tol", cfg.tol.eig_tol},
                {"eq_tol", cfg.tol.eq_tol},
                {"sdp_tol", cfg.tol.sdp_tol}}},
              {"sdp",
               {{"tol", cfg.sdp.tol},
                {"max_iters", cfg.sdp.max_iters},
                {"restarts", cfg.sdp.restarts}}},
              {"seed", cfg.seed},
              {"output", cfg.output},
              {"threads", cfg.threads}};
}

void emit(const RunConfig& cfg, json payload, const std::string& out_path,
          const std::string& human) {
  payload["config"] = config_to_json(cfg);
  if (!out_path.empty()) {
    io::save_json_file(out_path, payload);
    if (cfg.output == "human") std::cout << human << "wrote " << out_path << "\n";
    return;
  }
  if (cfg.output == "json")
    std::cout << payload.dump(2) << "\n";
  else
    std::cout << human;
}

QuantumMap load_map(const std::string& path) { return io::map_from_json(io::load_json_file(path)); }

SignedKrausRep load_noise(const std::string& path) {
  const json j = io::load_json_file(path);
  if (j.contains("kraus")) return io::signed_kraus_from_json(j);
  // Choi input: fall back to the minimal spectral representation
  return to_signed_kraus(io::map_from_json(j));
}

int cmd_classify(const RunConfig& cfg, const std::string& map_file, const std::string& out) {
  const QuantumMap map = load_map(map_file);
  PositivitySettings pos;
  pos.seed = cfg.seed;
  const MapClass verdict = classify(map, cfg.tol, cfg.sdp, pos);
  std::string human = std::string("verdict: ") + to_string(verdict.verdict) + "\n";
  human += "  hp=" + std::to_string(verdict.hp) + " tp=" + std::to_string(verdict.tp) +
           " cp=" + std::to_string(verdict.cp) + " positive=" + to_string(verdict.positive) +
           " sp=" + std::to_string(verdict.sp) + " spr=" + std::to_string(verdict.spr) +
           " sn=" + std::to_string(verdict.sn) + "\n";
  if (verdict.sdp) human += "  y* = " + std::to_string(verdict.sdp->y_star) + "\n";
  emit(cfg, io::map_class_to_json(verdict), out, human);
  return verdict.verdict == Verdict::NotHptp ? kExitNotHptp : kExitOk;
}

int cmd_decompose(const RunConfig& cfg, const std::string& kind, const std::string& map_file,
                  const std::string& out) {
  const QuantumMap map = load_map(map_file);
  if (kind == "sp") {
    const SpDecomposition d = sp_decompose(map, std::nullopt, cfg.tol, cfg.sdp);
    const SpVerification check = verify_sp_decomposition(d, map, cfg.tol);
    json payload = io::sp_decomposition_to_json(d);
    payload["verification"] = {{"residual", check.residual},
                               {"phi_cp", check.phi_cp},
                               {"phi_tp", check.phi_tp},
                               {"xi_cp", check.xi_cp},
                               {"xi_tp", check.xi_tp},
                               {"xi_choi_min_eig", check.xi_choi_min_eig},
                               {"pass", check.pass}};
    payload["coverage_ratio"] = coverage_ratio(d, cfg.tol);
    std::string human = "sp decomposition: lambda = " + std::to_string(d.lambda) +
                        ", residual = " + std::to_string(check.residual) + "\n";
    emit(cfg, payload, out, human);
    return check.pass ? kExitOk : kExitVerification;
  }
  if (kind == "sn") {
    const SnDecomposition d = sn_decompose(map, cfg.tol, cfg.sdp);
    const double residual = max_abs_diff(compose(map, d.phi).choi(), d.xi.choi());
    json payload = io::sn_decomposition_to_json(d);
    payload["verification"] = {{"residual", residual},
                               {"phi_cp", is_cp(d.phi, cfg.tol)},
                               {"xi_cp", is_cp(d.xi, cfg.tol)}};
    emit(cfg, payload, out,
         "sn decomposition: composition residual = " + std::to_string(residual) + "\n");
    return residual <= 10.0 * cfg.tol.eq_tol + 1e-8 ? kExitOk : kExitVerification;
  }
  if (kind == "convex") {
    const auto [psi1, psi2] = convex_split(map, cfg.tol);
    const double residual = max_abs_diff(scale(add(psi1, psi2), 0.5).choi(), map.choi());
    json payload{{"psi1", io::map_to_json(psi1)},
                 {"psi2", io::map_to_json(psi2)},
                 {"midpoint_residual", residual}};
    emit(cfg, payload, out, "convex split: midpoint residual = " + std::to_string(residual) + "\n");
    return residual <= 10.0 * cfg.tol.eq_tol ? kExitOk : kExitVerification;
  }
  std::cerr << "unknown decomposition kind: " << kind << "\n";
  return kExitParse;
}

int cmd_demo_transpose(const RunConfig& cfg, double lambda, const std::string& out) {
  const QuantumMap t_map = atlas::transpose_map(2);
  const QuantumMap phi = atlas::example1_phi(lambda);
  const QuantumMap xi = atlas::example1_xi(lambda);
  const double recon_residual =
      max_abs_diff(compose(xi, inverse(phi, cfg.tol)).choi(), t_map.choi());

  const auto [u_phi, u_xi] = example1_unitaries(lambda);
  const Matrix id8 = Matrix::Identity(8, 8);
  const double unit_phi = max_abs_diff(u_phi.adjoint() * u_phi, id8);
  const double unit_xi = max_abs_diff(u_xi.adjoint() * u_xi, id8);

  Matrix env = Matrix::Zero(4, 4);
  env(0, 0) = 1.0;
  const ContextCircuit circuit{Dilation{u_phi, 4, 2, env}, u_xi * u_phi.adjoint()};
  double dilation_residual = 0.0;
  double circuit_residual = 0.0;
  Rng rng(cfg.seed);
  for (int s = 0; s < 20; ++s) {
    const Matrix rho = atlas::random_density(2, rng.next_u64());
    const auto [s1, s2] = simulate_context_circuit(circuit, rho);
    dilation_residual = std::max(dilation_residual, max_abs_diff(s1, phi.apply(rho)));
    circuit_residual = std::max(circuit_residual, max_abs_diff(s2, Matrix(s1.transpose())));
  }

  const SpDecomposition d{phi, xi, lambda, Matrix(0.5 * Matrix::Identity(2, 2))};
  const double coverage = coverage_ratio(d, cfg.tol);

  json payload{{"lambda", lambda},
               {"reconstruction_residual", recon_residual},
               {"u_phi_unitarity", unit_phi},
               {"u_xi_unitarity", unit_xi},
               {"dilation_residual", dilation_residual},
               {"circuit_residual", circuit_residual},
               {"coverage_ratio", coverage}};
  std::string human;
  human += "transpose demo at lambda = " + std::to_string(lambda) + "\n";
  human += "  Xi o Phi^-1 = T residual: " + std::to_string(recon_residual) + "\n";
  human += "  unitarity (U_Phi, U_Xi): " + std::to_string(unit_phi) + ", " +
           std::to_string(unit_xi) + "\n";
  human += "  rho_S' = Phi(rho) residual: " + std::to_string(dilation_residual) + "\n";
  human += "  rho_S'' = T(rho_S') residual: " + std::to_string(circuit_residual) + "\n";
  human += "  coverage ratio: " + std::to_string(coverage) + "\n";
  emit(cfg, payload, out, human);
  const double bar = 1e-9;
  const bool pass = recon_residual < bar && unit_phi < bar && unit_xi < bar &&
                    dilation_residual < bar && circuit_residual < bar;
  return pass ? kExitOk : kExitVerification;
}

int cmd_qec(const RunConfig& cfg, const std::string& action, const std::string& code_file,
            const std::string& noise_file, const std::string& out) {
  const CodeSpace code = io::code_space_from_json(io::load_json_file(code_file), cfg.tol);
  const SignedKrausRep noise = load_noise(noise_file);
  const KlReport report = check_kl(code, noise, cfg.tol);
  if (action == "check") {
    emit(cfg, io::kl_report_to_json(report), out,
         std::string("KL condition ") + (report.satisfied ? "satisfied" : "violated") +
             ", max violation = " + std::to_string(report.max_violation) + "\n");
    return report.satisfied ? kExitOk : kExitVerification;
  }
  if (action == "recover") {
    const RecoveryPlan plan = build_recovery(code, noise, report, cfg.tol);
    emit(cfg, io::recovery_plan_to_json(plan), out,
         "recovery built: " + std::to_string(plan.kraus.size()) +
             " Kraus terms, sum sign*alpha = " + std::to_string(plan.signed_alpha_sum) + "\n");
    return kExitOk;
  }
  if (action == "verify") {
    const RecoveryPlan plan = build_recovery(code, noise, report, cfg.tol);
    const RecoveryCheck check = verify_recovery(plan, noise, code, cfg.tol);
    json payload{{"residual", check.residual},
                 {"signed_alpha_sum", check.signed_alpha_sum},
                 {"pass", check.pass}};
    emit(cfg, payload, out,
         "recovery residual = " + std::to_string(check.residual) + ", sum sign*alpha = " +
             std::to_string(check.signed_alpha_sum) + (check.pass ? " (pass)" : " (fail)") + "\n");
    return check.pass ? kExitOk : kExitVerification;
  }
  std::cerr << "unknown qec action: " << action << "\n";
  return kExitParse;
}

int cmd_sample(const RunConfig& cfg, atlas::MapRecipe recipe, const std::string& out) {
  recipe.seed = cfg.seed;
  const QuantumMap map = atlas::named_map(recipe);
  emit(cfg, io::map_to_json(map), out,
       "map '" + recipe.name + "': " + std::to_string(map.dim_in()) + " -> " +
           std::to_string(map.dim_out()) + "\n");
  return kExitOk;
}

int cmd_dilate(const RunConfig& cfg, const std::string& map_file, const std::string& out) {
  const QuantumMap map = load_map(map_file);
  const SignedKrausRep rep = to_signed_kraus(map, cfg.tol);
  const Dilation d = stinespring(rep, cfg.tol);
  emit(cfg, io::dilation_to_json(d), out,
       "dilation with environment dimension " + std::to_string(d.env_dim) + "\n");
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, const std::string& circuit_file,
                 const std::string& state_file, const std::string& out) {
  const json cj = io::load_json_file(circuit_file);
  if (!cj.contains("u_c") || !cj.contains("u"))
    throw ParseError("circuit file needs u_c (dilation) and u (matrix)");
  const ContextCircuit circuit{io::dilation_from_json(cj.at("u_c")),
                               io::matrix_from_json(cj.at("u"))};
  const json sj = io::load_json_file(state_file);
  const Matrix rho = sj.is_object() && sj.contains("matrix")
                         ? io::matrix_from_json(sj.at("matrix"))
                         : io::matrix_from_json(sj);
  const auto [s1, s2] = simulate_context_circuit(circuit, rho);
  json payload{{"rho_s1", io::matrix_to_json(s1)}, {"rho_s2", io::matrix_to_json(s2)}};
  emit(cfg, payload, out, "simulated context circuit\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hptp-kit: classification, decomposition and error correction for "
               "Hermitian-preserving trace-preserving maps"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  RunConfig cfg;
  double flag_tol = 1e-9;
  app.add_option("--tol", flag_tol, "eigenvalue/equality tolerance (eig_tol and eq_tol)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--sdp-tol", cfg.sdp.tol, "SDP optimality gap")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--sdp-restarts", cfg.sdp.restarts, "SDP restart budget")->capture_default_str();
  app.add_option("--sdp-max-iters", cfg.sdp.max_iters, "SDP iterations per restart")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for every random draw")->capture_default_str();
  app.add_option("--output", cfg.output, "output format")
      ->check(CLI::IsMember({"human", "json"}))
      ->capture_default_str();

  std::string map_file, out_path, kind, action, code_file, noise_file;
  std::string circuit_file, state_file;
  double lambda = 1.0 / 3.0;

  auto* classify_cmd = app.add_subcommand("classify", "classify a map within the hierarchy");
  classify_cmd->add_option("map", map_file, "map JSON file")->required();
  classify_cmd->add_option("-o,--out", out_path, "write the report to a file");

  auto* decompose_cmd = app.add_subcommand("decompose", "construct sp/sn/convex decompositions");
  decompose_cmd->add_option("kind", kind, "sp, sn or convex")
      ->required()
      ->check(CLI::IsMember({"sp", "sn", "convex"}));
  decompose_cmd->add_option("map", map_file, "map JSON file")->required();
  decompose_cmd->add_option("-o,--out", out_path, "write the bundle to a file");

  auto* demo_cmd = app.add_subcommand("demo", "end-to-end walkthroughs");
  std::string demo_kind;
  demo_cmd->add_option("what", demo_kind, "demo name (transpose)")
      ->required()
      ->check(CLI::IsMember({"transpose"}));
  demo_cmd->add_option("--lambda", lambda, "mixing parameter in (0, 1/3]");
  demo_cmd->add_option("-o,--out", out_path, "write the report to a file");

  auto* qec_cmd = app.add_subcommand("qec", "Knill-Laflamme analysis for signed noise");
  qec_cmd->add_option("action", action, "check, recover or verify")
      ->required()
      ->check(CLI::IsMember({"check", "recover", "verify"}));
  qec_cmd->add_option("--code", code_file, "code space JSON file")->required();
  qec_cmd->add_option("--noise", noise_file, "noise JSON file (signed Kraus or Choi)")->required();
  qec_cmd->add_option("-o,--out", out_path, "write the report to a file");

  auto* sample_cmd = app.add_subcommand("sample", "emit maps from the atlas");
  atlas::MapRecipe recipe;
  std::vector<double> diag_entries;
  double p_param = -1.0, k_param = -1.0, eps_param = -1.0, lambda_param = -1.0;
  sample_cmd->add_option("recipe", recipe.name, "recipe name")->required();
  sample_cmd->add_option("--n", recipe.n, "input dimension");
  sample_cmd->add_option("--m", recipe.m, "output dimension");
  sample_cmd->add_option("--lambda", lambda_param, "lambda parameter");
  sample_cmd->add_option("--p", p_param, "p parameter");
  sample_cmd->add_option("--k", k_param, "k parameter");
  sample_cmd->add_option("--eps", eps_param, "eps parameter");
  sample_cmd->add_option("--diag", diag_entries, "diagonal entries for replacement recipes")
      ->delimiter(',');
  sample_cmd->add_option("-o,--out", out_path, "write the map to a file");

  auto* dilate_cmd = app.add_subcommand("dilate", "Stinespring dilation of a CPTP map");
  dilate_cmd->add_option("map", map_file, "map JSON file")->required();
  dilate_cmd->add_option("-o,--out", out_path, "write the dilation to a file");

  auto* simulate_cmd = app.add_subcommand("simulate", "run a context circuit on a state");
  simulate_cmd->add_option("--circuit", circuit_file, "circuit JSON file")->required();
  simulate_cmd->add_option("--state", state_file, "density matrix JSON file")->required();
  simulate_cmd->add_option("-o,--out", out_path, "write the result to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints the message; 0 means --help
    return code == 0 ? kExitOk : kExitParse;
  }

  cfg.tol.eig_tol = flag_tol;
  cfg.tol.eq_tol = flag_tol;
  cfg.tol.sdp_tol = cfg.sdp.tol;
  cfg.sdp.seed = cfg.seed;
  if (const char* env = std::getenv("HPTP_KIT_THREADS")) {
    const int requested = std::atoi(env);
    if (requested > 0) cfg.threads = requested;
  }

  try {
    if (*classify_cmd) return cmd_classify(cfg, map_file, out_path);
    if (*decompose_cmd) return cmd_decompose(cfg, kind, map_file, out_path);
    if (*demo_cmd) return cmd_demo_transpose(cfg, lambda, out_path);
    if (*qec_cmd) return cmd_qec(cfg, action, code_file, noise_file, out_path);
    if (*sample_cmd) {
      if (lambda_param >= 0) recipe.params["lambda"] = lambda_param;
      if (p_param >= 0) recipe.params["p"] = p_param;
      if (k_param >= 0) recipe.params["k"] = k_param;
      if (eps_param >= 0) recipe.params["eps"] = eps_param;
      recipe.diag = diag_entries;
      return cmd_sample(cfg, std::move(recipe), out_path);
    }
    if (*dilate_cmd) return cmd_dilate(cfg, map_file, out_path);
    if (*simulate_cmd) return cmd_simulate(cfg, circuit_file, state_file, out_path);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ParameterOutOfRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const UnknownRecipe& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const NonHptpInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotHptp;
  } catch (const NonHermitianChoi& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotHptp;
  } catch (const NotSp& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitWrongClass;
  } catch (const NotSn& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitWrongClass;
  } catch (const NotCptp& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitWrongClass;
  } catch (const SingularMap& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitWrongClass;
  } catch (const KlViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitWrongClass;
  } catch (const SignSectorObstruction& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitWrongClass;
  } catch (const DichotomyViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerification;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
