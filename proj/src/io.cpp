#include "hptp/io.hpp"

#include <fstream>

namespace hptp::io {

namespace {

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("expected a complex scalar as a [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("expected a non-empty matrix array");
  const Index rows = static_cast<Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) throw ParseError("expected matrix rows as arrays");
  const Index cols = static_cast<Index>(j[0].size());
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<Index>(j[i].size()) != cols)
      throw ParseError("ragged matrix rows");
    for (Index c = 0; c < cols; ++c) m(i, c) = complex_from_json(j[i][c]);
  }
  return m;
}

json map_to_json(const QuantumMap& map) {
  return json{{"dim_in", map.dim_in()}, {"dim_out", map.dim_out()},
              {"choi", matrix_to_json(map.choi())}};
}

json signed_kraus_to_json(const SignedKrausRep& rep) {
  json terms = json::array();
  for (const auto& term : rep.terms)
    terms.push_back(json{{"sign", term.sign}, {"matrix", matrix_to_json(term.op)}});
  return json{{"dim_in", rep.dim_in}, {"dim_out", rep.dim_out}, {"kraus", std::move(terms)}};
}

QuantumMap map_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("expected a map object");
  if (j.contains("kraus")) return from_signed_kraus(signed_kraus_from_json(j));
  if (!j.contains("dim_in") || !j.contains("dim_out") || !j.contains("choi"))
    throw ParseError("map object needs dim_in, dim_out and either choi or kraus");
  const Index n = j.at("dim_in").get<Index>();
  const Index m = j.at("dim_out").get<Index>();
  Matrix choi = matrix_from_json(j.at("choi"));
  try {
    return QuantumMap(n, m, std::move(choi));
  } catch (const Error& e) {
    throw ParseError(std::string("invalid map: ") + e.what());
  }
}

SignedKrausRep signed_kraus_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kraus") || !j.contains("dim_in") || !j.contains("dim_out"))
    throw ParseError("signed-Kraus object needs dim_in, dim_out, kraus");
  SignedKrausRep rep;
  rep.dim_in = j.at("dim_in").get<Index>();
  rep.dim_out = j.at("dim_out").get<Index>();
  if (!j.at("kraus").is_array() || j.at("kraus").empty())
    throw ParseError("kraus must be a non-empty array");
  for (const auto& term : j.at("kraus")) {
    if (!term.is_object() || !term.contains("sign") || !term.contains("matrix"))
      throw ParseError("each kraus term needs sign and matrix");
    const int sign = term.at("sign").get<int>();
    if (sign != 1 && sign != -1) throw ParseError("kraus sign must be +1 or -1");
    Matrix op = matrix_from_json(term.at("matrix"));
    if (op.rows() != rep.dim_out || op.cols() != rep.dim_in)
      throw ParseError("kraus operator shape disagrees with declared dimensions");
    rep.terms.push_back({sign, std::move(op)});
    if (sign > 0)
      rep.p0 += rep.terms.back().op.squaredNorm() / static_cast<double>(rep.dim_in);
    else
      rep.p1 += rep.terms.back().op.squaredNorm() / static_cast<double>(rep.dim_in);
  }
  return rep;
}

json code_space_to_json(const CodeSpace& code) {
  return json{{"ambient_dim", code.ambient_dim}, {"projector", matrix_to_json(code.projector)}};
}

CodeSpace code_space_from_json(const json& j, const Tolerances& tol) {
  if (!j.is_object() || !j.contains("ambient_dim") || !j.contains("projector"))
    throw ParseError("code object needs ambient_dim and projector");
  const Matrix projector = matrix_from_json(j.at("projector"));
  if (projector.rows() != j.at("ambient_dim").get<Index>())
    throw ParseError("projector shape disagrees with ambient_dim");
  try {
    return make_code_space(projector, tol);
  } catch (const Error& e) {
    throw ParseError(std::string("invalid code space: ") + e.what());
  }
}

json sp_decomposition_to_json(const SpDecomposition& d) {
  return json{{"phi", map_to_json(d.phi)},
              {"xi", map_to_json(d.xi)},
              {"lambda", d.lambda},
              {"rho", matrix_to_json(d.rho)}};
}

SpDecomposition sp_decomposition_from_json(const json& j) {
  if (!j.is_object() || !j.contains("phi") || !j.contains("xi") || !j.contains("lambda") ||
      !j.contains("rho"))
    throw ParseError("sp decomposition needs phi, xi, lambda, rho");
  return SpDecomposition{map_from_json(j.at("phi")), map_from_json(j.at("xi")),
                         j.at("lambda").get<double>(), matrix_from_json(j.at("rho"))};
}

json sn_decomposition_to_json(const SnDecomposition& d) {
  return json{{"phi", map_to_json(d.phi)}, {"xi", map_to_json(d.xi)},
              {"rho", matrix_to_json(d.rho)}};
}

json sdp_result_to_json(const SdpResult& r) {
  return json{{"y_star", r.y_star},
              {"status", r.status == SdpStatus::Converged ? "Converged" : "IterationLimit"},
              {"witness_state", matrix_to_json(r.witness_state)},
              {"best_restart", r.best_restart},
              {"restart_spread", r.restart_spread},
              {"bundle_used", r.bundle_used}};
}

json map_class_to_json(const MapClass& c) {
  json out{{"verdict", to_string(c.verdict)},
           {"flags",
            {{"hp", c.hp},
             {"tp", c.tp},
             {"cp", c.cp},
             {"positive", to_string(c.positive)},
             {"sp", c.sp},
             {"spr", c.spr},
             {"sn", c.sn}}}};
  if (c.sdp) {
    out["y_star"] = c.sdp->y_star;
    out["sdp"] = sdp_result_to_json(*c.sdp);
  }
  if (c.sp_witness) out["sp_witness"] = matrix_to_json(*c.sp_witness);
  if (c.sn_witness) out["sn_witness"] = matrix_to_json(*c.sn_witness);
  if (c.positivity_violator) out["positivity_violator"] = matrix_to_json(*c.positivity_violator);
  return out;
}

json kl_report_to_json(const KlReport& r) {
  return json{{"alpha", matrix_to_json(r.alpha)},
              {"max_violation", r.max_violation},
              {"satisfied", r.satisfied}};
}

json recovery_plan_to_json(const RecoveryPlan& p) {
  json kraus = json::array();
  for (const auto& op : p.kraus) kraus.push_back(matrix_to_json(op));
  return json{{"recovery", map_to_json(p.recovery)},
              {"kraus", std::move(kraus)},
              {"diagonalized_alpha", p.diagonalized_alpha},
              {"signs", p.signs},
              {"skipped_terms", p.skipped_terms},
              {"signed_alpha_sum", p.signed_alpha_sum}};
}

json dilation_to_json(const Dilation& d) {
  return json{{"unitary", matrix_to_json(d.unitary)},
              {"env_dim", d.env_dim},
              {"sys_dim", d.sys_dim},
              {"env_state", matrix_to_json(d.env_state)}};
}

Dilation dilation_from_json(const json& j) {
  if (!j.is_object() || !j.contains("unitary") || !j.contains("env_dim") ||
      !j.contains("sys_dim"))
    throw ParseError("dilation needs unitary, env_dim, sys_dim");
  Dilation d;
  d.unitary = matrix_from_json(j.at("unitary"));
  d.env_dim = j.at("env_dim").get<Index>();
  d.sys_dim = j.at("sys_dim").get<Index>();
  if (j.contains("env_state")) {
    d.env_state = matrix_from_json(j.at("env_state"));
  } else {
    d.env_state = Matrix::Zero(d.env_dim, d.env_dim);
    d.env_state(0, 0) = 1.0;
  }
  if (d.unitary.rows() != d.env_dim * d.sys_dim)
    throw ParseError("dilation unitary does not act on env_dim * sys_dim");
  return d;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParseError("JSON parse failure in " + path + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace hptp::io
