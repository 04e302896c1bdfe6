#pragma once

#include "hptp/classify.hpp"
#include "hptp/decompose.hpp"
#include "hptp/dilate.hpp"
#include "hptp/qec.hpp"

#include <json.hpp>

#include <string>

namespace hptp::io {

using nlohmann::json;

// Complex scalars serialize as [re, im] two-arrays; matrices as row-major
// nested arrays. Maps serialize with the Choi matrix as the canonical form:
//   {"dim_in": n, "dim_out": m, "choi": [[[re,im],...],...]}
// and are accepted in either Choi or signed-Kraus form:
//   {"dim_in": n, "dim_out": m, "kraus": [{"sign": 1, "matrix": [...]}, ...]}

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json map_to_json(const QuantumMap& map);
json signed_kraus_to_json(const SignedKrausRep& rep);

/// Accepts both Choi and signed-Kraus map objects.
QuantumMap map_from_json(const json& j);
SignedKrausRep signed_kraus_from_json(const json& j);

json code_space_to_json(const CodeSpace& code);
CodeSpace code_space_from_json(const json& j, const Tolerances& tol = {});

json sp_decomposition_to_json(const SpDecomposition& d);
SpDecomposition sp_decomposition_from_json(const json& j);
json sn_decomposition_to_json(const SnDecomposition& d);

json sdp_result_to_json(const SdpResult& r);
json map_class_to_json(const MapClass& c);
json kl_report_to_json(const KlReport& r);
json recovery_plan_to_json(const RecoveryPlan& p);
json dilation_to_json(const Dilation& d);
Dilation dilation_from_json(const json& j);

json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace hptp::io
