#pragma once

#include "hptp/map.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hptp::atlas {

QuantumMap identity_map(Index n);
QuantumMap transpose_map(Index n);

// Single-qubit pair realizing the transpose as Xi o Phi^{-1}; CPTP iff
// 0 < lambda <= 1/3.
QuantumMap example1_phi(double lambda);
QuantumMap example1_xi(double lambda);

// [[a,b],[c,d]] -> [[a+2d,b],[c,-d]]: SN but not SP.
QuantumMap example2_psi();
// Kraus {|0><0|, |0><1|}: sends every density matrix to |0><0|.
QuantumMap example2_phi();

QuantumMap replacement(const Matrix& sigma);
QuantumMap indefinite_replacement(const Matrix& d);
QuantumMap depolarizing(double p, Index n = 2);

// Psi_k = Psi_TP + k Psi_TA with Psi_TP(X) = Tr(X) I/n and
// Psi_TA(X) = Tr(Z1 X) Z2 for fixed traceless Hermitian Z1, Z2. SP for every
// k >= 0 while the map norm grows without bound.
QuantumMap unbounded_family(double k, Index n = 2);

// X -> Tr(X)(E00 + eps Z): not SN for eps in (0,1).
QuantumMap gamma_eps(double eps, Index n = 2);
// (1-eps) replacement-to-E00 + eps replacement-to-I/n: positive, SP.
QuantumMap phi_eps(double eps, Index n = 2);

QuantumMap random_cptp(Index n, Index m, std::uint64_t seed);
QuantumMap random_hptp(Index n, Index m, std::uint64_t seed);
QuantumMap random_sp(Index n, std::uint64_t seed);

Matrix random_density(Index n, std::uint64_t seed);
Matrix random_hermitian(Index n, std::uint64_t seed);
Vector random_pure_state(Index n, std::uint64_t seed);

struct MapRecipe {
  std::string name;
  std::map<std::string, double> params;  // e.g. {"lambda", 0.25}
  std::vector<double> diag;              // diagonal for replacement-type recipes
  Index n = 2;
  Index m = 2;
  std::uint64_t seed = 0;
};

/// Dispatch on recipe name (hyphens and underscores interchangeable).
/// Throws UnknownRecipe / ParameterOutOfRange.
QuantumMap named_map(const MapRecipe& recipe);

std::vector<std::string> registered_recipes();

}  // namespace hptp::atlas
