#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace hptp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Numerical thresholds shared by every module.
///   eig_tol: eigenvalue zero threshold
///   eq_tol:  matrix equality threshold in the max-abs-entry norm
///   sdp_tol: optimality gap for the semidefinite feasibility program
struct Tolerances {
  double eig_tol = 1e-9;
  double eq_tol = 1e-9;
  double sdp_tol = 1e-7;
};

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};
struct NonHermitianInput : Error {
  using Error::Error;
};
struct NonHermitianChoi : Error {
  using Error::Error;
};
struct NonHptpInput : Error {
  using Error::Error;
};
struct SingularMap : Error {
  using Error::Error;
};
struct NullRestriction : Error {
  using Error::Error;
};
struct UnknownRecipe : Error {
  using Error::Error;
};
struct ParameterOutOfRange : Error {
  using Error::Error;
};
struct NotCptp : Error {
  using Error::Error;
};
struct NotSp : Error {
  using Error::Error;
};
struct NotSn : Error {
  using Error::Error;
};
struct InvalidAnchor : Error {
  using Error::Error;
};
struct UnsupportedForm : Error {
  using Error::Error;
};
struct KlViolated : Error {
  using Error::Error;
};
struct SignSectorObstruction : Error {
  using Error::Error;
};
struct DichotomyViolation : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};

}  // namespace hptp
