#pragma once

#include <Eigen/Dense>
#include <span>
#include <utility>

#include "bellquench/dynamics.hpp"

namespace bellquench {

// Rows and columns ordered (x, y, z).
using CorrelationMatrix = Eigen::Matrix3d;

CorrelationMatrix correlation_matrix(const CorrelatorSet& c);

enum class BellBranch { PlusMinus, PlusCzz };

struct BellDiagnostics {
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double czz_sq = 0.0;
  double bell = 0.0;
  BellBranch branch = BellBranch::PlusMinus;
};

// Closed-form eigenvalues of T^T T for the block structure of T.
BellDiagnostics bell_eigenvalues(const CorrelatorSet& c);
double bell_value(const CorrelatorSet& c);

// Trapezoid average of B(t) over the sampled span.
double bell_time_average(std::span<const CorrelatorSet> series);

// 4x4 density matrix in the sigma^z product basis, |0> = spin up.
struct TwoQubitState {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Identity() / 4.0;
};

inline constexpr double kPsdTolerance = 1e-6;

TwoQubitState reconstruct_rho12(const CorrelatorSet& c);

// Full Pauli decomposition of a two-qubit state.
struct PauliExpectations {
  Eigen::Matrix3d corr = Eigen::Matrix3d::Zero();
  Eigen::Vector3d m1 = Eigen::Vector3d::Zero();
  Eigen::Vector3d m2 = Eigen::Vector3d::Zero();
};

PauliExpectations pauli_expectations(const TwoQubitState& s);
CorrelatorSet correlators_from_rho12(const TwoQubitState& s);

Eigen::Matrix4cd partial_transpose(const Eigen::Matrix4cd& rho);
double log_negativity(const TwoQubitState& s);
// X-state closed form; no eigensolver.
double log_negativity(const CorrelatorSet& c);

// (lambda_plus - czz^2, lambda_minus - czz^2)
std::pair<double, double> eigenvalue_competition(const CorrelatorSet& c);

}  // namespace bellquench
