#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bellquench/model.hpp"

namespace bellquench {

using BlockMatrix = Eigen::Matrix4cd;

// Fermion mode pair (phi, -phi). Antiperiodic grid: phi_k = pi (2k - 1) / N,
// k = 1..N/2, which is the sector holding the ground state.
struct MomentumMode {
  int k = 1;
  double phi = 0.0;
};

MomentumMode momentum_mode(int n, int k);
std::vector<MomentumMode> momentum_modes(int n);

// a = -sum_r J_r cos(phi r), b = -gamma sum_r J_r sin(phi r).
struct Dispersion {
  double a = 0.0;
  double b = 0.0;
};

Dispersion mode_dispersion(const std::vector<double>& jr, double gamma, double phi);
std::vector<Dispersion> dispersion_table(const ModelParams& params);

// Basis {|0>, c+_p c+_-p |0>, c+_p |0>, c+_-p |0>}.
struct BlockHamiltonian {
  double a = 0.0;
  double b = 0.0;
  double h = 0.0;
  BlockMatrix matrix = BlockMatrix::Zero();

  // Pair-sector splitting |v| with v = (0, -b, -(h + a)); the two pair
  // eigenvalues are a -/+ |v|.
  double pair_splitting() const;
  double ground_energy() const;
};

BlockHamiltonian block_hamiltonian(double a, double b, double h);
BlockHamiltonian build_block_hamiltonian(const ModelParams& params, const MomentumMode& mode);

struct BlockOperators {
  BlockMatrix txx;
  BlockMatrix tyy;
  BlockMatrix txy;
  BlockMatrix tyx;
  BlockMatrix sz;
};

// Transcribed as printed. Physical observables need the sign constants below.
BlockOperators build_block_operators(const MomentumMode& mode);

// Relative signs fixed against exact diagonalization: sigma^z = 1 - 2n makes
// the printed sz the negative of the magnetization, and the printed mixed
// operators carry the opposite sign of the spin-basis sigma^x sigma^y.
inline constexpr double kMagnetizationSign = -1.0;
inline constexpr double kMixedSign = -1.0;

struct BlockState {
  BlockMatrix rho = BlockMatrix::Zero();

  double trace() const { return rho.trace().real(); }
  double purity() const { return (rho * rho).trace().real(); }
};

enum class DegeneracyPolicy { Continuous, Strict };

inline constexpr double kDegeneracyGap = 1e-14;

BlockState ground_block_state(const BlockHamiltonian& hp,
                              DegeneracyPolicy policy = DegeneracyPolicy::Continuous);
BlockState ground_block_state(const ModelParams& params, const MomentumMode& mode,
                              DegeneracyPolicy policy = DegeneracyPolicy::Continuous);

// Sum of block ground energies; includes the constant -h per block.
double ground_energy(const ModelParams& params);

// Bloch vector of the pair sector, rho_pair = (1 + n.sigma) / 2 in the
// basis {|0>, pair}.
struct Bloch {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Unit vector along v = (0, -b, -(h + a)). At an exact degeneracy returns
// the h -> h - 0 limit (0, 0, 1).
Bloch pair_axis(double a, double b, double h);
bool pair_degenerate(double a, double b, double h);

BlockState block_state_from_bloch(const Bloch& n);
Bloch bloch_from_block_state(const BlockState& s);

}  // namespace bellquench
