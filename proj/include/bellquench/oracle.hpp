#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <vector>

#include "bellquench/bell.hpp"
#include "bellquench/dynamics.hpp"
#include "bellquench/model.hpp"

namespace bellquench {

inline constexpr int kOracleBuildCap = 14;
inline constexpr int kOracleEvolveCap = 12;

// Spin Hamiltonian in the sigma^z product basis. Site 0 is the most
// significant bit; bit value 0 is spin up. The matrix is real symmetric.
struct DenseHamiltonian {
  int n = 0;
  Eigen::MatrixXd matrix;

  int dim() const { return static_cast<int>(matrix.rows()); }
};

DenseHamiltonian build_spin_hamiltonian(const ModelParams& params);

// Fermion parity = product of sigma^z. The block picture describes the even
// sector, which holds the initial state of every quench.
enum class Parity { Any, Even, Odd };

std::vector<std::size_t> parity_sector(int n, Parity parity);

std::vector<double> dense_spectrum(const ModelParams& params, Parity parity = Parity::Any);
double dense_ground_energy(const ModelParams& params, Parity parity = Parity::Even);

// Many-body spectrum assembled from free-fermion modes: even fermion parity
// on the antiperiodic grid, odd parity on the periodic grid. Sorted.
std::vector<double> fermionic_spectrum(const ModelParams& params);

Eigen::Matrix4cd two_site_state(const Eigen::VectorXcd& psi, int n, int site_a, int site_b);

// Jordan-Wigner expectation values <c+_0 c_1>, <c+_0 c_0>, <c_0 c_1>.
OneBodyCorrelations dense_one_body(const Eigen::VectorXcd& psi, int n);

struct OracleSnapshot {
  CorrelatorSet correlators;
  PauliExpectations pauli;
  TwoQubitState rho12;
  OneBodyCorrelations one_body;
};

// Exact evolution of the even-sector ground state by full eigendecomposition
// of the even sector of the final Hamiltonian.
class OracleQuench {
 public:
  explicit OracleQuench(const QuenchSpec& quench);

  Eigen::VectorXcd state_at(double t) const;
  OracleSnapshot snapshot(double t) const;
  // Infinite-time average: the state projected onto each (possibly
  // degenerate) eigenspace of the final Hamiltonian.
  TwoQubitState dephased_rho12(double degeneracy_tol = 1e-9) const;
  double initial_ground_energy() const { return e0_; }
  int n() const { return n_; }

 private:
  int n_;
  double e0_;
  Eigen::VectorXd energies_;
  Eigen::MatrixXd vectors_;
  Eigen::VectorXd overlaps_;
  std::vector<std::size_t> sector_;
};

OracleSnapshot oracle_quench(const QuenchSpec& quench, double t);
std::vector<double> oracle_bell_trace(const QuenchSpec& quench, const TimeGrid& grid);

}  // namespace bellquench
