#include "bellquench/momentum.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "bellquench/error.hpp"

namespace bellquench {

namespace {
const std::complex<double> kI(0.0, 1.0);
}

MomentumMode momentum_mode(int n, int k) {
  require(n >= 2 && n % 2 == 0, "momentum grid needs an even N");
  require(k >= 1 && k <= n / 2, "mode index out of range");
  return {k, std::numbers::pi * (2.0 * k - 1.0) / n};
}

std::vector<MomentumMode> momentum_modes(int n) {
  std::vector<MomentumMode> modes;
  modes.reserve(n / 2);
  for (int k = 1; k <= n / 2; ++k) modes.push_back(momentum_mode(n, k));
  return modes;
}

Dispersion mode_dispersion(const std::vector<double>& jr, double gamma, double phi) {
  double c = 0.0;
  double s = 0.0;
  for (std::size_t r = 0; r < jr.size(); ++r) {
    const double x = phi * static_cast<double>(r + 1);
    c += jr[r] * std::cos(x);
    s += jr[r] * std::sin(x);
  }
  return {-c, -gamma * s};
}

std::vector<Dispersion> dispersion_table(const ModelParams& params) {
  const auto jr = coupling_profile(params);
  std::vector<Dispersion> out;
  out.reserve(params.n / 2);
  for (const auto& m : momentum_modes(params.n)) out.push_back(mode_dispersion(jr, params.gamma, m.phi));
  return out;
}

double BlockHamiltonian::pair_splitting() const { return std::hypot(h + a, b); }

double BlockHamiltonian::ground_energy() const { return a - pair_splitting(); }

BlockHamiltonian block_hamiltonian(double a, double b, double h) {
  BlockHamiltonian hp;
  hp.a = a;
  hp.b = b;
  hp.h = h;
  hp.matrix(0, 0) = -h;
  hp.matrix(0, 1) = kI * b;
  hp.matrix(1, 0) = -kI * b;
  hp.matrix(1, 1) = 2.0 * a + h;
  hp.matrix(2, 2) = a;
  hp.matrix(3, 3) = a;
  return hp;
}

BlockHamiltonian build_block_hamiltonian(const ModelParams& params, const MomentumMode& mode) {
  const auto d = mode_dispersion(coupling_profile(params), params.gamma, mode.phi);
  return block_hamiltonian(d.a, d.b, params.h);
}

BlockOperators build_block_operators(const MomentumMode& mode) {
  const double s = std::sin(mode.phi);
  const double c = std::cos(mode.phi);
  BlockOperators ops;
  ops.txx = BlockMatrix::Zero();
  ops.txx(0, 1) = kI * s;
  ops.txx(1, 0) = -kI * s;
  ops.txx(1, 1) = 2.0 * c;
  ops.txx(2, 2) = c;
  ops.txx(3, 3) = c;

  ops.tyy = BlockMatrix::Zero();
  ops.tyy(0, 1) = -kI * s;
  ops.tyy(1, 0) = kI * s;
  ops.tyy(1, 1) = 2.0 * c;
  ops.tyy(2, 2) = c;
  ops.tyy(3, 3) = c;

  ops.txy = BlockMatrix::Zero();
  ops.txy(0, 1) = -s;
  ops.txy(1, 0) = -s;
  ops.txy(2, 2) = s;
  ops.txy(3, 3) = -s;

  ops.tyx = BlockMatrix::Zero();
  ops.tyx(0, 1) = -s;
  ops.tyx(1, 0) = -s;
  ops.tyx(2, 2) = -s;
  ops.tyx(3, 3) = s;

  ops.sz = BlockMatrix::Zero();
  ops.sz(0, 0) = -1.0;
  ops.sz(1, 1) = 1.0;
  return ops;
}

bool pair_degenerate(double a, double b, double h) { return std::hypot(h + a, b) < 0.5 * kDegeneracyGap; }

Bloch pair_axis(double a, double b, double h) {
  const double norm = std::hypot(h + a, b);
  if (norm < 0.5 * kDegeneracyGap) return {0.0, 0.0, 1.0};
  return {0.0, -b / norm, -(h + a) / norm};
}

BlockState block_state_from_bloch(const Bloch& n) {
  BlockState s;
  s.rho(0, 0) = 0.5 * (1.0 + n.z);
  s.rho(1, 1) = 0.5 * (1.0 - n.z);
  s.rho(0, 1) = 0.5 * std::complex<double>(n.x, -n.y);
  s.rho(1, 0) = 0.5 * std::complex<double>(n.x, n.y);
  return s;
}

Bloch bloch_from_block_state(const BlockState& s) {
  return {2.0 * s.rho(1, 0).real(), 2.0 * s.rho(1, 0).imag(), (s.rho(0, 0) - s.rho(1, 1)).real()};
}

BlockState ground_block_state(const BlockHamiltonian& hp, DegeneracyPolicy policy) {
  // The gap between the two pair levels is 2|v|.
  if (policy == DegeneracyPolicy::Strict && 2.0 * hp.pair_splitting() < kDegeneracyGap) {
    fail(ErrorKind::DegenerateGroundState, "pair block is degenerate");
  }
  const Bloch v = pair_axis(hp.a, hp.b, hp.h);
  return block_state_from_bloch({-v.x, -v.y, -v.z});
}

BlockState ground_block_state(const ModelParams& params, const MomentumMode& mode, DegeneracyPolicy policy) {
  return ground_block_state(build_block_hamiltonian(params, mode), policy);
}

double ground_energy(const ModelParams& params) {
  params.validate();
  double e = 0.0;
  for (const auto& d : dispersion_table(params)) e += block_hamiltonian(d.a, d.b, params.h).ground_energy();
  return e;
}

}  // namespace bellquench
