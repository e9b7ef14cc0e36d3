#include "bellquench/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "bellquench/error.hpp"
#include "bellquench/momentum.hpp"

namespace bellquench {

namespace {

void check_cap(int n, int cap) {
  if (n > cap) {
    fail(ErrorKind::ResourceCap,
         "dense oracle limited to N <= " + std::to_string(cap) + ", got N = " + std::to_string(n));
  }
}

inline int bit(std::size_t s, int n, int site) { return static_cast<int>((s >> (n - 1 - site)) & 1U); }
inline double zval(std::size_t s, int n, int site) { return 1.0 - 2.0 * bit(s, n, site); }

Eigen::MatrixXd restrict(const Eigen::MatrixXd& h, const std::vector<std::size_t>& idx) {
  const auto m = static_cast<Eigen::Index>(idx.size());
  Eigen::MatrixXd out(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) out(i, j) = h(idx[i], idx[j]);
  return out;
}

// Energies of a single pair block: vacuum-like and pair-like levels plus two
// singly occupied levels (odd parity).
struct BlockLevels {
  double even[2];
  double odd[2];
};

BlockLevels block_levels(double a, double b, double h) {
  const double w = std::hypot(h + a, b);
  return {{a - w, a + w}, {a, a}};
}

// Adds every combination of block levels with the requested parity.
void enumerate(const std::vector<BlockLevels>& blocks, std::size_t k, double energy, int parity, int want,
               std::vector<double>& extra_modes, std::vector<double>& out) {
  if (k == blocks.size()) {
    // Unpaired modes (periodic grid only), each with energy offset -h/2 folded in.
    const std::size_t m = extra_modes.size() / 2;
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
      double e = energy;
      int p = parity;
      for (std::size_t u = 0; u < m; ++u) {
        const bool occ = (mask >> u) & 1U;
        e += extra_modes[2 * u] + (occ ? extra_modes[2 * u + 1] : 0.0);
        p ^= occ;
      }
      if (p == want) out.push_back(e);
    }
    return;
  }
  for (double e : blocks[k].even) enumerate(blocks, k + 1, energy + e, parity, want, extra_modes, out);
  for (double e : blocks[k].odd) enumerate(blocks, k + 1, energy + e, parity ^ 1, want, extra_modes, out);
}

}  // namespace

DenseHamiltonian build_spin_hamiltonian(const ModelParams& params) {
  params.validate();
  check_cap(params.n, kOracleBuildCap);
  const int n = params.n;
  const std::size_t dim = std::size_t{1} << n;
  const auto jr = coupling_profile(params);
  const double cx = (1.0 + params.gamma) / 4.0;
  const double cy = (1.0 - params.gamma) / 4.0;
  DenseHamiltonian out;
  out.n = n;
  out.matrix = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t s = 0; s < dim; ++s) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) diag += zval(s, n, j);
    out.matrix(s, s) += -0.5 * params.h * diag;
    for (int j = 0; j < n; ++j) {
      double string = 1.0;
      for (int r = 1; r <= n / 2; ++r) {
        const int l = (j + r) % n;
        if (r > 1) string *= zval(s, n, (j + r - 1) % n);
        const std::size_t flipped = s ^ (std::size_t{1} << (n - 1 - j)) ^ (std::size_t{1} << (n - 1 - l));
        // sigma^y sigma^y on (j, l) contributes i^2 z_j z_l.
        const double yy = -zval(s, n, j) * zval(s, n, l);
        out.matrix(flipped, s) += -jr[r - 1] * string * (cx + cy * yy);
      }
    }
  }
  return out;
}

std::vector<std::size_t> parity_sector(int n, Parity parity) {
  const std::size_t dim = std::size_t{1} << n;
  std::vector<std::size_t> idx;
  idx.reserve(parity == Parity::Any ? dim : dim / 2);
  for (std::size_t s = 0; s < dim; ++s) {
    const bool even = std::popcount(s) % 2 == 0;
    if (parity == Parity::Any || even == (parity == Parity::Even)) idx.push_back(s);
  }
  return idx;
}

std::vector<double> dense_spectrum(const ModelParams& params, Parity parity) {
  const auto h = build_spin_hamiltonian(params);
  const Eigen::MatrixXd m = parity == Parity::Any ? h.matrix : restrict(h.matrix, parity_sector(params.n, parity));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double dense_ground_energy(const ModelParams& params, Parity parity) {
  return dense_spectrum(params, parity).front();
}

std::vector<double> fermionic_spectrum(const ModelParams& params) {
  params.validate();
  check_cap(params.n, kOracleBuildCap);
  const int n = params.n;
  const auto jr = coupling_profile(params);
  std::vector<double> out;
  out.reserve(std::size_t{1} << n);

  std::vector<BlockLevels> anti;
  for (const auto& m : momentum_modes(n)) {
    const auto d = mode_dispersion(jr, params.gamma, m.phi);
    anti.push_back(block_levels(d.a, d.b, params.h));
  }
  std::vector<double> none;
  enumerate(anti, 0, 0.0, 0, 0, none, out);

  std::vector<BlockLevels> periodic;
  for (int k = 1; k < n / 2; ++k) {
    const auto d = mode_dispersion(jr, params.gamma, 2.0 * std::numbers::pi * k / n);
    periodic.push_back(block_levels(d.a, d.b, params.h));
  }
  std::vector<double> unpaired;
  for (double phi : {0.0, std::numbers::pi}) {
    const auto d = mode_dispersion(jr, params.gamma, phi);
    unpaired.push_back(-0.5 * params.h);
    unpaired.push_back(params.h + d.a);
  }
  enumerate(periodic, 0, 0.0, 0, 1, unpaired, out);

  std::sort(out.begin(), out.end());
  return out;
}

Eigen::Matrix4cd two_site_state(const Eigen::VectorXcd& psi, int n, int site_a, int site_b) {
  require(site_a != site_b && site_a >= 0 && site_b >= 0 && site_a < n && site_b < n, "invalid site pair");
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t ma = std::size_t{1} << (n - 1 - site_a);
  const std::size_t mb = std::size_t{1} << (n - 1 - site_b);
  for (std::size_t s = 0; s < dim; ++s) {
    if (s & (ma | mb)) continue;
    const std::size_t idx[4] = {s, s | mb, s | ma, s | ma | mb};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) rho(i, j) += psi(idx[i]) * std::conj(psi(idx[j]));
  }
  return rho;
}

OneBodyCorrelations dense_one_body(const Eigen::VectorXcd& psi, int n) {
  // c_j = (prod_{l<j} z_l) a_j with a = |up><down|; site 0 carries no string.
  const Eigen::Matrix4cd rho = two_site_state(psi, n, 0, 1);
  OneBodyCorrelations ob;
  ob.g0 = (rho(2, 2) + rho(3, 3)).real();
  // c+_0 c_1 = a+_0 a_1 maps |01> (0 up, 1 down) to |10>.
  ob.g = rho(1, 2);
  // c_0 c_1 = -a_0 a_1 maps |11> to |00>.
  ob.f = -rho(3, 0);
  return ob;
}

OracleQuench::OracleQuench(const QuenchSpec& quench) : n_(quench.initial.n) {
  quench.validate();
  check_cap(n_, kOracleEvolveCap);
  sector_ = parity_sector(n_, Parity::Even);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es0(restrict(build_spin_hamiltonian(quench.initial).matrix, sector_));
  e0_ = es0.eigenvalues()(0);
  const Eigen::VectorXd psi0 = es0.eigenvectors().col(0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(restrict(build_spin_hamiltonian(quench.quenched).matrix, sector_));
  energies_ = es.eigenvalues();
  vectors_ = es.eigenvectors();
  overlaps_ = vectors_.transpose() * psi0;
}

Eigen::VectorXcd OracleQuench::state_at(double t) const {
  require(t >= 0.0, "time must be non-negative");
  Eigen::VectorXd re(overlaps_.size());
  Eigen::VectorXd im(overlaps_.size());
  for (Eigen::Index k = 0; k < re.size(); ++k) {
    re(k) = overlaps_(k) * std::cos(energies_(k) * t);
    im(k) = -overlaps_(k) * std::sin(energies_(k) * t);
  }
  const Eigen::VectorXd pr = vectors_ * re;
  const Eigen::VectorXd pi = vectors_ * im;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_);
  for (Eigen::Index k = 0; k < pr.size(); ++k) psi(sector_[k]) = {pr(k), pi(k)};
  return psi;
}

OracleSnapshot OracleQuench::snapshot(double t) const {
  const Eigen::VectorXcd psi = state_at(t);
  OracleSnapshot snap;
  snap.rho12.rho = two_site_state(psi, n_, 0, 1);
  snap.pauli = pauli_expectations(snap.rho12);
  snap.correlators = correlators_from_rho12(snap.rho12);
  snap.correlators.t = t;
  snap.one_body = dense_one_body(psi, n_);
  return snap;
}

TwoQubitState OracleQuench::dephased_rho12(double degeneracy_tol) const {
  TwoQubitState out;
  out.rho.setZero();
  const Eigen::Index dim = energies_.size();
  Eigen::Index start = 0;
  while (start < dim) {
    Eigen::Index stop = start + 1;
    while (stop < dim && energies_(stop) - energies_(stop - 1) < degeneracy_tol) ++stop;
    const Eigen::VectorXd part = vectors_.middleCols(start, stop - start) * overlaps_.segment(start, stop - start);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(Eigen::Index{1} << n_);
    for (Eigen::Index k = 0; k < part.size(); ++k) psi(sector_[k]) = part(k);
    out.rho += two_site_state(psi, n_, 0, 1);
    start = stop;
  }
  return out;
}

OracleSnapshot oracle_quench(const QuenchSpec& quench, double t) { return OracleQuench(quench).snapshot(t); }

std::vector<double> oracle_bell_trace(const QuenchSpec& quench, const TimeGrid& grid) {
  const OracleQuench oq(quench);
  std::vector<double> out;
  for (double t : grid.samples()) out.push_back(bell_value(oq.snapshot(t).correlators));
  return out;
}

}  // namespace bellquench
