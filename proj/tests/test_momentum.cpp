#include <cmath>
#include <numbers>

#include "bellquench/error.hpp"
#include "bellquench/momentum.hpp"
#include "doctest.h"

using namespace bellquench;

namespace {

ModelParams params(double gamma, double alpha, double h, int n = 16) {
  ModelParams p;
  p.n = n;
  p.gamma = gamma;
  p.alpha = alpha;
  p.h = h;
  return p;
}

double max_abs(const BlockMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("momentum grid") {
  const auto modes = momentum_modes(8);
  REQUIRE(modes.size() == 4);
  CHECK(modes.front().phi == doctest::Approx(std::numbers::pi / 8));
  CHECK(modes.back().phi == doctest::Approx(7 * std::numbers::pi / 8));
  for (const auto& m : modes) {
    CHECK(m.phi > 0.0);
    CHECK(m.phi < std::numbers::pi);
  }
  CHECK_THROWS_AS(momentum_mode(8, 0), Error);
  CHECK_THROWS_AS(momentum_mode(8, 5), Error);
}

TEST_CASE("block Hamiltonian layout") {
  const auto hp = build_block_hamiltonian(params(0.6, 1.7, 0.3), momentum_mode(16, 3));
  const auto& m = hp.matrix;
  CHECK(m(0, 0).real() == doctest::Approx(-0.3));
  CHECK(m(1, 1).real() == doctest::Approx(2 * hp.a + 0.3));
  CHECK(std::abs(m(0, 1) - std::complex<double>(0, hp.b)) < 1e-15);
  CHECK(std::abs(m(1, 0) - std::complex<double>(0, -hp.b)) < 1e-15);
  CHECK(m(2, 2).real() == doctest::Approx(hp.a));
  CHECK(m(3, 3).real() == doctest::Approx(hp.a));
  CHECK(max_abs(m - m.adjoint()) < 1e-15);
  CHECK(std::abs(m(0, 2)) + std::abs(m(1, 3)) + std::abs(m(2, 3)) == 0.0);
}

TEST_CASE("pairing vanishes at gamma = 0 and at phi = pi for nearest neighbours") {
  for (const auto& mode : momentum_modes(16)) {
    const auto hp = build_block_hamiltonian(params(0.0, 1.3, 0.2), mode);
    CHECK(hp.b == 0.0);
  }
  ModelParams nn = params(1.0, 100.0, 0.0);
  const auto jr = coupling_profile(nn);
  CHECK(std::abs(mode_dispersion(jr, 1.0, std::numbers::pi).b) < 1e-15);
}

TEST_CASE("nearest-neighbour block at phi = pi/2") {
  ModelParams nn = params(0.7, 100.0, 0.0);
  const auto d = mode_dispersion(coupling_profile(nn), nn.gamma, std::numbers::pi / 2);
  const auto hp = block_hamiltonian(d.a, d.b, 0.0);
  CHECK(std::abs(hp.a) < 1e-15);
  // Magnitude gamma; the sign follows the ferromagnetic coupling.
  CHECK(std::abs(std::abs(hp.b) - 0.7) < 1e-15);
  CHECK(std::abs(hp.matrix(1, 1)) < 1e-15);
  CHECK(std::abs(hp.matrix(2, 2)) < 1e-15);
}

TEST_CASE("block spectrum matches a generic eigensolver") {
  for (double h : {-2.0, -0.4, 0.0, 0.8, 2.5}) {
    for (const auto& mode : momentum_modes(16)) {
      const auto hp = build_block_hamiltonian(params(0.45, 1.2, h), mode);
      Eigen::SelfAdjointEigenSolver<BlockMatrix> es(hp.matrix, Eigen::EigenvaluesOnly);
      const double w = std::hypot(hp.a + h, hp.b);
      CHECK(es.eigenvalues()(0) == doctest::Approx(hp.a - w));
      CHECK(es.eigenvalues()(3) == doctest::Approx(hp.a + w));
      CHECK(hp.ground_energy() == doctest::Approx(es.eigenvalues()(0)));
    }
  }
}

TEST_CASE("block operators as transcribed") {
  const auto at_pi = build_block_operators({8, std::numbers::pi});
  BlockMatrix want = BlockMatrix::Zero();
  want.diagonal() << 0.0, -2.0, -1.0, -1.0;
  CHECK(max_abs(at_pi.txx - want) < 1e-15);

  const auto half = build_block_operators({4, std::numbers::pi / 2});
  CHECK(half.txy(0, 1).real() == doctest::Approx(-1.0));
  CHECK(half.txy(1, 0).real() == doctest::Approx(-1.0));
  CHECK(half.txy(2, 2).real() == doctest::Approx(1.0));
  CHECK(half.txy(3, 3).real() == doctest::Approx(-1.0));

  for (const auto& mode : momentum_modes(12)) {
    const auto ops = build_block_operators(mode);
    CHECK(max_abs(ops.txx - ops.txx.adjoint()) < 1e-15);
    CHECK(max_abs(ops.tyy - ops.tyy.adjoint()) < 1e-15);
    BlockMatrix sz = BlockMatrix::Zero();
    sz.diagonal() << -1.0, 1.0, 0.0, 0.0;
    CHECK(max_abs(ops.sz - sz) == 0.0);
  }
}

TEST_CASE("ground block state") {
  const auto p = params(0.8, 1.5, 0.35);
  for (const auto& mode : momentum_modes(16)) {
    const auto s = ground_block_state(p, mode);
    CHECK(s.trace() == doctest::Approx(1.0));
    CHECK(std::abs(s.purity() - 1.0) < 1e-12);
    CHECK(max_abs(s.rho - s.rho.adjoint()) < 1e-15);
    CHECK(std::abs(s.rho(2, 2)) + std::abs(s.rho(3, 3)) == 0.0);
    const auto hp = build_block_hamiltonian(p, mode);
    CHECK((hp.matrix * s.rho).trace().real() == doctest::Approx(hp.ground_energy()));
  }
}

TEST_CASE("strong field gives the fermion vacuum") {
  const auto p = params(0.8, 1.5, 1e6);
  for (const auto& mode : momentum_modes(16)) {
    const auto s = ground_block_state(p, mode);
    CHECK(std::abs(s.rho(0, 0) - 1.0) < 1e-10);
  }
}

TEST_CASE("gamma = 0 selects the lower diagonal level") {
  for (double h : {-1.5, -0.2, 0.6}) {
    const auto p = params(0.0, 2.0, h);
    for (const auto& mode : momentum_modes(16)) {
      const auto hp = build_block_hamiltonian(p, mode);
      const auto s = ground_block_state(hp);
      const bool vacuum = -h < 2 * hp.a + h;
      CHECK(std::abs(s.rho(vacuum ? 0 : 1, vacuum ? 0 : 1) - 1.0) < 1e-14);
    }
  }
}

TEST_CASE("degenerate block policy") {
  // h = -a and b = 0 closes the pair gap exactly.
  const auto hp = block_hamiltonian(0.4, 0.0, -0.4);
  const auto s = ground_block_state(hp);
  // Limit from h slightly below: the pair state.
  CHECK(std::abs(s.rho(1, 1) - 1.0) < 1e-15);
  const auto below = ground_block_state(block_hamiltonian(0.4, 0.0, -0.4 - 1e-9));
  CHECK(max_abs(s.rho - below.rho) < 1e-12);
  CHECK_THROWS_AS(ground_block_state(hp, DegeneracyPolicy::Strict), Error);
}

TEST_CASE("Bloch round trip") {
  const Bloch n{0.3, -0.4, 0.5};
  const auto s = block_state_from_bloch(n);
  const auto back = bloch_from_block_state(s);
  CHECK(back.x == doctest::Approx(n.x));
  CHECK(back.y == doctest::Approx(n.y));
  CHECK(back.z == doctest::Approx(n.z));
}
