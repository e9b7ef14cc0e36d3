#include <cmath>
#include <random>

#include "bellquench/bell.hpp"
#include "bellquench/dynamics.hpp"
#include "bellquench/error.hpp"
#include "bellquench/oracle.hpp"
#include "doctest.h"

using namespace bellquench;

namespace {

ModelParams chain(int n, double gamma, double alpha, double h) {
  ModelParams p;
  p.n = n;
  p.gamma = gamma;
  p.alpha = alpha;
  p.h = h;
  return p;
}

double max_spectrum_gap(const std::vector<double>& a, const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_CASE("dense Hamiltonian is symmetric") {
  const auto h = build_spin_hamiltonian(chain(6, 0.4, 1.3, 0.2));
  CHECK(h.dim() == 64);
  CHECK((h.matrix - h.matrix.transpose()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("zero coupling leaves a pure Zeeman ladder") {
  auto p = chain(4, 0.5, 2.0, 0.8);
  auto h = build_spin_hamiltonian(p);
  // Scale out the coupling by building the field term alone.
  p.h = 0.0;
  h.matrix -= build_spin_hamiltonian(p).matrix;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.matrix);
  CHECK(es.eigenvalues()(0) == doctest::Approx(-0.8 * 4 / 2));
  CHECK(es.eigenvalues()(15) == doctest::Approx(0.8 * 4 / 2));
  for (int i = 0; i < 16; ++i) {
    const double v = es.eigenvalues()(i) / 0.8;
    CHECK(std::abs(v - std::round(v)) < 1e-12);
  }
}

TEST_CASE("Ising proxy spectrum is symmetric under h -> -h") {
  const auto a = dense_spectrum(chain(4, 1.0, 100.0, 0.7));
  const auto b = dense_spectrum(chain(4, 1.0, 100.0, -0.7));
  CHECK(max_spectrum_gap(a, b) < 1e-10);
}

TEST_CASE("fermionic spectrum matches dense spectrum") {
  for (int n : {4, 6, 8}) {
    for (auto [g, a, h] : {std::tuple{0.3, 1.7, 0.4}, std::tuple{1.0, 10.0, -0.6}, std::tuple{0.8, 0.9, 1.3}}) {
      const auto p = chain(n, g, a, h);
      CAPTURE(n);
      CHECK(max_spectrum_gap(dense_spectrum(p), fermionic_spectrum(p)) < 1e-8);
    }
  }
}

TEST_CASE("block ground energy matches dense ground energy") {
  const auto p = chain(8, 1.0, 10.0, 0.5);
  CHECK(std::abs(ground_energy(p) - dense_ground_energy(p)) < 1e-10);
  const auto q = chain(10, 0.35, 1.2, -0.3);
  CHECK(std::abs(ground_energy(q) - dense_ground_energy(q, Parity::Even)) < 1e-8);
  // The odd sector can win at finite N; both sectors together reproduce the
  // full minimum.
  CHECK(std::abs(fermionic_spectrum(q).front() - dense_ground_energy(q, Parity::Any)) < 1e-8);
}

TEST_CASE("resource caps") {
  CHECK_THROWS_AS(build_spin_hamiltonian(chain(16, 1.0, 2.0, 0.0)), Error);
  try {
    OracleQuench(QuenchSpec::field(chain(14, 1.0, 2.0, 0.0), 0.1, 0.2));
    FAIL("expected resource cap");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ResourceCap);
  }
}

TEST_CASE("oracle quench agrees with the block evolution") {
  const auto q = QuenchSpec::field(chain(10, 1.0, 10.0, 0.0), 0.5, 2.5);
  const OracleQuench oq(q);
  for (double t : {0.0, 1.3, 2.0}) {
    const auto snap = oq.snapshot(t);
    const auto c = correlators_at(q, t);
    CAPTURE(t);
    CHECK(std::abs(snap.correlators.mz - c.mz) < 1e-8);
    CHECK(std::abs(snap.correlators.cxx - c.cxx) < 1e-8);
    CHECK(std::abs(snap.correlators.cyy - c.cyy) < 1e-8);
    CHECK(std::abs(snap.correlators.czz - c.czz) < 1e-8);
    CHECK(std::abs(snap.correlators.cxy - c.cxy) < 1e-8);
    CHECK(std::abs(snap.correlators.cyx - c.cyx) < 1e-8);
  }
}

TEST_CASE("one-body correlations agree with Jordan-Wigner expectations") {
  const auto q = QuenchSpec::field(chain(10, 0.6, 1.4, 0.0), -0.4, 0.9);
  const auto snap = oracle_quench(q, 0.7);
  const auto ob = one_body_correlations(q, 0.7);
  CHECK(std::abs(snap.one_body.g0 - ob.g0) < 1e-8);
  CHECK(std::abs(snap.one_body.g - ob.g) < 1e-8);
  CHECK(std::abs(snap.one_body.f - ob.f) < 1e-8);
}

TEST_CASE("two-site state is an X-state, translation invariant and positive") {
  const auto q = QuenchSpec::field(chain(8, 0.7, 1.6, 0.0), 0.3, -0.8);
  const OracleQuench oq(q);
  for (double t : {0.0, 0.9, 3.1}) {
    const auto psi = oq.state_at(t);
    const auto r12 = two_site_state(psi, 8, 0, 1);
    const auto r23 = two_site_state(psi, 8, 1, 2);
    CHECK((r12 - r23).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(r12.trace() - 1.0) < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(r12, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues()(0) > -1e-12);
    const auto e = pauli_expectations(TwoQubitState{r12});
    CHECK(std::abs(e.corr(0, 2)) < 1e-10);
    CHECK(std::abs(e.corr(2, 0)) < 1e-10);
    CHECK(std::abs(e.corr(1, 2)) < 1e-10);
    CHECK(std::abs(e.corr(2, 1)) < 1e-10);
  }
}

TEST_CASE("no quench keeps the reduced state fixed") {
  const auto q = QuenchSpec::field(chain(8, 0.5, 2.0, 0.0), 0.4, 0.4);
  const OracleQuench oq(q);
  const auto r0 = oq.snapshot(0.0).rho12.rho;
  for (double t : {0.5, 4.0, 17.0}) CHECK((oq.snapshot(t).rho12.rho - r0).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("oracle Bell trace respects the local bound and starts at equilibrium") {
  const auto q = QuenchSpec::field(chain(8, 1.0, 10.0, 0.0), 1.5, 2.5);
  const auto trace = oracle_bell_trace(q, {10.0, 0.5});
  for (double b : trace) CHECK(b <= 2.0 + 1e-9);
  const auto eq = QuenchSpec::field(chain(8, 1.0, 10.0, 0.0), 1.5, 1.5);
  CHECK(std::abs(trace.front() - bell_value(correlators_at(eq, 0.0))) < 1e-8);
}

TEST_CASE("coupling quench agrees with the block evolution") {
  const auto q = QuenchSpec::coupling(chain(10, 0.8, 1.0, -0.5), 0.9, 2.6);
  const OracleQuench oq(q);
  for (double t : {0.4, 2.2}) {
    const auto a = oq.snapshot(t).correlators;
    const auto b = correlators_at(q, t);
    CHECK(std::abs(a.cxx - b.cxx) < 1e-8);
    CHECK(std::abs(a.czz - b.czz) < 1e-8);
    CHECK(std::abs(bell_value(a) - bell_value(b)) < 1e-8);
  }
}
