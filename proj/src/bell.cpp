#include "bellquench/bell.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "bellquench/error.hpp"

namespace bellquench {

namespace {

const std::complex<double> kI(0.0, 1.0);

Eigen::Matrix2cd pauli(int k) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  switch (k) {
    case 0:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case 1:
      m(0, 1) = -kI;
      m(1, 0) = kI;
      break;
    default:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
  }
  return m;
}

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

}  // namespace

CorrelationMatrix correlation_matrix(const CorrelatorSet& c) {
  CorrelationMatrix t = CorrelationMatrix::Zero();
  t(0, 0) = c.cxx;
  t(0, 1) = c.cxy;
  t(1, 0) = c.cyx;
  t(1, 1) = c.cyy;
  t(2, 2) = c.czz;
  return t;
}

BellDiagnostics bell_eigenvalues(const CorrelatorSet& c) {
  const double s = c.cxx * c.cxx + c.cyy * c.cyy + c.cxy * c.cxy + c.cyx * c.cyx;
  const double det = c.cxx * c.cyy - c.cxy * c.cyx;
  const double d = det * det;
  const double disc = std::sqrt(std::max(s * s - 4.0 * d, 0.0));
  BellDiagnostics out;
  out.lambda_plus = 0.5 * (s + disc);
  // Product form avoids cancellation when d is tiny.
  out.lambda_minus = out.lambda_plus > 0.0 ? d / out.lambda_plus : 0.0;
  out.czz_sq = c.czz * c.czz;
  if (out.lambda_minus >= out.czz_sq) {
    out.branch = BellBranch::PlusMinus;
    out.bell = 2.0 * std::sqrt(out.lambda_plus + out.lambda_minus);
  } else {
    out.branch = BellBranch::PlusCzz;
    out.bell = 2.0 * std::sqrt(out.lambda_plus + out.czz_sq);
  }
  return out;
}

double bell_value(const CorrelatorSet& c) { return bell_eigenvalues(c).bell; }

double bell_time_average(std::span<const CorrelatorSet> series) {
  require(!series.empty(), "bell_time_average needs a nonempty series");
  for (const auto& c : series) require(c.t.has_value(), "bell_time_average needs timed samples");
  if (series.size() == 1) return bell_value(series[0]);
  CompensatedSum integral;
  double prev = bell_value(series[0]);
  for (std::size_t k = 1; k < series.size(); ++k) {
    const double cur = bell_value(series[k]);
    integral.add(0.5 * (*series[k].t - *series[k - 1].t) * (prev + cur));
    prev = cur;
  }
  const double span = *series.back().t - *series.front().t;
  require(span > 0.0, "bell_time_average needs increasing times");
  return integral.value() / span;
}

TwoQubitState reconstruct_rho12(const CorrelatorSet& c) {
  TwoQubitState s;
  Eigen::Matrix4cd& r = s.rho;
  r.setZero();
  r(0, 0) = (1.0 + 2.0 * c.mz + c.czz) / 4.0;
  r(1, 1) = (1.0 - c.czz) / 4.0;
  r(2, 2) = (1.0 - c.czz) / 4.0;
  r(3, 3) = (1.0 - 2.0 * c.mz + c.czz) / 4.0;
  const std::complex<double> outer(c.cxx - c.cyy, -(c.cxy + c.cyx));
  const std::complex<double> inner(c.cxx + c.cyy, c.cxy - c.cyx);
  r(0, 3) = outer / 4.0;
  r(3, 0) = std::conj(outer) / 4.0;
  r(1, 2) = inner / 4.0;
  r(2, 1) = std::conj(inner) / 4.0;
  const double lowest = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd>(r, Eigen::EigenvaluesOnly).eigenvalues()(0);
  if (lowest < -kPsdTolerance) {
    fail(ErrorKind::InconsistentCorrelators, "reconstructed two-site state is not positive semidefinite");
  }
  return s;
}

PauliExpectations pauli_expectations(const TwoQubitState& s) {
  PauliExpectations e;
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  for (int k = 0; k < 3; ++k) {
    e.m1(k) = (kron(pauli(k), id) * s.rho).trace().real();
    e.m2(k) = (kron(id, pauli(k)) * s.rho).trace().real();
    for (int l = 0; l < 3; ++l) e.corr(k, l) = (kron(pauli(k), pauli(l)) * s.rho).trace().real();
  }
  return e;
}

CorrelatorSet correlators_from_rho12(const TwoQubitState& s) {
  const auto e = pauli_expectations(s);
  CorrelatorSet c;
  c.mz = 0.5 * (e.m1(2) + e.m2(2));
  c.cxx = e.corr(0, 0);
  c.cyy = e.corr(1, 1);
  c.czz = e.corr(2, 2);
  c.cxy = e.corr(0, 1);
  c.cyx = e.corr(1, 0);
  return c;
}

Eigen::Matrix4cd partial_transpose(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix4cd out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) out(2 * a + b, 2 * c + d) = rho(2 * a + d, 2 * c + b);
  return out;
}

double log_negativity(const TwoQubitState& s) {
  const Eigen::Matrix4cd pt = partial_transpose(s.rho);
  const auto ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd>(pt, Eigen::EigenvaluesOnly).eigenvalues();
  return std::max(0.0, std::log2(ev.cwiseAbs().sum()));
}

double log_negativity(const CorrelatorSet& c) {
  // Partial transpose swaps the two coherences of an X-state.
  const double p00 = (1.0 + 2.0 * c.mz + c.czz) / 4.0;
  const double p11 = (1.0 - c.czz) / 4.0;
  const double p33 = (1.0 - 2.0 * c.mz + c.czz) / 4.0;
  const double outer = std::hypot(c.cxx - c.cyy, c.cxy + c.cyx) / 4.0;
  const double inner = std::hypot(c.cxx + c.cyy, c.cxy - c.cyx) / 4.0;
  const double mean = 0.5 * (p00 + p33);
  const double half = std::hypot(0.5 * (p00 - p33), inner);
  const double norm = std::abs(mean + half) + std::abs(mean - half) + std::abs(p11 + outer) + std::abs(p11 - outer);
  return std::max(0.0, std::log2(norm));
}

std::pair<double, double> eigenvalue_competition(const CorrelatorSet& c) {
  const auto d = bell_eigenvalues(c);
  return {d.lambda_plus - d.czz_sq, d.lambda_minus - d.czz_sq};
}

}  // namespace bellquench
