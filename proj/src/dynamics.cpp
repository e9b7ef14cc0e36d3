#include "bellquench/dynamics.hpp"

#include <cmath>

#include "bellquench/error.hpp"

namespace bellquench {

namespace {

const std::complex<double> kI(0.0, 1.0);

// Gap below which a final block is treated as non-dephasing.
constexpr double kSteadyGap = 1e-12;

BlockMatrix block_propagator(const BlockHamiltonian& hp, double t) {
  const double w = hp.pair_splitting();
  const std::complex<double> phase = std::exp(-kI * hp.a * t);
  BlockMatrix u = BlockMatrix::Zero();
  u(2, 2) = phase;
  u(3, 3) = phase;
  if (w == 0.0) {
    u(0, 0) = phase;
    u(1, 1) = phase;
    return u;
  }
  // exp(-i (a + v.sigma) t) on the pair sector, v = (0, -b, -(h + a)).
  const double vy = -hp.b / w;
  const double vz = -(hp.h + hp.a) / w;
  const double c = std::cos(w * t);
  const double s = std::sin(w * t);
  u(0, 0) = phase * std::complex<double>(c, -s * vz);
  u(1, 1) = phase * std::complex<double>(c, s * vz);
  u(0, 1) = phase * (-s * vy);
  u(1, 0) = phase * (s * vy);
  return u;
}

struct Accumulators {
  CompensatedSum mz, cxx, cyy, cxy, cyx, g0, g_re, g_im, f_re, f_im;
};

void accumulate_block(Accumulators& acc, const BlockMatrix& rho, const BlockOperators& ops, double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  acc.mz.add(kMagnetizationSign * (ops.sz * rho).trace().real());
  acc.cxx.add((ops.txx * rho).trace().real());
  acc.cyy.add((ops.tyy * rho).trace().real());
  acc.cxy.add(kMixedSign * (ops.txy * rho).trace().real());
  acc.cyx.add(kMixedSign * (ops.tyx * rho).trace().real());
  const double occ = 2.0 * rho(1, 1).real() + rho(2, 2).real() + rho(3, 3).real();
  const double imbalance = rho(2, 2).real() - rho(3, 3).real();
  acc.g0.add(occ);
  acc.g_re.add(c * occ);
  acc.g_im.add(-s * imbalance);
  // f = -(2i/N) sum s rho_10
  const std::complex<double> f = -2.0 * kI * s * rho(1, 0);
  acc.f_re.add(f.real());
  acc.f_im.add(f.imag());
}

struct Evaluated {
  CorrelatorSet c;
  OneBodyCorrelations ob;
};

Evaluated evaluate_blocks(const QuenchSpec& quench, double t) {
  quench.validate();
  require(t >= 0.0, "time must be non-negative");
  const int n = quench.initial.n;
  const auto d0 = dispersion_table(quench.initial);
  const auto d1 = dispersion_table(quench.quenched);
  const auto modes = momentum_modes(n);
  Accumulators acc;
  for (std::size_t k = 0; k < modes.size(); ++k) {
    const auto h0 = block_hamiltonian(d0[k].a, d0[k].b, quench.initial.h);
    const auto h1 = block_hamiltonian(d1[k].a, d1[k].b, quench.quenched.h);
    const auto rho = evolve_block(ground_block_state(h0), h1, t).rho;
    accumulate_block(acc, rho, build_block_operators(modes[k]), modes[k].phi);
  }
  const double inv = 1.0 / n;
  Evaluated e;
  e.ob.g0 = inv * acc.g0.value();
  e.ob.g = inv * std::complex<double>(acc.g_re.value(), acc.g_im.value());
  e.ob.f = inv * std::complex<double>(acc.f_re.value(), acc.f_im.value());
  e.c.mz = 2.0 * inv * acc.mz.value();
  e.c.cxx = 2.0 * inv * acc.cxx.value();
  e.c.cyy = 2.0 * inv * acc.cyy.value();
  e.c.cxy = 2.0 * inv * acc.cxy.value();
  e.c.cyx = 2.0 * inv * acc.cyx.value();
  e.c.czz = wick_czz(e.ob);
  e.c.t = t;
  return e;
}

}  // namespace

double wick_czz(const OneBodyCorrelations& ob) {
  const double m = 1.0 - 2.0 * ob.g0;
  return m * m - 4.0 * std::norm(ob.g) + 4.0 * std::norm(ob.f);
}

void TimeGrid::validate() const {
  require(t_max > 0.0 && dt > 0.0, "time grid needs t_max > 0 and dt > 0");
  require(dt <= t_max, "time grid needs dt <= t_max");
}

std::vector<double> TimeGrid::samples() const {
  validate();
  const auto steps = static_cast<long long>(std::floor(t_max / dt + 1e-9));
  std::vector<double> ts;
  ts.reserve(steps + 1);
  for (long long k = 0; k <= steps; ++k) ts.push_back(static_cast<double>(k) * dt);
  return ts;
}

BlockState evolve_block(const BlockState& rho0, const BlockHamiltonian& hfinal, double t) {
  require(t >= 0.0, "time must be non-negative");
  if (t == 0.0) return rho0;
  const BlockMatrix u = block_propagator(hfinal, t);
  return {u * rho0.rho * u.adjoint()};
}

CorrelatorSet correlators_at(const QuenchSpec& quench, double t) { return evaluate_blocks(quench, t).c; }

OneBodyCorrelations one_body_correlations(const QuenchSpec& quench, double t) {
  return evaluate_blocks(quench, t).ob;
}

SteadyState steady_state(const QuenchSpec& quench) { return QuenchEvolver(quench).steady(); }

CorrelatorSet steady_correlators(const QuenchSpec& quench) { return steady_state(quench).correlators; }

std::vector<CorrelatorSet> correlator_time_series(const QuenchSpec& quench, const TimeGrid& grid) {
  const auto ts = grid.samples();
  QuenchEvolver ev(quench);
  std::vector<CorrelatorSet> out;
  out.reserve(ts.size());
  for (double t : ts) out.push_back(ev.at(t));
  return out;
}

Bloch rotate(const Bloch& n, const Bloch& axis, double theta) {
  const double p = n.x * axis.x + n.y * axis.y + n.z * axis.z;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Bloch cross{axis.y * n.z - axis.z * n.y, axis.z * n.x - axis.x * n.z, axis.x * n.y - axis.y * n.x};
  return {p * axis.x + c * (n.x - p * axis.x) + s * cross.x,
          p * axis.y + c * (n.y - p * axis.y) + s * cross.y,
          p * axis.z + c * (n.z - p * axis.z) + s * cross.z};
}

QuenchEvolver::QuenchEvolver(const QuenchSpec& quench) : n_(quench.initial.n) {
  quench.validate();
  const auto d0 = dispersion_table(quench.initial);
  const auto d1 = dispersion_table(quench.quenched);
  const auto modes = momentum_modes(n_);
  modes_.reserve(modes.size());
  for (std::size_t k = 0; k < modes.size(); ++k) {
    const Bloch v0 = pair_axis(d0[k].a, d0[k].b, quench.initial.h);
    const double split = std::hypot(quench.quenched.h + d1[k].a, d1[k].b);
    modes_.push_back({std::cos(modes[k].phi), std::sin(modes[k].phi), Bloch{-v0.x, -v0.y, -v0.z},
                      pair_axis(d1[k].a, d1[k].b, quench.quenched.h), 2.0 * split, 2.0 * split < kSteadyGap});
  }
}

std::vector<Bloch> QuenchEvolver::bloch_at(double t) const {
  require(t >= 0.0, "time must be non-negative");
  std::vector<Bloch> out;
  out.reserve(modes_.size());
  for (const auto& m : modes_) out.push_back(rotate(m.n0, m.axis, m.omega * t));
  return out;
}

QuenchEvolver::Sums QuenchEvolver::accumulate(const std::vector<Bloch>& n) const {
  CompensatedSum nz, cp, sy, sx;
  for (std::size_t k = 0; k < modes_.size(); ++k) {
    nz.add(n[k].z);
    cp.add(modes_[k].cos_phi * (1.0 - n[k].z));
    sy.add(modes_[k].sin_phi * n[k].y);
    sx.add(modes_[k].sin_phi * n[k].x);
  }
  return {nz.value(), cp.value(), sy.value(), sx.value()};
}

OneBodyCorrelations QuenchEvolver::one_body(const Sums& s) const {
  const double inv = 1.0 / n_;
  OneBodyCorrelations ob;
  ob.g0 = 0.5 - inv * s.nz;
  ob.g = inv * s.cos_pop;
  ob.f = inv * std::complex<double>(s.sin_y, -s.sin_x);
  return ob;
}

CorrelatorSet QuenchEvolver::assemble(const Sums& s) const {
  const double w = 2.0 / n_;
  CorrelatorSet c;
  c.mz = w * s.nz;
  c.cxx = w * (s.cos_pop - s.sin_y);
  c.cyy = w * (s.cos_pop + s.sin_y);
  c.cxy = w * s.sin_x;
  c.cyx = c.cxy;
  c.czz = wick_czz(one_body(s));
  return c;
}

CorrelatorSet QuenchEvolver::at(double t) const {
  auto c = assemble(accumulate(bloch_at(t)));
  c.t = t;
  return c;
}

OneBodyCorrelations QuenchEvolver::one_body_at(double t) const { return one_body(accumulate(bloch_at(t))); }

SteadyState QuenchEvolver::steady() const {
  std::vector<Bloch> n;
  n.reserve(modes_.size());
  int degenerate = 0;
  for (const auto& m : modes_) {
    if (m.degenerate) {
      ++degenerate;
      n.push_back(m.n0);
      continue;
    }
    const double p = m.n0.x * m.axis.x + m.n0.y * m.axis.y + m.n0.z * m.axis.z;
    n.push_back({p * m.axis.x, p * m.axis.y, p * m.axis.z});
  }
  const auto sums = accumulate(n);
  SteadyState out;
  out.correlators = assemble(sums);
  out.one_body = one_body(sums);
  out.degenerate_modes = degenerate;
  return out;
}

}  // namespace bellquench
