#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "bellquench/model.hpp"
#include "bellquench/momentum.hpp"

namespace bellquench {

// Nearest-neighbour correlators. `t` is empty for the steady state.
struct CorrelatorSet {
  double mz = 0.0;
  double cxx = 0.0;
  double cyy = 0.0;
  double czz = 0.0;
  double cxy = 0.0;
  double cyx = 0.0;
  std::optional<double> t;

  bool steady() const { return !t.has_value(); }
};

// Wick inputs: g = <c+_j c_{j+1}>, g0 = <c+_j c_j>, f = <c_j c_{j+1}>.
struct OneBodyCorrelations {
  std::complex<double> g;
  double g0 = 0.0;
  std::complex<double> f;
};

double wick_czz(const OneBodyCorrelations& ob);

struct TimeGrid {
  double t_max = 400.0;
  double dt = 0.1;

  void validate() const;
  std::vector<double> samples() const;
};

// rho(t) = U rho U^dagger with U = exp(-i H_p t).
BlockState evolve_block(const BlockState& rho0, const BlockHamiltonian& hfinal, double t);

// Direct 4x4 route: builds, evolves and traces every block.
CorrelatorSet correlators_at(const QuenchSpec& quench, double t);
OneBodyCorrelations one_body_correlations(const QuenchSpec& quench, double t);

struct SteadyState {
  CorrelatorSet correlators;
  OneBodyCorrelations one_body;
  int degenerate_modes = 0;
};

SteadyState steady_state(const QuenchSpec& quench);
CorrelatorSet steady_correlators(const QuenchSpec& quench);

std::vector<CorrelatorSet> correlator_time_series(const QuenchSpec& quench, const TimeGrid& grid);

// Bloch-vector form of the same evolution, precomputed once per quench.
// Used for time series and sweeps; agrees with the 4x4 route to rounding.
class QuenchEvolver {
 public:
  explicit QuenchEvolver(const QuenchSpec& quench);

  CorrelatorSet at(double t) const;
  OneBodyCorrelations one_body_at(double t) const;
  SteadyState steady() const;
  int modes() const { return static_cast<int>(modes_.size()); }

 private:
  struct Mode {
    double cos_phi;
    double sin_phi;
    Bloch n0;
    Bloch axis;
    double omega;  // rotation rate 2|v|
    bool degenerate;
  };

  struct Sums {
    double nz = 0.0;
    double cos_pop = 0.0;  // sum cos(phi) (1 - n_z)
    double sin_y = 0.0;    // sum sin(phi) n_y
    double sin_x = 0.0;    // sum sin(phi) n_x
  };

  Sums accumulate(const std::vector<Bloch>& n) const;
  CorrelatorSet assemble(const Sums& s) const;
  OneBodyCorrelations one_body(const Sums& s) const;
  std::vector<Bloch> bloch_at(double t) const;

  int n_;
  std::vector<Mode> modes_;
};

// Bloch rotation about a unit axis by angle theta.
Bloch rotate(const Bloch& n, const Bloch& axis, double theta);

// Neumaier compensated sum, fixed order.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace bellquench
