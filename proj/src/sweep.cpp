#include "bellquench/sweep.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bellquench/bell.hpp"
#include "bellquench/dynamics.hpp"
#include "bellquench/error.hpp"
#include "bellquench/momentum.hpp"
#include "bellquench/parallel.hpp"

namespace bellquench {

namespace {

constexpr double kGridTolerance = 1e-9;
constexpr double kSteadyGap = 1e-12;

// Unit pair axes of every grid Hamiltonian, stored mode-contiguous.
struct AxisTable {
  int modes = 0;
  std::vector<double> ay;
  std::vector<double> az;
  std::vector<std::uint8_t> flat;  // final block gap below kSteadyGap
  std::vector<double> cos_phi;
  std::vector<double> sin_phi;
};

AxisTable build_axes(QuenchKind kind, const ModelParams& fixed, const std::vector<double>& qs) {
  AxisTable t;
  t.modes = fixed.n / 2;
  const std::size_t total = qs.size() * t.modes;
  t.ay.resize(total);
  t.az.resize(total);
  t.flat.resize(total);
  for (const auto& m : momentum_modes(fixed.n)) {
    t.cos_phi.push_back(std::cos(m.phi));
    t.sin_phi.push_back(std::sin(m.phi));
  }
  std::vector<Dispersion> shared;
  if (kind == QuenchKind::Field) shared = dispersion_table(fixed);
  for (std::size_t i = 0; i < qs.size(); ++i) {
    ModelParams p = fixed;
    if (kind == QuenchKind::Field) {
      p.h = qs[i];
    } else {
      p.alpha = qs[i];
    }
    p.validate();
    const auto disp = kind == QuenchKind::Field ? shared : dispersion_table(p);
    for (int k = 0; k < t.modes; ++k) {
      const Bloch v = pair_axis(disp[k].a, disp[k].b, p.h);
      const std::size_t idx = i * t.modes + k;
      t.ay[idx] = v.y;
      t.az[idx] = v.z;
      t.flat[idx] = 2.0 * std::hypot(p.h + disp[k].a, disp[k].b) < kSteadyGap;
    }
  }
  return t;
}

struct CellOutput {
  CorrelatorSet c;
  bool degenerate = false;
};

// Diagonal-ensemble correlators for ground state of grid point i quenched to j.
CellOutput steady_cell(const AxisTable& t, int i, int j, int n) {
  const double* ay0 = &t.ay[static_cast<std::size_t>(i) * t.modes];
  const double* az0 = &t.az[static_cast<std::size_t>(i) * t.modes];
  const double* ay1 = &t.ay[static_cast<std::size_t>(j) * t.modes];
  const double* az1 = &t.az[static_cast<std::size_t>(j) * t.modes];
  const std::uint8_t* flat = &t.flat[static_cast<std::size_t>(j) * t.modes];
  CompensatedSum nz, cos_pop, sin_y;
  bool degenerate = false;
  for (int k = 0; k < t.modes; ++k) {
    double ny;
    double nzk;
    if (flat[k]) {
      degenerate = true;
      ny = -ay0[k];
      nzk = -az0[k];
    } else {
      const double p = -(ay0[k] * ay1[k] + az0[k] * az1[k]);
      ny = p * ay1[k];
      nzk = p * az1[k];
    }
    nz.add(nzk);
    cos_pop.add(t.cos_phi[k] * (1.0 - nzk));
    sin_y.add(t.sin_phi[k] * ny);
  }
  const double inv = 1.0 / n;
  OneBodyCorrelations ob;
  ob.g0 = 0.5 - inv * nz.value();
  ob.g = inv * cos_pop.value();
  ob.f = inv * sin_y.value();
  CellOutput out;
  out.c.mz = 2.0 * inv * nz.value();
  out.c.cxx = 2.0 * inv * (cos_pop.value() - sin_y.value());
  out.c.cyy = 2.0 * inv * (cos_pop.value() + sin_y.value());
  out.c.czz = wick_czz(ob);
  out.degenerate = degenerate;
  return out;
}

PhaseDiagram empty_diagram(QuenchKind kind, const ModelParams& fixed, const GridSpec& grid, Quantifier q, int size) {
  PhaseDiagram d;
  d.kind = kind;
  d.fixed = fixed;
  d.grid = grid;
  d.quantifier = q;
  d.size = size;
  d.values.assign(static_cast<std::size_t>(size) * size, 0.0);
  return d;
}

bool is_default_window(QuenchKind kind, const GridSpec& g) {
  if (kind == QuenchKind::Field) {
    return std::abs(g.q_min - kFieldMin) < 1e-12 && std::abs(g.q_max - kFieldMax) < 1e-12;
  }
  return std::abs(g.q_min - kAlphaMin) < 1e-12 && std::abs(g.q_max - kAlphaMax) < 1e-12;
}

}  // namespace

void GridSpec::validate() const {
  require(step > 0.0, "grid step must be positive");
  require(q_min < q_max, "grid needs q_min < q_max");
  const double cells = (q_max - q_min) / step;
  require(std::abs(cells - std::round(cells)) < kGridTolerance,
          "grid range must be an integer number of steps");
}

int GridSpec::count() const {
  validate();
  return static_cast<int>(std::llround((q_max - q_min) / step)) + 1;
}

double GridSpec::at(int i) const {
  // Rounded to 10 decimals so that grid points meant to hit 1, h_c or
  // alpha_c exactly do so.
  const double q = q_min + static_cast<double>(i) * step;
  return std::round(q * 1e10) / 1e10;
}

std::vector<double> GridSpec::points() const {
  const int n = count();
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = at(i);
  return out;
}

const char* quantifier_name(Quantifier q) {
  switch (q) {
    case Quantifier::Bell:
      return "bell";
    case Quantifier::Entanglement:
      return "entanglement";
    case Quantifier::Czz:
      return "czz";
  }
  return "unknown";
}

const PhaseDiagram& SweepResult::get(Quantifier q) const {
  switch (q) {
    case Quantifier::Bell:
      return bell;
    case Quantifier::Entanglement:
      return entanglement;
    case Quantifier::Czz:
      return czz;
  }
  return bell;
}

SweepResult sweep_all(QuenchKind kind, const ModelParams& fixed, const GridSpec& grid, const SweepOptions& options) {
  fixed.validate();
  const auto qs = grid.points();
  const int size = static_cast<int>(qs.size());
  const double fixed_param = kind == QuenchKind::Field ? fixed.alpha : fixed.h;
  const AxisTable axes = build_axes(kind, fixed, qs);

  SweepResult r;
  r.bell = empty_diagram(kind, fixed, grid, Quantifier::Bell, size);
  r.entanglement = empty_diagram(kind, fixed, grid, Quantifier::Entanglement, size);
  r.czz = empty_diagram(kind, fixed, grid, Quantifier::Czz, size);
  std::vector<std::uint8_t> same(static_cast<std::size_t>(size) * size);
  std::vector<std::uint8_t> boundary(same.size());
  std::vector<std::uint8_t> degenerate(same.size());

  parallel_for(size, options.workers, [&](int i) {
    for (int j = 0; j < size; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * size + j;
      const auto cell = steady_cell(axes, i, j, fixed.n);
      r.bell.values[idx] = bell_value(cell.c);
      r.entanglement.values[idx] = log_negativity(cell.c);
      r.czz.values[idx] = options.czz_magnitude ? std::abs(cell.c.czz) : cell.c.czz;
      const auto cls = classify_quench(kind, fixed_param, qs[i], qs[j]);
      same[idx] = cls.same;
      boundary[idx] = cls.on_boundary;
      degenerate[idx] = cell.degenerate;
    }
  });

  for (auto* d : {&r.bell, &r.entanglement, &r.czz}) {
    d->same_phase_mask = same;
    d->boundary_mask = boundary;
  }
  for (auto f : degenerate) r.degenerate_cells += f;
  return r;
}

PhaseDiagram sweep(QuenchKind kind, const ModelParams& fixed, const GridSpec& grid, Quantifier quantifier,
                   const SweepOptions& options) {
  auto all = sweep_all(kind, fixed, grid, options);
  switch (quantifier) {
    case Quantifier::Bell:
      return std::move(all.bell);
    case Quantifier::Entanglement:
      return std::move(all.entanglement);
    case Quantifier::Czz:
      return std::move(all.czz);
  }
  return std::move(all.bell);
}

double critical_threshold(const PhaseDiagram& diagram) {
  double best = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (std::size_t idx = 0; idx < diagram.values.size(); ++idx) {
    if (diagram.same_phase_mask[idx]) continue;
    any = true;
    best = std::max(best, diagram.values[idx]);
  }
  if (!any) fail(ErrorKind::ThresholdUndefined, "diagram has no cross-phase cells");
  return best;
}

ThresholdReport efficiency(const PhaseDiagram& diagram, double q_c, Detection rule) {
  require(std::isfinite(q_c), "threshold must be finite");
  ThresholdReport rep;
  rep.q_c = q_c;
  for (std::size_t idx = 0; idx < diagram.values.size(); ++idx) {
    if (!diagram.same_phase_mask[idx]) {
      ++rep.n_cross_cells;
      continue;
    }
    ++rep.n_same_cells;
    const double v = diagram.values[idx];
    if (rule == Detection::Inclusive ? v >= q_c : v > q_c) ++rep.n_detected_cells;
  }
  const double cell = diagram.grid.step * diagram.grid.step;
  rep.area_detected = static_cast<double>(rep.n_detected_cells) * cell;
  rep.analytic_area = is_default_window(diagram.kind, diagram.grid);
  if (rep.analytic_area) {
    const double fixed = diagram.kind == QuenchKind::Field ? diagram.fixed.alpha : diagram.fixed.h;
    rep.area_same = same_phase_area(diagram.kind, fixed);
  } else {
    rep.area_same = static_cast<double>(rep.n_same_cells) * cell;
  }
  rep.eta = rep.area_same > 0.0 ? std::min(1.0, rep.area_detected / rep.area_same) : 0.0;
  return rep;
}

std::vector<ThresholdPoint> threshold_curve(const ModelParams& base, std::span<const double> alphas,
                                            const GridSpec& grid, const SweepOptions& options) {
  require(!alphas.empty(), "threshold_curve needs at least one alpha");
  std::vector<ThresholdPoint> out;
  out.reserve(alphas.size());
  for (double a : alphas) {
    ModelParams p = base;
    p.alpha = a;
    out.push_back({a, critical_threshold(sweep(QuenchKind::Field, p, grid, Quantifier::Bell, options))});
  }
  return out;
}

std::vector<ThresholdPoint> threshold_curve_coupling(const ModelParams& base, std::span<const double> hs,
                                                     const GridSpec& grid, const SweepOptions& options) {
  require(!hs.empty(), "threshold_curve_coupling needs at least one h");
  std::vector<ThresholdPoint> out;
  out.reserve(hs.size());
  for (double h : hs) {
    if (!(h > kCouplingFieldMin && h < kCouplingFieldMax)) {
      fail(ErrorKind::OutOfRange, "coupling threshold needs h in (-0.75, 0.414), got " + std::to_string(h));
    }
    ModelParams p = base;
    p.h = h;
    out.push_back({h, critical_threshold(sweep(QuenchKind::Coupling, p, grid, Quantifier::Bell, options))});
  }
  return out;
}

}  // namespace bellquench
