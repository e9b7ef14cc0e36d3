#include "bellquench/model.hpp"

#include <cmath>
#include <string>

#include "bellquench/error.hpp"

namespace bellquench {

void ModelParams::validate() const {
  require(n >= 4 && n % 2 == 0, "N must be even and at least 4, got " + std::to_string(n));
  require(j > 0.0, "J must be positive");
  require(gamma >= 0.0 && gamma <= 1.0, "gamma must lie in [0, 1]");
  require(alpha > 0.0, "alpha must be positive");
  require(std::isfinite(h), "h must be finite");
}

QuenchSpec QuenchSpec::field(const ModelParams& base, double h_i, double h_f) {
  QuenchSpec q;
  q.kind = QuenchKind::Field;
  q.initial = base;
  q.quenched = base;
  q.initial.h = h_i;
  q.quenched.h = h_f;
  return q;
}

QuenchSpec QuenchSpec::coupling(const ModelParams& base, double alpha_i, double alpha_f) {
  QuenchSpec q;
  q.kind = QuenchKind::Coupling;
  q.initial = base;
  q.quenched = base;
  q.initial.alpha = alpha_i;
  q.quenched.alpha = alpha_f;
  return q;
}

double QuenchSpec::q_initial() const { return kind == QuenchKind::Field ? initial.h : initial.alpha; }
double QuenchSpec::q_final() const { return kind == QuenchKind::Field ? quenched.h : quenched.alpha; }

void QuenchSpec::validate() const {
  initial.validate();
  quenched.validate();
  const bool shared = initial.n == quenched.n && initial.j == quenched.j && initial.gamma == quenched.gamma;
  if (kind == QuenchKind::Field) {
    require(shared && initial.alpha == quenched.alpha, "field quench may only change h");
  } else {
    require(shared && initial.h == quenched.h, "coupling quench may only change alpha");
  }
}

double kac_factor(double alpha, int n) {
  require(n >= 2 && n % 2 == 0, "kac_factor needs an even N >= 2");
  require(alpha >= 0.0, "kac_factor needs alpha >= 0");
  double sum = 0.0;
  for (int r = 1; r <= n / 2; ++r) sum += std::pow(static_cast<double>(r), -alpha);
  return sum;
}

std::vector<double> coupling_profile(const ModelParams& params) {
  const double norm = kac_factor(params.alpha, params.n);
  std::vector<double> jr(params.n / 2);
  for (int r = 1; r <= params.n / 2; ++r) {
    jr[r - 1] = params.j / (norm * std::pow(static_cast<double>(r), params.alpha));
  }
  return jr;
}

double critical_field(double alpha) { return -1.0 + std::exp2(1.0 - alpha); }

std::optional<double> critical_alpha(double h) {
  if (!(h > -1.0)) return std::nullopt;
  return 1.0 - std::log2(1.0 + h);
}

PhaseGeometry phase_geometry(const ModelParams& params) {
  return {critical_field(params.alpha), 1.0, critical_alpha(params.h)};
}

bool in_ferro_phase(double h, double alpha) { return h > critical_field(alpha) && h < 1.0; }

bool below_critical_alpha(double alpha, double h) {
  const auto ac = critical_alpha(h);
  if (!ac) return true;
  return alpha <= *ac + kBoundaryTolerance;
}

bool on_phase_boundary(QuenchKind kind, double q, double fixed) {
  if (kind == QuenchKind::Field) {
    return std::abs(q - critical_field(fixed)) < kBoundaryTolerance || std::abs(q - 1.0) < kBoundaryTolerance;
  }
  const auto ac = critical_alpha(fixed);
  return ac && std::abs(q - *ac) < kBoundaryTolerance;
}

PhaseClassification classify_quench(QuenchKind kind, double fixed, double q_i, double q_f) {
  PhaseClassification c;
  if (kind == QuenchKind::Field) {
    c.same = in_ferro_phase(q_i, fixed) == in_ferro_phase(q_f, fixed);
  } else {
    c.same = below_critical_alpha(q_i, fixed) == below_critical_alpha(q_f, fixed);
  }
  c.on_boundary = on_phase_boundary(kind, q_i, fixed) || on_phase_boundary(kind, q_f, fixed);
  return c;
}

bool same_phase(const QuenchSpec& quench) {
  const double qi = quench.q_initial();
  const double qf = quench.q_final();
  if (quench.kind == QuenchKind::Field) {
    if (qi < kFieldMin || qi > kFieldMax || qf < kFieldMin || qf > kFieldMax) {
      fail(ErrorKind::OutOfRange, "field quench endpoints must lie in [-3, 3]");
    }
    return classify_quench(quench.kind, quench.initial.alpha, qi, qf).same;
  }
  if (qi < kAlphaMin || qi > kAlphaMax || qf < kAlphaMin || qf > kAlphaMax) {
    fail(ErrorKind::OutOfRange, "coupling quench endpoints must lie in [0.5, 3]");
  }
  if (!(quench.initial.h > -1.0)) fail(ErrorKind::OutOfRange, "coupling quench needs h > -1");
  return classify_quench(quench.kind, quench.initial.h, qi, qf).same;
}

double same_phase_area(QuenchKind kind, double fixed) {
  if (kind == QuenchKind::Field) {
    return 20.0 + std::exp2(3.0 - fixed) + std::exp2(3.0 - 2.0 * fixed);
  }
  if (!(fixed > kCouplingFieldMin && fixed < kCouplingFieldMax)) {
    fail(ErrorKind::OutOfRange, "coupling same-phase area needs h in (-0.75, 0.414)");
  }
  const double l = std::log2(1.0 + fixed);
  return 4.25 + 3.0 * l + 2.0 * l * l;
}

}  // namespace bellquench
