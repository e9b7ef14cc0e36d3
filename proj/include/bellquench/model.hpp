#pragma once

#include <optional>
#include <vector>

namespace bellquench {

struct ModelParams {
  int n = 512;
  double j = 1.0;
  double gamma = 1.0;
  double alpha = 10.0;
  double h = 0.0;

  void validate() const;
};

enum class QuenchKind { Field, Coupling };

// Sudden quench: ground state of `initial` evolved under `quenched`.
struct QuenchSpec {
  QuenchKind kind = QuenchKind::Field;
  ModelParams initial;
  ModelParams quenched;

  static QuenchSpec field(const ModelParams& base, double h_i, double h_f);
  static QuenchSpec coupling(const ModelParams& base, double alpha_i, double alpha_f);

  // Swept coordinate before and after the quench (h or alpha).
  double q_initial() const;
  double q_final() const;

  void validate() const;
};

struct PhaseGeometry {
  double h_c = 0.0;
  double h_c2 = 1.0;
  std::optional<double> alpha_c;
};

// Default sweep windows.
inline constexpr double kFieldMin = -3.0;
inline constexpr double kFieldMax = 3.0;
inline constexpr double kAlphaMin = 0.5;
inline constexpr double kAlphaMax = 3.0;
// Open interval of fields for which alpha_c lies inside the alpha window.
inline constexpr double kCouplingFieldMin = -0.75;
inline constexpr double kCouplingFieldMax = 0.414;
inline constexpr double kBoundaryTolerance = 1e-12;

double kac_factor(double alpha, int n);
std::vector<double> coupling_profile(const ModelParams& params);

double critical_field(double alpha);
std::optional<double> critical_alpha(double h);
PhaseGeometry phase_geometry(const ModelParams& params);

struct PhaseClassification {
  bool same = false;
  bool on_boundary = false;
};

// Phase labels: field quench uses ferro = open (h_c, 1), everything else is
// one paramagnetic phase; coupling quench splits at alpha <= alpha_c.
bool in_ferro_phase(double h, double alpha);
bool below_critical_alpha(double alpha, double h);
bool on_phase_boundary(QuenchKind kind, double q, double fixed);

// `fixed` is alpha for Field, h for Coupling.
PhaseClassification classify_quench(QuenchKind kind, double fixed, double q_i, double q_f);
bool same_phase(const QuenchSpec& quench);

double same_phase_area(QuenchKind kind, double fixed);

}  // namespace bellquench
