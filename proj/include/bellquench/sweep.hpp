#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bellquench/model.hpp"

namespace bellquench {

struct GridSpec {
  double q_min = kFieldMin;
  double q_max = kFieldMax;
  double step = 0.01;

  static GridSpec field_default() { return {kFieldMin, kFieldMax, 0.01}; }
  static GridSpec coupling_default() { return {kAlphaMin, kAlphaMax, 0.01}; }

  void validate() const;
  int count() const;
  double at(int i) const;
  std::vector<double> points() const;
};

enum class Quantifier { Bell, Entanglement, Czz };

const char* quantifier_name(Quantifier q);

struct PhaseDiagram {
  QuenchKind kind = QuenchKind::Field;
  ModelParams fixed;
  GridSpec grid;
  Quantifier quantifier = Quantifier::Bell;
  int size = 0;
  // Row-major, row = q_i index, column = q_f index.
  std::vector<double> values;
  std::vector<std::uint8_t> same_phase_mask;
  std::vector<std::uint8_t> boundary_mask;

  double value(int i, int j) const { return values[static_cast<std::size_t>(i) * size + j]; }
  bool same(int i, int j) const { return same_phase_mask[static_cast<std::size_t>(i) * size + j] != 0; }
};

struct SweepOptions {
  int workers = 0;  // 0 = all hardware threads
  bool czz_magnitude = false;
};

struct SweepResult {
  PhaseDiagram bell;
  PhaseDiagram entanglement;
  PhaseDiagram czz;
  // Cells whose final block had a mode with a vanishing gap.
  int degenerate_cells = 0;

  const PhaseDiagram& get(Quantifier q) const;
};

// `fixed` supplies N, J, gamma and whichever of (alpha, h) is not swept.
SweepResult sweep_all(QuenchKind kind, const ModelParams& fixed, const GridSpec& grid,
                      const SweepOptions& options = {});
PhaseDiagram sweep(QuenchKind kind, const ModelParams& fixed, const GridSpec& grid, Quantifier quantifier,
                   const SweepOptions& options = {});

double critical_threshold(const PhaseDiagram& diagram);

struct ThresholdReport {
  double q_c = 0.0;
  double eta = 0.0;
  double area_detected = 0.0;
  double area_same = 0.0;
  long n_cross_cells = 0;
  long n_same_cells = 0;
  long n_detected_cells = 0;
  bool analytic_area = true;
};

enum class Detection { Inclusive, Strict };

ThresholdReport efficiency(const PhaseDiagram& diagram, double q_c, Detection rule = Detection::Inclusive);

struct ThresholdPoint {
  double x = 0.0;
  double b_c = 0.0;
};

std::vector<ThresholdPoint> threshold_curve(const ModelParams& base, std::span<const double> alphas,
                                            const GridSpec& grid, const SweepOptions& options = {});
std::vector<ThresholdPoint> threshold_curve_coupling(const ModelParams& base, std::span<const double> hs,
                                                     const GridSpec& grid, const SweepOptions& options = {});

}  // namespace bellquench
