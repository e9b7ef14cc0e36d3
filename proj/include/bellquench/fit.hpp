#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace bellquench {

struct DataPoint {
  double x = 0.0;
  double y = 0.0;
};

struct FitOptions {
  double tolerance = 1e-10;       // simplex size relative to the parameter scale
  long max_evaluations = 100000;  // per start
  std::uint64_t seed = 0;         // jittered extra starts
  int extra_starts = 0;
};

// A exp(-B x^2) + C with B > 0.
struct GaussianFit {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double r_squared = 0.0;
  double rss = 0.0;
  double best_seed_rss = 0.0;
  int starts = 0;

  double operator()(double x) const;
};

struct TriGaussianComponent {
  double amplitude = 0.0;
  double mu = 0.0;
  double sigma = 1.0;
};

// sum_i A_i exp(-(x - mu_i)^2 / (2 sigma_i^2)), components sorted by mu.
struct TriGaussianFit {
  std::array<TriGaussianComponent, 3> components{};
  double r_squared = 0.0;
  double rss = 0.0;
  double best_seed_rss = 0.0;
  double sigma_floor = 0.0;
  bool low_confidence = false;
  int starts = 0;

  double operator()(double x) const;
};

GaussianFit fit_gaussian(std::span<const DataPoint> points, const FitOptions& options = {});
TriGaussianFit fit_trigaussian(std::span<const DataPoint> points, const FitOptions& options = {});

double residual_sum_squares(std::span<const DataPoint> points, const GaussianFit& fit);
double residual_sum_squares(std::span<const DataPoint> points, const TriGaussianFit& fit);
double r_squared(std::span<const DataPoint> points, double rss);

}  // namespace bellquench
