#include "bellquench/fit.hpp"

#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>

#include "bellquench/error.hpp"

namespace bellquench {

namespace {

using Objective = std::function<double(const std::vector<double>&)>;

struct Minimum {
  std::vector<double> x;
  double value = std::numeric_limits<double>::infinity();
  bool converged = false;
};

double trampoline(const gsl_vector* v, void* params) {
  const auto& f = *static_cast<const Objective*>(params);
  std::vector<double> x(v->size);
  for (std::size_t i = 0; i < v->size; ++i) x[i] = gsl_vector_get(v, i);
  const double y = f(x);
  return std::isfinite(y) ? y : std::numeric_limits<double>::max();
}

// Nelder-Mead (GSL nmsimplex2), restarted from the incumbent until a fresh
// simplex no longer improves it.
Minimum minimize(const Objective& f, std::vector<double> x0, const std::vector<double>& steps,
                 const FitOptions& opt) {
  const std::size_t dim = x0.size();
  gsl_multimin_function fn{&trampoline, dim, const_cast<Objective*>(&f)};
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim);
  gsl_vector* x = gsl_vector_alloc(dim);
  gsl_vector* step = gsl_vector_alloc(dim);

  Minimum best{x0, f(x0), false};
  long evaluations = 0;
  while (evaluations < opt.max_evaluations) {
    for (std::size_t i = 0; i < dim; ++i) {
      gsl_vector_set(x, i, best.x[i]);
      gsl_vector_set(step, i, steps[i]);
    }
    gsl_multimin_fminimizer_set(s, &fn, x, step);
    evaluations += static_cast<long>(dim) + 1;
    bool converged = false;
    // Flat directions (redundant components) never shrink the simplex, so a
    // long stall of the objective also counts as convergence.
    double last = s->fval;
    long stalled = 0;
    while (evaluations < opt.max_evaluations) {
      const int status = gsl_multimin_fminimizer_iterate(s);
      if (status != GSL_SUCCESS) break;
      evaluations += 2;
      if (s->fval < last - opt.tolerance * std::abs(last)) {
        last = s->fval;
        stalled = 0;
      } else if (++stalled > 500 * static_cast<long>(dim)) {
        converged = true;
        break;
      }
      double scale = 1.0;
      for (std::size_t i = 0; i < dim; ++i) scale = std::max(scale, std::abs(gsl_vector_get(s->x, i)));
      if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), opt.tolerance * scale) == GSL_SUCCESS) {
        converged = true;
        break;
      }
    }
    const double value = s->fval;
    const bool improved = best.value - value > 1e-8 * best.value && best.value > 1e-30;
    if (value <= best.value) {
      for (std::size_t i = 0; i < dim; ++i) best.x[i] = gsl_vector_get(s->x, i);
      best.value = value;
    }
    best.converged = best.converged || converged;
    if (!converged || !improved) break;
  }
  gsl_vector_free(step);
  gsl_vector_free(x);
  gsl_multimin_fminimizer_free(s);
  return best;
}

std::vector<DataPoint> sorted(std::span<const DataPoint> points) {
  std::vector<DataPoint> p(points.begin(), points.end());
  std::sort(p.begin(), p.end(), [](const DataPoint& a, const DataPoint& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  return p;
}

template <class Model>
double rss_of(const std::vector<DataPoint>& pts, const Model& m) {
  double s = 0.0;
  for (const auto& p : pts) {
    const double r = p.y - m(p.x);
    s += r * r;
  }
  return s;
}

GaussianFit gaussian_from(const std::vector<double>& x) { return {x[0], std::exp(x[1]), x[2]}; }

TriGaussianFit trigaussian_from(const std::vector<double>& x, double floor) {
  TriGaussianFit f;
  for (int i = 0; i < 3; ++i) {
    f.components[i] = {x[3 * i] * x[3 * i], x[3 * i + 1], floor + x[3 * i + 2] * x[3 * i + 2]};
  }
  std::sort(f.components.begin(), f.components.end(),
            [](const auto& a, const auto& b) { return a.mu < b.mu; });
  f.sigma_floor = floor;
  return f;
}

}  // namespace

double GaussianFit::operator()(double x) const { return a * std::exp(-b * x * x) + c; }

double TriGaussianFit::operator()(double x) const {
  double s = 0.0;
  for (const auto& g : components) {
    const double z = (x - g.mu) / g.sigma;
    s += g.amplitude * std::exp(-0.5 * z * z);
  }
  return s;
}

double residual_sum_squares(std::span<const DataPoint> points, const GaussianFit& fit) {
  return rss_of(sorted(points), fit);
}

double residual_sum_squares(std::span<const DataPoint> points, const TriGaussianFit& fit) {
  return rss_of(sorted(points), fit);
}

double r_squared(std::span<const DataPoint> points, double rss) {
  double mean = 0.0;
  for (const auto& p : points) mean += p.y;
  mean /= static_cast<double>(points.size());
  double tot = 0.0;
  for (const auto& p : points) tot += (p.y - mean) * (p.y - mean);
  if (tot == 0.0) return rss == 0.0 ? 1.0 : 0.0;
  return std::clamp(1.0 - rss / tot, 0.0, 1.0);
}

GaussianFit fit_gaussian(std::span<const DataPoint> points, const FitOptions& options) {
  const auto pts = sorted(points);
  require(pts.size() >= 4, "Gaussian fit needs at least 4 points");
  for (std::size_t i = 1; i < pts.size(); ++i) require(pts[i].x != pts[i - 1].x, "Gaussian fit needs distinct x");

  const Objective f = [&](const std::vector<double>& x) { return rss_of(pts, gaussian_from(x)); };
  const double x_lo = std::min(std::abs(pts.front().x), std::abs(pts.back().x));
  const double x_hi = std::max(std::abs(pts.front().x), std::abs(pts.back().x));
  const double y_near = std::abs(pts.front().x) <= std::abs(pts.back().x) ? pts.front().y : pts.back().y;
  const double y_far = std::abs(pts.front().x) <= std::abs(pts.back().x) ? pts.back().y : pts.front().y;
  const double scale = std::max(x_hi * x_hi, 1e-12);
  const double spread = std::max(std::abs(y_near - y_far), 1e-3);

  std::vector<std::vector<double>> seeds;
  for (double factor : {0.25, 1.0, 4.0, 16.0, 64.0}) {
    const double b0 = factor / scale;
    const double a0 = (y_near - y_far) / std::exp(-b0 * x_lo * x_lo);
    seeds.push_back({a0, std::log(b0), y_far});
  }
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> jitter(0.0, 0.3);
  for (int k = 0; k < options.extra_starts; ++k) {
    auto s = seeds[k % seeds.size()];
    s[0] *= 1.0 + jitter(rng);
    s[1] += jitter(rng);
    s[2] += spread * jitter(rng);
    seeds.push_back(s);
  }

  Minimum best;
  bool any_converged = false;
  double seed_best = std::numeric_limits<double>::infinity();
  for (const auto& s : seeds) {
    seed_best = std::min(seed_best, f(s));
    const auto m = minimize(f, s, {0.1 * spread + 0.1 * std::abs(s[0]), 0.5, 0.1 * spread}, options);
    any_converged = any_converged || m.converged;
    if (m.value < best.value) best = m;
  }
  if (!any_converged) {
    fail(ErrorKind::FitFailed, "Gaussian fit did not converge; best residual " + std::to_string(best.value));
  }
  GaussianFit out = gaussian_from(best.x);
  out.rss = best.value;
  out.best_seed_rss = seed_best;
  out.r_squared = r_squared(pts, out.rss);
  out.starts = static_cast<int>(seeds.size());
  return out;
}

TriGaussianFit fit_trigaussian(std::span<const DataPoint> points, const FitOptions& options) {
  const auto pts = sorted(points);
  require(pts.size() >= 10, "tri-Gaussian fit needs at least 10 points");
  double floor = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double dx = pts[i].x - pts[i - 1].x;
    require(dx > 0.0, "tri-Gaussian fit needs distinct x");
    floor = std::min(floor, dx);
  }
  const double lo = pts.front().x;
  const double hi = pts.back().x;
  const double range = hi - lo;

  std::vector<std::size_t> peaks;
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    if (pts[i].y > pts[i - 1].y && pts[i].y >= pts[i + 1].y) peaks.push_back(i);
  }
  std::stable_sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) { return pts[a].y > pts[b].y; });
  const bool low_confidence = peaks.size() < 3;

  std::array<double, 3> centers{};
  std::array<double, 3> heights{};
  if (low_confidence) {
    for (int i = 0; i < 3; ++i) {
      centers[i] = lo + range * (i + 1) / 4.0;
      const auto it = std::min_element(pts.begin(), pts.end(), [&](const DataPoint& a, const DataPoint& b) {
        return std::abs(a.x - centers[i]) < std::abs(b.x - centers[i]);
      });
      heights[i] = it->y;
    }
  } else {
    for (int i = 0; i < 3; ++i) {
      centers[i] = pts[peaks[i]].x;
      heights[i] = pts[peaks[i]].y;
    }
  }

  const Objective f = [&](const std::vector<double>& x) { return rss_of(pts, trigaussian_from(x, floor)); };
  std::vector<std::vector<double>> seeds;
  for (double width : {range / 6.0, range / 10.0, range / 3.0}) {
    std::vector<double> s;
    for (int i = 0; i < 3; ++i) {
      s.push_back(std::sqrt(std::max(heights[i], 0.0) / 1.5 + 1e-6));
      s.push_back(centers[i]);
      s.push_back(std::sqrt(std::max(width - floor, 0.0) + 1e-6));
    }
    seeds.push_back(s);
  }
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> jitter(0.0, 0.1);
  for (int k = 0; k < options.extra_starts; ++k) {
    auto s = seeds[k % seeds.size()];
    for (int i = 0; i < 3; ++i) {
      s[3 * i] *= 1.0 + jitter(rng);
      s[3 * i + 1] += range * jitter(rng);
    }
    seeds.push_back(s);
  }

  Minimum best;
  bool any_converged = false;
  double seed_best = std::numeric_limits<double>::infinity();
  for (const auto& s : seeds) {
    seed_best = std::min(seed_best, f(s));
    std::vector<double> steps;
    for (int i = 0; i < 3; ++i) {
      steps.push_back(0.1 * s[3 * i] + 0.05);
      steps.push_back(0.05 * range);
      steps.push_back(0.1 * s[3 * i + 2] + 0.05);
    }
    const auto m = minimize(f, s, steps, options);
    any_converged = any_converged || m.converged;
    if (m.value < best.value) best = m;
  }
  if (!any_converged) {
    fail(ErrorKind::FitFailed, "tri-Gaussian fit did not converge; best residual " + std::to_string(best.value));
  }
  TriGaussianFit out = trigaussian_from(best.x, floor);
  out.rss = best.value;
  out.best_seed_rss = seed_best;
  out.r_squared = r_squared(pts, out.rss);
  out.low_confidence = low_confidence;
  out.starts = static_cast<int>(seeds.size());
  return out;
}

}  // namespace bellquench
