#include <algorithm>
#include <cmath>
#include <random>

#include "bellquench/error.hpp"
#include "bellquench/fit.hpp"
#include "doctest.h"

using namespace bellquench;

namespace {

std::vector<DataPoint> gaussian_data(double a, double b, double c) {
  std::vector<DataPoint> pts;
  for (int i = 0; i <= 95; ++i) {
    const double x = 0.5 + 0.1 * i;
    pts.push_back({x, a * std::exp(-b * x * x) + c});
  }
  return pts;
}

TriGaussianFit exact_tri() {
  TriGaussianFit t;
  t.components = {{{0.8, -0.55, 0.08}, {1.1, -0.2, 0.12}, {0.6, 0.2, 0.1}}};
  return t;
}

std::vector<DataPoint> tri_data(const TriGaussianFit& model) {
  std::vector<DataPoint> pts;
  for (int i = 0; i <= 115; ++i) {
    const double x = -0.74 + 0.01 * i;
    pts.push_back({x, model(x)});
  }
  return pts;
}

}  // namespace

TEST_CASE("Gaussian fit recovers exact parameters") {
  const auto pts = gaussian_data(0.3, 0.05, 1.7);
  const auto fit = fit_gaussian(pts);
  CHECK(std::abs(fit.a - 0.3) < 1e-6);
  CHECK(std::abs(fit.b - 0.05) < 1e-6);
  CHECK(std::abs(fit.c - 1.7) < 1e-6);
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.rss <= fit.best_seed_rss);
}

TEST_CASE("Gaussian fit is independent of point order") {
  auto pts = gaussian_data(0.25, 0.3, 1.68);
  for (auto& p : pts) p.y += 1e-3 * std::sin(7.0 * p.x);
  const auto a = fit_gaussian(pts);
  std::mt19937 rng(7);
  std::shuffle(pts.begin(), pts.end(), rng);
  const auto b = fit_gaussian(pts);
  CHECK(std::abs(a.a - b.a) < 1e-9);
  CHECK(std::abs(a.b - b.b) < 1e-9);
  CHECK(std::abs(a.c - b.c) < 1e-9);
}

TEST_CASE("reported r squared matches an independent recomputation") {
  auto pts = gaussian_data(0.4, 0.2, 1.6);
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i].y += (i % 2 ? 1.0 : -1.0) * 2e-3;
  const auto fit = fit_gaussian(pts);
  double mean = 0.0;
  for (const auto& p : pts) mean += p.y;
  mean /= pts.size();
  double res = 0.0;
  double tot = 0.0;
  for (const auto& p : pts) {
    res += (p.y - fit(p.x)) * (p.y - fit(p.x));
    tot += (p.y - mean) * (p.y - mean);
  }
  CHECK(std::abs(fit.r_squared - (1.0 - res / tot)) < 1e-12);
  CHECK(fit.b > 0.0);
}

TEST_CASE("Gaussian fit preconditions") {
  std::vector<DataPoint> few{{1, 1}, {2, 1}, {3, 1}};
  CHECK_THROWS_AS(fit_gaussian(few), Error);
  std::vector<DataPoint> dup{{1, 1}, {1, 2}, {2, 1}, {3, 1}};
  CHECK_THROWS_AS(fit_gaussian(dup), Error);
}

TEST_CASE("tri-Gaussian fit recovers exact parameters") {
  const auto model = exact_tri();
  const auto fit = fit_trigaussian(tri_data(model));
  CHECK_FALSE(fit.low_confidence);
  for (int i = 0; i < 3; ++i) {
    CAPTURE(i);
    CHECK(std::abs(fit.components[i].amplitude - model.components[i].amplitude) < 1e-5);
    CHECK(std::abs(fit.components[i].mu - model.components[i].mu) < 1e-5);
    CHECK(std::abs(fit.components[i].sigma - model.components[i].sigma) < 1e-5);
  }
  CHECK(fit.rss <= fit.best_seed_rss);
}

TEST_CASE("tri-Gaussian components are sorted and respect the width floor") {
  auto pts = tri_data(exact_tri());
  for (auto& p : pts) p.y += 0.02 * std::cos(40.0 * p.x);
  const auto fit = fit_trigaussian(pts);
  CHECK(fit.components[0].mu <= fit.components[1].mu);
  CHECK(fit.components[1].mu <= fit.components[2].mu);
  for (const auto& g : fit.components) {
    CHECK(g.sigma >= fit.sigma_floor);
    CHECK(g.amplitude >= 0.0);
  }
  CHECK(fit.sigma_floor == doctest::Approx(0.01));
}

TEST_CASE("single-peak data falls back to spaced centres") {
  std::vector<DataPoint> pts;
  for (int i = 0; i < 20; ++i) {
    const double x = -0.7 + 0.05 * i;
    pts.push_back({x, 1.5 * std::exp(-x * x / 0.1)});
  }
  const auto fit = fit_trigaussian(pts);
  CHECK(fit.low_confidence);
  CHECK(fit.r_squared > 0.99);
}
