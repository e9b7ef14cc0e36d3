#include <cmath>

#include "bellquench/error.hpp"
#include "bellquench/model.hpp"
#include "doctest.h"

using namespace bellquench;

TEST_CASE("Kac factor") {
  CHECK(kac_factor(0.0, 4) == doctest::Approx(2.0));
  CHECK(std::abs(kac_factor(100.0, 512) - 1.0) < 1e-12);
  CHECK(kac_factor(1.0, 8) == doctest::Approx(25.0 / 12.0).epsilon(1e-14));
  CHECK_THROWS_AS(kac_factor(1.0, 7), Error);
  CHECK_THROWS_AS(kac_factor(1.0, 0), Error);
  double prev = kac_factor(0.1, 64);
  for (double a = 0.2; a < 6.0; a += 0.1) {
    const double k = kac_factor(a, 64);
    CHECK(k < prev);
    prev = k;
  }
}

TEST_CASE("coupling profile") {
  ModelParams p;
  p.alpha = 100.0;
  const auto nn = coupling_profile(p);
  CHECK(nn.size() == 256);
  CHECK(std::abs(nn[0] - 1.0) < 1e-12);
  CHECK(nn[1] < 1e-29);

  p.n = 4;
  p.alpha = 0.0;
  const auto flat = coupling_profile(p);
  CHECK(flat[0] == doctest::Approx(0.5));
  CHECK(flat[1] == doctest::Approx(0.5));

  p.n = 8;
  p.alpha = 2.0;
  const auto jr = coupling_profile(p);
  const double norm = 1.0 + 1.0 / 4 + 1.0 / 9 + 1.0 / 16;
  CHECK(std::abs(norm - kac_factor(2.0, 8)) < 1e-15);
  const double want[] = {1.0, 1.0 / 4, 1.0 / 9, 1.0 / 16};
  double total = 0.0;
  for (int r = 0; r < 4; ++r) {
    CHECK(jr[r] == doctest::Approx(want[r] / norm).epsilon(1e-14));
    total += jr[r];
  }
  CHECK(total * norm == doctest::Approx(norm));
}

TEST_CASE("parameter validation") {
  ModelParams p;
  CHECK_NOTHROW(p.validate());
  p.n = 5;
  CHECK_THROWS_AS(p.validate(), Error);
  p.n = 8;
  p.gamma = 1.5;
  CHECK_THROWS_AS(p.validate(), Error);
  p.gamma = 0.5;
  p.j = 0.0;
  CHECK_THROWS_AS(p.validate(), Error);

  auto q = QuenchSpec::field(ModelParams{}, 0.1, 0.2);
  CHECK_NOTHROW(q.validate());
  q.quenched.alpha = 2.0;
  CHECK_THROWS_AS(q.validate(), Error);
}

TEST_CASE("phase geometry") {
  ModelParams p;
  p.alpha = 10.0;
  CHECK(phase_geometry(p).h_c == doctest::Approx(-0.998046875));
  p.alpha = 1.0;
  CHECK(phase_geometry(p).h_c == 0.0);
  CHECK(phase_geometry(p).h_c2 == 1.0);
  p.h = -0.5;
  REQUIRE(phase_geometry(p).alpha_c.has_value());
  CHECK(*phase_geometry(p).alpha_c == doctest::Approx(2.0));
  p.h = 0.0;
  CHECK(*phase_geometry(p).alpha_c == 1.0);
  p.h = -1.0;
  CHECK_FALSE(phase_geometry(p).alpha_c.has_value());
  for (double a = 0.5; a < 8.0; a += 0.5) CHECK(critical_field(a + 0.5) < critical_field(a));
}

TEST_CASE("same-phase predicate") {
  ModelParams base;
  base.alpha = 10.0;
  CHECK(same_phase(QuenchSpec::field(base, -2.0, 2.0)));
  CHECK_FALSE(same_phase(QuenchSpec::field(base, 0.0, 2.0)));
  base.h = -0.5;
  CHECK(same_phase(QuenchSpec::coupling(base, 1.0, 1.5)));
  CHECK_FALSE(same_phase(QuenchSpec::coupling(base, 1.5, 2.5)));
  CHECK_THROWS_AS(same_phase(QuenchSpec::field(base, -3.5, 0.0)), Error);
  CHECK_THROWS_AS(same_phase(QuenchSpec::coupling(base, 0.4, 1.0)), Error);

  // alpha_c outside the window: every pair is on one side.
  base.h = 0.9;
  CHECK(same_phase(QuenchSpec::coupling(base, 0.5, 3.0)));
}

TEST_CASE("boundary points are flagged and sit in the outer phase") {
  const double hc = critical_field(1.0);
  auto c = classify_quench(QuenchKind::Field, 1.0, hc, -2.0);
  CHECK(c.on_boundary);
  CHECK(c.same);
  c = classify_quench(QuenchKind::Field, 1.0, 1.0, 2.5);
  CHECK(c.on_boundary);
  CHECK(c.same);
  c = classify_quench(QuenchKind::Coupling, -0.5, 2.0, 1.0);
  CHECK(c.on_boundary);
  CHECK(c.same);
  CHECK_FALSE(classify_quench(QuenchKind::Coupling, -0.5, 2.0, 2.01).same);
}

TEST_CASE("same-phase predicate is symmetric and reflexive") {
  for (double a : {0.9, 1.5, 3.5, 10.0}) {
    for (double x = -3.0; x <= 3.0; x += 0.37) {
      CHECK(classify_quench(QuenchKind::Field, a, x, x).same);
      for (double y = -3.0; y <= 3.0; y += 0.41) {
        CHECK(classify_quench(QuenchKind::Field, a, x, y).same == classify_quench(QuenchKind::Field, a, y, x).same);
      }
    }
  }
}

TEST_CASE("same-phase areas") {
  CHECK(same_phase_area(QuenchKind::Field, 10.0) == doctest::Approx(20.0 + std::exp2(-7.0) + std::exp2(-17.0)));
  CHECK(same_phase_area(QuenchKind::Field, 10.0) == doctest::Approx(20.00782).epsilon(1e-6));
  CHECK(same_phase_area(QuenchKind::Coupling, 0.0) == doctest::Approx(4.25));
  CHECK(same_phase_area(QuenchKind::Coupling, -0.5) == doctest::Approx(3.25));
  CHECK_THROWS_AS(same_phase_area(QuenchKind::Coupling, -0.8), Error);
  CHECK_THROWS_AS(same_phase_area(QuenchKind::Coupling, 0.5), Error);

  for (double a = 0.3; a < 12.0; a += 0.05) {
    const double hc = critical_field(a);
    const double ferro = 1.0 - hc;
    const double para = (hc + 3.0) + 2.0;
    CHECK(same_phase_area(QuenchKind::Field, a) == doctest::Approx(para * para + ferro * ferro).epsilon(1e-12));
  }
  for (double h = -0.74; h < 0.41; h += 0.01) {
    const double ac = *critical_alpha(h);
    const double want = (ac - 0.5) * (ac - 0.5) + (3.0 - ac) * (3.0 - ac);
    CHECK(same_phase_area(QuenchKind::Coupling, h) == doctest::Approx(want).epsilon(1e-12));
  }
}
