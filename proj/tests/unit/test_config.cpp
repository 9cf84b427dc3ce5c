#include "doctest.h"

#include "burnett/adapt.hpp"
#include "burnett/config.hpp"

using namespace burnett;

TEST_CASE("presets carry the published scenario parameters") {
  SUBCASE("colliding flow") {
    const ScenarioConfig c = preset_config(ScenarioKind::colliding_flow);
    CHECK(c.kn == 0.5);
    CHECK(c.grid.x0 == -20.0);
    CHECK(c.grid.x1 == 20.0);
    CHECK(c.collide_speed == 1.0);
    CHECK(c.collide_theta == doctest::Approx(1.0 / 3.0));
    CHECK(c.grid.axis == 0);
  }
  SUBCASE("couette") {
    const ScenarioConfig c = preset_config(ScenarioKind::couette);
    CHECK(c.kn == 0.5);
    CHECK(c.grid.bc[0].kind == BoundaryKind::diffusive_wall);
    CHECK(c.grid.bc[0].u_wall[0] == -0.5);
    CHECK(c.grid.bc[1].u_wall[0] == 0.5);
    CHECK(c.grid.bc[1].theta_wall == 1.0);
    CHECK(c.grid.x1 - c.grid.x0 == 1.0);
    CHECK(c.steady);
  }
  SUBCASE("diffusion") {
    const ScenarioConfig c = preset_config(ScenarioKind::diffusion);
    CHECK(c.kn == 0.05);
    CHECK(c.diffusion_density == 10.0);
    CHECK(c.diffusion_half_width == 0.05);
    CHECK(c.grid.dimension == 2);
    CHECK(c.snapshot_times.size() == 4);
  }
  SUBCASE("cavity") {
    const ScenarioConfig c = preset_config(ScenarioKind::cavity);
    CHECK(c.kn == 0.1);
    CHECK(c.lid_speed == 0.0208);
    CHECK(c.grid.bc[3].u_wall[0] == 0.0208);
    CHECK(c.grid.bc[2].u_wall[0] == 0.0);
  }
}

TEST_CASE("config round trip and validation") {
  SUBCASE("parse(emit(c)) reproduces every field") {
    for (ScenarioKind kind :
         {ScenarioKind::colliding_flow, ScenarioKind::couette,
          ScenarioKind::diffusion, ScenarioKind::cavity}) {
      ScenarioConfig c = preset_config(kind);
      c.workers = 3;
      c.seed = 12345;
      c.snapshot_times = {0.1, 0.25, 0.5};
      c.eps1 = 0.3125;
      c.eps2 = 1.25;
      const std::string text = emit_config(c);
      const ScenarioConfig back = parse_config_text(text);
      CHECK(emit_config(back) == text);
    }
  }
  SUBCASE("unknown key is an error naming the key") {
    const std::string text = "[adapt]\nepsilon3 = 1\n";
    try {
      parse_config_text(text);
      FAIL("expected config_error");
    } catch (const config_error& e) {
      CHECK(std::string(e.what()).find("epsilon3") != std::string::npos);
    }
  }
  SUBCASE("eps1 >= eps2 rejected") {
    ScenarioConfig c = preset_config(ScenarioKind::colliding_flow);
    c.eps1 = 4.0;
    c.eps2 = 4.0;
    CHECK_THROWS_AS(validate_config(c), config_error);
    CHECK_THROWS_AS(parse_config_text(emit_config(c)), config_error);
  }
  SUBCASE("scenario name alone pulls in the preset") {
    const ScenarioConfig c =
        parse_config_text("[scenario]\nkind = couette\n");
    CHECK(c.grid.bc[0].kind == BoundaryKind::diffusive_wall);
    CHECK(c.kn == 0.5);
  }
  SUBCASE("file keys override the preset baseline") {
    const ScenarioConfig c = parse_config_text(
        "[scenario]\nkind = couette\nkn = 0.25\n[io]\nworkers = 4\n");
    CHECK(c.kn == 0.25);
    CHECK(c.workers == 4);
    CHECK(c.steady);
  }
  SUBCASE("malformed values carry location diagnostics") {
    try {
      parse_config_text("[basis]\nm = ten\n", "test.ini");
      FAIL("expected config_error");
    } catch (const config_error& e) {
      const std::string msg = e.what();
      CHECK(msg.find("test.ini:2") != std::string::npos);
      CHECK(msg.find("m") != std::string::npos);
    }
  }
  SUBCASE("reserved spatial threshold field must stay empty") {
    CHECK_THROWS_AS(
        parse_config_text("[adapt]\nspatial_thresholds = some.csv\n"),
        config_error);
  }
}

TEST_CASE("m0 update policy") {
  AdaptPolicy p;
  p.eps1 = 1.0;
  p.eps2 = 4.0;
  p.m0_cap = 15;

  CHECK(update_m0(5, 10.0, p) == 6);    // above eps2: raise by one
  CHECK(update_m0(3, 0.1, p) == 3);     // floor at 3
  CHECK(update_m0(15, 100.0, p) == 15); // cap
  CHECK(update_m0(7, 2.0, p) == 7);     // inside (eps1, eps2): hold
  CHECK(update_m0(7, 0.5, p) == 6);
  CHECK(update_m0(7, 1.0, p) == 7);     // boundary values hold
  CHECK(update_m0(7, 4.0, p) == 7);

  SUBCASE("hysteresis: constant in-band indicator never moves m0") {
    int m0 = 9;
    for (int i = 0; i < 1000; ++i) m0 = update_m0(m0, 2.5, p);
    CHECK(m0 == 9);
  }
  SUBCASE("single-step property") {
    for (int m0 = 3; m0 <= 15; ++m0)
      for (double ind : {0.0, 0.99, 1.5, 3.9, 4.1, 1e6}) {
        const int next = update_m0(m0, ind, p);
        CHECK(std::abs(next - m0) <= 1);
        CHECK(next >= 3);
        CHECK(next <= 15);
      }
  }
}
