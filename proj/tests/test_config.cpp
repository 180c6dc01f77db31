#include "kdvlab/config.hpp"

#include <doctest.h>

#include <cstdlib>
#include <fstream>

using namespace kdvlab;

TEST_CASE("config: minimal simulate config gets documented defaults") {
  const RunConfig c = parse_config(R"({"mode":"linear-homogeneous","L":5.0,"T":2.0})");
  CHECK(c.n == 512);
  CHECK(c.dt == doctest::Approx(2.0 / 4096.0));
  CHECK(c.scheme == Scheme::CrankNicolson);
  CHECK(c.alpha == 0.0);
}

TEST_CASE("config: schema violations name the field") {
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"mode":"feedback","L":5.0,"T":1.0,"alpha":-1.0})"),
      doctest::Contains("alpha"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config(R"({"mode":"feedback","L":-2.0,"T":1.0})"),
                       doctest::Contains("'L'"), ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"mode":"linear-homogeneous","L":1.0,"T":1.0,"bogus":3})"),
      doctest::Contains("bogus"), ConfigError);
  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
}

TEST_CASE("config: feedback mode requires positive alpha") {
  CHECK_THROWS_AS(parse_config(R"({"mode":"feedback","L":5.0,"T":1.0})"), ConfigError);
  const RunConfig ok = parse_config(R"({"mode":"feedback","L":5.0,"T":1.0,"alpha":1.0})");
  CHECK(ok.alpha == 1.0);
}

TEST_CASE("config: effective echo round-trips to an identical RunConfig") {
  const RunConfig a = parse_config(R"({
    "mode": "nonhomogeneous", "L": 5.0, "T": 1.0, "n": 128,
    "boundary": {"g2": {"type": "windowed-sine", "amplitude": 0.5,
                         "omega": 3.0, "ramp": 0.2}},
    "init": {"type": "gauss", "amplitude": 0.25}
  })");
  const RunConfig b = parse_config(a.effective_json());
  CHECK(a == b);
  CHECK(b.effective_json() == a.effective_json());
}

TEST_CASE("config: signals evaluate with analytic derivatives") {
  const RunConfig c = parse_config(R"({
    "mode": "nonhomogeneous", "L": 2.0, "T": 1.0,
    "boundary": {"g2": {"type": "gauss-pulse", "amplitude": 1.0,
                         "center": 0.5, "width": 0.1}}
  })");
  const Signal s = c.boundary.at("g2").to_signal();
  const double t = 0.47;
  const double fd = (s.value(t + 1e-6) - s.value(t - 1e-6)) / 2e-6;
  CHECK(s.deriv(t) == doctest::Approx(fd).epsilon(1e-6));
}
