#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "thermo/error.hpp"
#include "thermo/phase.hpp"
#include "thermo/spectral.hpp"

using namespace thermo;

namespace {

const double kTStar = std::log(2.0 / oracle::golden_ratio());

struct TwoPhase {
  SftSystem system = disjoint_union(golden_mean(), full_shift(2));
  Potential psi = [this] {
    const Symbol golden_symbols[] = {0, 1};
    return indicator_potential(system, golden_symbols);
  }();
  Potential zero = zero_potential(system);
};

}  // namespace

TEST_CASE("disjoint union") {
  const TwoPhase x;
  CHECK(x.system.alphabet_size() == 4);
  CHECK(x.system.scc_count() == 2);
  CHECK_FALSE(x.system.is_primitive());
  CHECK(x.system.allowed(2, 3));
  CHECK_FALSE(x.system.allowed(1, 2));
}

TEST_CASE("component pressures") {
  const TwoPhase x;
  const auto reports = component_pressures(x.zero, x.psi);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].pressure == doctest::Approx(std::log(oracle::golden_ratio())));
  CHECK(reports[1].pressure == doctest::Approx(std::log(2.0)));
  CHECK(reports[0].mean_direction == doctest::Approx(1.0));
  CHECK(reports[1].mean_direction == doctest::Approx(0.0));
  CHECK(reports[1].measure.pi[0] == doctest::Approx(0.5));

  const SftSystem periodic = disjoint_union(golden_mean(), make_sft(2, {{0, 1}, {1, 0}}));
  CHECK_THROWS_AS(recurrent_components(periodic), Error);
}

TEST_CASE("envelope is the max of the component curves") {
  const TwoPhase x;
  const PhaseFamily family(x.zero, x.psi);
  REQUIRE(family.component_count() == 2);
  for (double t : {-2.0, 0.0, kTStar - 0.01, kTStar + 0.01, 3.0}) {
    const double golden = std::log(oracle::golden_ratio()) + t;
    const double full = std::log(2.0);
    CHECK(family(t) == doctest::Approx(std::max(golden, full)).epsilon(1e-13));
    CHECK(family.evaluate(t).winner == (golden > full ? 0u : 1u));
  }
  const PressureCurve curve = envelope_curve(x.zero, x.psi, -1.0, 1.0, 201, 3);
  CHECK(curve.winner.front() == 1);
  CHECK(curve.winner.back() == 0);
}

TEST_CASE("two-phase corner") {
  const TwoPhase x;
  const PhaseFamily family(x.zero, x.psi);
  const PressureCurve curve = envelope_curve(x.zero, x.psi, -3.0, 3.0, 601);

  const auto corners = corner_scan(family, curve);
  REQUIRE(corners.size() == 1);
  CHECK(std::abs(corners[0].t_star - kTStar) < 1e-9);
  CHECK(std::abs(corners[0].jump - 1.0) < 1e-6);
  CHECK(corners[0].left_phase == 1);
  CHECK(corners[0].right_phase == 0);

  // Without the family, tangent lines still locate the corner on a fine grid.
  const auto rough = corner_scan(curve);
  REQUIRE(rough.size() == 1);
  CHECK(std::abs(rough[0].t_star - kTStar) < 1e-9);
  CHECK(std::abs(rough[0].jump - 1.0) < 1e-6);

  std::ostringstream out;
  write_corners_json(out, corners);
  CHECK(out.str().find("\"left_phase\": 1") != std::string::npos);
}

TEST_CASE("smooth families have no corners") {
  const PressureCurve curve = sample_curve(zero_potential(golden_mean()), golden_phi(1.0), -5.0, 5.0, 1001);
  CHECK(corner_scan(curve).empty());
}

TEST_CASE("selection principle") {
  const TwoPhase x;
  const Potential base = scale(x.psi, kTStar);
  for (double t_small : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    const auto up = selection_check(base, x.psi, t_small);
    REQUIRE(up.size() == 1);
    CHECK(up[0] == 0);
    const auto down = selection_check(base, scale(x.psi, -1.0), t_small);
    REQUIRE(down.size() == 1);
    CHECK(down[0] == 1);
  }
  try {
    selection_check(x.zero, x.psi, 1e-3);
    FAIL("expected NoCoexistence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoCoexistence);
  }
  CHECK_THROWS_AS(selection_check(base, x.psi, 0.0), Error);
}

TEST_CASE("two full shifts give multiple maximal-entropy measures") {
  const SftSystem s = disjoint_union(full_shift(2), full_shift(2));
  const auto reports = component_pressures(zero_potential(s));
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].pressure == doctest::Approx(reports[1].pressure));
  const Symbol first[] = {0, 1};
  const Potential psi = indicator_potential(s, first);
  const PhaseFamily family(zero_potential(s), psi);
  const auto corners = corner_scan(family, envelope_curve(zero_potential(s), psi, -1.0, 1.0, 201));
  REQUIRE(corners.size() == 1);
  CHECK(std::abs(corners[0].t_star) < 1e-9);
}
