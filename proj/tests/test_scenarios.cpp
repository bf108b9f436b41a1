#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "qfs/scenarios.hpp"

using namespace qfs;
using scenarios::Direction;
using scenarios::ScenarioConfig;
using scenarios::ScenarioReport;

namespace {

const scenarios::Check& check_named(const ScenarioReport& report, const std::string& name) {
  for (const auto& check : report.checks)
    if (check.name == name) return check;
  FAIL("missing check: ", name);
  static scenarios::Check dummy;
  return dummy;
}

}  // namespace

TEST_CASE("every registered scenario passes with default settings") {
  for (const auto& info : scenarios::list_scenarios()) {
    CAPTURE(info.name);
    const ScenarioReport report = scenarios::run_by_name(info.name);
    CHECK(report.scenario == info.name);
    CHECK(report.all_pass());
    for (const auto& check : report.checks) {
      CAPTURE(check.name);
      CHECK(check.pass);
    }
  }
}

TEST_CASE("reports are deterministic for a fixed seed") {
  ScenarioConfig config;
  config.seed = 42;
  const std::string a = scenarios::run_by_name("spin-half", config).to_json().dump();
  const std::string b = scenarios::run_by_name("spin-half", config).to_json().dump();
  CHECK(a == b);

  ScenarioConfig other = config;
  other.seed = 43;
  const std::string c = scenarios::run_by_name("spin-half", other).to_json().dump();
  CHECK(a != c);
}

TEST_CASE("frozen landmark values") {
  const ScenarioReport chsh = scenarios::run_by_name("chsh");
  CHECK(std::abs(check_named(chsh, "family_max").measured - 2 * std::sqrt(2.0)) < 1e-9);
  CHECK(check_named(chsh, "pointwise_bound_max").measured == 2.0);
  CHECK(check_named(chsh, "pointwise_bound_min").measured == 2.0);

  const ScenarioReport singlet = scenarios::run_by_name("singlet");
  CHECK(std::abs(check_named(singlet, "correlation").measured - (-0.5)) < 1e-10);
  CHECK(std::abs(check_named(singlet, "anticorrelation_equal_settings").measured) < 1e-12);

  const ScenarioReport pitman = scenarios::run_by_name("pitman");
  CHECK(check_named(pitman, "pitman_risk").measured == 1.1);
  CHECK(check_named(pitman, "risk_equals_best_equivariant").pass);

  const ScenarioReport coupled = scenarios::run_by_name("coupled-spin");
  CHECK(check_named(coupled, "factorization_discrepancy").measured < 1e-8);

  const ScenarioReport corrupt = scenarios::run_by_name("coupled-spin-corrupt");
  CHECK(corrupt.all_pass());
  CHECK(check_named(corrupt, "corruption_detected").measured > 1e-3);
}

TEST_CASE("spin scenario accepts repeated directions") {
  const std::vector<Direction> dirs = {Direction::parse("z"), Direction::parse("z")};
  const ScenarioReport report = scenarios::run_spin_half(dirs);
  CHECK(report.all_pass());
}

TEST_CASE("custom latent instance with orthogonal directions") {
  Eigen::VectorXd t(4), u(4), a(4), b(4);
  t << 1, 0, 0, 0;
  u << 0, 1, 1, 0;
  a << 0.5, 0.5, -0.5, 0.5;
  b << -0.5, 0.5, 0.5, 0.5;
  const ScenarioReport report = scenarios::run_latent_epr(t, u, a, b, 0.0);
  CHECK(report.all_pass());
  CHECK(check_named(report, "station1_outer_recovery").measured < 1e-12);
}

TEST_CASE("direction parsing") {
  CHECK((Direction::parse("z").axis - Eigen::Vector3d(0, 0, 1)).norm() < 1e-15);
  CHECK((Direction::parse("-x").axis - Eigen::Vector3d(-1, 0, 0)).norm() < 1e-15);
  const Direction tilted = Direction::parse("0.6,0,0.8");
  CHECK(std::abs(tilted.axis.norm() - 1.0) < 1e-12);
  CHECK(tilted.axis.z() == doctest::Approx(0.8));
  const Direction angled = Direction::parse("deg:45");
  CHECK(angled.axis.x() == doctest::Approx(std::sin(M_PI / 4)));
  CHECK(angled.axis.z() == doctest::Approx(std::cos(M_PI / 4)));
  CHECK_THROWS_AS(Direction::parse("0,0,0"), Error);
  CHECK_THROWS_AS(Direction::parse("sideways"), Error);
}

TEST_CASE("unknown scenario names are rejected") {
  CHECK_THROWS_AS(scenarios::run_by_name("no-such-scenario"), Error);
}

TEST_CASE("csv rendering carries one row per check") {
  const ScenarioReport report = scenarios::run_by_name("pitman");
  const std::string csv = report.checks_csv();
  int lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == static_cast<int>(report.checks.size()) + 1);
  CHECK(csv.rfind("name,", 0) == 0);
}
