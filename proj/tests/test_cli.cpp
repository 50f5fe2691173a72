#include <doctest.h>

#include <cmath>
#include <json.hpp>
#include <sstream>

#include "thermo/cli.hpp"
#include "thermo/error.hpp"

using namespace thermo::cli;

namespace {

const std::string kGolden = std::string(THERMO_DATA_DIR) + "/golden.json";
const std::string kTwoPhase = std::string(THERMO_DATA_DIR) + "/golden_full2.json";
const std::string kDepthTwo = std::string(THERMO_DATA_DIR) + "/full3_depth2.json";

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "thermo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const ParseResult parsed = parse_command_line(static_cast<int>(argv.size()), argv.data(), out, err);
  if (!parsed.config) return {parsed.exit_code, out.str(), err.str()};
  const int code = run(*parsed.config, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("pressure-curve CSV") {
  const Outcome o = run_args({"pressure-curve", "--input", kGolden, "--potential", "phi_t", "--t-min", "-1",
                              "--t-max", "1", "--steps", "3"});
  CHECK(o.code == kSuccess);
  CHECK(o.out.rfind("t,pressure\n-1,", 0) == 0);
  CHECK(o.out.find("0,0.48121182505960") != std::string::npos);
}

TEST_CASE("pressure-curve on a reducible system uses the envelope") {
  const Outcome o = run_args({"pressure-curve", "--input", kTwoPhase, "--potential", "psi", "--format", "json",
                              "--steps", "11"});
  REQUIRE(o.code == kSuccess);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j.at("winner").front() == 1);
  CHECK(j.at("winner").back() == 0);
}

TEST_CASE("variance JSON") {
  const Outcome o = run_args({"variance", "--input", kGolden, "--potential", "phi_t", "--lags", "5"});
  REQUIRE(o.code == kSuccess);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(std::abs(j.at("variance").get<double>() - 1.0 / (5.0 * std::sqrt(5.0))) < 1e-12);
  CHECK(std::abs(j.at("fd_variance").get<double>() - j.at("variance").get<double>()) < 1e-5);
  CHECK(std::abs(j.at("mean").get<double>() - j.at("fd_mean").get<double>()) < 1e-8);
  CHECK(j.at("covariances").size() == 6);

  const Outcome deep = run_args({"variance", "--input", kDepthTwo, "--potential", "pair", "--at", "0.5",
                                 "--direction", "first"});
  REQUIRE(deep.code == kSuccess);
  const auto d = nlohmann::json::parse(deep.out);
  CHECK(std::abs(d.at("fd_variance").get<double>() - d.at("variance").get<double>()) < 1e-5);
}

TEST_CASE("duality summary") {
  const Outcome o = run_args({"duality", "--input", kGolden, "--potential", "phi_t", "--t-min", "-10", "--t-max",
                              "10", "--steps", "2001", "--jobs", "2"});
  REQUIRE(o.code == kSuccess);
  const auto j = nlohmann::json::parse(o.out);
  CHECK(j.at("min_fenchel_young_gap").get<double>() >= -1e-10);
  CHECK(j.at("max_biconjugate_deviation").get<double>() < 5e-4);
}

TEST_CASE("phase-scan finds the two-phase corner") {
  const Outcome o = run_args({"phase-scan", "--input", kTwoPhase, "--potential", "psi", "--t-min", "-2",
                              "--t-max", "2", "--steps", "401"});
  REQUIRE(o.code == kSuccess);
  const auto j = nlohmann::json::parse(o.out);
  REQUIRE(j.size() == 1);
  CHECK(std::abs(j[0].at("t_star").get<double>() - std::log(2.0 / ((1.0 + std::sqrt(5.0)) / 2.0))) < 1e-6);
}

TEST_CASE("info and verify") {
  const Outcome info = run_args({"info", "--input", kTwoPhase});
  REQUIRE(info.code == kSuccess);
  const auto j = nlohmann::json::parse(info.out);
  CHECK(j.at("primitive") == false);
  CHECK(j.at("components").size() == 2);

  for (const auto& path : {kGolden, kTwoPhase, kDepthTwo}) {
    const Outcome v = run_args({"verify", "--input", path, "--seed", "3"});
    CHECK(v.code == kSuccess);
    CHECK(v.out.find("FAIL") == std::string::npos);
    CHECK(v.out.find("PASS") != std::string::npos);
  }
}

TEST_CASE("output is deterministic across thread counts") {
  const auto one = run_args({"pressure-curve", "--input", kGolden, "--potential", "phi_t", "--jobs", "1"});
  const auto four = run_args({"pressure-curve", "--input", kGolden, "--potential", "phi_t", "--jobs", "4"});
  CHECK(one.out == four.out);
  const auto va = run_args({"verify", "--input", kGolden, "--seed", "9"});
  const auto vb = run_args({"verify", "--input", kGolden, "--seed", "9"});
  CHECK(va.out == vb.out);
}

TEST_CASE("exit codes") {
  CHECK(run_args({}).code == kInvalidInput);
  CHECK(run_args({"info", "--input", "/nonexistent.json"}).code == kInvalidInput);
  const Outcome missing = run_args({"variance", "--input", kGolden, "--potential", "nope"});
  CHECK(missing.code == kInvalidInput);
  CHECK(missing.err.find("nope") != std::string::npos);
  CHECK(run_args({"pressure-curve", "--input", kGolden, "--potential", "g", "--t-min", "2", "--t-max", "1"}).code ==
        kInvalidInput);
  CHECK(run_args({"variance", "--input", kTwoPhase, "--potential", "psi"}).code == kInvalidInput);
  CHECK(run_args({"pressure-curve", "--help"}).code == kSuccess);
  CHECK(thermo::is_numerical_failure(thermo::ErrorCode::NoConvergence));
  CHECK(thermo::is_numerical_failure(thermo::ErrorCode::NoDecay));
  CHECK_FALSE(thermo::is_numerical_failure(thermo::ErrorCode::NotPrimitive));
}

TEST_CASE("summary table") {
  const auto rows = golden_table();
  REQUIRE(rows.size() == 8);
  int mismatches = 0;
  for (const auto& r : rows) mismatches += r.agrees ? 0 : 1;
  // The only disagreement is the mean row.
  CHECK(mismatches == 1);
  CHECK(rows[4].computed == "0.7236068");
  CHECK_FALSE(rows[4].agrees);
  std::ostringstream out;
  emit_golden_table(out);
  CHECK(out.str().find("MISMATCH") != std::string::npos);
}
