#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "thermo/duality.hpp"
#include "thermo/error.hpp"
#include "thermo/kernels.hpp"
#include "thermo/random.hpp"
#include "thermo/spectral.hpp"

using namespace thermo;

namespace {

PressureCurve golden_curve(double lo, double hi, std::size_t steps, int jobs = 1) {
  return sample_curve(zero_potential(golden_mean()), golden_phi(1.0), lo, hi, steps, jobs);
}

}  // namespace

TEST_CASE("uniform grid") {
  const auto g = uniform_grid(-1.0, 1.0, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == -1.0);
  CHECK(g.back() == 1.0);
  CHECK(g[2] == 0.0);
}

TEST_CASE("sampled curve matches the closed form") {
  const PressureCurve c = golden_curve(-3.0, 3.0, 61);
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(std::abs(c.values[i] - oracle::golden_pressure(c.t[i])) < 1e-11);
  // Discrete midpoint convexity.
  for (std::size_t i = 1; i + 1 < c.size(); ++i) {
    CHECK(c.values[i] <= 0.5 * (c.values[i - 1] + c.values[i + 1]) + 1e-10);
  }
  CHECK(c.interpolate(0.05) == doctest::Approx(0.5 * (c.values[30] + c.values[31])));
  CHECK_THROWS_AS(c.interpolate(3.5), Error);
}

TEST_CASE("parallel sampling equals serial sampling bit for bit") {
  const PressureCurve serial = golden_curve(-10.0, 10.0, 401, 1);
  const PressureCurve parallel = golden_curve(-10.0, 10.0, 401, 4);
  CHECK(serial.values == parallel.values);
}

TEST_CASE("sampling rejects bad input") {
  CHECK_THROWS_AS(golden_curve(1.0, -1.0, 10), Error);
  CHECK_THROWS_AS(golden_curve(-1.0, 1.0, 1), Error);
  const SftSystem two = make_sft(2, {{1, 1}, {0, 1}});
  CHECK_THROWS_AS(sample_curve(zero_potential(two), zero_potential(two), -1, 1, 5), Error);
}

TEST_CASE("conjugate of a parabola") {
  // f(t) = t²/2 has f*(a) = a²/2.
  const auto t = uniform_grid(-4.0, 4.0, 8001);
  std::vector<double> f(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) f[i] = 0.5 * t[i] * t[i];
  const PressureCurve curve = make_curve(t, f);
  const ConjugateCurve conj = legendre(curve, 801);
  CHECK(conj.a.front() < -4.0 + 1e-3);
  CHECK(conj.a.front() > -4.0 - 0.1);
  for (std::size_t j = 0; j < conj.a.size(); ++j) {
    if (std::abs(conj.a[j]) > 3.9) continue;
    CHECK(std::abs(conj.rate[j] - 0.5 * conj.a[j] * conj.a[j]) < 1e-6);
  }
  const auto bic = biconjugate(conj, t);
  for (std::size_t i = 0; i < t.size(); i += 10) {
    if (std::abs(t[i]) > 3.9) continue;
    CHECK(std::abs(bic[i] - f[i]) < 1e-4);
  }
}

TEST_CASE("golden mean duality") {
  const PressureCurve curve = golden_curve(-10.0, 10.0, 2001);
  const ConjugateCurve conj = legendre(curve, 2001);
  // Slopes stay inside (1/2, 1) up to the 1% endpoint inflation.
  CHECK(conj.a.front() > 0.49);
  CHECK(conj.a.back() < 1.01);

  double min_gap = INFINITY;
  for (std::size_t i = 0; i < curve.size(); i += 7) {
    for (std::size_t j = 0; j < conj.a.size(); j += 7) {
      min_gap = std::min(min_gap, curve.values[i] + conj.rate[j] - curve.t[i] * conj.a[j]);
    }
  }
  CHECK(min_gap >= -1e-10);

  const auto bic = biconjugate(conj, curve.t);
  for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
    CHECK(bic[i] <= curve.values[i] + 1e-12);
    CHECK(std::abs(bic[i] - curve.values[i]) < 5e-4);
  }

  // −I at the maximal-entropy mean recovers the topological entropy.
  const double a_star = (5.0 + std::sqrt(5.0)) / 10.0;
  CHECK(std::abs(-conj.interpolate(a_star) - std::log(oracle::golden_ratio())) < 2e-3);
  CHECK(fenchel_young_gap(curve, conj, 0.0, a_star) == doctest::Approx(0.0).epsilon(1e-3));
  CHECK(fenchel_young_gap(curve, conj, 1.0, 0.6) > 0.0);
}

TEST_CASE("legendre rejects affine curves") {
  const auto t = uniform_grid(0.0, 1.0, 11);
  std::vector<double> f(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) f[i] = 2.0 * t[i] + 1.0;
  try {
    legendre(make_curve(t, f), 11);
    FAIL("expected DegenerateRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateRange);
  }
}

TEST_CASE("subdifferential intervals") {
  const auto t = uniform_grid(-1.0, 1.0, 201);
  std::vector<double> f(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) f[i] = std::abs(t[i]) + t[i] * t[i];
  const PressureCurve kink = make_curve(t, f);
  const SubdiffInterval at0 = subdifferential_interval(kink, 0.0);
  CHECK(at0.lower == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(at0.upper == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(is_corner(at0));
  const SubdiffInterval smooth = subdifferential_interval(kink, 0.5);
  CHECK(smooth.lower == doctest::Approx(2.0).epsilon(1e-9));
  CHECK_FALSE(is_corner(smooth));
  CHECK_THROWS_AS(subdifferential_interval(kink, 0.995), Error);

  const auto direct = subdifferential_interval([](double x) { return std::max(x, 2.0 * x); }, 0.0, 1e-3);
  CHECK(direct.width() == doctest::Approx(1.0));

  std::ostringstream out;
  write_subdiff_json(out, at0);
  CHECK(out.str().find("\"corner\": true") != std::string::npos);
}

TEST_CASE("Richardson derivatives") {
  auto p = [](double t) { return oracle::golden_pressure(t); };
  CHECK(std::abs(richardson_first_derivative(p, 0.0, 1e-3) - (5.0 + std::sqrt(5.0)) / 10.0) < 1e-8);
  CHECK(std::abs(richardson_second_derivative(p, 0.0, 1e-3) - 1.0 / (5.0 * std::sqrt(5.0))) < 1e-5);
  CHECK(richardson_first_derivative([](double x) { return std::sin(x); }, 0.3, 1e-2) ==
        doctest::Approx(std::cos(0.3)).epsilon(1e-9));
}

TEST_CASE("conjugate kernel: OpenMP and serial agree") {
  Rng rng(4);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  std::vector<double> x(3000), f(3000), s(500), out1(500), out2(500);
  for (auto& v : x) v = unif(rng);
  for (auto& v : f) v = unif(rng);
  for (auto& v : s) v = unif(rng);
  kernels::conjugate_serial(x, f, s, out1);
  kernels::conjugate_parallel(x, f, s, out2, 4);
  CHECK(out1 == out2);
}

TEST_CASE("for_each_index reports the lowest failing index") {
  for (int jobs : {1, 4}) {
    try {
      kernels::for_each_index(100, jobs, [](std::size_t i) {
        if (i % 10 == 7) throw std::runtime_error(std::to_string(i));
      });
      FAIL("expected a throw");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "7");
    }
  }
}

TEST_CASE("curve CSV output") {
  std::ostringstream a, b;
  write_curve_csv(a, golden_curve(-1.0, 1.0, 3));
  CHECK(a.str().rfind("t,pressure\n", 0) == 0);
  const ConjugateCurve conj = legendre(golden_curve(-1.0, 1.0, 11), 5);
  write_conjugate_csv(b, conj);
  CHECK(b.str().rfind("a,rate\n", 0) == 0);
}
