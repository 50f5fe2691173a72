#include "thermo/duality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "thermo/error.hpp"
#include "thermo/format.hpp"
#include "thermo/kernels.hpp"
#include "thermo/spectral.hpp"

namespace thermo {

namespace {

double interpolate_grid(const std::vector<double>& x, const std::vector<double>& y, double at) {
  if (x.empty()) throw Error(ErrorCode::OutOfRange, "empty grid");
  const double slack = 1e-12 * (1.0 + std::abs(x.front()) + std::abs(x.back()));
  if (at < x.front() - slack || at > x.back() + slack) {
    throw Error(ErrorCode::OutOfRange, "point " + fmt17(at) + " lies outside [" + fmt17(x.front()) + ", " +
                                           fmt17(x.back()) + "]");
  }
  if (at <= x.front()) return y.front();
  if (at >= x.back()) return y.back();
  const auto it = std::upper_bound(x.begin(), x.end(), at);
  const auto hi = static_cast<std::size_t>(it - x.begin());
  const std::size_t lo = hi - 1;
  if (at == x[lo]) return y[lo];
  const double w = (at - x[lo]) / (x[hi] - x[lo]);
  return (1.0 - w) * y[lo] + w * y[hi];
}

}  // namespace

double PressureCurve::interpolate(double x) const { return interpolate_grid(t, values, x); }

double ConjugateCurve::interpolate(double x) const { return interpolate_grid(a, rate, x); }

PressureCurve make_curve(std::vector<double> t, std::vector<double> values) {
  if (t.size() != values.size() || t.size() < 2) {
    throw Error(ErrorCode::InvalidInput, "curve needs equal-length grids with at least 2 points");
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t[i]) || !std::isfinite(values[i])) {
      throw Error(ErrorCode::InvalidInput, "curve contains non-finite values");
    }
    if (i > 0 && !(t[i] > t[i - 1])) throw Error(ErrorCode::InvalidInput, "t grid is not strictly increasing");
  }
  PressureCurve curve;
  curve.t = std::move(t);
  curve.values = std::move(values);
  return curve;
}

bool is_corner(const SubdiffInterval& interval, double threshold) {
  return interval.upper - interval.lower >
         threshold * (1.0 + std::abs(interval.upper) + std::abs(interval.lower));
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t steps) {
  if (steps < 2 || !(lo < hi)) throw Error(ErrorCode::InvalidInput, "grid needs lo < hi and at least 2 steps");
  std::vector<double> grid(steps);
  const double width = hi - lo;
  const auto last = static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) grid[i] = lo + width * (static_cast<double>(i) / last);
  grid.back() = hi;
  return grid;
}

PressureCurve sample_curve(const Potential& base, const Potential& direction, double t_min, double t_max,
                           std::size_t steps, int jobs) {
  if (steps < 3) throw Error(ErrorCode::InvalidInput, "sample_curve needs at least 3 steps");
  if (!base.system().same_as(direction.system())) {
    throw Error(ErrorCode::InvalidInput, "base and direction live on different systems");
  }
  if (!base.system().is_primitive()) {
    throw Error(ErrorCode::NotPrimitive, "system is not primitive; use envelope_curve");
  }
  PressureCurve curve;
  curve.base = base;
  curve.direction = direction;
  curve.t = uniform_grid(t_min, t_max, steps);
  curve.values.assign(steps, 0.0);
  kernels::for_each_index(steps, jobs, [&](std::size_t i) {
    const double t = curve.t[i];
    try {
      curve.values[i] = pressure(combine(1.0, base, t, direction));
    } catch (const Error& e) {
      throw Error(e.code(), "at t = " + fmt17(t) + ": " + e.what());
    }
  });
  return curve;
}

ConjugateCurve legendre(const PressureCurve& curve, std::size_t a_steps, int jobs) {
  if (curve.size() < 3) throw Error(ErrorCode::InvalidInput, "legendre needs a curve with at least 3 points");
  if (a_steps < 2) throw Error(ErrorCode::InvalidInput, "legendre needs at least 2 slopes");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const double s = (curve.values[i + 1] - curve.values[i]) / (curve.t[i + 1] - curve.t[i]);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  if (hi - lo <= 1e-9 * (1.0 + std::max(std::abs(lo), std::abs(hi)))) {
    throw Error(ErrorCode::DegenerateRange, "all chord slopes equal " + fmt17(lo) + "; the curve is affine");
  }
  const double pad = 0.01 * (hi - lo);
  ConjugateCurve conj;
  conj.a = uniform_grid(lo - pad, hi + pad, a_steps);
  conj.rate.assign(a_steps, 0.0);
  kernels::conjugate(curve.t, curve.values, conj.a, conj.rate, jobs);
  return conj;
}

std::vector<double> biconjugate(const ConjugateCurve& conj, const std::vector<double>& t_grid, int jobs) {
  if (conj.a.empty() || conj.a.size() != conj.rate.size()) {
    throw Error(ErrorCode::InvalidInput, "conjugate curve is empty or malformed");
  }
  std::vector<double> out(t_grid.size());
  kernels::conjugate(conj.a, conj.rate, t_grid, out, jobs);
  return out;
}

double fenchel_young_gap(const PressureCurve& curve, const ConjugateCurve& conj, double t, double a) {
  return curve.interpolate(t) + conj.interpolate(a) - t * a;
}

SubdiffInterval subdifferential_interval(const std::function<double(double)>& f, double t, double delta) {
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidInput, "step must be positive");
  const double f0 = f(t);
  auto right = [&](double d) { return (f(t + d) - f0) / d; };
  auto left = [&](double d) { return (f0 - f(t - d)) / d; };
  return {t, 2.0 * left(0.5 * delta) - left(delta), 2.0 * right(0.5 * delta) - right(delta)};
}

SubdiffInterval subdifferential_interval(const PressureCurve& curve, double t) {
  const auto& grid = curve.t;
  if (grid.size() < 5 || t < grid.front() || t > grid.back()) {
    throw Error(ErrorCode::TooCloseToBoundary, "t = " + fmt17(t) + " is not strictly inside the grid");
  }
  auto it = std::upper_bound(grid.begin(), grid.end(), t);
  std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(it - grid.begin()), grid.size() - 1);
  const double spacing = grid[hi] - grid[hi - 1];
  const double delta = 2.0 * spacing;
  const double slack = 1e-9 * spacing;
  if (t - delta < grid.front() - slack || t + delta > grid.back() + slack) {
    throw Error(ErrorCode::TooCloseToBoundary, "t = " + fmt17(t) + " needs two grid points on each side");
  }
  auto f = [&](double x) { return curve.interpolate(std::clamp(x, grid.front(), grid.back())); };
  return subdifferential_interval(f, t, delta);
}

double richardson_first_derivative(const std::function<double(double)>& f, double t, double h) {
  auto central = [&](double d) { return (f(t + d) - f(t - d)) / (2.0 * d); };
  return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

double richardson_second_derivative(const std::function<double(double)>& f, double t, double h) {
  const double f0 = f(t);
  auto second = [&](double d) { return (f(t + d) - 2.0 * f0 + f(t - d)) / (d * d); };
  return (4.0 * second(0.5 * h) - second(h)) / 3.0;
}

void write_curve_csv(std::ostream& out, const PressureCurve& curve) {
  out << "t,pressure\n";
  for (std::size_t i = 0; i < curve.size(); ++i) out << fmt17(curve.t[i]) << ',' << fmt17(curve.values[i]) << '\n';
}

void write_conjugate_csv(std::ostream& out, const ConjugateCurve& conj) {
  out << "a,rate\n";
  for (std::size_t i = 0; i < conj.a.size(); ++i) out << fmt17(conj.a[i]) << ',' << fmt17(conj.rate[i]) << '\n';
}

void write_subdiff_json(std::ostream& out, const SubdiffInterval& interval) {
  out << "{\"t\": " << fmt17(interval.t) << ", \"lower\": " << fmt17(interval.lower)
      << ", \"upper\": " << fmt17(interval.upper) << ", \"corner\": " << (is_corner(interval) ? "true" : "false")
      << "}";
}

}  // namespace thermo
