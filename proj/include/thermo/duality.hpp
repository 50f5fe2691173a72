#pragma once

// Legendre-Fenchel duality along one-parameter families t ↦ P(φ₀ + tψ):
// sampled pressure curves, their discrete conjugates (rate functions),
// biconjugates, Fenchel-Young gaps and one-sided derivatives.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "thermo/symbolic.hpp"

namespace thermo {

struct PressureCurve {
  std::optional<Potential> base;
  std::optional<Potential> direction;
  std::vector<double> t;
  std::vector<double> values;
  /// Winning component per grid point for envelope curves; empty otherwise.
  std::vector<std::size_t> winner;

  std::size_t size() const noexcept { return t.size(); }
  /// Linear interpolation. Errors: OutOfRange.
  double interpolate(double x) const;
};

/// Curve from raw data. Errors: InvalidInput (lengths, ordering, non-finite).
PressureCurve make_curve(std::vector<double> t, std::vector<double> values);

struct ConjugateCurve {
  std::vector<double> a;
  std::vector<double> rate;

  double interpolate(double x) const;
};

struct SubdiffInterval {
  double t = 0.0;
  double lower = 0.0;  // left derivative D⁻
  double upper = 0.0;  // right derivative D⁺

  double width() const noexcept { return upper - lower; }
};

/// Flags a corner when D⁺ − D⁻ > threshold·(1 + |D⁺| + |D⁻|).
inline constexpr double kCornerThreshold = 1e-3;
bool is_corner(const SubdiffInterval& interval, double threshold = kCornerThreshold);

std::vector<double> uniform_grid(double lo, double hi, std::size_t steps);

/// P(base + t·direction) on a uniform grid of `steps` points. Grid points are
/// independent and run on `jobs` threads. The system must be primitive.
/// Errors: InvalidInput, NotPrimitive / NoConvergence annotated with t.
PressureCurve sample_curve(const Potential& base, const Potential& direction, double t_min, double t_max,
                           std::size_t steps, int jobs = 1);

/// I(a) = max_i (a·t_i − P(t_i)) on `a_steps` slopes spanning the chord-slope
/// range inflated by 1% on each side. Errors: InvalidInput, DegenerateRange.
ConjugateCurve legendre(const PressureCurve& curve, std::size_t a_steps, int jobs = 1);

/// P**(t) = max_j (t·a_j − I(a_j)).
std::vector<double> biconjugate(const ConjugateCurve& conj, const std::vector<double>& t_grid, int jobs = 1);

/// P(t) + I(a) − t·a with both curves linearly interpolated; never negative
/// beyond rounding. Errors: OutOfRange.
double fenchel_young_gap(const PressureCurve& curve, const ConjugateCurve& conj, double t, double a);

/// One-sided derivatives at t from difference quotients at steps Δ and Δ/2
/// (Δ = two grid spacings) combined by Richardson extrapolation.
/// Errors: TooCloseToBoundary, OutOfRange.
SubdiffInterval subdifferential_interval(const PressureCurve& curve, double t);

/// Same for a function evaluated directly, with step Δ.
SubdiffInterval subdifferential_interval(const std::function<double(double)>& f, double t, double delta);

/// Central first / second differences at step h refined with one Richardson
/// step (h and h/2).
double richardson_first_derivative(const std::function<double(double)>& f, double t, double h);
double richardson_second_derivative(const std::function<double(double)>& f, double t, double h);

void write_curve_csv(std::ostream& out, const PressureCurve& curve);
void write_conjugate_csv(std::ostream& out, const ConjugateCurve& conj);
/// {"t": f, "lower": f, "upper": f, "corner": bool}
void write_subdiff_json(std::ostream& out, const SubdiffInterval& interval);

}  // namespace thermo
