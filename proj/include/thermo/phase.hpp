#pragma once

// Reducible systems with coexisting phases: pressure as the max over
// recurrent components, first-order transitions as corners of the envelope,
// and the selection principle for perturbations off a corner.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "thermo/duality.hpp"
#include "thermo/spectral.hpp"
#include "thermo/symbolic.hpp"

namespace thermo {

/// Block-diagonal union on the disjoint alphabet (b's symbols shifted by |a|).
SftSystem disjoint_union(const SftSystem& a, const SftSystem& b);

struct ComponentReport {
  std::size_t component_index = 0;  // index into system.components()
  std::vector<Symbol> symbols;
  double pressure = 0.0;
  double mean_direction = 0.0;  // ∫ψ dμ_i for the supplied direction (0 without one)
  MarkovMeasure measure;        // on the component's own (restricted) alphabet
};

/// Restriction of a system to one recurrent component plus the potential
/// restricted to windows lying inside it.
struct ComponentRestriction {
  std::size_t component_index = 0;
  std::vector<Symbol> symbols;
  SftSystem system;
};

/// Recurrent components only; transient symbols carry no invariant measure.
/// Errors: PeriodicComponent.
std::vector<ComponentRestriction> recurrent_components(const SftSystem& system);
Potential restrict_potential(const Potential& potential, const ComponentRestriction& component);

/// Per-component pressure, equilibrium state and mean of `direction`.
/// Errors: PeriodicComponent, propagated spectral errors.
std::vector<ComponentReport> component_pressures(const Potential& potential,
                                                 const std::optional<Potential>& direction = std::nullopt);

/// The family t ↦ base + t·direction split over recurrent components.
class PhaseFamily {
 public:
  PhaseFamily(const Potential& base, const Potential& direction);

  std::size_t component_count() const noexcept { return components_.size(); }
  const ComponentRestriction& component(std::size_t k) const { return components_[k]; }
  /// Position k in this family ↔ system component index.
  std::size_t component_index(std::size_t k) const { return components_[k].component_index; }

  double component_pressure(std::size_t k, double t) const;
  std::vector<double> component_pressures(double t) const;
  /// ∫ψ dμ for the equilibrium state of component k at parameter t.
  double component_mean(std::size_t k, double t) const;

  struct Value {
    double pressure = 0.0;
    std::size_t winner = 0;  // family position of the (first) maximizing component
  };
  Value evaluate(double t) const;
  double operator()(double t) const { return evaluate(t).pressure; }

 private:
  std::vector<ComponentRestriction> components_;
  std::vector<Potential> base_;
  std::vector<Potential> direction_;
};

/// max over components of the component pressure on a uniform grid; records
/// the winning component (system component index) per point.
PressureCurve envelope_curve(const Potential& base, const Potential& direction, double t_min, double t_max,
                             std::size_t steps, int jobs = 1);

struct CornerReport {
  double t_star = 0.0;
  double jump = 0.0;  // D⁺ − D⁻
  double lower = 0.0;
  double upper = 0.0;
  std::size_t left_phase = 0;   // component winning just left of t_star
  std::size_t right_phase = 0;  // component winning just right of t_star
};

/// Corners of a sampled curve. Flags interior grid points whose
/// subdifferential interval is wider than the corner threshold, merges runs
/// of flags, and places t_star where the one-sided tangent lines meet.
std::vector<CornerReport> corner_scan(const PressureCurve& curve, double threshold = kCornerThreshold);

/// Same, but t_star is found by bisection on the winning-component switch of
/// `family` and the jump is measured on the family itself.
std::vector<CornerReport> corner_scan(const PhaseFamily& family, const PressureCurve& curve,
                                      double threshold = kCornerThreshold);

/// Components winning at base + t_small·direction (several only on exact
/// ties). Requires coexisting equilibria with distinct direction means at
/// t = 0. Errors: NoCoexistence, InvalidInput (t_small ≤ 0).
std::vector<std::size_t> selection_check(const Potential& base, const Potential& direction, double t_small);

/// [{"t_star": f, "jump": f, "left_phase": i, "right_phase": i}] with 0-based component indices.
void write_corners_json(std::ostream& out, const std::vector<CornerReport>& corners);

}  // namespace thermo
