#include "thermo/phase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "thermo/error.hpp"
#include "thermo/format.hpp"
#include "thermo/kernels.hpp"

namespace thermo {

namespace {

struct PressureAndMean {
  double pressure = 0.0;
  double mean = 0.0;
  MarkovMeasure measure;
};

// Equilibrium of `potential` and the mean of `observable` under it, for any
// depths (recoding onto a block system when either is deeper than 2).
PressureAndMean equilibrium_with_mean(const Potential& potential, const Potential& observable) {
  const std::size_t depth = std::max(potential.depth(), observable.depth());
  if (depth <= 2) {
    Equilibrium eq = equilibrium(potential);
    const double mean = measure_mean(eq.measure, observable);
    return {eq.triple.pressure, mean, std::move(eq.measure)};
  }
  const BlockPresentation blocks = block_presentation(potential.system(), depth - 1);
  Equilibrium eq = equilibrium(lift_to_blocks(potential, blocks));
  const double mean = measure_mean(eq.measure, lift_to_blocks(observable, blocks));
  return {eq.triple.pressure, mean, std::move(eq.measure)};
}

}  // namespace

SftSystem disjoint_union(const SftSystem& a, const SftSystem& b) {
  const std::size_t na = a.alphabet_size();
  const std::size_t n = na + b.alphabet_size();
  std::vector<std::vector<int>> adj(n, std::vector<int>(n, 0));
  for (Symbol i = 0; i < na; ++i) {
    for (Symbol j = 0; j < na; ++j) adj[i][j] = a.allowed(i, j) ? 1 : 0;
  }
  for (Symbol i = 0; i < b.alphabet_size(); ++i) {
    for (Symbol j = 0; j < b.alphabet_size(); ++j) adj[na + i][na + j] = b.allowed(i, j) ? 1 : 0;
  }
  return make_sft(n, adj);
}

std::vector<ComponentRestriction> recurrent_components(const SftSystem& system) {
  std::vector<ComponentRestriction> out;
  for (std::size_t c = 0; c < system.scc_count(); ++c) {
    if (!system.is_recurrent(c)) continue;
    if (system.period(c) != 1) {
      throw Error(ErrorCode::PeriodicComponent, "component " + std::to_string(c) + " has period " +
                                                    std::to_string(system.period(c)));
    }
    const auto& symbols = system.components()[c];
    const std::size_t m = symbols.size();
    std::vector<std::vector<int>> adj(m, std::vector<int>(m, 0));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) adj[i][j] = system.allowed(symbols[i], symbols[j]) ? 1 : 0;
    }
    out.push_back({c, symbols, make_sft(m, adj)});
  }
  return out;
}

Potential restrict_potential(const Potential& potential, const ComponentRestriction& component) {
  return tabulate_potential(component.system, potential.depth(), [&](const Word& w) {
    std::vector<Symbol> original(w.length());
    for (std::size_t i = 0; i < w.length(); ++i) original[i] = component.symbols[w[i]];
    return potential(original);
  });
}

std::vector<ComponentReport> component_pressures(const Potential& potential,
                                                 const std::optional<Potential>& direction) {
  std::vector<ComponentReport> out;
  for (const ComponentRestriction& comp : recurrent_components(potential.system())) {
    const Potential restricted = restrict_potential(potential, comp);
    const Potential observable = direction ? restrict_potential(*direction, comp) : zero_potential(comp.system);
    PressureAndMean pm = equilibrium_with_mean(restricted, observable);
    out.push_back({comp.component_index, comp.symbols, pm.pressure, pm.mean, std::move(pm.measure)});
  }
  return out;
}

PhaseFamily::PhaseFamily(const Potential& base, const Potential& direction) {
  if (!base.system().same_as(direction.system())) {
    throw Error(ErrorCode::InvalidInput, "base and direction live on different systems");
  }
  components_ = recurrent_components(base.system());
  for (const auto& comp : components_) {
    base_.push_back(restrict_potential(base, comp));
    direction_.push_back(restrict_potential(direction, comp));
  }
}

double PhaseFamily::component_pressure(std::size_t k, double t) const {
  return pressure(combine(1.0, base_[k], t, direction_[k]));
}

std::vector<double> PhaseFamily::component_pressures(double t) const {
  std::vector<double> out(components_.size());
  for (std::size_t k = 0; k < components_.size(); ++k) out[k] = component_pressure(k, t);
  return out;
}

double PhaseFamily::component_mean(std::size_t k, double t) const {
  return equilibrium_with_mean(combine(1.0, base_[k], t, direction_[k]), direction_[k]).mean;
}

PhaseFamily::Value PhaseFamily::evaluate(double t) const {
  Value v{component_pressure(0, t), 0};
  for (std::size_t k = 1; k < components_.size(); ++k) {
    const double p = component_pressure(k, t);
    if (p > v.pressure) v = {p, k};
  }
  return v;
}

PressureCurve envelope_curve(const Potential& base, const Potential& direction, double t_min, double t_max,
                             std::size_t steps, int jobs) {
  if (steps < 3) throw Error(ErrorCode::InvalidInput, "envelope_curve needs at least 3 steps");
  const PhaseFamily family(base, direction);
  PressureCurve curve;
  curve.base = base;
  curve.direction = direction;
  curve.t = uniform_grid(t_min, t_max, steps);
  curve.values.assign(steps, 0.0);
  curve.winner.assign(steps, 0);
  kernels::for_each_index(steps, jobs, [&](std::size_t i) {
    try {
      const auto v = family.evaluate(curve.t[i]);
      curve.values[i] = v.pressure;
      curve.winner[i] = family.component_index(v.winner);
    } catch (const Error& e) {
      throw Error(e.code(), "at t = " + fmt17(curve.t[i]) + ": " + e.what());
    }
  });
  return curve;
}

namespace {

struct Cluster {
  std::size_t left;   // last unflagged index before the run
  std::size_t right;  // first unflagged index after the run
};

std::vector<Cluster> flagged_clusters(const PressureCurve& curve, double threshold) {
  const std::size_t n = curve.size();
  std::vector<Cluster> out;
  if (n < 5) return out;
  std::size_t run_start = 0;
  bool in_run = false;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const bool flag = is_corner(subdifferential_interval(curve, curve.t[i]), threshold);
    if (flag && !in_run) {
      run_start = i;
      in_run = true;
    } else if (!flag && in_run) {
      out.push_back({run_start - 1, i});
      in_run = false;
    }
  }
  if (in_run) out.push_back({run_start - 1, n - 2});
  return out;
}

double chord(const PressureCurve& c, std::size_t i) { return (c.values[i + 1] - c.values[i]) / (c.t[i + 1] - c.t[i]); }

CornerReport tangent_corner(const PressureCurve& curve, const Cluster& cl) {
  const std::size_t l = cl.left;
  const std::size_t r = cl.right;
  const double s_left = chord(curve, l - 1);
  const double s_right = chord(curve, r);
  CornerReport rep;
  if (s_right - s_left > 0.0) {
    rep.t_star = (curve.values[r] - curve.values[l] + s_left * curve.t[l] - s_right * curve.t[r]) /
                 (s_left - s_right);
    rep.t_star = std::clamp(rep.t_star, curve.t[l], curve.t[r]);
  } else {
    rep.t_star = 0.5 * (curve.t[l] + curve.t[r]);
  }
  rep.lower = s_left;
  rep.upper = s_right;
  rep.jump = s_right - s_left;
  if (!curve.winner.empty()) {
    rep.left_phase = curve.winner[l];
    rep.right_phase = curve.winner[r];
  }
  return rep;
}

}  // namespace

std::vector<CornerReport> corner_scan(const PressureCurve& curve, double threshold) {
  std::vector<CornerReport> out;
  for (const Cluster& cl : flagged_clusters(curve, threshold)) out.push_back(tangent_corner(curve, cl));
  return out;
}

std::vector<CornerReport> corner_scan(const PhaseFamily& family, const PressureCurve& curve, double threshold) {
  std::vector<CornerReport> out;
  for (const Cluster& cl : flagged_clusters(curve, threshold)) {
    double a = curve.t[cl.left];
    double b = curve.t[cl.right];
    const std::size_t wa = family.evaluate(a).winner;
    const std::size_t wb = family.evaluate(b).winner;
    if (wa == wb) {
      out.push_back(tangent_corner(curve, cl));
      continue;
    }
    // Bisection on the sign of P_wb − P_wa: negative left of the crossing.
    for (int it = 0; it < 200 && b - a > 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(a));
         ++it) {
      const double mid = 0.5 * (a + b);
      if (family.component_pressure(wb, mid) - family.component_pressure(wa, mid) < 0.0) {
        a = mid;
      } else {
        b = mid;
      }
    }
    CornerReport rep;
    rep.t_star = 0.5 * (a + b);
    const double spacing = curve.t[cl.left + 1] - curve.t[cl.left];
    const SubdiffInterval sd = subdifferential_interval([&family](double t) { return family(t); }, rep.t_star, std::min(spacing, 1e-3));
    rep.lower = sd.lower;
    rep.upper = sd.upper;
    rep.jump = sd.upper - sd.lower;
    rep.left_phase = family.component_index(wa);
    rep.right_phase = family.component_index(wb);
    out.push_back(rep);
  }
  return out;
}

std::vector<std::size_t> selection_check(const Potential& base, const Potential& direction, double t_small) {
  if (!(t_small > 0.0)) throw Error(ErrorCode::InvalidInput, "t_small must be positive");
  const PhaseFamily family(base, direction);
  const std::vector<double> at_zero = family.component_pressures(0.0);
  const double top = *std::max_element(at_zero.begin(), at_zero.end());
  std::vector<std::size_t> coexisting;
  for (std::size_t k = 0; k < at_zero.size(); ++k) {
    if (at_zero[k] >= top - 1e-9 * (1.0 + std::abs(top))) coexisting.push_back(k);
  }
  if (coexisting.size() < 2) {
    throw Error(ErrorCode::NoCoexistence, "a single component attains the pressure at t = 0");
  }
  double mean_lo = std::numeric_limits<double>::infinity();
  double mean_hi = -mean_lo;
  for (std::size_t k : coexisting) {
    const double m = family.component_mean(k, 0.0);
    mean_lo = std::min(mean_lo, m);
    mean_hi = std::max(mean_hi, m);
  }
  if (mean_hi - mean_lo <= 1e-9) {
    throw Error(ErrorCode::NoCoexistence, "coexisting equilibria give the direction equal means; no corner");
  }

  const std::vector<double> perturbed = family.component_pressures(t_small);
  const double best = *std::max_element(perturbed.begin(), perturbed.end());
  std::vector<std::size_t> winners;
  for (std::size_t k = 0; k < perturbed.size(); ++k) {
    if (perturbed[k] >= best - 1e-12 * (1.0 + std::abs(best))) winners.push_back(family.component_index(k));
  }
  return winners;
}

void write_corners_json(std::ostream& out, const std::vector<CornerReport>& corners) {
  out << '[';
  for (std::size_t i = 0; i < corners.size(); ++i) {
    const auto& c = corners[i];
    out << (i ? ", " : "") << "{\"t_star\": " << fmt17(c.t_star) << ", \"jump\": " << fmt17(c.jump)
        << ", \"left_phase\": " << c.left_phase << ", \"right_phase\": " << c.right_phase << '}';
  }
  out << "]\n";
}

}  // namespace thermo
