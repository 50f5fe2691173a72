#pragma once

// Seeded generators for property suites: random primitive systems, random
// locally constant potentials and random Markov measures on a given system.

#include <cstddef>
#include <random>

#include "thermo/spectral.hpp"
#include "thermo/symbolic.hpp"

namespace thermo {

using Rng = std::mt19937_64;

/// Uniform 0/1 matrix of density `density`, redrawn until primitive.
SftSystem random_primitive_system(Rng& rng, std::size_t alphabet_size, double density = 0.6);

/// Values uniform in [lo, hi] on every admissible window.
Potential random_potential(Rng& rng, const SftSystem& system, std::size_t depth, double lo = -2.0,
                           double hi = 2.0);

/// Random row-stochastic matrix supported on the adjacency (every allowed
/// transition gets positive mass), with its stationary vector.
MarkovMeasure random_markov_measure(Rng& rng, const SftSystem& system);

}  // namespace thermo
