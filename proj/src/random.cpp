#include "thermo/random.hpp"

#include <vector>

#include "thermo/error.hpp"

namespace thermo {

SftSystem random_primitive_system(Rng& rng, std::size_t alphabet_size, double density) {
  std::bernoulli_distribution coin(density);
  for (int attempt = 0; attempt < 10'000; ++attempt) {
    std::vector<std::vector<int>> adj(alphabet_size, std::vector<int>(alphabet_size, 0));
    for (auto& row : adj) {
      for (auto& e : row) e = coin(rng) ? 1 : 0;
    }
    try {
      SftSystem system = make_sft(alphabet_size, adj);
      if (system.is_primitive()) return system;
    } catch (const Error&) {
      // stranded symbol; redraw
    }
  }
  throw Error(ErrorCode::InvalidInput, "could not draw a primitive system; raise the density");
}

Potential random_potential(Rng& rng, const SftSystem& system, std::size_t depth, double lo, double hi) {
  std::uniform_real_distribution<double> value(lo, hi);
  return tabulate_potential(system, depth, [&](const Word&) { return value(rng); });
}

MarkovMeasure random_markov_measure(Rng& rng, const SftSystem& system) {
  const std::size_t n = system.alphabet_size();
  std::uniform_real_distribution<double> weight(0.05, 1.0);
  std::vector<double> p(n * n, 0.0);
  for (Symbol i = 0; i < n; ++i) {
    double row = 0.0;
    for (Symbol j = 0; j < n; ++j) {
      if (!system.allowed(i, j)) continue;
      p[i * n + j] = weight(rng);
      row += p[i * n + j];
    }
    for (Symbol j = 0; j < n; ++j) p[i * n + j] /= row;
  }
  return make_markov_measure(n, std::move(p));
}

}  // namespace thermo
