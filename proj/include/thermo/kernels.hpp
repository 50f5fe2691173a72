#pragma once

// Data-parallel inner loops. Each kernel has a serial reference version,
// kept for testing, and an OpenMP version selected when jobs > 1. Results are
// written by index, so the parallel output never depends on scheduling.

#include <cstddef>
#include <exception>
#include <limits>
#include <span>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace thermo::kernels {

/// out[j] = max_i (slopes[j] * x[i] - f[i]). Discrete Legendre-Fenchel
/// transform by exhaustive maximization.
inline void conjugate_serial(std::span<const double> x, std::span<const double> f,
                             std::span<const double> slopes, std::span<double> out) {
  for (std::size_t j = 0; j < slopes.size(); ++j) {
    double best = -std::numeric_limits<double>::infinity();
    const double s = slopes[j];
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double v = s * x[i] - f[i];
      if (v > best) best = v;
    }
    out[j] = best;
  }
}

inline void conjugate_parallel(std::span<const double> x, std::span<const double> f,
                               std::span<const double> slopes, std::span<double> out, int jobs) {
  const auto m = static_cast<long long>(slopes.size());
#pragma omp parallel for num_threads(jobs) schedule(static)
  for (long long j = 0; j < m; ++j) {
    double best = -std::numeric_limits<double>::infinity();
    const double s = slopes[static_cast<std::size_t>(j)];
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double v = s * x[i] - f[i];
      if (v > best) best = v;
    }
    out[static_cast<std::size_t>(j)] = best;
  }
}

inline void conjugate(std::span<const double> x, std::span<const double> f, std::span<const double> slopes,
                      std::span<double> out, int jobs = 1) {
  if (jobs > 1) {
    conjugate_parallel(x, f, slopes, out, jobs);
  } else {
    conjugate_serial(x, f, slopes, out);
  }
}

/// Runs body(i) for i in [0, n). With jobs > 1 iterations are spread over
/// OpenMP threads; the exception from the lowest failing index is rethrown
/// after the loop so error reporting is deterministic too.
template <class Body>
void for_each_index(std::size_t n, int jobs, Body&& body) {
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr first_error;
  std::size_t first_index = n;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for num_threads(jobs) schedule(dynamic)
  for (long long k = 0; k < count; ++k) {
    const auto i = static_cast<std::size_t>(k);
    try {
      body(i);
    } catch (...) {
#pragma omp critical(thermo_for_each_index)
      {
        if (i < first_index) {
          first_index = i;
          first_error = std::current_exception();
        }
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace thermo::kernels
