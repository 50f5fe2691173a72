#pragma once

// Pressure straight from its definition: growth rate of partition sums over
// n-cylinders. In the symbolic metric any ε < 1 separates distinct
// n-cylinders, so one representative per admissible n-word realizes the
// separated-set supremum and the ε-limit is exact at finite ε.

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "thermo/symbolic.hpp"

namespace thermo {

struct PartitionSumResult {
  std::size_t n = 0;
  double log_sum = 0.0;   // log Z_n
  double estimate = 0.0;  // log Z_n / n
};

/// Z_n = Σ_{admissible n-words w} exp(sup_{[w]} S_n φ). For depth 2 the last
/// window needs one symbol past w, taken as the best admissible successor.
/// Computed by a log-sum-exp vector recurrence, never by enumeration.
/// Errors: DepthTooLarge (depth > 2), InvalidInput (n = 0).
PartitionSumResult partition_sum(const Potential& potential, std::size_t n);

struct PartitionSequence {
  std::vector<PartitionSumResult> results;  // n = 1 .. n_max
  double spectral_pressure = 0.0;
  /// max_n n·|estimate(n) − spectral_pressure|
  double constant = 0.0;
};

/// Estimates for n = 1 .. n_max from one forward recurrence, compared with
/// the spectral pressure. Errors: InvalidInput (n_max < 2), DepthTooLarge.
PartitionSequence pressure_estimate_sequence(const Potential& potential, std::size_t n_max);

/// "n,log_sum,estimate,abs_err_vs_spectral" with 17 significant digits.
void write_partition_csv(std::ostream& out, const PartitionSequence& sequence);

}  // namespace thermo
