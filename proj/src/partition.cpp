#include "thermo/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "thermo/error.hpp"
#include "thermo/format.hpp"
#include "thermo/spectral.hpp"

namespace thermo {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

double log_sum_exp(const std::vector<double>& terms) {
  double hi = neg_inf;
  for (double v : terms) hi = std::max(hi, v);
  if (hi == neg_inf) return neg_inf;
  double acc = 0.0;
  for (double v : terms) acc += std::exp(v - hi);
  return hi + std::log(acc);
}

// Log-space recurrence over "suffix weights": v_m(i) is the log of the summed
// weights of admissible words of length m + 1 starting with symbol i.
class SuffixRecurrence {
 public:
  explicit SuffixRecurrence(const Potential& potential) : potential_(potential), n_(potential.system().alphabet_size()) {
    if (potential.depth() > 2) {
      throw Error(ErrorCode::DepthTooLarge, "partition sums need depth <= 2; recode first");
    }
    const SftSystem& system = potential.system();
    v_.assign(n_, neg_inf);
    for (Symbol i = 0; i < n_; ++i) {
      if (potential.depth() == 1) {
        v_[i] = potential.at(i);
      } else {
        for (Symbol j = 0; j < n_; ++j) {
          if (system.allowed(i, j)) v_[i] = std::max(v_[i], potential.at(i, j));
        }
      }
    }
  }

  double log_total() const { return log_sum_exp(v_); }

  void step() {
    const SftSystem& system = potential_.system();
    std::vector<double> next(n_), terms;
    terms.reserve(n_);
    for (Symbol i = 0; i < n_; ++i) {
      terms.clear();
      for (Symbol j = 0; j < n_; ++j) {
        if (!system.allowed(i, j)) continue;
        const double w = potential_.depth() == 1 ? potential_.at(i) : potential_.at(i, j);
        terms.push_back(w + v_[j]);
      }
      next[i] = log_sum_exp(terms);
    }
    v_.swap(next);
  }

 private:
  const Potential& potential_;
  std::size_t n_;
  std::vector<double> v_;
};

}  // namespace

PartitionSumResult partition_sum(const Potential& potential, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidInput, "partition sums need n >= 1");
  SuffixRecurrence rec(potential);
  for (std::size_t m = 1; m < n; ++m) rec.step();
  const double log_sum = rec.log_total();
  return {n, log_sum, log_sum / static_cast<double>(n)};
}

PartitionSequence pressure_estimate_sequence(const Potential& potential, std::size_t n_max) {
  if (n_max < 2) throw Error(ErrorCode::InvalidInput, "n_max must be at least 2");
  PartitionSequence out;
  out.spectral_pressure = pressure(potential);
  out.results.reserve(n_max);
  SuffixRecurrence rec(potential);
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (n > 1) rec.step();
    const double log_sum = rec.log_total();
    const double estimate = log_sum / static_cast<double>(n);
    out.results.push_back({n, log_sum, estimate});
    out.constant = std::max(out.constant, static_cast<double>(n) * std::abs(estimate - out.spectral_pressure));
  }
  return out;
}

void write_partition_csv(std::ostream& out, const PartitionSequence& sequence) {
  out << "n,log_sum,estimate,abs_err_vs_spectral\n";
  for (const auto& r : sequence.results) {
    out << r.n << ',' << fmt17(r.log_sum) << ',' << fmt17(r.estimate) << ','
        << fmt17(std::abs(r.estimate - sequence.spectral_pressure)) << '\n';
  }
}

}  // namespace thermo
