#pragma once

// Transfer matrices of locally constant potentials, their Perron eigendata,
// pressure, equilibrium Markov measures, entropy, means and covariances.

#include <cstddef>
#include <vector>

#include "thermo/symbolic.hpp"

namespace thermo {

/// M[i][j] = A[i][j] * exp(φ(i or ij) − log_shift), row-major. log_shift is
/// the maximum potential value, so every entry is at most 1.
struct TransferMatrix {
  std::size_t size = 0;
  std::vector<double> entries;
  double log_shift = 0.0;

  double operator()(std::size_t i, std::size_t j) const { return entries[i * size + j]; }
};

struct SpectralTriple {
  double lambda = 0.0;         // leading eigenvalue of the unshifted matrix
  double pressure = 0.0;       // log lambda, assembled in log space
  double scaled_lambda = 0.0;  // leading eigenvalue of the stored (shifted) matrix
  std::vector<double> h;       // right eigenvector, max h = 1
  std::vector<double> nu;      // left eigenvector, nu · h = 1
  double gap_estimate = 0.0;   // |second eigenvalue| / lambda, in [0, 1)
};

/// Row-stochastic p with stationary vector pi.
struct MarkovMeasure {
  std::size_t size = 0;
  std::vector<double> p;
  std::vector<double> pi;

  double operator()(std::size_t i, std::size_t j) const { return p[i * size + j]; }
};

struct PowerIterationOptions {
  double tol = 1e-14;
  std::size_t max_iter = 1'000'000;
};

/// Errors: DepthTooLarge (depth > 2; recode first).
TransferMatrix transfer_matrix(const Potential& potential);

/// Perron eigendata by power iteration from the all-ones vector, for M and
/// its transpose. Iterates with the shifted matrix M + ρ_k I (ρ_k the current
/// eigenvalue estimate), which has the same eigenvectors and damps eigenvalues
/// near −λ that make plain iteration crawl (the golden mean at t ≪ 0).
/// Stops once the relative Rayleigh-quotient change is below tol and the
/// relative residual is below 10·tol.
/// Errors: NotPrimitive, NoConvergence.
SpectralTriple leading_triple(const TransferMatrix& matrix, const PowerIterationOptions& options = {});

/// log of the leading eigenvalue. Potentials deeper than 2 are recoded first.
/// Errors: NotPrimitive, NoConvergence.
double pressure(const Potential& potential, const PowerIterationOptions& options = {});

/// p_ij = M_ij h_j / (λ h_i), π_i = ν_i h_i.
/// Errors: DegenerateEigenvector.
MarkovMeasure equilibrium_measure(const SpectralTriple& triple, const TransferMatrix& matrix);

/// Markov measure from a row-stochastic matrix; the stationary vector comes
/// from a dense linear solve. The chain must be irreducible.
/// Errors: InvalidInput.
MarkovMeasure make_markov_measure(std::size_t size, std::vector<double> p);

/// Entropy rate −Σ π_i p_ij log p_ij in nats.
double markov_entropy(const MarkovMeasure& measure);

/// ∫ g dμ for depth ≤ 2. Errors: DepthMismatch, InvalidInput.
double measure_mean(const MarkovMeasure& measure, const Potential& observable);

/// P(φ) − (h_μ + ∫φ dμ); nonnegative by the variational principle.
/// Errors: UnsupportedTransition, DepthMismatch.
double variational_gap(const Potential& potential, const MarkovMeasure& measure);

/// Cov_μ(g, g∘σ^lag) for a depth-1 observable. Errors: DepthMismatch.
double autocovariance(const MarkovMeasure& measure, const Potential& observable, std::size_t lag);

/// Covariances for lags 0..max_lag, one vector sweep.
std::vector<double> autocovariances(const MarkovMeasure& measure, const Potential& observable,
                                    std::size_t max_lag);

struct VarianceOptions {
  double tol = 1e-13;
  std::size_t max_lags = 100'000;
};

struct AsymptoticVariance {
  double value = 0.0;
  std::size_t lags_used = 0;
};

/// Green-Kubo sum Var(g) + 2 Σ_{n≥1} Cov(g, g∘σ^n), truncated once the
/// geometric tail bound |Cov(n)|·max(1, gap/(1−gap)) drops below tol.
/// Errors: DepthMismatch, NoDecay, InvalidInput (gap outside [0, 1)).
AsymptoticVariance asymptotic_variance(const MarkovMeasure& measure, const Potential& observable,
                                       double gap_estimate, const VarianceOptions& options = {});

/// Everything the spectral route produces for one potential of depth ≤ 2.
struct Equilibrium {
  TransferMatrix matrix;
  SpectralTriple triple;
  MarkovMeasure measure;
};

Equilibrium equilibrium(const Potential& potential, const PowerIterationOptions& options = {});

/// Asymptotic variance of `observable` under the equilibrium state of
/// `potential`, for any depths: both are moved onto the block system of the
/// larger depth where they become depth-1.
AsymptoticVariance green_kubo_variance(const Potential& potential, const Potential& observable,
                                       const VarianceOptions& options = {});

/// Max-norm residuals ‖Mh − λh‖ and ‖νᵀM − λνᵀ‖ relative to λ (stored matrix).
struct SpectralResiduals {
  double right = 0.0;
  double left = 0.0;
};
SpectralResiduals spectral_residuals(const SpectralTriple& triple, const TransferMatrix& matrix);

}  // namespace thermo
