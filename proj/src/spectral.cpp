#include "thermo/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "thermo/error.hpp"

namespace thermo {

namespace {

bool pattern_is_primitive(const TransferMatrix& matrix) {
  const std::size_t n = matrix.size;
  std::vector<std::vector<int>> pattern(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) pattern[i][j] = matrix(i, j) > 0.0 ? 1 : 0;
  }
  try {
    return make_sft(n, pattern).is_primitive();
  } catch (const Error&) {
    return false;
  }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double max_entry(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

// y = M x (transpose = false) or y = Mᵀ x (transpose = true).
void apply(const TransferMatrix& m, bool transpose, const std::vector<double>& x, std::vector<double>& y) {
  const std::size_t n = m.size;
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += (transpose ? m(j, i) : m(i, j)) * x[j];
    y[i] = acc;
  }
}

struct PerronVector {
  double eigenvalue = 0.0;
  std::vector<double> vector;  // max entry 1
};

PerronVector shifted_power_iteration(const TransferMatrix& m, bool transpose, const PowerIterationOptions& opt) {
  const std::size_t n = m.size;
  std::vector<double> x(n, 1.0), y(n);
  double previous = 0.0;
  const double residual_tol = 10.0 * opt.tol;
  for (std::size_t it = 0; it < opt.max_iter; ++it) {
    apply(m, transpose, x, y);
    const double rq = dot(x, y) / dot(x, x);
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual = std::max(residual, std::abs(y[i] - rq * x[i]));
    residual /= rq * max_entry(x);
    if (it > 0 && std::abs(rq - previous) <= opt.tol * rq && residual <= residual_tol) {
      return {rq, x};
    }
    previous = rq;
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] + rq * x[i];
    const double norm = max_entry(x);
    for (auto& v : x) v /= norm;
  }
  throw Error(ErrorCode::NoConvergence,
              "power iteration did not converge within " + std::to_string(opt.max_iter) + " iterations");
}

// |λ₂| / λ from one deflated power iteration (Perron direction projected out).
double deflated_gap(const TransferMatrix& m, double eigenvalue, const std::vector<double>& h,
                    const std::vector<double>& nu) {
  const std::size_t n = m.size;
  if (n == 1) return 0.0;
  constexpr std::size_t warmup = 100;
  constexpr std::size_t window = 200;
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + 0.5 * std::sin(1.7 * static_cast<double>(i) + 0.3);
  auto project = [&](std::vector<double>& v) {
    const double c = dot(nu, v);
    for (std::size_t i = 0; i < n; ++i) v[i] -= c * h[i];
  };
  project(x);
  double log_growth = 0.0;
  for (std::size_t it = 0; it < warmup + window; ++it) {
    double norm = 0.0;
    for (double v : x) norm = std::max(norm, std::abs(v));
    if (norm == 0.0 || norm < 1e-300) return 0.0;
    for (auto& v : x) v /= norm;
    apply(m, false, x, y);
    project(y);
    double grown = 0.0;
    for (double v : y) grown = std::max(grown, std::abs(v));
    if (grown == 0.0) return 0.0;
    if (it >= warmup) log_growth += std::log(grown);
    x.swap(y);
  }
  const double ratio = std::exp(log_growth / static_cast<double>(window)) / eigenvalue;
  return std::clamp(ratio, 0.0, 1.0 - 1e-12);
}

void require_same_size(const MarkovMeasure& measure, const Potential& observable) {
  if (observable.system().alphabet_size() != measure.size) {
    throw Error(ErrorCode::InvalidInput, "observable alphabet (" +
                                             std::to_string(observable.system().alphabet_size()) +
                                             ") differs from measure size (" + std::to_string(measure.size) + ")");
  }
}

}  // namespace

TransferMatrix transfer_matrix(const Potential& potential) {
  if (potential.depth() > 2) {
    throw Error(ErrorCode::DepthTooLarge, "transfer matrix needs depth <= 2, got " +
                                              std::to_string(potential.depth()) + "; recode first");
  }
  const SftSystem& system = potential.system();
  const std::size_t n = system.alphabet_size();
  TransferMatrix m;
  m.size = n;
  m.log_shift = potential.max_value();
  m.entries.assign(n * n, 0.0);
  for (Symbol i = 0; i < n; ++i) {
    for (Symbol j = 0; j < n; ++j) {
      if (!system.allowed(i, j)) continue;
      const double value = potential.depth() == 1 ? potential.at(i) : potential.at(i, j);
      m.entries[i * n + j] = std::exp(value - m.log_shift);
    }
  }
  return m;
}

SpectralTriple leading_triple(const TransferMatrix& matrix, const PowerIterationOptions& options) {
  if (!pattern_is_primitive(matrix)) {
    throw Error(ErrorCode::NotPrimitive, "transfer matrix is reducible or periodic; decompose it first");
  }
  const PerronVector right = shifted_power_iteration(matrix, false, options);
  const PerronVector left = shifted_power_iteration(matrix, true, options);

  SpectralTriple out;
  out.scaled_lambda = right.eigenvalue;
  out.pressure = std::log(right.eigenvalue) + matrix.log_shift;
  out.lambda = std::exp(out.pressure);
  out.h = right.vector;
  out.nu = left.vector;
  const double scale = dot(out.nu, out.h);
  for (auto& v : out.nu) v /= scale;
  out.gap_estimate = deflated_gap(matrix, out.scaled_lambda, out.h, out.nu);
  return out;
}

double pressure(const Potential& potential, const PowerIterationOptions& options) {
  if (potential.depth() > 2) {
    const Recoded recoded = higher_block_recode(potential);
    return leading_triple(transfer_matrix(recoded.potential), options).pressure;
  }
  return leading_triple(transfer_matrix(potential), options).pressure;
}

MarkovMeasure equilibrium_measure(const SpectralTriple& triple, const TransferMatrix& matrix) {
  const std::size_t n = matrix.size;
  if (triple.h.size() != n || triple.nu.size() != n) {
    throw Error(ErrorCode::DegenerateEigenvector, "eigenvector size does not match the matrix");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(triple.h[i] > 0.0) || !(triple.nu[i] > 0.0) || !std::isfinite(triple.h[i]) ||
        !std::isfinite(triple.nu[i])) {
      throw Error(ErrorCode::DegenerateEigenvector, "eigenvector component " + std::to_string(i + 1) +
                                                        " is not strictly positive");
    }
  }
  MarkovMeasure out;
  out.size = n;
  out.p.assign(n * n, 0.0);
  out.pi.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double v = matrix(i, j) * triple.h[j] / (triple.scaled_lambda * triple.h[i]);
      out.p[i * n + j] = v;
      row += v;
    }
    for (std::size_t j = 0; j < n; ++j) out.p[i * n + j] /= row;
    out.pi[i] = triple.nu[i] * triple.h[i];
  }
  const double total = std::accumulate(out.pi.begin(), out.pi.end(), 0.0);
  for (auto& v : out.pi) v /= total;
  return out;
}

MarkovMeasure make_markov_measure(std::size_t size, std::vector<double> p) {
  if (size == 0 || p.size() != size * size) {
    throw Error(ErrorCode::InvalidInput, "transition matrix must be size x size");
  }
  for (std::size_t i = 0; i < size; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < size; ++j) {
      const double v = p[i * size + j];
      if (!std::isfinite(v) || v < 0.0) throw Error(ErrorCode::InvalidInput, "transition entry is negative");
      row += v;
    }
    if (std::abs(row - 1.0) > 1e-9) {
      throw Error(ErrorCode::InvalidInput, "row " + std::to_string(i + 1) + " does not sum to 1");
    }
    for (std::size_t j = 0; j < size; ++j) p[i * size + j] /= row;
  }

  const auto n = static_cast<Eigen::Index>(size);
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      a(i, j) = p[static_cast<std::size_t>(j) * size + static_cast<std::size_t>(i)] - (i == j ? 1.0 : 0.0);
    }
  }
  a.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(n - 1) = 1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (lu.rank() < n) {
    throw Error(ErrorCode::InvalidInput, "chain has no unique stationary distribution");
  }
  const Eigen::VectorXd pi = lu.solve(rhs);

  MarkovMeasure out;
  out.size = size;
  out.p = std::move(p);
  out.pi.resize(size);
  for (std::size_t i = 0; i < size; ++i) {
    const double v = pi(static_cast<Eigen::Index>(i));
    if (v < -1e-10) throw Error(ErrorCode::InvalidInput, "stationary vector has a negative component");
    out.pi[i] = std::max(v, 0.0);
  }
  const double total = std::accumulate(out.pi.begin(), out.pi.end(), 0.0);
  for (auto& v : out.pi) v /= total;
  return out;
}

double markov_entropy(const MarkovMeasure& measure) {
  double h = 0.0;
  for (std::size_t i = 0; i < measure.size; ++i) {
    for (std::size_t j = 0; j < measure.size; ++j) {
      const double pij = measure(i, j);
      if (pij > 0.0) h -= measure.pi[i] * pij * std::log(pij);
    }
  }
  return h;
}

double measure_mean(const MarkovMeasure& measure, const Potential& observable) {
  require_same_size(measure, observable);
  const SftSystem& system = observable.system();
  const std::size_t n = measure.size;
  if (observable.depth() == 1) {
    double mean = 0.0;
    for (Symbol i = 0; i < n; ++i) mean += measure.pi[i] * observable.at(i);
    return mean;
  }
  if (observable.depth() == 2) {
    double mean = 0.0;
    for (Symbol i = 0; i < n; ++i) {
      for (Symbol j = 0; j < n; ++j) {
        const double w = measure.pi[i] * measure(i, j);
        if (w == 0.0) continue;
        if (!system.allowed(i, j)) {
          throw Error(ErrorCode::UnsupportedTransition, "measure charges a forbidden transition");
        }
        mean += w * observable.at(i, j);
      }
    }
    return mean;
  }
  throw Error(ErrorCode::DepthMismatch, "measure_mean needs depth <= 2, got " +
                                            std::to_string(observable.depth()));
}

double variational_gap(const Potential& potential, const MarkovMeasure& measure) {
  require_same_size(measure, potential);
  if (potential.depth() > 2) {
    throw Error(ErrorCode::DepthMismatch, "variational_gap needs depth <= 2");
  }
  const SftSystem& system = potential.system();
  for (Symbol i = 0; i < measure.size; ++i) {
    for (Symbol j = 0; j < measure.size; ++j) {
      if (measure(i, j) > 0.0 && !system.allowed(i, j)) {
        throw Error(ErrorCode::UnsupportedTransition, "p(" + std::to_string(i + 1) + "," +
                                                          std::to_string(j + 1) + ") > 0 on a forbidden transition");
      }
    }
  }
  return pressure(potential) - (markov_entropy(measure) + measure_mean(measure, potential));
}

std::vector<double> autocovariances(const MarkovMeasure& measure, const Potential& observable,
                                    std::size_t max_lag) {
  require_same_size(measure, observable);
  if (observable.depth() != 1) {
    throw Error(ErrorCode::DepthMismatch, "autocovariance needs a depth-1 observable; recode first");
  }
  const std::size_t n = measure.size;
  const double mean = measure_mean(measure, observable);
  std::vector<double> centred(n), v(n), next(n);
  for (Symbol i = 0; i < n; ++i) centred[i] = observable.at(i) - mean;
  v = centred;
  std::vector<double> out;
  out.reserve(max_lag + 1);
  for (std::size_t lag = 0;; ++lag) {
    double cov = 0.0;
    for (std::size_t i = 0; i < n; ++i) cov += measure.pi[i] * centred[i] * v[i];
    out.push_back(cov);
    if (lag == max_lag) break;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += measure(i, j) * v[j];
      next[i] = acc;
    }
    v.swap(next);
  }
  return out;
}

double autocovariance(const MarkovMeasure& measure, const Potential& observable, std::size_t lag) {
  return autocovariances(measure, observable, lag).back();
}

AsymptoticVariance asymptotic_variance(const MarkovMeasure& measure, const Potential& observable,
                                       double gap_estimate, const VarianceOptions& options) {
  require_same_size(measure, observable);
  if (observable.depth() != 1) {
    throw Error(ErrorCode::DepthMismatch, "asymptotic_variance needs a depth-1 observable; recode first");
  }
  if (!(gap_estimate >= 0.0 && gap_estimate < 1.0)) {
    throw Error(ErrorCode::InvalidInput, "gap estimate must lie in [0, 1)");
  }
  const std::size_t n = measure.size;
  const double tail_factor = std::max(1.0, gap_estimate / (1.0 - gap_estimate));
  const double mean = measure_mean(measure, observable);
  std::vector<double> centred(n), v(n), next(n);
  for (Symbol i = 0; i < n; ++i) centred[i] = observable.at(i) - mean;
  v = centred;

  auto covariance = [&] {
    double cov = 0.0;
    for (std::size_t i = 0; i < n; ++i) cov += measure.pi[i] * centred[i] * v[i];
    return cov;
  };

  double sum = covariance();
  for (std::size_t lag = 1; lag <= options.max_lags; ++lag) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += measure(i, j) * v[j];
      next[i] = acc;
    }
    v.swap(next);
    const double cov = covariance();
    sum += 2.0 * cov;
    if (std::abs(cov) * tail_factor < options.tol) return {sum, lag};
  }
  throw Error(ErrorCode::NoDecay, "covariances did not fall below " + std::to_string(options.tol) +
                                      " within " + std::to_string(options.max_lags) + " lags");
}

Equilibrium equilibrium(const Potential& potential, const PowerIterationOptions& options) {
  Equilibrium out;
  out.matrix = transfer_matrix(potential);
  out.triple = leading_triple(out.matrix, options);
  out.measure = equilibrium_measure(out.triple, out.matrix);
  return out;
}

AsymptoticVariance green_kubo_variance(const Potential& potential, const Potential& observable,
                                       const VarianceOptions& options) {
  if (!potential.system().same_as(observable.system())) {
    throw Error(ErrorCode::InvalidInput, "potential and observable live on different systems");
  }
  const std::size_t depth = std::max(potential.depth(), observable.depth());
  if (depth == 1) {
    const Equilibrium eq = equilibrium(potential);
    return asymptotic_variance(eq.measure, observable, eq.triple.gap_estimate, options);
  }
  const BlockPresentation blocks = block_presentation(potential.system(), depth);
  const Equilibrium eq = equilibrium(lift_to_blocks(potential, blocks));
  return asymptotic_variance(eq.measure, lift_to_blocks(observable, blocks), eq.triple.gap_estimate, options);
}

SpectralResiduals spectral_residuals(const SpectralTriple& triple, const TransferMatrix& matrix) {
  const std::size_t n = matrix.size;
  std::vector<double> y(n);
  SpectralResiduals out;
  apply(matrix, false, triple.h, y);
  for (std::size_t i = 0; i < n; ++i) {
    out.right = std::max(out.right, std::abs(y[i] - triple.scaled_lambda * triple.h[i]));
  }
  out.right /= triple.scaled_lambda * max_entry(triple.h);
  apply(matrix, true, triple.nu, y);
  for (std::size_t i = 0; i < n; ++i) {
    out.left = std::max(out.left, std::abs(y[i] - triple.scaled_lambda * triple.nu[i]));
  }
  out.left /= triple.scaled_lambda * max_entry(triple.nu);
  return out;
}

}  // namespace thermo
