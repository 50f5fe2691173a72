#pragma once

// Independent reference computations used by the unit tests. Nothing here
// calls the library's numerical routines.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <vector>

#include "thermo/symbolic.hpp"

namespace oracle {

inline double golden_ratio() { return (1.0 + std::sqrt(5.0)) / 2.0; }

/// log of the larger root of λ² − e^t λ − e^t.
inline double golden_pressure(double t) {
  const double et = std::exp(t);
  return std::log((et + std::sqrt(et * et + 4.0 * et)) / 2.0);
}

/// Every word in N^n, kept when each consecutive pair is allowed.
inline std::vector<thermo::Word> brute_force_words(const thermo::SftSystem& s, std::size_t n) {
  const std::size_t N = s.alphabet_size();
  std::vector<thermo::Word> out;
  std::vector<thermo::Symbol> w(n, 0);
  while (true) {
    bool ok = true;
    for (std::size_t k = 0; k + 1 < n && ok; ++k) ok = s.allowed(w[k], w[k + 1]);
    if (ok) out.emplace_back(w);
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++w[pos] < N) break;
      w[pos] = 0;
      if (pos == 0) return out;
    }
    if (n == 0) return out;
  }
}

/// Dense exp-weighted matrix of a depth-1 or depth-2 potential, unshifted.
inline Eigen::MatrixXd weighted_matrix(const thermo::Potential& phi) {
  const auto& s = phi.system();
  const auto N = static_cast<Eigen::Index>(s.alphabet_size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(N, N);
  for (thermo::Symbol i = 0; i < s.alphabet_size(); ++i) {
    for (thermo::Symbol j = 0; j < s.alphabet_size(); ++j) {
      if (!s.allowed(i, j)) continue;
      m(i, j) = std::exp(phi.depth() == 1 ? phi.at(i) : phi.at(i, j));
    }
  }
  return m;
}

/// Spectral radius from Eigen's general eigensolver.
inline double spectral_radius(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

inline double eigen_pressure(const thermo::Potential& phi) { return std::log(spectral_radius(weighted_matrix(phi))); }

/// Stationary vector by Eigen's eigensolver on Pᵀ (eigenvalue closest to 1).
inline std::vector<double> stationary(const Eigen::MatrixXd& p) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(p.transpose());
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < es.eigenvalues().size(); ++k) {
    if (std::abs(es.eigenvalues()(k) - 1.0) < std::abs(es.eigenvalues()(best) - 1.0)) best = k;
  }
  Eigen::VectorXd v = es.eigenvectors().col(best).real();
  v /= v.sum();
  return {v.data(), v.data() + v.size()};
}

}  // namespace oracle
