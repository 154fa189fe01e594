#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>
#include <Eigen/QR>

#include "sectorlab/types.hpp"

namespace sectorlab {

using Rng = std::mt19937_64;

/// Mixes several integers into one seed (splitmix64 finalizer chain).
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline CMatrixd complex_gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrixd g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = {re, im};
    }
  }
  return g;
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases of R's diagonal removed.
inline CMatrixd haar_unitary(Eigen::Index n, Rng& rng) {
  const CMatrixd g = complex_gaussian(n, n, rng);
  Eigen::HouseholderQR<CMatrixd> qr(g);
  CMatrixd q = qr.householderQ() * CMatrixd::Identity(n, n);
  const CMatrixd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double a = std::abs(r(k, k));
    if (a > 0) q.col(k) *= r(k, k) / a;
  }
  return q;
}

/// n x k matrix with orthonormal columns.
inline CMatrixd random_isometry(Eigen::Index n, Eigen::Index k, Rng& rng) {
  return haar_unitary(n, rng).leftCols(k);
}

/// Sample from the Gaussian unitary ensemble.
inline HermMatrixd random_hermitian(Eigen::Index n, Rng& rng) {
  return HermMatrixd(complex_gaussian(n, n, rng));
}

/// Positive definite matrix with spectrum drawn uniformly from [lo, hi].
inline HermMatrixd random_pd(Eigen::Index n, double lo, double hi, Rng& rng) {
  const CMatrixd q = haar_unitary(n, rng);
  Eigen::VectorXcd lam(n);
  for (Eigen::Index i = 0; i < n; ++i) lam(i) = lo + (hi - lo) * uniform01(rng);
  return HermMatrixd(q * lam.asDiagonal() * q.adjoint());
}

/// Well-conditioned invertible matrix: I + 0.3 G / sqrt(n).
inline CMatrixd random_well_conditioned(Eigen::Index n, Rng& rng) {
  return CMatrixd::Identity(n, n) + 0.3 / std::sqrt(double(n)) * complex_gaussian(n, n, rng);
}

}  // namespace sectorlab
