#pragma once

// Sector matrices: real/imaginary parts, sectorial angle, numerical radius and
// numerical range boundary, and a certified sampler for S_theta.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <vector>

#include "sectorlab/numkernel.hpp"
#include "sectorlab/random_matrix.hpp"

namespace sectorlab {

template <typename Real>
HermMatrix<Real> real_part(const CMatrix<Real>& a) {
  return HermMatrix<Real>(a);
}

template <typename Real>
HermMatrix<Real> imag_part(const CMatrix<Real>& a) {
  // (A - A*)/(2i) = -i (A - A*)/2
  const CMatrix<Real> d = (a - a.adjoint()) / Real(2);
  return HermMatrix<Real>(Complex<Real>(0, -1) * d);
}

/// Least theta with W(A) inside the sector |Im z| <= tan(theta) Re z.
template <typename Real>
Real sector_angle(const CMatrix<Real>& a) {
  detail::require_square(a, "sector_angle");
  const auto re = herm_eig(real_part(a));
  if (re.values(0) <= Real(0)) {
    throw Error(ErrorKind::NotAccretive, "sector_angle: real part is not positive definite");
  }
  const RVector<Real> inv_sqrt = re.values.unaryExpr([](Real x) { return Real(1) / std::sqrt(x); });
  const CMatrix<Real> w = re.vectors * inv_sqrt.template cast<Complex<Real>>().asDiagonal();
  const HermMatrix<Real> core(w.adjoint() * imag_part(a).matrix() * w);
  return std::atan(op_norm(core));
}

template <typename Real>
bool is_accretive(const CMatrix<Real>& a) {
  return lambda_min(real_part(a)) > Real(0);
}

namespace detail {

template <typename Real>
HermMatrix<Real> rotated_real_part(const CMatrix<Real>& a, Real phi) {
  const Complex<Real> rot = std::polar(Real(1), phi);
  return HermMatrix<Real>(rot * a);
}

}  // namespace detail

/// omega(A) = max over phi of lambda_max(Re(e^{i phi} A)); grid search followed by golden-section refinement.
template <typename Real>
Real numerical_radius(const CMatrix<Real>& a, int grid = 256, double abs_tol = 1e-10) {
  detail::require_square(a, "numerical_radius");
  const Real two_pi = 2 * std::acos(Real(-1));
  auto objective = [&](Real phi) { return lambda_max(detail::rotated_real_part(a, phi)); };
  const Real step = two_pi / Real(grid);
  int best_k = 0;
  Real best = objective(Real(0));
  for (int k = 1; k < grid; ++k) {
    const Real val = objective(step * Real(k));
    if (val > best) {
      best = val;
      best_k = k;
    }
  }
  Real lo = step * Real(best_k - 1);
  Real hi = step * Real(best_k + 1);
  const Real g = (std::sqrt(Real(5)) - Real(1)) / Real(2);
  Real x1 = hi - g * (hi - lo);
  Real x2 = lo + g * (hi - lo);
  Real f1 = objective(x1);
  Real f2 = objective(x2);
  while (hi - lo > Real(abs_tol)) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = objective(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = objective(x1);
    }
  }
  return std::max({best, f1, f2, Real(0)});
}

struct RangeBoundary {
  std::vector<std::complex<double>> points;
  std::vector<double> angles;
};

/// Support points of W(A): for each phi, <A x, x> with x the top eigenvector of Re(e^{-i phi} A).
inline RangeBoundary range_boundary(const CMatrixd& a, int resolution) {
  detail::require_square(a, "range_boundary");
  if (resolution < 8) throw Error(ErrorKind::Domain, "range_boundary: resolution must be >= 8");
  RangeBoundary out;
  const double two_pi = 2 * std::acos(-1.0);
  for (int k = 0; k < resolution; ++k) {
    const double phi = two_pi * k / resolution;
    const auto eig = herm_eig(detail::rotated_real_part(a, -phi));
    const CVectord x = eig.vectors.col(eig.vectors.cols() - 1);
    out.points.push_back(x.dot(a * x));  // dot conjugates its first argument: x* A x
    out.angles.push_back(phi);
  }
  return out;
}

inline void write_boundary_csv(std::ostream& os, const RangeBoundary& rb) {
  os << "phi,re,im\n";
  char buf[128];
  for (std::size_t i = 0; i < rb.points.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", rb.angles[i], rb.points[i].real(),
                  rb.points[i].imag());
    os << buf;
  }
}

/// An accretive matrix with certified sector angle and bounds m I <= Re A <= M I.
struct SectorSample {
  CMatrixd A;
  double theta = 0;
  double m = 1;
  double M = 1;
};

struct SamplerOptions {
  double boundary_fraction = 0.25;  // share of samples pushed onto the sector boundary
};

/// Samples A = R + i R^{1/2} H R^{1/2} with R = Q diag(lambda) Q*, lambda pinned to m and M
/// and |H| = tan(theta) u, so that the sector angle is atan(tan(theta) u) <= theta.
inline SectorSample sample_sector(Eigen::Index n, double theta, double m, double M, Rng& rng,
                                  const SamplerOptions& opts = {}) {
  if (n < 1) throw Error(ErrorKind::Domain, "sample_sector: n must be >= 1");
  if (!(theta >= 0 && theta < std::acos(-1.0) / 2)) throw Error(ErrorKind::Domain, "sample_sector: theta out of [0, pi/2)");
  if (!(m > 0 && m <= M)) throw Error(ErrorKind::Domain, "sample_sector: need 0 < m <= M");
  const CMatrixd q = haar_unitary(n, rng);
  Eigen::VectorXd lam(n);
  for (Eigen::Index i = 0; i < n; ++i) lam(i) = m + (M - m) * uniform01(rng);
  if (n >= 2) {
    lam(0) = m;
    lam(n - 1) = M;
  }
  const CMatrixd r = q * lam.cast<std::complex<double>>().asDiagonal() * q.adjoint();
  SectorSample s{HermMatrixd(r).matrix(), theta, m, M};
  if (theta == 0) return s;

  const HermMatrixd h = random_hermitian(n, rng);
  const double stress = uniform01(rng);
  const double u = stress < opts.boundary_fraction ? 1.0 : uniform01(rng);
  const double hn = op_norm(h);
  const CMatrixd hs = hn > 0 ? CMatrixd(h.matrix() * (std::tan(theta) * u / hn)) : CMatrixd::Zero(n, n);
  const Eigen::VectorXd root = lam.cwiseSqrt();
  const CMatrixd rh = q * root.cast<std::complex<double>>().asDiagonal() * q.adjoint();
  const HermMatrixd im(rh * hs * rh);
  s.A = s.A + std::complex<double>(0, 1) * im.matrix();
  return s;
}

}  // namespace sectorlab
