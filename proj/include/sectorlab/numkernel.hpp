#pragma once

// Dense complex linear algebra and principal matrix functions.
//
// Everything here is templated on the real scalar so the verifier can re-run a
// trial in extended precision (long double) when a double evaluation fails.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/Jacobi>

#include "sectorlab/types.hpp"

namespace sectorlab {

template <typename Real>
struct EigResult {
  RVector<Real> values;   // ascending
  CMatrix<Real> vectors;  // columns are eigenvectors; empty when not requested
};

template <typename Real>
struct SchurForm {
  CMatrix<Real> unitary;     // Q
  CMatrix<Real> triangular;  // T, with X = Q T Q*
};

/// Options for the principal matrix function evaluator.
struct MatFnOptions {
  double eig_cond_max = 1e8;  // eigenvector condition above which Schur-Parlett is used
  double block_gap = 0.1;     // Parlett clustering threshold, relative to the spectral radius
  double cut_distance = 1e-12;
  bool force_schur = false;
};

namespace detail {

template <typename Real>
std::uint64_t matrix_hash(const CMatrix<Real>& x) {
  std::uint64_t h = 1469598103934665603ULL;
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const double parts[2] = {static_cast<double>(x(i, j).real()),
                               static_cast<double>(x(i, j).imag())};
      const auto* bytes = reinterpret_cast<const unsigned char*>(parts);
      for (std::size_t b = 0; b < sizeof(parts); ++b) {
        h ^= bytes[b];
        h *= 1099511628211ULL;
      }
    }
  }
  return h;
}

template <typename Real>
Real norm1(const CMatrix<Real>& x) {
  if (x.size() == 0) return Real(0);
  return x.cwiseAbs().colwise().sum().maxCoeff();
}

template <typename Real>
bool all_finite(const CMatrix<Real>& x) {
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      if (!std::isfinite(x(i, j).real()) || !std::isfinite(x(i, j).imag())) return false;
    }
  }
  return true;
}

template <typename Real>
void require_square(const CMatrix<Real>& x, const char* what) {
  if (x.rows() != x.cols() || x.rows() < 1) {
    throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": expected a nonempty square matrix");
  }
}

template <typename Real>
CMatrix<Real> tri_solve(const CMatrix<Real>& upper, const CMatrix<Real>& rhs) {
  return upper.template triangularView<Eigen::Upper>().solve(rhs);
}

template <typename Real>
CMatrix<Real> tri_inverse(const CMatrix<Real>& upper) {
  return tri_solve<Real>(upper, CMatrix<Real>::Identity(upper.rows(), upper.cols()));
}

/// Principal square root of an upper triangular matrix (column recurrence).
template <typename Real>
CMatrix<Real> tri_sqrt(const CMatrix<Real>& t) {
  const Eigen::Index n = t.rows();
  CMatrix<Real> u = CMatrix<Real>::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    u(j, j) = std::sqrt(t(j, j));
    for (Eigen::Index i = j - 1; i >= 0; --i) {
      Complex<Real> s = t(i, j);
      for (Eigen::Index k = i + 1; k < j; ++k) s -= u(i, k) * u(k, j);
      u(i, j) = s / (u(i, i) + u(j, j));
    }
  }
  return u;
}

/// Gauss-Legendre nodes and weights on [0, 1].
template <typename Real>
std::pair<std::vector<Real>, std::vector<Real>> gauss_legendre01(int m) {
  std::vector<Real> nodes(m), weights(m);
  const Real pi = std::acos(Real(-1));
  for (int i = 0; i < m; ++i) {
    Real x = std::cos(pi * (Real(i) + Real(0.75)) / (Real(m) + Real(0.5)));
    Real dp = 0;
    for (int it = 0; it < 100; ++it) {
      Real p0 = 1, p1 = x;
      for (int k = 2; k <= m; ++k) {
        Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1);
      Real dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= std::numeric_limits<Real>::epsilon()) break;
    }
    nodes[i] = (Real(1) - x) / 2;
    weights[i] = Real(1) / ((Real(1) - x * x) * dp * dp);
  }
  return {nodes, weights};
}

/// Principal logarithm of an upper triangular matrix by inverse scaling and squaring.
template <typename Real>
CMatrix<Real> tri_log(const CMatrix<Real>& t) {
  const Eigen::Index n = t.rows();
  const CMatrix<Real> id = CMatrix<Real>::Identity(n, n);
  CMatrix<Real> r = t;
  int roots = 0;
  while (norm1<Real>(r - id) > Real(0.25)) {
    r = tri_sqrt<Real>(r);
    if (++roots > 100) {
      throw Error(ErrorKind::NonConvergence, "logarithm: square-root count exceeded 100");
    }
  }
  const CMatrix<Real> e = r - id;
  static const auto rule = gauss_legendre01<Real>(12);
  CMatrix<Real> l = CMatrix<Real>::Zero(n, n);
  for (std::size_t q = 0; q < rule.first.size(); ++q) {
    l += rule.second[q] * tri_solve<Real>(id + rule.first[q] * e, e);
  }
  return std::ldexp(Real(1), roots) * l;
}

/// Exponential by scaling and squaring of a truncated Taylor series.
template <typename Real>
CMatrix<Real> expm_taylor(const CMatrix<Real>& x) {
  const Eigen::Index n = x.rows();
  const Real nrm = norm1<Real>(x);
  int squarings = 0;
  if (nrm > Real(0.5)) squarings = static_cast<int>(std::ceil(std::log2(static_cast<double>(nrm / Real(0.5)))));
  const CMatrix<Real> y = x * std::ldexp(Real(1), -squarings);
  CMatrix<Real> sum = CMatrix<Real>::Identity(n, n);
  CMatrix<Real> term = sum;
  for (int k = 1; k < 80; ++k) {
    term = (term * y) / Real(k);
    sum += term;
    if (norm1<Real>(term) <= std::numeric_limits<Real>::epsilon() * norm1<Real>(sum)) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

template <typename Real>
CMatrix<Real> tri_pow(const CMatrix<Real>& t, Real v) {
  if (v == Real(0)) return CMatrix<Real>::Identity(t.rows(), t.cols());
  if (v == Real(1)) return t;
  if (v == Real(-1)) return tri_inverse<Real>(t);
  return expm_taylor<Real>(v * tri_log<Real>(t));
}

template <typename Real>
Real distance_to_cut(const Complex<Real>& z) {
  if (z.real() <= Real(0)) return std::abs(z.imag());
  return std::abs(z);
}

}  // namespace detail

/// A scalar function with its principal branch, plus an evaluator for upper
/// triangular blocks used by the Schur-Parlett path.
template <typename Real>
struct ScalarFn {
  std::string name;
  bool branched = true;
  std::function<Complex<Real>(const Complex<Real>&)> scalar;
  std::function<CMatrix<Real>(const CMatrix<Real>&)> triangular;
};

template <typename Real>
ScalarFn<Real> sqrt_fn() {
  return {"sqrt", true, [](const Complex<Real>& z) { return std::sqrt(z); },
          [](const CMatrix<Real>& t) { return detail::tri_sqrt<Real>(t); }};
}

template <typename Real>
ScalarFn<Real> log_fn() {
  return {"log", true, [](const Complex<Real>& z) { return std::log(z); },
          [](const CMatrix<Real>& t) { return detail::tri_log<Real>(t); }};
}

template <typename Real>
ScalarFn<Real> exp_fn() {
  return {"exp", false, [](const Complex<Real>& z) { return std::exp(z); },
          [](const CMatrix<Real>& t) { return detail::expm_taylor<Real>(t); }};
}

template <typename Real>
ScalarFn<Real> pow_fn(Real v) {
  return {"pow", true,
          [v](const Complex<Real>& z) {
            if (v == Real(0)) return Complex<Real>(1);
            return std::exp(v * std::log(z));
          },
          [v](const CMatrix<Real>& t) { return detail::tri_pow<Real>(t, v); }};
}

// ---------------------------------------------------------------------------
// Eigen-decompositions

template <typename Real>
EigResult<Real> herm_eig(const HermMatrix<Real>& h, bool with_vectors = true) {
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(
      h.matrix(), with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "Hermitian eigensolver did not converge (matrix hash " << std::hex
        << detail::matrix_hash<Real>(h.matrix()) << std::dec << ", iteration cap "
        << 30 * h.dim() << ")";
    throw Error(ErrorKind::NonConvergence, msg.str());
  }
  EigResult<Real> out;
  out.values = solver.eigenvalues();
  if (with_vectors) out.vectors = solver.eigenvectors();
  return out;
}

template <typename Real>
RVector<Real> herm_eigenvalues(const HermMatrix<Real>& h) {
  return herm_eig(h, false).values;
}

template <typename Real>
Real lambda_min(const HermMatrix<Real>& h) {
  return herm_eigenvalues(h)(0);
}

template <typename Real>
Real lambda_max(const HermMatrix<Real>& h) {
  const auto v = herm_eigenvalues(h);
  return v(v.size() - 1);
}

template <typename Real>
SchurForm<Real> schur(const CMatrix<Real>& x) {
  detail::require_square(x, "schur");
  if (!detail::all_finite(x)) throw Error(ErrorKind::Domain, "schur: non-finite input");
  const Eigen::Index n = x.rows();
  Eigen::ComplexSchur<CMatrix<Real>> cs(n);
  cs.setMaxIterations(100 * n);
  cs.compute(x);
  if (cs.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "QR iteration did not converge within " << 100 * n << " sweeps (matrix hash " << std::hex
        << detail::matrix_hash<Real>(x) << ")";
    throw Error(ErrorKind::NonConvergence, msg.str());
  }
  SchurForm<Real> out;
  out.unitary = cs.matrixU();
  out.triangular = cs.matrixT().template triangularView<Eigen::Upper>();
  return out;
}

/// Applies a real function to a Hermitian matrix through its eigendecomposition.
template <typename Real, typename F>
HermMatrix<Real> herm_apply(const HermMatrix<Real>& h, F&& f) {
  const auto eig = herm_eig(h);
  RVector<Real> fv = eig.values.unaryExpr([&](Real x) { return static_cast<Real>(f(x)); });
  return HermMatrix<Real>(eig.vectors * fv.template cast<Complex<Real>>().asDiagonal() *
                          eig.vectors.adjoint());
}

/// Real power of a Hermitian matrix; fractional and negative powers need a positive definite argument.
template <typename Real>
HermMatrix<Real> herm_pow(const HermMatrix<Real>& h, Real p) {
  if (p == Real(1)) return h;
  const auto eig = herm_eig(h);
  const bool integral = std::floor(p) == p && p >= Real(0);
  if (!integral && eig.values(0) <= Real(0)) {
    std::ostringstream msg;
    msg << "power " << static_cast<double>(p) << " of a matrix with smallest eigenvalue "
        << static_cast<double>(eig.values(0));
    throw Error(ErrorKind::HypothesisUnsatisfiable, msg.str());
  }
  RVector<Real> fv = eig.values.unaryExpr([p](Real x) { return std::pow(x, p); });
  return HermMatrix<Real>(eig.vectors * fv.template cast<Complex<Real>>().asDiagonal() *
                          eig.vectors.adjoint());
}

template <typename Real>
HermMatrix<Real> herm_inverse(const HermMatrix<Real>& h) {
  return herm_pow(h, Real(-1));
}

// ---------------------------------------------------------------------------
// Inverse, determinant, norms

template <typename Real>
CMatrix<Real> inverse(const CMatrix<Real>& x, double cond_max = 1e12) {
  detail::require_square(x, "inverse");
  Eigen::PartialPivLU<CMatrix<Real>> lu(x);
  const Real rc = lu.rcond();
  if (!(rc > Real(0)) || Real(1) / rc >= Real(cond_max)) {
    std::ostringstream msg;
    msg << "condition estimate " << (rc > Real(0) ? static_cast<double>(Real(1) / rc) : INFINITY);
    throw Error(ErrorKind::NearSingular, msg.str());
  }
  return lu.inverse();
}

template <typename Real>
HermMatrix<Real> inverse(const HermMatrix<Real>& h, double cond_max = 1e12) {
  return HermMatrix<Real>(inverse<Real>(h.matrix(), cond_max));
}

/// log |det X| via LU with partial pivoting; -inf for singular input.
template <typename Real>
Real log_det_abs(const CMatrix<Real>& x) {
  detail::require_square(x, "det");
  Eigen::PartialPivLU<CMatrix<Real>> lu(x);
  const CMatrix<Real>& packed = lu.matrixLU();
  Real acc = 0;
  for (Eigen::Index i = 0; i < packed.rows(); ++i) {
    const Real a = std::abs(packed(i, i));
    if (a == Real(0)) return -std::numeric_limits<Real>::infinity();
    acc += std::log(a);
  }
  return acc;
}

template <typename Real>
Real det_abs(const CMatrix<Real>& x) {
  return std::exp(log_det_abs(x));
}

/// Singular values in descending order.
template <typename Real>
RVector<Real> singular_values(const CMatrix<Real>& x) {
  Eigen::JacobiSVD<CMatrix<Real>> svd(x);
  return svd.singularValues();
}

struct NormSpec {
  enum class Kind { Operator, Trace, Frobenius, Schatten, KyFan };
  Kind kind = Kind::Operator;
  double p = 2;
  int k = 1;

  static NormSpec op() { return {Kind::Operator, 0, 0}; }
  static NormSpec trace() { return {Kind::Trace, 1, 0}; }
  static NormSpec frobenius() { return {Kind::Frobenius, 2, 0}; }
  static NormSpec schatten(double p) { return {Kind::Schatten, p, 0}; }
  static NormSpec kyfan(int k) { return {Kind::KyFan, 0, k}; }

  std::string name() const {
    switch (kind) {
      case Kind::Operator: return "operator";
      case Kind::Trace: return "trace";
      case Kind::Frobenius: return "frobenius";
      case Kind::Schatten: {
        std::ostringstream s;
        s << "schatten" << p;
        return s.str();
      }
      case Kind::KyFan: return "kyfan" + std::to_string(k);
    }
    return "?";
  }
};

template <typename Real>
Real norm_from_singular_values(const RVector<Real>& s, const NormSpec& which) {
  switch (which.kind) {
    case NormSpec::Kind::Operator: return s.size() ? s(0) : Real(0);
    case NormSpec::Kind::Trace: return s.sum();
    case NormSpec::Kind::Frobenius: return std::sqrt(s.squaredNorm());
    case NormSpec::Kind::Schatten: {
      if (which.p < 1) throw Error(ErrorKind::Domain, "Schatten norm needs p >= 1");
      const Real p = static_cast<Real>(which.p);
      return std::pow(s.unaryExpr([p](Real x) { return std::pow(x, p); }).sum(), Real(1) / p);
    }
    case NormSpec::Kind::KyFan: {
      if (which.k < 1 || which.k > s.size()) throw Error(ErrorKind::Domain, "Ky Fan index out of range");
      return s.head(which.k).sum();
    }
  }
  return Real(0);
}

/// Unitarily invariant norm computed from singular values.
template <typename Real>
Real ui_norm(const CMatrix<Real>& x, const NormSpec& which) {
  return norm_from_singular_values(singular_values(x), which);
}

template <typename Real>
Real op_norm(const HermMatrix<Real>& h) {
  const auto v = herm_eigenvalues(h);
  return std::max(std::abs(v(0)), std::abs(v(v.size() - 1)));
}

// ---------------------------------------------------------------------------
// Loewner order

template <typename Real>
struct LoewnerVerdict {
  bool pass = false;
  Real slack = 0;      // lambda_min(G - H)
  Real threshold = 0;  // allowed negative slack
};

/// Decides H <= G in the Loewner order: passes iff lambda_min(G - H) >= -(rel * max(|G|, |H|) + abs).
template <typename Real>
LoewnerVerdict<Real> loewner_leq(const HermMatrix<Real>& h, const HermMatrix<Real>& g,
                                 const ToleranceSpec& tol = {}) {
  if (h.dim() != g.dim()) throw Error(ErrorKind::DimensionMismatch, "loewner_leq: dimension mismatch");
  LoewnerVerdict<Real> v;
  v.slack = lambda_min(g - h);
  v.threshold = Real(tol.rel) * std::max(op_norm(g), op_norm(h)) + Real(tol.abs);
  v.pass = v.slack >= -v.threshold;
  return v;
}

/// Largest eigenvalue of G^{-1/2} H G^{-1/2}; NaN when G is not positive definite.
template <typename Real>
Real relative_max_eig(const HermMatrix<Real>& h, const HermMatrix<Real>& g) {
  Eigen::LLT<CMatrix<Real>> llt(g.matrix());
  if (llt.info() != Eigen::Success) return std::numeric_limits<Real>::quiet_NaN();
  const CMatrix<Real> linv_h = llt.matrixL().solve(h.matrix());
  const CMatrix<Real> m = llt.matrixL().solve(linv_h.adjoint()).adjoint();
  return lambda_max(HermMatrix<Real>(m));
}

// ---------------------------------------------------------------------------
// Principal matrix functions

namespace detail {

// Swaps adjacent diagonal entries k, k+1 of the upper triangular t, updating q.
template <typename Real>
void swap_schur_entries(CMatrix<Real>& t, CMatrix<Real>& q, Eigen::Index k) {
  Eigen::JacobiRotation<Complex<Real>> rot;
  rot.makeGivens(t(k, k + 1), t(k + 1, k + 1) - t(k, k));
  t.applyOnTheLeft(k, k + 1, rot.adjoint());
  t.applyOnTheRight(k, k + 1, rot);
  q.applyOnTheRight(k, k + 1, rot);
  t(k + 1, k) = Complex<Real>(0);
}

template <typename Real>
bool eigenvector_path(const SchurForm<Real>& sf, const ScalarFn<Real>& f, const MatFnOptions& opts,
                      CMatrix<Real>& out) {
  const CMatrix<Real>& t = sf.triangular;
  const Eigen::Index n = t.rows();
  const Real eps = std::numeric_limits<Real>::epsilon();
  const Real scale = std::max(norm1<Real>(t), std::numeric_limits<Real>::min());
  CMatrix<Real> w = CMatrix<Real>::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex<Real> lam = t(k, k);
    const Real smin = std::max(eps * std::abs(lam), eps * scale * Real(1e-3));
    w(k, k) = Complex<Real>(1);
    for (Eigen::Index i = k - 1; i >= 0; --i) {
      Complex<Real> s(0);
      for (Eigen::Index j = i + 1; j <= k; ++j) s += t(i, j) * w(j, k);
      Complex<Real> d = t(i, i) - lam;
      if (std::abs(d) < smin) d = Complex<Real>(smin);
      w(i, k) = -s / d;
    }
    w.col(k).normalize();
  }
  const CMatrix<Real> v = sf.unitary * w;
  const RVector<Real> sv = singular_values<Real>(v);
  const Real cond = sv(0) / sv(n - 1);
  if (!(cond <= Real(opts.eig_cond_max))) return false;
  CVector<Real> fl(n);
  for (Eigen::Index k = 0; k < n; ++k) fl(k) = f.scalar(t(k, k));
  Eigen::PartialPivLU<CMatrix<Real>> lu(v);
  out = v * fl.asDiagonal() * lu.inverse();
  return all_finite<Real>(out);
}

template <typename Real>
CMatrix<Real> schur_parlett(const SchurForm<Real>& sf, const ScalarFn<Real>& f, const MatFnOptions& opts) {
  CMatrix<Real> t = sf.triangular;
  CMatrix<Real> q = sf.unitary;
  const Eigen::Index n = t.rows();

  // Cluster eigenvalues: transitive closure of |lambda_i - lambda_j| <= delta.
  Real radius = 0;
  for (Eigen::Index i = 0; i < n; ++i) radius = std::max(radius, std::abs(t(i, i)));
  const Real delta = Real(opts.block_gap) * std::max(radius, std::numeric_limits<Real>::min());
  std::vector<Eigen::Index> parent(n);
  std::iota(parent.begin(), parent.end(), Eigen::Index(0));
  std::function<Eigen::Index(Eigen::Index)> find = [&](Eigen::Index i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (std::abs(t(i, i) - t(j, j)) <= delta) parent[find(i)] = find(j);
    }
  }
  // Cluster order follows first appearance along the diagonal.
  std::vector<Eigen::Index> rank_of_root(n, -1);
  std::vector<int> cluster(n);
  int next = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index r = find(i);
    if (rank_of_root[r] < 0) rank_of_root[r] = next++;
    cluster[i] = static_cast<int>(rank_of_root[r]);
  }
  // Bubble the diagonal into contiguous clusters with Givens swaps.
  for (bool swapped = true; swapped;) {
    swapped = false;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
      if (cluster[k] > cluster[k + 1]) {
        swap_schur_entries<Real>(t, q, k);
        std::swap(cluster[k], cluster[k + 1]);
        swapped = true;
      }
    }
  }
  std::vector<Eigen::Index> start{0};
  for (Eigen::Index k = 1; k < n; ++k) {
    if (cluster[k] != cluster[k - 1]) start.push_back(k);
  }
  start.push_back(n);
  const std::size_t nb = start.size() - 1;
  auto blk = [&](CMatrix<Real>& m, std::size_t i, std::size_t j) {
    return m.block(start[i], start[j], start[i + 1] - start[i], start[j + 1] - start[j]);
  };

  CMatrix<Real> ft = CMatrix<Real>::Zero(n, n);
  for (std::size_t i = 0; i < nb; ++i) {
    CMatrix<Real> tii = blk(t, i, i);
    blk(ft, i, i) = f.triangular(tii);
  }
  // Block Parlett recurrence: T_ii F_ij - F_ij T_jj = F_ii T_ij - T_ij F_jj + sum_k (F_ik T_kj - T_ik F_kj).
  for (std::size_t j = 1; j < nb; ++j) {
    for (std::size_t ii = j; ii-- > 0;) {
      CMatrix<Real> rhs = blk(ft, ii, ii) * blk(t, ii, j) - blk(t, ii, j) * blk(ft, j, j);
      for (std::size_t k = ii + 1; k < j; ++k) {
        rhs += blk(ft, ii, k) * blk(t, k, j) - blk(t, ii, k) * blk(ft, k, j);
      }
      const CMatrix<Real> tii = blk(t, ii, ii);
      const CMatrix<Real> tjj = blk(t, j, j);
      CMatrix<Real> x(rhs.rows(), rhs.cols());
      for (Eigen::Index c = 0; c < rhs.cols(); ++c) {
        CVector<Real> col = rhs.col(c);
        for (Eigen::Index l = 0; l < c; ++l) col += x.col(l) * tjj(l, c);
        CMatrix<Real> shifted = tii - tjj(c, c) * CMatrix<Real>::Identity(tii.rows(), tii.cols());
        x.col(c) = shifted.template triangularView<Eigen::Upper>().solve(col);
      }
      blk(ft, ii, j) = x;
    }
  }
  CMatrix<Real> out = q * ft * q.adjoint();
  if (!all_finite<Real>(out)) {
    std::ostringstream msg;
    msg << "Schur-Parlett failed with " << nb << " blocks of sizes";
    for (std::size_t i = 0; i < nb; ++i) msg << ' ' << (start[i + 1] - start[i]);
    throw Error(ErrorKind::IllConditioned, msg.str());
  }
  return out;
}

}  // namespace detail

/// Principal-branch matrix function. Uses the eigendecomposition when the
/// eigenvector basis is well conditioned and Schur-Parlett otherwise.
template <typename Real>
CMatrix<Real> mat_fn(const CMatrix<Real>& x, const ScalarFn<Real>& f, const MatFnOptions& opts = {}) {
  const SchurForm<Real> sf = schur(x);
  const Eigen::Index n = x.rows();
  if (f.branched) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const Complex<Real> lam = sf.triangular(i, i);
      if (detail::distance_to_cut(lam) <= Real(opts.cut_distance)) {
        std::ostringstream msg;
        msg << f.name << ": eigenvalue (" << static_cast<double>(lam.real()) << ", "
            << static_cast<double>(lam.imag()) << ") lies on the branch cut";
        throw Error(ErrorKind::SpectrumOnCut, msg.str());
      }
    }
  }
  if (!opts.force_schur) {
    CMatrix<Real> out;
    if (detail::eigenvector_path(sf, f, opts, out)) return out;
  }
  return detail::schur_parlett(sf, f, opts);
}

template <typename Real>
CMatrix<Real> sqrtm(const CMatrix<Real>& x, const MatFnOptions& opts = {}) {
  return mat_fn(x, sqrt_fn<Real>(), opts);
}

template <typename Real>
CMatrix<Real> logm(const CMatrix<Real>& x, const MatFnOptions& opts = {}) {
  return mat_fn(x, log_fn<Real>(), opts);
}

template <typename Real>
CMatrix<Real> expm(const CMatrix<Real>& x, const MatFnOptions& opts = {}) {
  return mat_fn(x, exp_fn<Real>(), opts);
}

/// Principal power X^v = exp(v log X).
template <typename Real>
CMatrix<Real> powm(const CMatrix<Real>& x, Real v, const MatFnOptions& opts = {}) {
  return mat_fn(x, pow_fn<Real>(v), opts);
}

}  // namespace sectorlab
