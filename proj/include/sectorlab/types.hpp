#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sectorlab {

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using CMatrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using CVector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using CMatrixd = CMatrix<double>;
using CVectord = CVector<double>;
using RVectord = RVector<double>;

enum class ErrorKind {
  NonConvergence,
  SpectrumOnCut,
  IllConditioned,
  NearSingular,
  NotAccretive,
  DimensionMismatch,
  Domain,
  HypothesisUnsatisfiable,
  ChoiNotPSD,
  Parse,
  Config,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::SpectrumOnCut: return "SpectrumOnCut";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::NearSingular: return "NearSingular";
    case ErrorKind::NotAccretive: return "NotAccretive";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::Domain: return "Domain";
    case ErrorKind::HypothesisUnsatisfiable: return "HypothesisUnsatisfiable";
    case ErrorKind::ChoiNotPSD: return "ChoiNotPSD";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Config: return "Config";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Absolute/relative slack allowance applied to smallest eigenvalues of differences.
struct ToleranceSpec {
  double rel = 1e-8;
  double abs = 1e-10;
};

/// Hermitian matrix, stored symmetrized so that entry(i,j) == conj(entry(j,i)) bit for bit.
template <typename Real>
class HermMatrix {
 public:
  HermMatrix() = default;

  explicit HermMatrix(const CMatrix<Real>& x) : data_(symmetrize(x)) {}

  static HermMatrix identity(Eigen::Index n) {
    HermMatrix h;
    h.data_ = CMatrix<Real>::Identity(n, n);
    return h;
  }

  static HermMatrix zero(Eigen::Index n) {
    HermMatrix h;
    h.data_ = CMatrix<Real>::Zero(n, n);
    return h;
  }

  const CMatrix<Real>& matrix() const noexcept { return data_; }
  Eigen::Index dim() const noexcept { return data_.rows(); }

  template <typename Other>
  HermMatrix<Other> cast() const {
    HermMatrix<Other> h;
    h.assign_exact(data_.template cast<Complex<Other>>());
    return h;
  }

  HermMatrix operator+(const HermMatrix& o) const { return from_exact(data_ + o.data_); }
  HermMatrix operator-(const HermMatrix& o) const { return from_exact(data_ - o.data_); }
  HermMatrix operator*(Real s) const { return from_exact(data_ * s); }
  friend HermMatrix operator*(Real s, const HermMatrix& h) { return h * s; }

  // Sums, differences and real scalings of exactly Hermitian data stay exactly Hermitian.
  void assign_exact(const CMatrix<Real>& x) { data_ = x; }

 private:
  static HermMatrix from_exact(const CMatrix<Real>& x) {
    HermMatrix h;
    h.data_ = x;
    return h;
  }

  static CMatrix<Real> symmetrize(const CMatrix<Real>& x) {
    if (x.rows() != x.cols()) {
      throw Error(ErrorKind::DimensionMismatch, "Hermitian matrix must be square");
    }
    CMatrix<Real> s = (x + x.adjoint()) / Real(2);
    for (Eigen::Index i = 0; i < s.rows(); ++i) {
      s(i, i) = Complex<Real>(s(i, i).real(), Real(0));
      for (Eigen::Index j = i + 1; j < s.cols(); ++j) {
        s(j, i) = std::conj(s(i, j));
      }
    }
    return s;
  }

  CMatrix<Real> data_;
};

using HermMatrixd = HermMatrix<double>;

}  // namespace sectorlab
