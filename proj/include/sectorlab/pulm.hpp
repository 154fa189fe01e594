#pragma once

// Positive unital linear maps from a fixed catalog. Every catalog kind is
// completely positive and *-preserving.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "sectorlab/numkernel.hpp"
#include "sectorlab/random_matrix.hpp"

namespace sectorlab {

class PULMap {
 public:
  enum class Kind { Identity, NormalizedTrace, Pinching, UnitaryConj, Compression, SchurHadamard, Convex };

  static PULMap identity(int n);
  /// X -> (tr X / n) I_k
  static PULMap normalized_trace(int n, int k);
  /// Keeps the diagonal blocks of the given sizes, zeroes the rest.
  static PULMap pinching(std::vector<int> blocks);
  /// X -> U* X U
  static PULMap unitary_conj(const CMatrixd& u);
  /// X -> V* X V for an n x k isometry V.
  static PULMap compression(const CMatrixd& v);
  /// X -> C o X for C positive semidefinite with unit diagonal.
  static PULMap schur_hadamard(const CMatrixd& c);
  static PULMap convex(std::vector<std::pair<double, PULMap>> terms);

  /// Random catalog member acting on M_n.
  static PULMap random(int n, Rng& rng);

  /// Catalog ids: "identity", "trace", "trace:k=2", "pinch:blocks=2+3", "compress:k=2",
  /// "unitary", "schur", "schur:ones", "random". Random parameters come from rng.
  static PULMap parse(const std::string& id, int n, Rng& rng);

  Kind kind() const noexcept { return kind_; }
  int in_dim() const noexcept { return in_; }
  int out_dim() const noexcept { return out_; }
  const std::vector<int>& blocks() const noexcept { return blocks_; }
  const CMatrixd& param() const noexcept { return param_; }
  const std::vector<std::pair<double, PULMap>>& terms() const noexcept { return terms_; }

  std::string id() const;

  template <typename Real>
  CMatrix<Real> apply(const CMatrix<Real>& x) const {
    if (x.rows() != in_ || x.cols() != in_) {
      throw Error(ErrorKind::DimensionMismatch, "PULMap::apply: expected " + std::to_string(in_) + "x" +
                                                    std::to_string(in_) + " input");
    }
    switch (kind_) {
      case Kind::Identity: return x;
      case Kind::NormalizedTrace:
        return (x.trace() / Real(in_)) * CMatrix<Real>::Identity(out_, out_);
      case Kind::Pinching: {
        CMatrix<Real> y = CMatrix<Real>::Zero(in_, in_);
        int at = 0;
        for (int b : blocks_) {
          y.block(at, at, b, b) = x.block(at, at, b, b);
          at += b;
        }
        return y;
      }
      case Kind::UnitaryConj:
      case Kind::Compression: {
        const CMatrix<Real> p = param_.cast<Complex<Real>>();
        return p.adjoint() * x * p;
      }
      case Kind::SchurHadamard: return param_.cast<Complex<Real>>().cwiseProduct(x);
      case Kind::Convex: {
        CMatrix<Real> y = CMatrix<Real>::Zero(out_, out_);
        for (const auto& [w, phi] : terms_) y += static_cast<Real>(w) * phi.template apply<Real>(x);
        return y;
      }
    }
    return x;
  }

  template <typename Real>
  HermMatrix<Real> apply(const HermMatrix<Real>& h) const {
    return HermMatrix<Real>(apply<Real>(h.matrix()));
  }

  /// Choi matrix sum_{ij} E_ij (x) Phi(E_ij), of size (n k) x (n k).
  CMatrixd choi() const;

 private:
  Kind kind_ = Kind::Identity;
  int in_ = 1;
  int out_ = 1;
  std::vector<int> blocks_;
  CMatrixd param_;
  std::vector<std::pair<double, PULMap>> terms_;
};

struct ChoiVerdict {
  double lambda_min = 0;
};

/// Verifies complete positivity through the Choi matrix; throws ChoiNotPSD below -1e-10.
ChoiVerdict choi_check(const PULMap& phi);

/// Choi's inequality Phi(A)^{-1} <= Phi(A^{-1}) for positive definite A.
template <typename Real>
LoewnerVerdict<Real> choi_inequality_check(const PULMap& phi, const HermMatrix<Real>& a,
                                           const ToleranceSpec& tol = {}) {
  const HermMatrix<Real> lhs = inverse(phi.apply(a));
  const HermMatrix<Real> rhs = phi.apply(inverse(a));
  return loewner_leq(lhs, rhs, tol);
}

}  // namespace sectorlab
