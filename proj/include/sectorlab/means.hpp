#pragma once

// Operator monotone representing functions, Kubo-Ando means on accretive
// matrices, adjoint means and grid-certified mean ordering.
//
// Weighting convention: f_arith(t) = (1-v) + v t, f_geo(t) = t^v,
// f_harm(t) = t / ((1-v) t + v), so that harmonic <= geometric <= arithmetic
// for every v, and A #_v B puts weight v on B.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <type_traits>
#include <utility>

#include "sectorlab/numkernel.hpp"
#include "sectorlab/sector.hpp"

namespace sectorlab {

enum class MeanFamily { Power, Arithmetic, Geometric, Harmonic, Heinz };

/// Operator monotone f : (0, inf) -> (0, inf) with f(1) = 1, from a closed-form catalog.
///
/// power(r, v) is ((1-v) + v t^r)^{1/r} for r in [-1, 1] (t^v at r = 0); it runs
/// from the weighted harmonic mean at r = -1 to the weighted arithmetic mean at r = 1.
/// A set `adjoint` flag turns f into t -> 1/f(1/t).
struct OpMonotone {
  MeanFamily family = MeanFamily::Arithmetic;
  double r = 1;
  double v = 0.5;
  bool adjoint = false;

  static OpMonotone arithmetic(double v) { return {MeanFamily::Arithmetic, 1, v, false}; }
  static OpMonotone geometric(double v) { return {MeanFamily::Geometric, 0, v, false}; }
  static OpMonotone harmonic(double v) { return {MeanFamily::Harmonic, -1, v, false}; }
  static OpMonotone heinz(double v) { return {MeanFamily::Heinz, 0, v, false}; }
  static OpMonotone power(double r, double v) { return {MeanFamily::Power, r, v, false}; }
  static OpMonotone identity() { return arithmetic(1); }

  template <typename T>
  T eval_base(const T& t) const {
    const T one(1);
    const T w(v);
    switch (family) {
      case MeanFamily::Arithmetic: return (one - w) + w * t;
      case MeanFamily::Harmonic: return t / ((one - w) * t + w);
      case MeanFamily::Geometric: return pow_principal(t, v);
      case MeanFamily::Heinz: return (pow_principal(t, v) + pow_principal(t, 1 - v)) / T(2);
      case MeanFamily::Power:
        if (r == 0) return pow_principal(t, v);
        if (r == 1) return (one - w) + w * t;
        if (r == -1) return t / ((one - w) * t + w);
        return power_general(t);
    }
    return t;
  }

  /// f evaluated at a real or complex argument (principal branches).
  template <typename T>
  T operator()(const T& t) const {
    if (adjoint) return T(1) / eval_base(T(1) / t);
    return eval_base(t);
  }

  /// f applied to an upper triangular matrix through the primitive triangular kernels.
  template <typename Real>
  CMatrix<Real> eval_triangular(const CMatrix<Real>& t) const {
    if (adjoint) {
      return detail::tri_inverse<Real>(eval_triangular_base<Real>(detail::tri_inverse<Real>(t)));
    }
    return eval_triangular_base<Real>(t);
  }

  template <typename Real>
  ScalarFn<Real> scalar_fn() const {
    const OpMonotone self = *this;
    return {id(), true, [self](const Complex<Real>& z) { return self(z); },
            [self](const CMatrix<Real>& t) { return self.eval_triangular<Real>(t); }};
  }

  /// Representing function of the adjoint mean, t -> 1/f(1/t), kept in canonical form where the catalog allows.
  OpMonotone adjoint_fn() const {
    OpMonotone out = *this;
    if (adjoint) {
      out.adjoint = false;
      return out;
    }
    switch (family) {
      case MeanFamily::Arithmetic: return harmonic(v);
      case MeanFamily::Harmonic: return arithmetic(v);
      case MeanFamily::Geometric: return *this;
      case MeanFamily::Power: return power(-r == 0 ? 0.0 : -r, v);
      case MeanFamily::Heinz: out.adjoint = true; return out;
    }
    return out;
  }

  std::string id(bool exact = false) const {
    const char* fmt = exact ? "%a" : "%.17g";
    auto num = [fmt](double x) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), fmt, x);
      return std::string(buf);
    };
    std::string body;
    switch (family) {
      case MeanFamily::Arithmetic: body = "arithmetic:v=" + num(v); break;
      case MeanFamily::Geometric: body = "geometric:v=" + num(v); break;
      case MeanFamily::Harmonic: body = "harmonic:v=" + num(v); break;
      case MeanFamily::Heinz: body = "heinz:v=" + num(v); break;
      case MeanFamily::Power: body = "power:r=" + num(r) + ",v=" + num(v); break;
    }
    return adjoint ? "adjoint:" + body : body;
  }

  /// Parses ids such as "arithmetic:v=0.5", "power:r=0.3,v=0.25" or "adjoint:heinz:v=0.2".
  static OpMonotone parse(const std::string& text) {
    std::string s = text;
    bool adj = false;
    if (s.rfind("adjoint:", 0) == 0) {
      adj = true;
      s = s.substr(8);
    }
    const auto colon = s.find(':');
    const std::string fam = s.substr(0, colon);
    double r = std::nan(""), v = std::nan("");
    if (colon != std::string::npos) {
      std::string rest = s.substr(colon + 1);
      std::size_t pos = 0;
      while (pos <= rest.size()) {
        const auto comma = rest.find(',', pos);
        const std::string kv = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::Parse, "mean id '" + text + "': expected key=value");
        const std::string key = kv.substr(0, eq);
        const std::string val = kv.substr(eq + 1);
        char* end = nullptr;
        const double x = std::strtod(val.c_str(), &end);
        if (val.empty() || *end != '\0') throw Error(ErrorKind::Parse, "mean id '" + text + "': bad number '" + val + "'");
        if (key == "r") {
          r = x;
        } else if (key == "v") {
          v = x;
        } else {
          throw Error(ErrorKind::Parse, "mean id '" + text + "': unknown parameter '" + key + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
    }
    if (std::isnan(v)) v = 0.5;
    OpMonotone f;
    if (fam == "arithmetic") {
      f = arithmetic(v);
    } else if (fam == "geometric") {
      f = geometric(v);
    } else if (fam == "harmonic") {
      f = harmonic(v);
    } else if (fam == "heinz") {
      f = heinz(v);
    } else if (fam == "power") {
      if (std::isnan(r)) throw Error(ErrorKind::Parse, "mean id '" + text + "': power needs r");
      f = power(r, v);
    } else {
      throw Error(ErrorKind::Parse, "unknown mean family '" + fam + "'");
    }
    f.adjoint = adj;
    f.validate();
    return f;
  }

  /// Parameter domain, f(1) = 1 to 1e-14, and monotonicity on a log grid over [1e-4, 1e4].
  void validate() const {
    if (!(v >= 0 && v <= 1)) throw Error(ErrorKind::Domain, "mean weight v must lie in [0, 1]");
    if (family == MeanFamily::Power && !(r >= -1 && r <= 1)) {
      throw Error(ErrorKind::Domain, "power mean exponent r must lie in [-1, 1]");
    }
    if (std::abs((*this)(1.0) - 1.0) > 1e-14) throw Error(ErrorKind::Domain, id() + ": f(1) != 1");
    double prev = (*this)(1e-4);
    for (int i = 1; i < 10000; ++i) {
      const double t = std::pow(10.0, -4.0 + 8.0 * i / 9999.0);
      const double ft = (*this)(t);
      if (!(ft >= prev * (1 - 1e-14))) throw Error(ErrorKind::Domain, id() + ": not nondecreasing");
      prev = ft;
    }
  }

  bool operator==(const OpMonotone&) const = default;

 private:
  static double pow_principal(double t, double e) { return std::pow(t, e); }
  static long double pow_principal(long double t, double e) { return std::pow(t, static_cast<long double>(e)); }
  template <typename Real>
  static Complex<Real> pow_principal(const Complex<Real>& z, double e) {
    if (e == 0) return Complex<Real>(1);
    if (e == 1) return z;
    return std::exp(static_cast<Real>(e) * std::log(z));
  }

  // ((1-v) + v t^r)^{1/r}; the real case goes through log1p/expm1 to stay accurate as r -> 0.
  static double power_real(double t, double r, double v) {
    return std::exp(std::log1p(v * std::expm1(r * std::log(t))) / r);
  }
  static long double power_real(long double t, double r, double v) {
    const long double rl = r;
    return std::exp(std::log1p(static_cast<long double>(v) * std::expm1(rl * std::log(t))) / rl);
  }
  template <typename T>
  T power_general(const T& t) const {
    if constexpr (std::is_floating_point_v<T>) {
      return power_real(t, r, v);
    } else {
      const T one(1);
      const T w(v);
      return pow_principal((one - w) + w * pow_principal(t, r), 1 / r);
    }
  }

  template <typename Real>
  CMatrix<Real> eval_triangular_base(const CMatrix<Real>& t) const {
    const Eigen::Index n = t.rows();
    const CMatrix<Real> id = CMatrix<Real>::Identity(n, n);
    const Real w = static_cast<Real>(v);
    auto arith = [&](const CMatrix<Real>& x) -> CMatrix<Real> { return (Real(1) - w) * id + w * x; };
    auto harm = [&](const CMatrix<Real>& x) -> CMatrix<Real> {
      return detail::tri_solve<Real>((Real(1) - w) * x + w * id, x);
    };
    switch (family) {
      case MeanFamily::Arithmetic: return arith(t);
      case MeanFamily::Harmonic: return harm(t);
      case MeanFamily::Geometric: return detail::tri_pow<Real>(t, w);
      case MeanFamily::Heinz:
        return (detail::tri_pow<Real>(t, w) + detail::tri_pow<Real>(t, Real(1) - w)) / Real(2);
      case MeanFamily::Power:
        if (r == 0) return detail::tri_pow<Real>(t, w);
        if (r == 1) return arith(t);
        if (r == -1) return harm(t);
        return detail::tri_pow<Real>(arith(detail::tri_pow<Real>(t, static_cast<Real>(r))),
                                     Real(1) / static_cast<Real>(r));
    }
    return t;
  }
};

/// An operator mean identified by its representing function.
struct MeanSpec {
  OpMonotone f;
  std::string name;

  MeanSpec() = default;
  explicit MeanSpec(const OpMonotone& fn) : f(fn), name(fn.id()) {}
  MeanSpec(const OpMonotone& fn, std::string label) : f(fn), name(std::move(label)) {}

  static MeanSpec parse(const std::string& id) { return MeanSpec(OpMonotone::parse(id)); }
};

/// A sigma B = A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2} with principal branches; A, B accretive.
template <typename Real>
CMatrix<Real> mean_eval(const MeanSpec& sigma, const CMatrix<Real>& a, const CMatrix<Real>& b,
                        const MatFnOptions& opts = {}) {
  detail::require_square(a, "mean_eval");
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "mean_eval: operands differ in size");
  }
  if (!is_accretive(a) || !is_accretive(b)) {
    throw Error(ErrorKind::NotAccretive, "mean_eval: operands must have positive definite real part");
  }
  const OpMonotone& f = sigma.f;
  const Real w = static_cast<Real>(f.v);
  const bool arithmetic = !f.adjoint && (f.family == MeanFamily::Arithmetic ||
                                         (f.family == MeanFamily::Power && f.r == 1));
  const bool harmonic = !f.adjoint && (f.family == MeanFamily::Harmonic ||
                                       (f.family == MeanFamily::Power && f.r == -1));
  if (arithmetic) return (Real(1) - w) * a + w * b;
  if (harmonic) return inverse<Real>(CMatrix<Real>((Real(1) - w) * inverse<Real>(a) + w * inverse<Real>(b)));
  const CMatrix<Real> s = sqrtm<Real>(a, opts);
  const CMatrix<Real> s_inv = inverse<Real>(s);
  const CMatrix<Real> core = s_inv * b * s_inv;
  return s * mat_fn<Real>(core, f.template scalar_fn<Real>(), opts) * s;
}

/// Mean of Hermitian positive definite operands, returned with exact Hermitian symmetry.
template <typename Real>
HermMatrix<Real> mean_eval(const MeanSpec& sigma, const HermMatrix<Real>& a, const HermMatrix<Real>& b,
                           const MatFnOptions& opts = {}) {
  return HermMatrix<Real>(mean_eval<Real>(sigma, a.matrix(), b.matrix(), opts));
}

inline MeanSpec adjoint_mean(const MeanSpec& sigma) {
  return MeanSpec(sigma.f.adjoint_fn());
}

enum class MeanOrder { Leq, Geq, Incomparable };

inline const char* to_string(MeanOrder o) {
  switch (o) {
    case MeanOrder::Leq: return "leq";
    case MeanOrder::Geq: return "geq";
    case MeanOrder::Incomparable: return "incomparable";
  }
  return "?";
}

/// Compares representing functions on 10^4 log-spaced points in [1e-6, 1e6].
/// Grid-certified, not symbolic; equal functions report Leq.
inline MeanOrder scalar_order(const MeanSpec& s1, const MeanSpec& s2) {
  bool leq = true, geq = true;
  for (int i = 0; i < 10000; ++i) {
    const double t = std::pow(10.0, -6.0 + 12.0 * i / 9999.0);
    const double f1 = s1.f(t);
    const double f2 = s2.f(t);
    const double slack = 1e-12 * std::max({1.0, std::abs(f1), std::abs(f2)});
    if (f1 > f2 + slack) leq = false;
    if (f2 > f1 + slack) geq = false;
  }
  if (leq) return MeanOrder::Leq;
  if (geq) return MeanOrder::Geq;
  return MeanOrder::Incomparable;
}

template <typename Real>
struct SandwichVerdict {
  LoewnerVerdict<Real> left;
  LoewnerVerdict<Real> right;
};

/// Re A sigma Re B <= Re(A sigma B) <= sec^2(theta) (Re A sigma Re B).
template <typename Real>
SandwichVerdict<Real> sandwich_check(const MeanSpec& sigma, const CMatrix<Real>& a, const CMatrix<Real>& b,
                                     Real theta, const ToleranceSpec& tol = {}, const MatFnOptions& opts = {}) {
  const HermMatrix<Real> lower = mean_eval<Real>(sigma, real_part(a), real_part(b), opts);
  const HermMatrix<Real> middle = real_part<Real>(mean_eval<Real>(sigma, a, b, opts));
  const Real sec2 = Real(1) / (std::cos(theta) * std::cos(theta));
  return {loewner_leq(lower, middle, tol), loewner_leq(middle, sec2 * lower, tol)};
}

template <typename Real>
SandwichVerdict<Real> sandwich_check(const MeanSpec& sigma, const SectorSample& a, const SectorSample& b,
                                     const ToleranceSpec& tol = {}, const MatFnOptions& opts = {}) {
  return sandwich_check<Real>(sigma, a.A.cast<Complex<Real>>(), b.A.cast<Complex<Real>>(),
                              static_cast<Real>(std::max(a.theta, b.theta)), tol, opts);
}

/// f applied to a Hermitian matrix by functional calculus.
template <typename Real>
HermMatrix<Real> herm_fn(const OpMonotone& f, const HermMatrix<Real>& h) {
  return herm_apply(h, [&f](Real x) { return f(x); });
}

/// f(Re A) <= Re f(A) <= sec^2(theta) f(Re A).
template <typename Real>
SandwichVerdict<Real> fn_sandwich_check(const OpMonotone& f, const CMatrix<Real>& a, Real theta,
                                        const ToleranceSpec& tol = {}, const MatFnOptions& opts = {}) {
  const HermMatrix<Real> lower = herm_fn<Real>(f, real_part(a));
  const HermMatrix<Real> middle = real_part<Real>(mat_fn<Real>(a, f.template scalar_fn<Real>(), opts));
  const Real sec2 = Real(1) / (std::cos(theta) * std::cos(theta));
  return {loewner_leq(lower, middle, tol), loewner_leq(middle, sec2 * lower, tol)};
}

template <typename Real>
SandwichVerdict<Real> fn_sandwich_check(const OpMonotone& f, const SectorSample& a,
                                        const ToleranceSpec& tol = {}, const MatFnOptions& opts = {}) {
  return fn_sandwich_check<Real>(f, a.A.cast<Complex<Real>>(), static_cast<Real>(a.theta), tol, opts);
}

}  // namespace sectorlab
