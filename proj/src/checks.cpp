#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "sectorlab/verifier.hpp"

namespace sectorlab {
namespace {

template <typename Real>
class ClauseEvaluator {
 public:
  using Mat = CMatrix<Real>;
  using Herm = HermMatrix<Real>;

  ClauseEvaluator(const TrialBundle& b, const EvalOptions& opts)
      : b_(b),
        opts_(opts),
        theta_(static_cast<Real>(b.theta)),
        sec_(opts.drop_sec ? Real(1) : Real(1) / std::cos(static_cast<Real>(b.theta))),
        m_(static_cast<Real>(b.m)),
        M_(static_cast<Real>(b.M)),
        K_((M_ + m_) * (M_ + m_) / (4 * m_ * M_)),
        p_(static_cast<Real>(b.p)) {}

  std::vector<ClauseResult> run();

 private:
  Mat cast(const CMatrixd& x) const { return x.cast<Complex<Real>>(); }
  Real sec(Real power) const { return std::pow(sec_, power); }
  Real alpha(Real p) const { return std::max(K_, std::pow(Real(4), Real(1) - Real(2) / p) * K_); }

  Mat mean(const MeanSpec& s, const Mat& x, const Mat& y) const { return mean_eval<Real>(s, x, y, opts_.kernel); }
  Herm mean(const MeanSpec& s, const Herm& x, const Herm& y) const { return mean_eval<Real>(s, x, y, opts_.kernel); }
  Herm re(const Mat& x) const { return real_part<Real>(x); }
  Mat phi(const Mat& x) const { return b_.phi.template apply<Real>(x); }
  Herm phi(const Herm& x) const { return b_.phi.template apply<Real>(x); }
  Herm hpow(const Herm& x, Real p) const { return herm_pow<Real>(x, p); }
  Herm hinv(const Herm& x) const { return herm_pow<Real>(x, Real(-1)); }
  Mat inv(const Mat& x) const { return inverse<Real>(x); }
  Mat fm(const Mat& x) const { return mat_fn<Real>(x, b_.f.template scalar_fn<Real>(), opts_.kernel); }
  Herm fh(const Herm& x) const { return herm_fn<Real>(b_.f, x); }
  Real fs(Real x) const { return b_.f(x); }
  Real omega(const Mat& x) const { return numerical_radius<Real>(x); }
  Real det_log(const Mat& x) const { return log_det_abs<Real>(x); }
  Mat id(Eigen::Index n) const { return Mat::Identity(n, n); }

  std::vector<NormSpec> norms() const {
    return {NormSpec::op(), NormSpec::trace(), NormSpec::frobenius(), NormSpec::schatten(3),
            NormSpec::kyfan((b_.n + 1) / 2)};
  }

  Real applied(const std::string& name, Real c) const {
    if (opts_.mutated_clause.empty() || opts_.mutated_clause == name) return c * static_cast<Real>(opts_.factor);
    return c;
  }

  void loewner(const std::string& name, const Herm& lhs, const Herm& rhs0, Real constant) {
    const Real c = applied(name, constant);
    const Herm g = c * rhs0;
    const LoewnerVerdict<Real> v = loewner_leq(lhs, g, opts_.tol);
    ClauseResult r;
    r.name = name;
    r.kind = ClauseKind::Loewner;
    r.constant = static_cast<double>(c);
    r.slack = static_cast<double>(v.slack);
    r.threshold = static_cast<double>(v.threshold);
    r.pass = v.pass;
    r.ratio = static_cast<double>(relative_max_eig(lhs, rhs0));
    out_.push_back(r);
  }

  void scalar(const std::string& name, Real lhs, Real rhs0, Real constant, Real extra_abs = 0) {
    const Real c = applied(name, constant);
    const Real rhs = c * rhs0;
    ClauseResult r;
    r.name = name;
    r.kind = ClauseKind::Scalar;
    r.constant = static_cast<double>(c);
    r.slack = static_cast<double>(rhs - lhs);
    r.threshold = opts_.tol.rel * static_cast<double>(std::max(std::abs(rhs), std::abs(lhs))) + opts_.tol.abs +
                  static_cast<double>(extra_abs);
    r.pass = r.slack >= -r.threshold;
    r.ratio = rhs0 > Real(0) ? static_cast<double>(lhs / rhs0) : std::numeric_limits<double>::quiet_NaN();
    out_.push_back(r);
  }

  // Compares lhs <= constant * rhs0 given logarithms of all three factors.
  void log_scalar(const std::string& name, Real log_lhs, Real log_rhs0, Real log_constant) {
    const Real log_c = log_constant + std::log(static_cast<Real>(opts_.factor));
    const Real lc = (opts_.mutated_clause.empty() || opts_.mutated_clause == name) ? log_c : log_constant;
    const Real log_rhs = lc + log_rhs0;
    ClauseResult r;
    r.name = name;
    r.kind = ClauseKind::LogScalar;
    r.constant = static_cast<double>(std::exp(lc));
    r.slack = static_cast<double>(log_rhs - log_lhs);
    r.threshold = opts_.tol.rel * std::max({1.0, std::abs(static_cast<double>(log_lhs)),
                                            std::abs(static_cast<double>(log_rhs))}) +
                  opts_.tol.abs;
    r.pass = r.slack >= -r.threshold;
    r.ratio = static_cast<double>(std::exp(log_lhs - log_rhs0));
    out_.push_back(r);
  }

  void check_f1();
  void check_f2();
  void check_f3();
  void check_f4();
  void check_f5();
  void check_p1();
  void check_p2();
  void check_m1();
  void check_m2_m3(bool high_branch);
  void check_m4();
  void check_m5();
  void check_m6();
  void check_m7();
  void check_m8();
  void check_d0();
  void check_d1();
  void check_d2();
  void check_d3();
  void check_d4();
  void check_d5();
  void check_w0();
  void check_w1();
  void check_w2();

  const TrialBundle& b_;
  const EvalOptions& opts_;
  Real theta_;
  Real sec_;
  Real m_;
  Real M_;
  Real K_;
  Real p_;
  std::vector<ClauseResult> out_;
};

// Re(A^{-1}) <= (Re A)^{-1} <= sec^2 Re(A^{-1})
template <typename Real>
void ClauseEvaluator<Real>::check_f1() {
  const Mat a = cast(b_.A);
  const Herm re_inv = re(inv(a));
  const Herm inv_re = hinv(re(a));
  loewner("left", re_inv, inv_re, Real(1));
  loewner("right", inv_re, re_inv, sec(2));
}

// Re A s Re B <= Re(A s B) <= sec^2 (Re A s Re B), and A s B stays in the sector.
template <typename Real>
void ClauseEvaluator<Real>::check_f2() {
  const Mat a = cast(b_.A), bb = cast(b_.B);
  const Mat ab = mean(b_.sigma_free, a, bb);
  const Herm lower = mean(b_.sigma_free, re(a), re(bb));
  const Herm middle = re(ab);
  loewner("left", lower, middle, Real(1));
  loewner("right", middle, lower, sec(2));
  scalar("sector", sector_angle<Real>(ab), theta_, Real(1), Real(1e-8));
}

// Choi: Phi(A)^{-1} <= Phi(A^{-1})
template <typename Real>
void ClauseEvaluator<Real>::check_f3() {
  const Herm a = re(cast(b_.A));
  loewner("choi", hinv(phi(a)), phi(hinv(a)), Real(1));
}

// |AB| <= |A+B|^2 / 4 for A, B >= 0 (operator norm)
template <typename Real>
void ClauseEvaluator<Real>::check_f4() {
  const Herm a = re(cast(b_.A)), bb = re(cast(b_.B));
  const Real lhs = ui_norm<Real>(Mat(a.matrix() * bb.matrix()), NormSpec::op());
  const Real s = ui_norm<Real>((a + bb).matrix(), NormSpec::op());
  scalar("norm", lhs, s * s, Real(0.25));
}

// |A^p + B^p| <= |(A+B)^p| for p > 1
template <typename Real>
void ClauseEvaluator<Real>::check_f5() {
  const Herm a = re(cast(b_.A)), bb = re(cast(b_.B));
  const Herm lhs = hpow(a, p_) + hpow(bb, p_);
  const Herm rhs = hpow(a + bb, p_);
  for (const auto& nm : {NormSpec::op(), NormSpec::frobenius(), NormSpec::trace()}) {
    scalar("norm[" + nm.name() + "]", ui_norm<Real>(lhs.matrix(), nm), ui_norm<Real>(rhs.matrix(), nm), Real(1));
  }
}

// PSD case: Phi^p(A s1 B) <= alpha^p Phi^p(A s2 B)
template <typename Real>
void ClauseEvaluator<Real>::check_p1() {
  const Herm a = re(cast(b_.A)), bb = re(cast(b_.B));
  const Herm lhs = hpow(phi(mean(b_.sigma1, a, bb)), p_);
  const Herm rhs = hpow(phi(mean(b_.sigma2, a, bb)), p_);
  loewner("main", lhs, rhs, std::pow(alpha(p_), p_));
}

// PSD case: f(Phi A) s1 f(Phi B) <= K f(Phi(A s2 B))
template <typename Real>
void ClauseEvaluator<Real>::check_p2() {
  const Herm a = re(cast(b_.A)), bb = re(cast(b_.B));
  const Herm lhs = mean(b_.sigma1, fh(phi(a)), fh(phi(bb)));
  const Herm rhs = fh(phi(mean(b_.sigma2, a, bb)));
  loewner("main", lhs, rhs, K_);
}

// cos^2 Phi Re(A s1 B) + mM Phi^{-1} Re(A s2 B) <= (M+m) I
template <typename Real>
void ClauseEvaluator<Real>::check_m1() {
  const Mat a = cast(b_.A), bb = cast(b_.B);
  const Herm x1 = phi(re(mean(b_.sigma1, a, bb)));
  const Herm x2 = phi(re(mean(b_.sigma2, a, bb)));
  const Real cos2 = Real(1) / (sec_ * sec_);
  const Herm lhs = cos2 * x1 + (m_ * M_) * hinv(x2);
  loewner("main", lhs, Herm::identity(lhs.dim()), M_ + m_);
}

// Re^p Phi(A s1 B) <= sec^{2p} K^p Re^p Phi(A s2 B)  (p <= 2), extra 4^{p-2} for p >= 2
template <typename Real>
void ClauseEvaluator<Real>::check_m2_m3(bool high_branch) {
  const Mat a = cast(b_.A), bb = cast(b_.B);
  const Herm lhs = hpow(re(phi(mean(b_.sigma1, a, bb))), p_);
  const Herm rhs = hpow(re(phi(mean(b_.sigma2, a, bb))), p_);
  Real c = sec(2 * p_) * std::pow(K_, p_);
  if (high_branch) c *= std::pow(Real(4), p_ - Real(2));
  loewner("main", lhs, rhs, c);
}

// Re^p Phi(A nabla_v B) <= alpha^p Re^p Phi(A s B) for harmonic_v <= s <= arithmetic_v
template <typename Real>
void ClauseEvaluator<Real>::check_m4() {
  const Mat a = cast(b_.A), bb = cast(b_.B);
  const MeanSpec nabla(OpMonotone::arithmetic(b_.v));
  const Herm lhs = hpow(re(phi(mean(nabla, a, bb))), p_);
  const Herm rhs = hpow(re(phi(mean(b_.sigma2, a, bb))), p_);
  loewner("main", lhs, rhs, std::pow(alpha(p_), p_));
}

// Inverse-bounds hypothesis: Phi^p Re(A s1 B) <= alpha^p sec^{4p} Phi^p Re(A s2 B),
// and the substituted form with inverses under direct bounds.
template <typename Real>
void ClauseEvaluator<Real>::check_m5() {
  const Real c = std::pow(alpha(p_), p_) * sec(4 * p_);
  {
    const Mat a = cast(b_.A_inv_bounded), bb = cast(b_.B_inv_bounded);
    const Herm lhs = hpow(phi(re(mean(b_.sigma1, a, bb))), p_);
    const Herm rhs = hpow(phi(re(mean(b_.sigma2, a, bb))), p_);
    loewner("main", lhs, rhs, c);
  }
  {
    const Mat a = cast(b_.A), bb = cast(b_.B);
    const Herm lhs = hpow(phi(re(inv(mean(b_.sigma1, a, bb)))), p_);
    const Herm rhs = hpow(phi(re(inv(mean(b_.sigma2, a, bb)))), p_);
    loewner("remark", lhs, rhs, c);
  }
}

// s1 <= s2: Re(A s1 B) <= sec^2 Re(A s2 B) and Re((A s2 B)^{-1}) <= sec^2 Re((A s1 B)^{-1})
template <typename Real>
void ClauseEvaluator<Real>::check_m6() {
  const Mat a = cast(b_.A), bb = cast(b_.B);
  const auto [lo, hi] = b_.ordered_pair();
  const Mat x_lo = mean(lo, a, bb);
  const Mat x_hi = mean(hi, a, bb);
  loewner("a", re(x_lo), re(x_hi), sec(2));
  loewner("b", re(inv(x_hi)), re(inv(x_lo)), sec(2));
  loewner("b_real_part_inverse", hinv(re(x_hi)), hinv(re(x_lo)), sec(2));
}

// Re f(Phi(A s1 B)) <= sec^2 Re f(K sec^2 Phi(A s2 B)) <= K sec^4 Re f(Phi(A s2 B)),
// without K when s1 <= s2, and the arithmetic-mean companion.
template <typename Real>
void ClauseEvaluator<Real>::check_m7() {
  const Mat a = cast(b_.A), bb = cast(b_.B);
  const Real sec2 = sec(2);
  {
    const Mat y1 = phi(mean(b_.sigma1, a, bb));
    const Mat y2 = phi(mean(b_.sigma2, a, bb));
    const Herm left = re(fm(y1));
    const Herm mid = re(fm(Mat(K_ * sec2 * y2)));
    const Herm right = re(fm(y2));
    loewner("main", left, right, K_ * sec2 * sec2);
    loewner("chain1", left, mid, sec2);
    loewner("chain2", mid, right, K_ * sec2);
  }
  {
    const auto [lo, hi] = b_.ordered_pair();
    const Mat y1 = phi(mean(lo, a, bb));
    const Mat y2 = phi(mean(hi, a, bb));
    const Herm left = re(fm(y1));
    const Herm mid = re(fm(Mat(sec2 * y2)));
    const Herm right = re(fm(y2));
    loewner("ordered", left, right, sec2 * sec2);
    loewner("ordered_chain1", left, mid, sec2);
    loewner("ordered_chain2", mid, right, sec2);
  }
  {
    const MeanSpec nabla(OpMonotone::arithmetic(b_.v));
    const Mat y1 = phi(mean(nabla, a, bb));
    const Mat y2 = phi(mean(b_.sigma2, a, bb));
    const Herm left = re(fm(y1));
    const Herm mid = re(fm(Mat(K_ * y2)));
    const Herm right = re(fm(y2));
    loewner("nabla", left, right, K_ * sec2);
    loewner("nabla_chain1", left, mid, sec2);
    loewner("nabla_chain2", mid, right, K_);
  }
}

// Re(f(Phi A) s1 f(Phi B)) <= K sec^4 Re f(Phi(A s2 B)); with s2 = nabla_v the K drops.
template <typename Real>
void ClauseEvaluator<Real>::check_m8() {
  const Mat a = cast(b_.A), bb = cast(b_.B);
  const Herm lhs = re(mean(b_.sigma1, fm(phi(a)), fm(phi(bb))));
  const Real sec4 = sec(4);
  loewner("main", lhs, re(fm(phi(mean(b_.sigma2, a, bb)))), K_ * sec4);
  const MeanSpec nabla(OpMonotone::arithmetic(b_.v));
  loewner("remark", lhs, re(fm(phi(mean(nabla, a, bb)))), sec4);
}

// det, singular value and norm sandwiches for a single sector matrix.
template <typename Real>
void ClauseEvaluator<Real>::check_d0() {
  const Mat a = cast(b_.A);
  const Herm ra = re(a);
  const Real n = static_cast<Real>(b_.n);
  const Real log_det_re = det_log(ra.matrix());
  const Real log_det_a = det_log(a);
  log_scalar("det_lower", log_det_re, log_det_a, Real(0));
  log_scalar("det_upper", log_det_a, log_det_re, n * std::log(sec_));
  const RVector<Real> lam = herm_eigenvalues(ra).reverse();
  const RVector<Real> s = singular_values<Real>(a);
  for (int j = 0; j < b_.n; ++j) {
    const std::string tag = "[j=" + std::to_string(j + 1) + "]";
    scalar("sv_lower" + tag, lam(j), s(j), Real(1));
    scalar("sv_upper" + tag, s(j), lam(j), sec(2));
  }
  for (const auto& nm : norms()) {
    const Real nr = ui_norm<Real>(ra.matrix(), nm);
    const Real na = ui_norm<Real>(a, nm);
    scalar("norm_lower[" + nm.name() + "]", nr, na, Real(1));
    scalar("norm_upper[" + nm.name() + "]", na, nr, sec_);
  }
}

// |det(A s1 B)| <= sec^{3n} K^n |det(A s2 B)|; sec^{5n} under inverse bounds; sec^n for nabla_v.
template <typename Real>
void ClauseEvaluator<Real>::check_d1() {
  const Mat a = cast(b_.A), bb = cast(b_.B);
  const Mat ai = cast(b_.A_inv_bounded), bi = cast(b_.B_inv_bounded);
  const Real n = static_cast<Real>(b_.n);
  const Real lk = n * std::log(K_), ls = std::log(sec_);
  log_scalar("direct", det_log(mean(b_.sigma1, a, bb)), det_log(mean(b_.sigma2, a, bb)), 3 * n * ls + lk);
  log_scalar("inverse", det_log(mean(b_.sigma1, ai, bi)), det_log(mean(b_.sigma2, ai, bi)), 5 * n * ls + lk);
  const MeanSpec nabla(OpMonotone::arithmetic(b_.v));
  log_scalar("nabla", det_log(mean(nabla, a, bb)), det_log(mean(b_.sigma2, a, bb)), n * ls + lk);
}

// s_j(A s1 B) <= sec^4 K s_j(A s2 B); sec^6 under inverse bounds; sec^2 for nabla_v.
template <typename Real>
void ClauseEvaluator<Real>::check_d2() {
  const Mat a = cast(b_.A), bb = cast(b_.B);
  const Mat ai = cast(b_.A_inv_bounded), bi = cast(b_.B_inv_bounded);
  const MeanSpec nabla(OpMonotone::arithmetic(b_.v));
  const RVector<Real> s1 = singular_values<Real>(mean(b_.sigma1, a, bb));
  const RVector<Real> s2 = singular_values<Real>(mean(b_.sigma2, a, bb));
  const RVector<Real> t1 = singular_values<Real>(mean(b_.sigma1, ai, bi));
  const RVector<Real> t2 = singular_values<Real>(mean(b_.sigma2, ai, bi));
  const RVector<Real> u1 = singular_values<Real>(mean(nabla, a, bb));
  for (int j = 0; j < b_.n; ++j) {
    const std::string tag = "[j=" + std::to_string(j + 1) + "]";
    scalar("direct" + tag, s1(j), s2(j), sec(4) * K_);
    scalar("inverse" + tag, t1(j), t2(j), sec(6) * K_);
    scalar("nabla" + tag, u1(j), s2(j), sec(2) * K_);
  }
}

// |A s1 B| <= sec^3 K |A s2 B|; sec^5 under inverse bounds; sec for nabla_v; every norm in the set.
template <typename Real>
void ClauseEvaluator<Real>::check_d3() {
  const Mat a = cast(b_.A), bb = cast(b_.B);
  const Mat ai = cast(b_.A_inv_bounded), bi = cast(b_.B_inv_bounded);
  const MeanSpec nabla(OpMonotone::arithmetic(b_.v));
  const RVector<Real> s1 = singular_values<Real>(mean(b_.sigma1, a, bb));
  const RVector<Real> s2 = singular_values<Real>(mean(b_.sigma2, a, bb));
  const RVector<Real> t1 = singular_values<Real>(mean(b_.sigma1, ai, bi));
  const RVector<Real> t2 = singular_values<Real>(mean(b_.sigma2, ai, bi));
  const RVector<Real> u1 = singular_values<Real>(mean(nabla, a, bb));
  for (const auto& nm : norms()) {
    const std::string tag = "[" + nm.name() + "]";
    scalar("direct" + tag, norm_from_singular_values(s1, nm), norm_from_singular_values(s2, nm), sec(3) * K_);
    scalar("inverse" + tag, norm_from_singular_values(t1, nm), norm_from_singular_values(t2, nm), sec(5) * K_);
    scalar("nabla" + tag, norm_from_singular_values(u1, nm), norm_from_singular_values(s2, nm), sec_ * K_);
  }
}

// |det(A+B)| <= sec^{2n} |det(I+A)| |det(I+B)| and |A+B| <= sec |I+A| |I+B|
template <typename Real>
void ClauseEvaluator<Real>::check_d4() {
  const Mat a = cast(b_.A), bb = cast(b_.B);
  const Mat i = id(a.rows());
  const Real n = static_cast<Real>(b_.n);
  log_scalar("det", det_log(Mat(a + bb)), det_log(Mat(i + a)) + det_log(Mat(i + bb)), 2 * n * std::log(sec_));
  for (const auto& nm : norms()) {
    scalar("norm[" + nm.name() + "]", ui_norm<Real>(Mat(a + bb), nm),
           ui_norm<Real>(Mat(i + a), nm) * ui_norm<Real>(Mat(i + bb), nm), sec_);
  }
}

// s <= nabla: |det(A s B)| <= sec^{4n}/2^n |det(I+A)||det(I+B)|, |A s B| <= sec^4/2 |I+A||I+B|
template <typename Real>
void ClauseEvaluator<Real>::check_d5() {
  const Mat a = cast(b_.A), bb = cast(b_.B);
  const Mat i = id(a.rows());
  const Mat x = mean(b_.sigma_below_arith, a, bb);
  const Real n = static_cast<Real>(b_.n);
  log_scalar("det", det_log(x), det_log(Mat(i + a)) + det_log(Mat(i + bb)),
             4 * n * std::log(sec_) - n * std::log(Real(2)));
  for (const auto& nm : norms()) {
    scalar("norm[" + nm.name() + "]", ui_norm<Real>(x, nm),
           ui_norm<Real>(Mat(i + a), nm) * ui_norm<Real>(Mat(i + bb), nm), sec(4) / Real(2));
  }
}

// omega(Re A) = |Re A|; f(|Re A|) <= |Re f(A)| <= sec^2 f(|Re A|); omega(Re A) <= omega(A) <= sec omega(Re A)
template <typename Real>
void ClauseEvaluator<Real>::check_w0() {
  const Mat a = cast(b_.A);
  const Herm ra = re(a);
  const Real w_re = omega(ra.matrix());
  const Real n_re = op_norm(ra);
  scalar("radius_of_real_part_upper", w_re, n_re, Real(1));
  scalar("radius_of_real_part_lower", n_re, w_re, Real(1));
  const Real f_norm = fs(n_re);
  const Real re_f_norm = op_norm(re(fm(a)));
  scalar("fn_norm_lower", f_norm, re_f_norm, Real(1));
  scalar("fn_norm_upper", re_f_norm, f_norm, sec(2));
  const Real w_a = omega(a);
  scalar("radius_lower", w_re, w_a, Real(1));
  scalar("radius_upper", w_a, w_re, sec_);
}

// f(omega(A s1 B)) <= sec^3 K omega(f(A s2 B)); sec K for nabla_v.
template <typename Real>
void ClauseEvaluator<Real>::check_w1() {
  const Mat a = cast(b_.A), bb = cast(b_.B);
  const Real rhs = omega(fm(mean(b_.sigma2, a, bb)));
  scalar("main", fs(omega(mean(b_.sigma1, a, bb))), rhs, sec(3) * K_);
  const MeanSpec nabla(OpMonotone::arithmetic(b_.v));
  scalar("nabla", fs(omega(mean(nabla, a, bb))), rhs, sec_ * K_);
}

// omega(f(Phi A) s1 f(Phi B)) <= K sec^5 omega(f(Phi(A s2 B)))
template <typename Real>
void ClauseEvaluator<Real>::check_w2() {
  const Mat a = cast(b_.A), bb = cast(b_.B);
  const Real lhs = omega(mean(b_.sigma1, fm(phi(a)), fm(phi(bb))));
  scalar("main", lhs, omega(fm(phi(mean(b_.sigma2, a, bb)))), K_ * sec(5));
}

template <typename Real>
std::vector<ClauseResult> ClauseEvaluator<Real>::run() {
  const std::string& c = b_.check;
  if (c == "F1") check_f1();
  else if (c == "F2") check_f2();
  else if (c == "F3") check_f3();
  else if (c == "F4") check_f4();
  else if (c == "F5") check_f5();
  else if (c == "P1") check_p1();
  else if (c == "P2") check_p2();
  else if (c == "M1") check_m1();
  else if (c == "M2") check_m2_m3(false);
  else if (c == "M3") check_m2_m3(true);
  else if (c == "M4") check_m4();
  else if (c == "M5") check_m5();
  else if (c == "M6") check_m6();
  else if (c == "M7") check_m7();
  else if (c == "M8") check_m8();
  else if (c == "D0") check_d0();
  else if (c == "D1") check_d1();
  else if (c == "D2") check_d2();
  else if (c == "D3") check_d3();
  else if (c == "D4") check_d4();
  else if (c == "D5") check_d5();
  else if (c == "W0") check_w0();
  else if (c == "W1") check_w1();
  else if (c == "W2") check_w2();
  else throw Error(ErrorKind::Config, "unknown check id '" + c + "'");
  return std::move(out_);
}

}  // namespace

template <typename Real>
std::vector<ClauseResult> evaluate_clauses(const TrialBundle& bundle, const EvalOptions& opts) {
  return ClauseEvaluator<Real>(bundle, opts).run();
}

template std::vector<ClauseResult> evaluate_clauses<double>(const TrialBundle&, const EvalOptions&);
template std::vector<ClauseResult> evaluate_clauses<long double>(const TrialBundle&, const EvalOptions&);

}  // namespace sectorlab
