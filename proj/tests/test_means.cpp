#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "sectorlab/means.hpp"

using namespace sectorlab;
using cd = std::complex<double>;

namespace {

std::vector<OpMonotone> catalog() {
  std::vector<OpMonotone> out;
  for (double v : {0.0, 0.3, 0.5, 1.0}) {
    out.push_back(OpMonotone::arithmetic(v));
    out.push_back(OpMonotone::geometric(v));
    out.push_back(OpMonotone::harmonic(v));
    out.push_back(OpMonotone::heinz(v));
    OpMonotone h = OpMonotone::heinz(v);
    h.adjoint = true;
    out.push_back(h);
    for (double r : {-1.0, -0.4, 0.5, 1.0}) out.push_back(OpMonotone::power(r, v));
  }
  return out;
}

double rel_err(const CMatrixd& x, const CMatrixd& ref) { return (x - ref).norm() / std::max(1.0, ref.norm()); }

HermMatrixd pd(int n, Rng& rng) { return random_pd(n, 0.2, 5, rng); }

}  // namespace

TEST(OpMonotone, CatalogIsNormalizedAndMonotone) {
  for (const auto& f : catalog()) {
    EXPECT_NO_THROW(f.validate()) << f.id();
    EXPECT_NEAR(f(1.0), 1.0, 1e-15) << f.id();
  }
}

TEST(OpMonotone, ValidateRejectsBadParameters) {
  EXPECT_THROW(OpMonotone::arithmetic(1.5).validate(), Error);
  EXPECT_THROW(OpMonotone::power(2, 0.5).validate(), Error);
}

TEST(OpMonotone, IdsRoundTrip) {
  for (const auto& f : catalog()) {
    EXPECT_EQ(OpMonotone::parse(f.id(true)), f) << f.id();
  }
  const auto p = OpMonotone::parse("power:r=0.3,v=0.25");
  EXPECT_EQ(p.family, MeanFamily::Power);
  EXPECT_DOUBLE_EQ(p.r, 0.3);
  EXPECT_DOUBLE_EQ(p.v, 0.25);
  EXPECT_THROW(OpMonotone::parse("median:v=0.5"), Error);
  EXPECT_THROW(OpMonotone::parse("power:v=0.5"), Error);
}

TEST(OpMonotone, PowerFamilyEndpointsAndContinuity) {
  for (double t : {0.01, 0.5, 3.0, 100.0}) {
    EXPECT_NEAR(OpMonotone::power(1, 0.3)(t), OpMonotone::arithmetic(0.3)(t), 1e-14);
    EXPECT_NEAR(OpMonotone::power(-1, 0.3)(t), OpMonotone::harmonic(0.3)(t), 1e-14);
    EXPECT_NEAR(OpMonotone::power(1e-9, 0.3)(t), OpMonotone::geometric(0.3)(t), 1e-7 * t);
  }
}

TEST(MeanEval, ScalarCaseIsAFOfRatio) {
  for (const auto& f : catalog()) {
    const MeanSpec s(f);
    for (double a : {0.1, 1.0, 7.0}) {
      for (double b : {0.3, 1.0, 20.0}) {
        const CMatrixd x = CMatrixd::Constant(1, 1, a), y = CMatrixd::Constant(1, 1, b);
        const double got = mean_eval(s, x, y)(0, 0).real();
        EXPECT_NEAR(got, a * f(b / a), 1e-12 * std::max(1.0, got)) << f.id();
      }
    }
  }
}

TEST(MeanEval, EqualArgumentsGiveTheArgument) {
  Rng rng(1);
  const CMatrixd a = sample_sector(4, 0.8, 1, 3, rng).A;
  for (const auto& f : catalog()) EXPECT_LE(rel_err(mean_eval(MeanSpec(f), a, a), a), 1e-12) << f.id();
}

TEST(MeanEval, CommutingDiagonalExample) {
  CMatrixd a = CMatrixd::Zero(2, 2), b = CMatrixd::Zero(2, 2);
  a(0, 0) = 1;
  a(1, 1) = 4;
  b(0, 0) = 4;
  b(1, 1) = 1;
  const CMatrixd g = mean_eval(MeanSpec(OpMonotone::geometric(0.5)), a, b);
  EXPECT_LE(rel_err(g, 2.0 * CMatrixd::Identity(2, 2)), 1e-14);
  const CMatrixd h = mean_eval(MeanSpec(OpMonotone::harmonic(0.5)), a, b);
  EXPECT_LE(rel_err(h, 1.6 * CMatrixd::Identity(2, 2)), 1e-14);
}

TEST(MeanEval, GeometricMeanSolvesRiccatiEquation) {
  // X = A # B is the positive solution of X A^{-1} X = B.
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const HermMatrixd a = pd(4, rng), b = pd(4, rng);
    const CMatrixd x = mean_eval(MeanSpec(OpMonotone::geometric(0.5)), a.matrix(), b.matrix());
    EXPECT_LE(rel_err(x * inverse(a.matrix()) * x, b.matrix()), 1e-11);
    EXPECT_GT(lambda_min(HermMatrixd(x)), 0);
  }
}

TEST(MeanEval, GeneralRouteAgreesWithHarmonicShortcut) {
  Rng rng(3);
  OpMonotone slow = OpMonotone::arithmetic(0.35);
  slow.adjoint = true;  // same function as harmonic(0.35), evaluated through the square-root route
  for (int trial = 0; trial < 10; ++trial) {
    const CMatrixd a = sample_sector(3, 1.0, 1, 5, rng).A, b = sample_sector(3, 1.0, 1, 5, rng).A;
    EXPECT_LE(rel_err(mean_eval(MeanSpec(slow), a, b), mean_eval(MeanSpec(OpMonotone::harmonic(0.35)), a, b)),
              1e-11);
  }
}

TEST(MeanEval, NonAccretiveOperandIsRejected) {
  CMatrixd bad = CMatrixd::Identity(2, 2);
  bad(1, 1) = -1;
  try {
    mean_eval(MeanSpec(OpMonotone::geometric(0.5)), CMatrixd(CMatrixd::Identity(2, 2)), bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAccretive);
  }
}

TEST(Adjoint, CanonicalForms) {
  EXPECT_EQ(OpMonotone::arithmetic(0.3).adjoint_fn(), OpMonotone::harmonic(0.3));
  EXPECT_EQ(OpMonotone::harmonic(0.3).adjoint_fn(), OpMonotone::arithmetic(0.3));
  EXPECT_EQ(OpMonotone::geometric(0.3).adjoint_fn(), OpMonotone::geometric(0.3));
  EXPECT_EQ(OpMonotone::power(0.4, 0.3).adjoint_fn(), OpMonotone::power(-0.4, 0.3));
  for (const auto& f : catalog()) {
    const OpMonotone g = f.adjoint_fn().adjoint_fn();
    for (double t : {0.05, 0.7, 3.0, 40.0}) EXPECT_NEAR(g(t), f(t), 1e-12 * f(t)) << f.id();
    for (double t : {0.05, 0.7, 3.0}) EXPECT_NEAR(f.adjoint_fn()(t), 1.0 / f(1.0 / t), 1e-12) << f.id();
  }
}

TEST(Adjoint, MatrixIdentityUnderInversion) {
  // A s* B = (A^{-1} s B^{-1})^{-1}
  Rng rng(4);
  for (const auto& f : catalog()) {
    const HermMatrixd a = pd(3, rng), b = pd(3, rng);
    const MeanSpec s(f);
    const CMatrixd lhs = mean_eval(adjoint_mean(s), a.matrix(), b.matrix());
    const CMatrixd rhs = inverse<double>(mean_eval(s, inverse(a.matrix()), inverse(b.matrix())));
    EXPECT_LE(rel_err(lhs, rhs), 1e-9) << f.id();
  }
}

TEST(ScalarOrder, KnownComparisons) {
  const MeanSpec ar(OpMonotone::arithmetic(0.4)), ge(OpMonotone::geometric(0.4)), ha(OpMonotone::harmonic(0.4));
  EXPECT_EQ(scalar_order(ha, ge), MeanOrder::Leq);
  EXPECT_EQ(scalar_order(ge, ar), MeanOrder::Leq);
  EXPECT_EQ(scalar_order(ar, ha), MeanOrder::Geq);
  EXPECT_EQ(scalar_order(ar, ar), MeanOrder::Leq);
  EXPECT_EQ(scalar_order(MeanSpec(OpMonotone::arithmetic(0.2)), MeanSpec(OpMonotone::arithmetic(0.8))),
            MeanOrder::Incomparable);
  EXPECT_EQ(scalar_order(MeanSpec(OpMonotone::power(-0.3, 0.6)), MeanSpec(OpMonotone::power(0.2, 0.6))),
            MeanOrder::Leq);
}

TEST(OrderTransfer, ScalarOrderGivesLoewnerOrder) {
  Rng rng(5);
  const MeanSpec lo(OpMonotone::power(-0.5, 0.7)), hi(OpMonotone::power(0.6, 0.7));
  ASSERT_EQ(scalar_order(lo, hi), MeanOrder::Leq);
  for (int trial = 0; trial < 20; ++trial) {
    const HermMatrixd a = pd(4, rng), b = pd(4, rng);
    EXPECT_TRUE(loewner_leq(mean_eval(lo, a, b), mean_eval(hi, a, b)).pass);
  }
}

TEST(Monotonicity, LargerFirstArgumentGivesLargerMean) {
  Rng rng(6);
  for (const auto& f : catalog()) {
    const HermMatrixd a = pd(3, rng), b = pd(3, rng);
    const HermMatrixd a2 = a + random_pd(3, 0.0, 1.0, rng);
    EXPECT_TRUE(loewner_leq(mean_eval(MeanSpec(f), a, b), mean_eval(MeanSpec(f), a2, b)).pass) << f.id();
  }
}

TEST(Congruence, InvertibleCongruenceCommutesWithMean) {
  Rng rng(7);
  for (const auto& f : catalog()) {
    const CMatrixd a = sample_sector(3, 0.9, 1, 4, rng).A, b = sample_sector(3, 0.9, 1, 4, rng).A;
    const CMatrixd c = random_well_conditioned(3, rng);
    const MeanSpec s(f);
    const CMatrixd lhs = c.adjoint() * mean_eval(s, a, b) * c;
    const CMatrixd rhs = mean_eval<double>(s, c.adjoint() * a * c, c.adjoint() * b * c);
    EXPECT_LE(rel_err(lhs, rhs), 1e-9) << f.id();
  }
}

TEST(Sandwich, FunctionSandwichOnSectorSamples) {
  Rng rng(8);
  for (const auto& f : catalog()) {
    const auto a = sample_sector(4, 1.2, 0.5, 3, rng);
    const auto v = fn_sandwich_check<double>(f, a);
    EXPECT_TRUE(v.left.pass) << f.id() << " " << v.left.slack;
    EXPECT_TRUE(v.right.pass) << f.id() << " " << v.right.slack;
  }
}

TEST(Sandwich, MeanSandwichIsTightForTheArithmeticMean) {
  // Re(A nabla B) = Re A nabla Re B, so the left clause has zero slack.
  Rng rng(9);
  const auto a = sample_sector(3, 1.0, 1, 2, rng), b = sample_sector(3, 1.0, 1, 2, rng);
  const auto v = sandwich_check<double>(MeanSpec(OpMonotone::arithmetic(0.5)), a, b);
  EXPECT_NEAR(v.left.slack, 0, 1e-13);
  EXPECT_TRUE(v.right.pass);
}
