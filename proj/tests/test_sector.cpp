#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "sectorlab/means.hpp"
#include "sectorlab/sector.hpp"

using namespace sectorlab;
using cd = std::complex<double>;

namespace {

CVectord random_unit(Eigen::Index n, Rng& rng) {
  CVectord x = complex_gaussian(n, 1, rng);
  return x / x.norm();
}

// Largest |arg <Ax, x>| over random unit vectors: a lower estimate of the sector angle.
double sampled_angle(const CMatrixd& a, int samples, Rng& rng) {
  double best = 0;
  for (int i = 0; i < samples; ++i) {
    const CVectord x = random_unit(a.rows(), rng);
    best = std::max(best, std::abs(std::arg(x.dot(a * x))));
  }
  return best;
}

double sampled_radius(const CMatrixd& a, int samples, Rng& rng) {
  double best = 0;
  for (int i = 0; i < samples; ++i) {
    const CVectord x = random_unit(a.rows(), rng);
    best = std::max(best, std::abs(x.dot(a * x)));
  }
  return best;
}

const double kPi = std::acos(-1.0);

}  // namespace

TEST(Parts, RealAndImaginaryRecomposeInput) {
  Rng rng(1);
  const CMatrixd a = complex_gaussian(4, 4, rng);
  const CMatrixd back = real_part(a).matrix() + cd(0, 1) * imag_part(a).matrix();
  EXPECT_LE((back - a).norm(), 1e-14);
}

TEST(SectorAngle, IdentityPlusIHWithUnitNorm) {
  Rng rng(2);
  HermMatrixd h = random_hermitian(3, rng);
  h = (1.0 / op_norm(h)) * h;
  const CMatrixd a = CMatrixd::Identity(3, 3) + cd(0, 1) * h.matrix();
  EXPECT_NEAR(sector_angle(a), kPi / 4, 1e-8);
  const double sampled = sampled_angle(a, 100000, rng);
  EXPECT_LE(sampled, kPi / 4 + 1e-12);
  EXPECT_GE(sampled, kPi / 4 - 0.05);
}

TEST(SectorAngle, NonIdentityRealPart) {
  // Re A = diag(1, 4), Im A = diag(0.5, 2): ratios 0.5 each, angle atan(0.5).
  CMatrixd a(2, 2);
  a << cd(1, 0.5), 0, 0, cd(4, 2);
  EXPECT_NEAR(sector_angle(a), std::atan(0.5), 1e-14);
  Rng rng(3);
  EXPECT_NEAR(sampled_angle(a, 20000, rng), std::atan(0.5), 1e-12);
}

TEST(SectorAngle, NonAccretiveIsRejected) {
  CMatrixd a = CMatrixd::Identity(2, 2);
  a(1, 1) = -1;
  try {
    sector_angle(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAccretive);
  }
}

TEST(NumericalRadius, NilpotentJordanBlock) {
  CMatrixd n(2, 2);
  n << 0, 1, 0, 0;
  EXPECT_NEAR(numerical_radius(n), 0.5, 1e-8);
  Rng rng(4);
  EXPECT_NEAR(sampled_radius(n, 100000, rng), 0.5, 1e-3);
}

TEST(NumericalRadius, NormalMatrixEqualsSpectralRadius) {
  CMatrixd d = CMatrixd::Zero(3, 3);
  d(0, 0) = cd(1, 1);
  d(1, 1) = -3;
  d(2, 2) = cd(0, 2);
  EXPECT_NEAR(numerical_radius(d), 3, 1e-10);
}

TEST(NumericalRadius, BetweenHalfNormAndNorm) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const CMatrixd a = complex_gaussian(4, 4, rng);
    const double w = numerical_radius(a);
    const double nrm = ui_norm(a, NormSpec::op());
    EXPECT_GE(w, nrm / 2 - 1e-12);
    EXPECT_LE(w, nrm + 1e-12);
    EXPECT_GE(w, sampled_radius(a, 2000, rng) - 1e-12);
  }
}

TEST(RangeBoundary, DiagonalMatrixIsASegment) {
  CMatrixd d = CMatrixd::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = 2;
  const auto rb = range_boundary(d, 64);
  ASSERT_EQ(rb.points.size(), 64u);
  for (const auto& z : rb.points) {
    EXPECT_LE(std::abs(z.imag()), 1e-12);
    EXPECT_GE(z.real(), 1 - 1e-12);
    EXPECT_LE(z.real(), 2 + 1e-12);
  }
  std::ostringstream os;
  write_boundary_csv(os, rb);
  EXPECT_EQ(os.str().rfind("phi,re,im\n", 0), 0u);
}

TEST(RangeBoundary, JordanBlockIsCircleOfRadiusHalf) {
  CMatrixd n(2, 2);
  n << 0, 1, 0, 0;
  for (const auto& z : range_boundary(n, 32).points) EXPECT_NEAR(std::abs(z), 0.5, 1e-12);
}

TEST(Sampler, RespectsBoundsAndAngle) {
  Rng rng(6);
  for (double theta : {0.0, kPi / 6, 1.25}) {
    for (int n : {1, 2, 5}) {
      for (int trial = 0; trial < 20; ++trial) {
        const auto s = sample_sector(n, theta, 0.5, 3, rng);
        const auto ev = herm_eigenvalues(real_part(s.A));
        EXPECT_GE(ev(0), 0.5 - 1e-12);
        EXPECT_LE(ev(n - 1), 3 + 1e-12);
        if (n >= 2) {
          EXPECT_NEAR(ev(0), 0.5, 1e-12);
          EXPECT_NEAR(ev(n - 1), 3, 1e-12);
        }
        EXPECT_LE(sector_angle(s.A), theta + 1e-12);
      }
    }
  }
}

TEST(Sampler, BoundaryStressedSamplesSitOnTheBoundary) {
  Rng rng(7);
  SamplerOptions opts;
  opts.boundary_fraction = 1.0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto s = sample_sector(3, 1.2, 1, 2, rng, opts);
    EXPECT_NEAR(sector_angle(s.A), 1.2, 1e-10);
  }
}

TEST(Sampler, SameSeedSameSample) {
  Rng a(99), b(99);
  EXPECT_EQ(sample_sector(4, 0.7, 1, 10, a).A, sample_sector(4, 0.7, 1, 10, b).A);
}

TEST(SectorProperties, InverseStaysInSector) {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = sample_sector(4, 1.0, 0.1, 1, rng);
    EXPECT_LE(sector_angle(inverse(s.A)), 1.0 + 1e-10);
  }
}

TEST(SectorProperties, NormOfRealPartEqualsItsNumericalRadius) {
  Rng rng(9);
  const auto s = sample_sector(4, 0.9, 1, 5, rng);
  const HermMatrixd re = real_part(s.A);
  EXPECT_NEAR(numerical_radius(re.matrix()), op_norm(re), 1e-10);
  // omega(Re A) <= omega(A) <= sec(theta) omega(Re A)
  const double w = numerical_radius(s.A);
  EXPECT_GE(w, op_norm(re) - 1e-10);
  EXPECT_LE(w, op_norm(re) / std::cos(0.9) + 1e-10);
}

TEST(SectorProperties, MeanSandwichOnRandomSamples) {
  Rng rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = sample_sector(3, 1.1, 1, 4, rng);
    const auto b = sample_sector(3, 1.1, 1, 4, rng);
    const MeanSpec g(OpMonotone::geometric(uniform01(rng)));
    const auto v = sandwich_check<double>(g, a, b);
    EXPECT_TRUE(v.left.pass) << v.left.slack;
    EXPECT_TRUE(v.right.pass) << v.right.slack;
    EXPECT_LE(sector_angle(mean_eval(g, a.A, b.A)), 1.1 + 1e-8);
  }
}
