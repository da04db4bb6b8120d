#include <gtest/gtest.h>

#include "mwdlab/cohen.hpp"
#include "mwdlab/error.hpp"
#include "test_support.hpp"

using namespace mwdlab;

namespace {

const QuadratureConfig kQ{};

SquareMatrix s1(double v) { return SquareMatrix::scalar(1, v); }

PhaseSpaceGrid grid1(double lo, double hi, std::size_t n) {
  return PhaseSpaceGrid::uniform(1, Grid1D(lo, hi, n), Grid1D(lo, hi, n));
}

/// Random scalar M bounded away from zero.
SquareMatrix random_invertible_m() {
  double v = 0.0;
  while (std::abs(v) < 0.1) v = test::uniform(-1, 1);
  return s1(v);
}

}  // namespace

TEST(Cohen, KernelKinds) {
  EXPECT_EQ(theta(s1(0.0)).kind, KernelKind::Delta);
  EXPECT_EQ(theta(s1(0.3)).kind, KernelKind::Chirp);
  EXPECT_EQ(theta(SquareMatrix{{1, 0}, {0, 0}}).kind, KernelKind::Singular);
  try {
    eval_theta(theta(s1(0.0)), 0.0, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularKernel);
  }
}

TEST(Cohen, KernelValues) {
  const CohenKernel k = theta(s1(0.5));
  for (int i = 0; i < 10; ++i) {
    const double x = test::uniform(-2, 2), w = test::uniform(-2, 2);
    EXPECT_NEAR(std::abs(eval_theta(k, x, w) - 2.0 * std::polar(1.0, 4.0 * kPi * x * w)), 0.0, 1e-12);
  }
  EXPECT_NEAR(std::abs(eval_theta(theta(s1(1.0)), 1.0, 1.0) - 1.0), 0.0, 1e-15);
}

TEST(Cohen, KernelTauFamily) {
  for (double tau : {0.0, 0.25, 1.0}) {
    const CohenKernel k = theta(s1(tau - 0.5));
    const double c = 2.0 / (2.0 * tau - 1.0);
    for (int i = 0; i < 100; ++i) {
      const double x = test::uniform(-2, 2), w = test::uniform(-2, 2);
      const cplx want = std::abs(c) * std::polar(1.0, kTwoPi * c * x * w);
      EXPECT_NEAR(std::abs(eval_theta(k, x, w) - want), 0.0, 1e-12);
    }
  }
}

TEST(Cohen, MultiplierValues) {
  const SquareMatrix m{{0.3, -0.2}, {0.7, 0.1}};
  for (int i = 0; i < 20; ++i) {
    const double xi[2] = {test::uniform(-2, 2), test::uniform(-2, 2)};
    const double eta[2] = {test::uniform(-2, 2), test::uniform(-2, 2)};
    const double zero[2] = {0.0, 0.0};
    const double meta[2] = {-eta[0], -eta[1]};
    EXPECT_NEAR(std::abs(theta_hat(m, zero, eta) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::norm(theta_hat(m, xi, eta)), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(chi(m, xi, eta) - theta_hat(m, meta, xi)), 0.0, 1e-14);
  }
}

TEST(Cohen, ThetaConditions) {
  std::vector<std::pair<std::vector<double>, std::vector<double>>> pts;
  for (int i = 0; i < 100; ++i) pts.push_back({{test::uniform(-2, 2)}, {test::uniform(-2, 2)}});
  for (const auto& r : check_theta_conditions(s1(0.37), pts, 3.0, 1e-12))
    EXPECT_TRUE(r.passed) << r.name << " " << r.max_abs_error;
}

TEST(Cohen, GaussianOracleValues) {
  const double zero[2] = {0.0, 0.0};
  EXPECT_NEAR(std::abs(gaussian_oracle(s1(0.0), 1.0, {zero, 1}, {zero, 1}) - std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(gaussian_oracle(SquareMatrix(2), 1.0, zero, zero) - 2.0), 0.0, 1e-15);
  // sqrt(2 / 1.25)
  EXPECT_NEAR(gaussian_oracle(s1(0.25), 1.0, {zero, 1}, {zero, 1}).real(), 1.2649110640673518, 1e-14);
}

TEST(Cohen, GaussianOracleSigmaForm) {
  for (int i = 0; i < 20; ++i) {
    const SquareMatrix m = test::random_square(1 + i % 2, -1, 1);
    const double lambda = test::uniform(0.5, 2);
    std::vector<double> x(m.dim()), w(m.dim());
    for (auto& v : x) v = test::uniform(-1, 1);
    for (auto& v : w) v = test::uniform(-1, 1);
    EXPECT_NEAR(std::abs(gaussian_oracle(m, lambda, x, w) - gaussian_oracle_sigma(m, lambda, x, w)), 0.0,
                1e-12);
  }
}

TEST(Cohen, GaussianOracleAgainstQuadrature) {
  const PhaseSpaceGrid grid = grid1(-3, 3, 64);
  for (double mv : {0.0, 0.25, -0.4})
    for (double lambda : {0.5, 1.0, 2.0}) {
      const PhaseSpaceField direct =
          mwd(named::cohen(s1(mv)), Signal::gaussian(1, lambda), Signal::gaussian(1, lambda), grid, kQ);
      EXPECT_LE(max_abs_diff(direct, gaussian_oracle_field(s1(mv), lambda, grid)), 1e-6)
          << "M = " << mv << " lambda = " << lambda;
    }
}

TEST(Cohen, CharacterizationExamples) {
  const Signal g = Signal::gaussian(1, 1.0);
  const PhaseSpaceGrid grid = grid1(-4, 4, 64);
  for (double mv : {0.0, 0.25}) {
    const auto r = verify_characterization(s1(mv), g, g, grid, kQ, 1e-6);
    EXPECT_TRUE(r.passed) << r.max_abs_error;
  }
}

TEST(CohenProperty, CharacterizationRandom) {
  const Signal inputs[] = {Signal::gaussian(1, 1.0), Signal::hermite(0), Signal::hermite(1),
                           Signal::hermite(2)};
  const PhaseSpaceGrid grid = grid1(-4, 4, 64);
  for (int k = 0; k < 5; ++k) {
    const SquareMatrix m = random_invertible_m();
    const auto r = verify_characterization(m, inputs[k % 4], inputs[(k + 2) % 4], grid, kQ, 1e-6);
    EXPECT_TRUE(r.passed) << "M = " << m(0, 0) << " err " << r.max_abs_error;
  }
}

TEST(Cohen, MultiplierIdentityMap) {
  const Signal g = Signal::gaussian(1, 1.0);
  const PhaseSpaceField spec = field_fourier(mwd_fft(named::wigner(1), g, g, grid1(-4, 4, 64), kQ));
  EXPECT_EQ(multiplier_spectrum(s1(0.2), s1(0.2), spec).values, spec.values);
}

TEST(Cohen, MultiplierRelateExample) {
  const Signal g = Signal::gaussian(1, 1.0);
  const PhaseSpaceGrid grid = grid1(-4, 4, 64);
  const PhaseSpaceField w = mwd_fft(named::wigner(1), g, g, grid, kQ);
  const PhaseSpaceField direct = mwd(named::cohen(s1(0.25)), g, g, grid, kQ);
  EXPECT_LE(max_abs_diff(multiplier_relate(s1(0.0), s1(0.25), w), direct), 1e-6);
}

TEST(CohenProperty, MultiplierRelateRandom) {
  const Signal f = Signal::gaussian(1, 1.0), g = Signal::hermite(1);
  const PhaseSpaceGrid grid = grid1(-4, 4, 64);
  for (int k = 0; k < 5; ++k) {
    const SquareMatrix m1 = s1(test::uniform(-0.6, 0.6)), m2 = s1(test::uniform(-0.6, 0.6));
    const PhaseSpaceField b1 = mwd_fft(named::cohen(m1), f, g, grid, kQ);
    const PhaseSpaceField b2 = mwd_fft(named::cohen(m2), f, g, grid, kQ);
    EXPECT_LE(max_abs_diff(multiplier_relate(m1, m2, b1), b2), 1e-6);
  }
}
