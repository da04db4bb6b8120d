#include <gtest/gtest.h>

#include "mwdlab/error.hpp"
#include "mwdlab/identities.hpp"
#include "test_support.hpp"

using namespace mwdlab;

namespace {

const QuadratureConfig kQ{};

SquareMatrix s1(double v) { return SquareMatrix::scalar(1, v); }

PhaseSpaceGrid grid1(double lo, double hi, std::size_t n) {
  return PhaseSpaceGrid::uniform(1, Grid1D(lo, hi, n), Grid1D(lo, hi, n));
}

const PhaseSpaceGrid& wide() {
  static const PhaseSpaceGrid g = grid1(-8, 8, 256);
  return g;
}

const PhaseSpaceGrid& narrow() {
  static const PhaseSpaceGrid g = grid1(-4, 4, 64);
  return g;
}

Signal shifted(double lambda, double x, double w) {
  return Signal::gaussian(1, lambda).tf_shift({x}, {w});
}

const BlockMatrix kGeneric = BlockMatrix::from_full(SquareMatrix{{0.7, -0.4}, {0.5, 0.9}});

}  // namespace

TEST(Moyal, WignerGaussianNorm) {
  const Signal g = Signal::gaussian(1, 1.0);
  const PhaseSpaceField w = mwd_fft(named::wigner(1), g, g, wide(), kQ);
  EXPECT_NEAR(field_inner(w, w).real(), 0.5, 1e-10);
  EXPECT_TRUE(check_moyal(named::wigner(1), g, g, g, g, wide(), kQ).passed);
}

TEST(Moyal, OrthogonalInputs) {
  const Signal h0 = Signal::hermite(0), h1 = Signal::hermite(1);
  const PhaseSpaceField a = mwd_fft(named::wigner(1), h0, h0, wide(), kQ);
  const PhaseSpaceField b = mwd_fft(named::wigner(1), h1, h0, wide(), kQ);
  EXPECT_NEAR(std::abs(field_inner(a, b)), 0.0, 1e-10);
}

TEST(Moyal, SeveralMatrices) {
  for (const auto& a : {named::wigner(1), named::tau(1, 0.3), named::stft(1), kGeneric}) {
    const auto r = check_moyal(a, shifted(1, 0.3, -0.5), shifted(2, -0.4, 0.2), Signal::hermite(1),
                               Signal::hermite(2).tf_shift({0.2}, {0.1}), wide(), kQ);
    EXPECT_TRUE(r.passed) << describe(a) << " " << r.max_abs_error;
  }
}

TEST(Covariance, CohenParametersArePureTranslation) {
  const Shift sh{{0.7}, {0.7}, {-0.4}, {-0.4}};
  for (double m : {0.0, 0.25, -0.4}) {
    const CovarianceParams p = covariance_params(named::cohen(s1(m)), sh);
    EXPECT_NEAR(p.r[0], 0.7, 1e-15);
    EXPECT_NEAR(p.s[0], 0.0, 1e-15);
    EXPECT_NEAR(p.rho[0], 0.0, 1e-15);
    EXPECT_NEAR(p.sigma[0], -0.4, 1e-15);
  }
}

TEST(Covariance, ZeroShiftIsIdentity) {
  const Shift zero{{0.0}, {0.0}, {0.0}, {0.0}};
  const CovarianceParams p = covariance_params(kGeneric, zero);
  for (double v : {p.r[0], p.s[0], p.rho[0], p.sigma[0]}) EXPECT_EQ(v, 0.0);
  EXPECT_TRUE(check_covariance(kGeneric, shifted(1, 0, 0), shifted(2, 0, 0), zero, narrow(), kQ).passed);
}

TEST(Covariance, GeneralForm) {
  const Shift mixed{{0.5}, {-0.2}, {0.3}, {0.7}};
  for (const auto& a : {named::cohen(s1(0.25)), named::stft(1), kGeneric}) {
    const auto r = check_covariance(a, shifted(1, 0.3, -0.5), shifted(2, -0.4, 0.2), mixed, narrow(), kQ);
    EXPECT_TRUE(r.passed) << describe(a) << " " << r.max_abs_error;
  }
}

TEST(Covariance, TranslationHoldsForCohenOnly) {
  const Shift same{{0.5}, {0.5}, {0.3}, {0.3}};
  const Signal f = shifted(1, 0.3, -0.5), g = shifted(2, -0.4, 0.2);
  for (double m : {0.0, 0.25, -0.4})
    EXPECT_TRUE(check_covariance(named::cohen(s1(m)), f, g, same, narrow(), kQ, CovarianceMode::Translation)
                    .passed);
  const auto st = check_covariance(named::stft(1), f, g, same, narrow(), kQ, CovarianceMode::Translation);
  EXPECT_FALSE(st.passed);
  EXPECT_GT(st.max_abs_error, 0.1);
}

TEST(Covariance, InverseFormRoundTrip) {
  const Shift mixed{{0.5}, {-0.2}, {0.3}, {0.7}};
  for (const auto& a : {named::tau(1, 0.3), kGeneric}) {
    const auto r = check_covariance_roundtrip(a, shifted(1, 0.3, -0.5), shifted(2, -0.4, 0.2), mixed,
                                              narrow(), kQ);
    EXPECT_TRUE(r.passed) << r.max_abs_error;
  }
}

TEST(Stp, ZeroPointAndModulus) {
  const Signal f = shifted(1, 0.3, -0.5), g = shifted(2, -0.4, 0.2);
  const Signal phi = Signal::gaussian(1, 1.0), psi = Signal::gaussian(1, 1.5);
  const StpPoint zero{{0}, {0}, {0}, {0}};
  const StpArguments args = stp_arguments(named::wigner(1), zero);
  for (double v : {args.a[0], args.alpha[0], args.b[0], args.beta[0]}) EXPECT_EQ(v, 0.0);
  std::vector<StpPoint> pts{zero};
  for (int k = 0; k < 3; ++k)
    pts.push_back({{test::uniform(-0.6, 0.6)}, {test::uniform(-0.6, 0.6)}, {test::uniform(-0.6, 0.6)},
                   {test::uniform(-0.6, 0.6)}});
  for (double m : {0.0, 0.25}) {
    const auto r = check_stp(named::cohen(s1(m)), f, g, phi, psi, pts, wide(), kQ, 1e-5);
    EXPECT_TRUE(r.passed) << r.max_abs_error;
  }
}

TEST(Stp, CohenArgumentsMatchGeneralForm) {
  for (int k = 0; k < 20; ++k) {
    const double m = test::uniform(-1, 1);
    const StpPoint p{{test::uniform(-1, 1)}, {test::uniform(-1, 1)}, {test::uniform(-1, 1)},
                     {test::uniform(-1, 1)}};
    const StpArguments a = stp_arguments(named::cohen(s1(m)), p);
    const StpArguments c = stp_arguments_cohen(m, p);
    EXPECT_NEAR(a.a[0], c.a[0], 1e-14);
    EXPECT_NEAR(a.alpha[0], c.alpha[0], 1e-14);
    EXPECT_NEAR(a.b[0], c.b[0], 1e-14);
    EXPECT_NEAR(a.beta[0], c.beta[0], 1e-14);
  }
}

TEST(Inversion, Pointwise) {
  const Signal f = Signal::gaussian(1, 1.0);
  const BlockMatrix a = named::wigner(1);
  const auto rec = pointwise_invert(a, row_provider(a, f, kQ), f.evaluate(0.0), {{1.0}, {0.0}}, kQ);
  EXPECT_NEAR(std::abs(rec[0] - std::exp(-kPi)), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(rec[1] - 1.0), 0.0, 1e-8);
}

TEST(Inversion, ZeroAtOrigin) {
  const Signal h = Signal::hermite(1);
  const BlockMatrix a = named::wigner(1);
  try {
    pointwise_invert(a, row_provider(a, h, kQ), h.evaluate(0.0), {{1.0}}, kQ);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroAtOrigin);
  }
}

TEST(Inversion, Adjoint) {
  const Signal g = Signal::gaussian(1, 1.0);
  const PhaseSpaceGrid grid = grid1(-6, 6, 128);
  const Grid1D out(-3, 3, 64);
  const Grid1D y = Grid1D::from_step(-4.0, 8.0 / 191.0, 192);
  EXPECT_TRUE(adjoint_reconstruct(named::wigner(1), g, g, g, grid, kQ, out, y).passed);
  EXPECT_TRUE(adjoint_reconstruct(named::stft(1), g, g, shifted(1, 0.3, -0.5), grid, kQ, out, y).passed);
  const Signal zero = adjoint_apply(named::wigner(1), g, PhaseSpaceField(grid), out, y);
  for (std::size_t k = 0; k < out.count(); ++k) EXPECT_EQ(zero.evaluate(out.point(k)), cplx(0.0));
}

TEST(RightRegular, StftForm) {
  const Signal f = shifted(1, 0.3, -0.5), g = shifted(2, -0.4, 0.2);
  for (int k = 0; k < 20; ++k) {
    const double x = test::uniform(-2, 2), w = test::uniform(-2, 2);
    EXPECT_NEAR(std::abs(right_regular_stft_form(named::stft(1), f, g, {&x, 1}, {&w, 1}, kQ) -
                         stft(f, g, x, w, kQ)),
                0.0, 1e-12);
    EXPECT_NEAR(std::abs(right_regular_stft_form(named::tau(1, 0.3), f, g, {&x, 1}, {&w, 1}, kQ) -
                         mwd_point(named::tau(1, 0.3), f, g, {&x, 1}, {&w, 1}, kQ)),
                0.0, 1e-8);
  }
  const double z = 0.0;
  try {
    right_regular_stft_form(named::rihaczek(1), f, g, {&z, 1}, {&z, 1}, kQ);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotRightRegular);
  }
}

TEST(Diamond, FigureParameters) {
  const DiamondGeometry g0 = diamond(0.0, {3, 5}, {9, 13});
  EXPECT_DOUBLE_EQ(g0.v1[0], 8.0);
  EXPECT_DOUBLE_EQ(g0.v1[1], -10.0);
  EXPECT_DOUBLE_EQ(g0.v2[0], 8.0);
  EXPECT_DOUBLE_EQ(g0.v2[1], 10.0);
  const DiamondGeometry g5 = diamond(0.5, {3, 5}, {9, 13});
  EXPECT_DOUBLE_EQ(g5.v1[0], 13.0);
  EXPECT_DOUBLE_EQ(g5.v1[1], -10.0);
}

TEST(Diamond, CornerDriftIsAffine) {
  for (double m : {-0.5, 0.25, 1.0, 2.0}) {
    const DiamondGeometry g = diamond(m, {3, 5}, {9, 13});
    EXPECT_NEAR(g.v1[0], 8.0 + 10.0 * m, 1e-12);
    EXPECT_NEAR(g.v2[0], 8.0 - 10.0 * m, 1e-12);
  }
}

TEST(Diamond, ComputedCornersWithinOneCell) {
  const Signal f = two_tone({3, 5}, 2, {9, 13}, 6);
  for (double m : {-0.5, 0.0, 0.5, 1.0}) {
    const DiamondGeometry g = diamond(m, {3, 5}, {9, 13});
    const DiamondCorners c = computed_corners(g, f);
    for (int i = 0; i < 2; ++i) {
      EXPECT_LE(std::abs(c.v1[i] - g.v1[i]), c.cell) << "m = " << m;
      EXPECT_LE(std::abs(c.v2[i] - g.v2[i]), c.cell) << "m = " << m;
    }
  }
}

TEST(Diamond, BadIntervals) {
  for (auto [i1, i2] : {std::pair<std::pair<double, double>, std::pair<double, double>>{{3, 10}, {9, 13}},
                        {{3, 5}, {9, 10}},
                        {{5, 3}, {9, 13}}}) {
    try {
      diamond(0.0, i1, i2);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::BadIntervals);
    }
  }
}

TEST(Support, WeakTimeSupport) {
  QuadratureConfig q;
  q.radius = 12.0;
  const Signal f = two_tone({3, 5}, 2, {9, 13}, 6);
  const PhaseSpaceGrid grid = PhaseSpaceGrid::uniform(1, Grid1D(-10, 25, 280), Grid1D(-4, 12, 128));
  for (double tau : {0.0, 0.5, 1.0}) EXPECT_TRUE(support_report(s1(tau - 0.5), f, grid, q).weak_time_holds);
  EXPECT_FALSE(support_report(s1(1.0), f, grid, q).weak_time_holds);
  EXPECT_LE(support_report(s1(-0.5), Signal::tone(3, 5, 2), grid, q).outside_ratio, 1e-3);
}

TEST(Symmetry, ShiftedGaussianAndScaling) {
  for (const auto& r : check_symmetry_scaling_convolution(s1(0.25), shifted(1, 1, 1), shifted(2, -0.4, 0.2),
                                                          narrow(), kQ, 2.0))
    EXPECT_TRUE(r.passed) << r.name << " " << r.max_abs_error;
}

TEST(Symmetry, EvenSignalGivesEvenField) {
  const Signal g = Signal::gaussian(1, 1.0);
  const PhaseSpaceField f = mwd_fft(named::cohen(s1(0.3)), g, g, grid1(-4, 4, 64), kQ);
  // axis -4:4:64 contains 0 at index 32; index k pairs with 64 - k
  double err = 0.0;
  for (std::size_t ix = 1; ix < 64; ++ix)
    for (std::size_t iw = 1; iw < 64; ++iw) err = std::max(err, std::abs(f.at(ix, iw) - f.at(64 - ix, 64 - iw)));
  EXPECT_LE(err, 1e-10);
}

TEST(Basis, HermiteWignerGram) {
  std::vector<Signal> basis;
  for (unsigned n = 0; n < 4; ++n) basis.push_back(Signal::hermite(n));
  const auto r = check_orthonormal_basis(named::wigner(1), basis, wide(), kQ, 1e-4);
  EXPECT_TRUE(r.passed) << r.max_abs_error;
}

TEST(Marginals, CohenAndGeneral) {
  for (const auto& a : {named::wigner(1), named::cohen(s1(0.25)), named::tau(1, 0.0), kGeneric})
    for (const Signal& f : {shifted(1, 0.3, -0.5), Signal::hermite(2)})
      for (const auto& r : check_marginals(a, f, wide(), kQ, 1e-4))
        EXPECT_TRUE(r.passed) << r.name << " " << r.max_abs_error;
}

TEST(LqBound, CohenFormulaMatchesGeneral) {
  for (int k = 0; k < 20; ++k) {
    const SquareMatrix m = s1(test::uniform(-2, 2));
    const double q = test::uniform(2, 5);
    const double p = test::uniform(q / (q - 1), q);
    EXPECT_NEAR(lq_bound_cohen(m, p, q, 1.3, 0.7), lq_bound(named::cohen(m), p, q, 1.3, 0.7),
                1e-12 * lq_bound(named::cohen(m), p, q, 1.3, 0.7));
  }
}

TEST(LqBound, RandomRightRegular) {
  QuadratureConfig window;
  window.radius = 24.0;
  window.samples_per_dim = 12288;
  for (int k = 0; k < 20; ++k) {
    const BlockMatrix a = test::random_decaying(0.4);
    const double q = test::uniform(2, 4);
    const double p = test::uniform(q / (q - 1), q);
    const auto r = check_lq_bound(a, shifted(1, 0.3, -0.5), shifted(2, -0.4, 0.2), p, q, wide(), window);
    EXPECT_TRUE(r.passed) << describe(a) << " p=" << p << " q=" << q << " excess " << r.max_abs_error;
  }
}

TEST(LqBound, NotRightRegular) {
  try {
    lq_bound(named::rihaczek(1), 2, 2, 1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotRightRegular);
  }
}
