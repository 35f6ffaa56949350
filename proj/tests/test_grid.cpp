#include <gtest/gtest.h>

#include <sstream>

#include "oracles.hpp"
#include "smallball/grid/haar.hpp"
#include "smallball/grid/serialize.hpp"

using namespace smallball;

TEST(Dyadic, IntervalValidation) {
  EXPECT_THROW(DyadicInterval(2, 4), DomainError);
  EXPECT_THROW(DyadicInterval(-1, 0), DomainError);
  DyadicInterval I(2, 3);
  EXPECT_EQ(I.left(), Rational(3, 4));
  EXPECT_EQ(I.right(), Rational(1));
  EXPECT_TRUE(I.contains(Rational(7, 8)));
  EXPECT_FALSE(I.contains(Rational(1)));
  EXPECT_TRUE(DyadicInterval(1, 1).contains(I));
  EXPECT_EQ(I.left_half(), DyadicInterval(3, 6));
}

TEST(Dyadic, ResolutionIndexRoundTrip) {
  Resolution res{2, 3, 1};
  for (std::size_t i = 0; i < res.cells(); ++i) {
    auto c = res.cell(i);
    EXPECT_EQ(res.index(std::span<const std::int64_t>(c.data(), 3)), i);
  }
  EXPECT_EQ(res.cells(), 64u);
}

TEST(Dyadic, GridCeiling) {
  EXPECT_THROW(Resolution::uniform(3, 10), GridTooLarge);
  ScopedGridLimit limit(10);
  EXPECT_THROW(Resolution::uniform(2, 6), GridTooLarge);
  EXPECT_NO_THROW(Resolution::uniform(2, 5));
}

TEST(Haar, OneDimensionalExample) {
  auto h = haar_1d(DyadicInterval(1, 0), Resolution{2});
  std::vector<Integer> expected{-1, 1, 0, 0};
  EXPECT_EQ(std::vector<Integer>(h.values().begin(), h.values().end()), expected);
}

TEST(Haar, InsufficientResolution) {
  EXPECT_THROW(haar_1d(DyadicInterval(2, 1), Resolution{2}), ResolutionError);
}

TEST(Haar, MatchesPointwiseDefinition) {
  Resolution res{3, 2};
  for (int l1 = 0; l1 < 3; ++l1)
    for (int l2 = 0; l2 < 2; ++l2)
      for (int p1 = 0; p1 < (1 << l1); ++p1)
        for (int p2 = 0; p2 < (1 << l2); ++p2) {
          DyadicRectangle R{DyadicInterval(l1, p1), DyadicInterval(l2, p2)};
          auto h = haar_tensor(R, res);
          for (std::size_t i = 0; i < res.cells(); ++i) ASSERT_EQ(h[i], oracle::haar_at(R, res, i));
        }
}

TEST(Haar, OrthogonalityAndMeanZero) {
  Resolution res{3, 3};
  std::vector<DyadicRectangle> rects;
  for (int l1 = 0; l1 < 3; ++l1)
    for (int l2 = 0; l2 < 3; ++l2)
      for (int p1 = 0; p1 < (1 << l1); ++p1)
        for (int p2 = 0; p2 < (1 << l2); ++p2)
          rects.push_back(DyadicRectangle{DyadicInterval(l1, p1), DyadicInterval(l2, p2)});
  for (const auto& R : rects) {
    auto h = haar_tensor(R, res);
    EXPECT_EQ(expectation(h), Rational(0));
    for (const auto& Q : rects) {
      Rational ip = inner_product(h, haar_tensor(Q, res));
      EXPECT_EQ(ip, R == Q ? R.volume() : Rational(0)) << R.str() << " " << Q.str();
    }
  }
}

TEST(GridOps, RefinementInvariance) {
  Rng rng(1);
  auto f = oracle::random_rational(Resolution{2, 1}, rng);
  auto g = f.refine(Resolution{4, 3});
  EXPECT_EQ(expectation(f), expectation(g));
  EXPECT_EQ(lp_moment(f, 4), lp_moment(g, 4));
  EXPECT_EQ(sup_norm(f), sup_norm(g));
  EXPECT_THROW(f.refine(Resolution{1, 3}), ResolutionError);
}

TEST(GridOps, MixedResolutionsJoin) {
  Rng rng(2);
  auto f = oracle::random_rational(Resolution{1, 3}, rng);
  auto g = oracle::random_rational(Resolution{3, 1}, rng);
  auto s = f + g;
  EXPECT_EQ(s.resolution(), (Resolution{3, 3}));
  EXPECT_EQ(expectation(s), expectation(f) + expectation(g));
  auto p = f * g;
  Rational direct(0);
  auto fr = f.refine(s.resolution()), gr = g.refine(s.resolution());
  for (std::size_t i = 0; i < s.size(); ++i) direct += fr[i] * gr[i];
  EXPECT_EQ(expectation(p), direct / Rational(static_cast<long>(s.size())));
}

TEST(GridOps, ConstantNorms) {
  GridFunction<Rational> c(Resolution{3}, Rational(-3, 2));
  EXPECT_EQ(lp_moment(c, 3), Rational(27, 8));
  EXPECT_NEAR(lp_norm(c, 2.5), 1.5, 1e-15);
  EXPECT_EQ(sup_norm(c), Rational(3, 2));
  EXPECT_EQ(distribution(c, Rational(1)), Rational(1));
  EXPECT_EQ(distribution(c, Rational(3, 2)), Rational(0));
}

TEST(GridOps, IntegerMomentsAreExact) {
  GridFunction<Integer> f(Resolution{1}, std::vector<Integer>{1000, -2});
  Rational m = lp_moment(f, 16);
  mpz_class big;
  mpz_ui_pow_ui(big.get_mpz_t(), 1000, 16);
  Rational expected(big + 65536, 2);
  expected.canonicalize();
  EXPECT_EQ(m, expected);
}

TEST(ConditionalExpectation, SameGridIsIdentity) {
  Rng rng(3);
  auto f = oracle::random_rational(Resolution{2, 2}, rng);
  EXPECT_EQ(conditional_expectation(f, f.resolution()), f);
}

TEST(ConditionalExpectation, HaarOnCoarserFieldVanishes) {
  auto h = haar_1d<Rational>(DyadicInterval(1, 1), Resolution{3});
  auto e = conditional_expectation(h, Resolution{1});
  for (const auto& v : e.values()) EXPECT_EQ(v, Rational(0));
}

TEST(ConditionalExpectation, MatchesBlockAverages) {
  Rng rng(4);
  auto f = oracle::random_rational(Resolution{3, 2, 2}, rng);
  for (Resolution coarse : {Resolution{0, 2, 2}, Resolution{1, 0, 2}, Resolution{3, 1, 0}}) {
    auto e = conditional_expectation(f, coarse);
    for (std::size_t i = 0; i < coarse.cells(); ++i) EXPECT_EQ(e[i], oracle::block_average(f, coarse, i));
    // tower property
    EXPECT_EQ(expectation(e), expectation(f));
  }
}

TEST(HaarTransform, RoundTripAndCoefficients) {
  Rng rng(5);
  for (Resolution res : {Resolution{4}, Resolution{2, 3}, Resolution{2, 1, 2}}) {
    auto f = oracle::random_rational(res, rng);
    auto spec = haar_analyze(f);
    EXPECT_EQ(haar_synthesize(spec), f);
    EXPECT_EQ(spec.mean(), expectation(f));
    // pure tensor Haar coefficients equal <f, h_R> / |R|
    if (res.dim() == 2) {
      for (int l1 = 0; l1 < res.level(0); ++l1)
        for (int l2 = 0; l2 < res.level(1); ++l2)
          for (int p1 = 0; p1 < (1 << l1); ++p1)
            for (int p2 = 0; p2 < (1 << l2); ++p2) {
              DyadicRectangle R{DyadicInterval(l1, p1), DyadicInterval(l2, p2)};
              Rational c = inner_product(f, haar_tensor<Rational>(R, res)) / R.volume();
              EXPECT_EQ(spec.coefficient(R), c);
            }
    }
  }
}

TEST(SquareFunction, OneDimensionalFormula) {
  Resolution res{4};
  Rng rng(6);
  auto f = oracle::random_rational(res, rng);
  auto spec = haar_analyze(f);
  auto sq = square_function_sq(f);
  for (std::size_t i = 0; i < res.cells(); ++i) {
    Rational x = oracle::midpoint(res, i, 0);
    Rational expected = spec.mean() * spec.mean();
    for (int l = 0; l < 4; ++l)
      for (int p = 0; p < (1 << l); ++p) {
        DyadicInterval I(l, p);
        if (I.contains(x)) {
          Rational c = spec.coefficient(DyadicRectangle{I});
          expected += c * c;
        }
      }
    EXPECT_EQ(sq[i], expected);
  }
}

TEST(SquareFunction, ParsevalExact) {
  Rng rng(7);
  for (Resolution res : {Resolution{5}, Resolution{3, 2}, Resolution{2, 2, 2}}) {
    auto f = oracle::random_rational(res, rng);
    EXPECT_EQ(expectation(square_function_sq(f)), lp_moment(f, 2));
    auto spec = haar_analyze(f);
    Rational energy(0);
    for (std::size_t k = 0; k < res.cells(); ++k)
      energy += spec.coefficients()[k] * spec.coefficients()[k] * spec.support_measure(k);
    EXPECT_EQ(energy, lp_moment(f, 2));
  }
}

TEST(SquareFunction, FloatAgreesWithRational) {
  Rng rng(8);
  auto f = oracle::random_rational(Resolution{3, 3}, rng);
  auto fd = f.cast<double>();
  auto a = square_function_sq(f).cast<double>();
  auto b = square_function_sq(fd);
  EXPECT_LE(max_relative_difference(a, b), 1e-10);
  std::vector<double> ps{2, 4, 8, 16};
  auto pr = lp_profile(f, ps);
  auto pd = lp_profile(fd, ps);
  for (std::size_t k = 0; k < ps.size(); ++k) EXPECT_NEAR(pr.rows[k].ratio, pd.rows[k].ratio, 1e-10);
}

TEST(Orlicz, ConstantFunction) {
  GridFunction<double> c(Resolution{2}, 2.0);
  EXPECT_NEAR(orlicz_norm_estimate(c, 2.0, 5), 2.0, 1e-15);
}

TEST(Serialize, RoundTrips) {
  Rng rng(9);
  auto f = oracle::random_rational(Resolution{2, 1}, rng);
  {
    std::stringstream ss;
    write_grid(ss, f);
    EXPECT_EQ(std::get<GridFunction<Rational>>(read_grid(ss)), f);
  }
  auto fd = f.cast<double>();
  for (auto enc : {GridEncoding::Binary, GridEncoding::Json}) {
    std::stringstream ss;
    write_grid(ss, fd, enc);
    EXPECT_EQ(std::get<GridFunction<double>>(read_grid(ss)), fd);
  }
  GridFunction<Integer> g(Resolution{1, 1}, std::vector<Integer>{1, -2, 3, 0});
  std::stringstream ss;
  write_grid(ss, g);
  EXPECT_EQ(std::get<GridFunction<Integer>>(read_grid(ss)), g);
}

TEST(Serialize, RejectsGarbage) {
  std::stringstream ss("not json\n");
  EXPECT_THROW(read_grid(ss), FormatError);
  std::stringstream truncated(
      "{\"format\":\"gridfunction\",\"d\":1,\"levels\":[2],\"mode\":\"float64\",\"encoding\":\"binary\"}\nabc");
  EXPECT_THROW(read_grid(truncated), FormatError);
}
