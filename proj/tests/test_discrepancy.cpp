#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "smallball/core/error.hpp"
#include "smallball/core/rng.hpp"
#include "smallball/discrepancy/discrepancy.hpp"

using namespace smallball;

namespace {

PointSet single_origin() {
  PointSet A;
  A.d = 2;
  A.points = {{Rational(0), Rational(0)}};
  return A;
}

// sup/inf of D from half-open evaluations just above and at every corner
std::pair<Rational, Rational> corner_oracle(const PointSet& A, const Rational& eps) {
  std::vector<std::vector<Rational>> axes(static_cast<std::size_t>(A.d));
  for (int t = 0; t < A.d; ++t) {
    for (const auto& p : A.points) axes[t].push_back(p[t]);
    axes[t].push_back(Rational(1));
  }
  Rational hi(0), lo(0);
  std::vector<std::size_t> idx(static_cast<std::size_t>(A.d), 0);
  for (;;) {
    std::vector<Rational> at, above;
    for (int t = 0; t < A.d; ++t) {
      at.push_back(axes[t][idx[t]]);
      Rational a = axes[t][idx[t]] + eps;
      above.push_back(a > 1 ? Rational(1) : a);
    }
    hi = std::max(hi, discrepancy_eval(A, above));
    lo = std::min(lo, discrepancy_eval(A, at));
    std::size_t t = 0;
    while (t < idx.size() && ++idx[t] == axes[t].size()) idx[t++] = 0;
    if (t == idx.size()) break;
  }
  return {hi, lo};
}

}  // namespace

TEST(Generators, Examples) {
  auto v = van_der_corput(2);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v.points[0], (std::vector<Rational>{0, 0}));
  EXPECT_EQ(v.points[1], (std::vector<Rational>{Rational(1, 2), Rational(1, 2)}));
  auto h = halton(1);
  EXPECT_EQ(h.points[0], (std::vector<Rational>{0, 0, 0}));
  EXPECT_EQ(radical_inverse(6, 2), Rational(3, 8));
  EXPECT_EQ(radical_inverse(5, 3), Rational(7, 9));
  EXPECT_THROW(halton(4, {2, 4}), DomainError);
  auto r1 = random_points(16, 3, 9), r2 = random_points(16, 3, 9), r3 = random_points(16, 3, 10);
  EXPECT_EQ(r1.points, r2.points);
  EXPECT_NE(r1.points, r3.points);
}

TEST(Eval, Examples) {
  auto A = single_origin();
  EXPECT_EQ(discrepancy_eval(A, {Rational(1), Rational(1)}), Rational(0));
  EXPECT_EQ(discrepancy_eval(A, {Rational(1, 2), Rational(1, 2)}), Rational(3, 4));
  auto B = random_points(10, 2, 3);
  EXPECT_EQ(discrepancy_eval(B, {Rational(0), Rational(1, 3)}), Rational(0));
  EXPECT_THROW(discrepancy_eval(B, {Rational(2), Rational(0)}), DomainError);
}

TEST(Eval, CountMonotoneAlongChains) {
  auto A = random_points(40, 3, 4);
  Rng rng(11);
  for (int chain = 0; chain < 20; ++chain) {
    std::vector<Rational> x(3, Rational(0));
    std::size_t prev = 0;
    for (int step = 0; step < 30; ++step) {
      int t = static_cast<int>(rng.below(3));
      x[t] = std::min(Rational(1), Rational(x[t] + Rational(static_cast<long>(rng.below(8)), 64)));
      std::size_t c = count_in_box(A, x, false);
      EXPECT_GE(c, prev);
      prev = c;
    }
  }
}

TEST(Sup, SinglePoint) {
  auto rep = discrepancy_sup(single_origin());
  EXPECT_TRUE(rep.exact);
  EXPECT_EQ(rep.norm, Rational(1));
  EXPECT_EQ(rep.sup_corner, (std::vector<Rational>{0, 0}));
}

TEST(Sup, MatchesCornerOracle) {
  const Rational eps = pow2(-40);
  for (std::uint64_t seed = 1; seed <= 5; ++seed)
    for (int d : {2, 3}) {
      auto A = random_points(d == 2 ? 12 : 6, d, seed, 6);
      auto rep = discrepancy_sup(A);
      auto [hi, lo] = corner_oracle(A, eps);
      const Rational slack = Rational(static_cast<long>(A.size() * d)) * eps;
      EXPECT_LE(hi, rep.sup);
      EXPECT_LE(rep.sup - hi, slack);
      EXPECT_EQ(lo, rep.inf);
    }
}

TEST(Sup, VdcTwoAgainstGridScan) {
  auto A = van_der_corput(2);
  auto rep = discrepancy_sup(A);
  Rational scan = grid_scan_sup(A, 10);
  EXPECT_LE(scan, rep.norm);
  EXPECT_LE(rep.norm - scan, Rational(2 * 2) / 1024);
}

TEST(Sup, DominatesSamples) {
  auto A = random_points(16, 2, 21);
  auto rep = discrepancy_sup(A);
  Rng rng(5);
  for (int k = 0; k < 2000; ++k) {
    std::vector<Rational> x{Rational(static_cast<long>(rng.below(1001)), 1000),
                            Rational(static_cast<long>(rng.below(1001)), 1000)};
    EXPECT_LE(abs_value(discrepancy_eval(A, x)), rep.norm);
  }
}

TEST(Sup, BudgetAndSampling) {
  auto A = random_points(50, 3, 2);
  EXPECT_THROW(discrepancy_sup(A, 1000), BudgetExceeded);
  auto approx = discrepancy_sup(A, 1000, true, 4);
  EXPECT_FALSE(approx.exact);
  auto exact = discrepancy_sup(A);
  EXPECT_LE(approx.norm, exact.norm);
}

TEST(L2, WarnockClosedForm) {
  EXPECT_EQ(l2_squared_warnock(single_origin()), Rational(11, 18));
  auto e = discrepancy_lp(single_origin(), 2, 9);
  EXPECT_TRUE(e.bound_rigorous);
  EXPECT_LE(std::abs(e.value - std::sqrt(11.0 / 18)), e.error_bound);
}

TEST(L2, WarnockAgainstMidpointAndSup) {
  for (std::size_t N : {4u, 8u, 16u}) {
    auto A = van_der_corput(N);
    double exact = std::sqrt(l2_squared_warnock(A).get_d());
    auto e = discrepancy_lp(A, 2, 10);
    EXPECT_TRUE(e.bound_rigorous);
    EXPECT_LE(std::abs(e.value - exact), e.error_bound);
    EXPECT_LE(exact, discrepancy_sup(A).norm.get_d());
  }
  auto R = random_points(8, 2, 1);
  EXPECT_FALSE(discrepancy_lp(R, 2, 6).bound_rigorous);
}

TEST(Io, CsvRoundTrip) {
  auto A = halton(7, {2, 3});
  std::stringstream ss;
  write_points_csv(ss, A);
  auto B = read_points_csv(ss);
  EXPECT_EQ(A.points, B.points);
  std::stringstream bad("0.5,x\n");
  EXPECT_THROW(read_points_csv(bad), FormatError);
  std::stringstream out_of_range("1,0\n");
  EXPECT_THROW(read_points_csv(out_of_range), DomainError);
}

TEST(Scaling, ReportShape) {
  auto rep = scaling_report("vdc", {4, 8, 16, 32});
  ASSERT_EQ(rep.rows.size(), 4u);
  for (const auto& r : rep.rows) {
    EXPECT_TRUE(r.sup_exact);
    EXPECT_LE(r.l2_norm, r.sup_norm);
  }
  EXPECT_TRUE(std::isfinite(rep.sup_exponent));
}

TEST(Sup, GridScanAgainstDirectEvaluation) {
  for (int d : {2, 3}) {
    auto A = random_points(9, d, 31 + d, 5);
    const int level = 3;
    Rational best(0);
    const long m = (1 << level) + 1;
    long total = d == 2 ? m * m : m * m * m;
    for (long k = 0; k < total; ++k) {
      std::vector<Rational> x;
      long rest = k;
      for (int t = 0; t < d; ++t) {
        x.push_back(Rational(rest % m) / (1 << level));
        rest /= m;
      }
      best = std::max(best, abs_value(discrepancy_eval(A, x)));
    }
    EXPECT_EQ(grid_scan_sup(A, level), best);
  }
}

// closed form for the 2^k point Hammersley set: N D* = k/3 + 13/9 - (-1)^k 4/(9 2^k), k >= 2
TEST(Sup, HammersleyClosedForm) {
  for (int k = 2; k <= 8; ++k) {
    const std::size_t N = std::size_t{1} << k;
    Rational expected = Rational(k, 3) + Rational(13, 9) - Rational(k % 2 ? -4 : 4, 9 * static_cast<long>(N));
    expected.canonicalize();
    auto rep = discrepancy_sup(van_der_corput(N));
    ASSERT_TRUE(rep.exact);
    EXPECT_EQ(rep.norm, expected) << "k=" << k;
  }
}
