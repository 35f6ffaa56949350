#include <gtest/gtest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "smallball/coincidence/beck_gain.hpp"
#include "smallball/coincidence/nsd.hpp"
#include "smallball/coincidence/product_rule.hpp"

using namespace smallball;

namespace {

bool oracle_intersect(const DyadicRectangle& a, const DyadicRectangle& b) {
  for (int t = 0; t < a.dim(); ++t)
    if (!a[t].intersects(b[t])) return false;
  return true;
}

// all graphs on m vertices by edge masks, filtered by the literal conditions
std::vector<CoincidenceGraph> brute_force_admissible(const std::vector<int>& V) {
  CoincidenceGraph base(V);
  const std::size_t pairs = V.size() * (V.size() - 1) / 2;
  std::vector<CoincidenceGraph> out;
  for (std::uint64_t a = 0; a < (1u << pairs); ++a)
    for (std::uint64_t b = 0; b < (1u << pairs); ++b) {
      CoincidenceGraph g = base;
      g.set_mask(2, a);
      g.set_mask(3, b);
      if (is_admissible(g)) out.push_back(g);
    }
  std::sort(out.begin(), out.end());
  return out;
}

CoefficientField<Integer> signs(int n, std::uint64_t seed) {
  Rng rng(seed);
  return random_field<Integer>(n, 3, FieldMode::ExactVolume, AlphaKind::Signs, rng);
}

}  // namespace

TEST(StronglyDistinct, Examples) {
  std::vector<Shape> a{{3, 1, 0}, {1, 2, 1}, {0, 0, 4}};
  EXPECT_TRUE(strongly_distinct(a));
  std::vector<Shape> b{{3, 1, 0}, {1, 1, 2}};
  EXPECT_FALSE(strongly_distinct(b));
  std::vector<Shape> c{{2, 1, 1}};
  EXPECT_TRUE(strongly_distinct(c));
  std::vector<Shape> mixed{{2, 1, 1}, {1, 1, 1}};
  EXPECT_THROW(strongly_distinct(mixed), DomainError);
}

TEST(ProductRule, ExhaustiveSmallPairsAndTriples) {
  for (int n = 1; n <= 3; ++n) {
    auto shapes = enumerate_shapes(n, 3);
    for (std::size_t i = 0; i < shapes.size(); ++i)
      for (std::size_t j = 0; j < shapes.size(); ++j)
        for (std::size_t k = j; k < shapes.size(); ++k) {
          std::vector<Shape> tu{shapes[i], shapes[j]};
          if (k != j) tu.push_back(shapes[k]);
          if (!strongly_distinct(tu)) continue;
          std::vector<std::vector<DyadicRectangle>> rects;
          for (const auto& r : tu) rects.push_back(rectangles_of_shape(r));
          std::vector<std::size_t> idx(tu.size(), 0);
          for (;;) {
            std::vector<DyadicRectangle> R;
            for (std::size_t m = 0; m < tu.size(); ++m) R.push_back(rects[m][idx[m]]);
            auto pr = product_rule(R);
            bool meet = true;
            for (std::size_t a = 0; a < R.size(); ++a)
              for (std::size_t b = a + 1; b < R.size(); ++b) meet = meet && oracle_intersect(R[a], R[b]);
            if (!meet) {
              ASSERT_EQ(pr.kind, HaarProduct::Kind::Zero);
            } else {
              ASSERT_EQ(pr.kind, HaarProduct::Kind::Haar);
              for (const auto& R2 : R) ASSERT_TRUE(R2.contains(pr.support));
              for (const auto& x : oracle::child_midpoints(pr.support)) {
                int direct = 1;
                for (const auto& R2 : R) direct *= oracle::haar_at(R2, x);
                ASSERT_EQ(direct, pr.sign * oracle::haar_at(pr.support, x));
              }
            }
            std::size_t m = 0;
            while (m < idx.size() && ++idx[m] == rects[m].size()) idx[m++] = 0;
            if (m == idx.size()) break;
          }
        }
  }
}

TEST(ProductRule, SharedSideLengthNotApplicable) {
  DyadicRectangle R{DyadicInterval(1, 0), DyadicInterval(1, 1)};
  std::vector<DyadicRectangle> same{R, R};
  EXPECT_EQ(product_rule(same).kind, HaarProduct::Kind::NotApplicable);
  auto pp = pair_product_2d(R, R);
  EXPECT_EQ(pp.kind, HaarProduct::Kind::Indicator);
  EXPECT_EQ(pp.support, R);
}

TEST(ProductRule, PlanarCaseTableOnGrid) {
  for (int n = 1; n <= 3; ++n) {
    Resolution res{n + 1, n + 1};
    std::vector<DyadicRectangle> all;
    for (const auto& r : enumerate_shapes(n, 2))
      for (const auto& R : rectangles_of_shape(r)) all.push_back(R);
    for (const auto& R : all)
      for (const auto& Rp : all) {
        auto pp = pair_product_2d(R, Rp);
        for (std::size_t c = 0; c < res.cells(); ++c) {
          int direct = oracle::haar_at(R, res, c) * oracle::haar_at(Rp, res, c);
          int claimed = 0;
          if (pp.kind == HaarProduct::Kind::Indicator) {
            claimed = oracle::haar_at(R, res, c) != 0 ? 1 : 0;
          } else if (pp.kind == HaarProduct::Kind::Haar) {
            claimed = pp.sign * oracle::haar_at(pp.support, res, c);
          }
          ASSERT_EQ(direct, claimed) << R.str() << " " << Rp.str();
        }
      }
  }
}

TEST(ProductRule, FaultHookFlipsSign) {
  std::vector<DyadicRectangle> R{{DyadicInterval(0, 0), DyadicInterval(1, 0)},
                                 {DyadicInterval(1, 1), DyadicInterval(0, 0)}};
  int s = product_rule(R).sign;
  set_product_rule_fault(true);
  EXPECT_EQ(product_rule(R).sign, -s);
  set_product_rule_fault(false);
}

TEST(MeanZero, PredicateImpliesZeroMean) {
  auto mean = [](const std::vector<DyadicRectangle>& R) -> Rational {
    Resolution res{4, 4, 4};
    Rational s(0);
    for (std::size_t c = 0; c < res.cells(); ++c) {
      int v = 1;
      for (const auto& x : R) v *= oracle::haar_at(x, res, c);
      s += v;
    }
    return s / Rational(static_cast<long>(res.cells()));
  };
  auto shapes = enumerate_shapes(3, 3);
  std::vector<DyadicRectangle> all;
  for (const auto& r : shapes)
    for (const auto& R : rectangles_of_shape(r)) all.push_back(R);
  std::size_t checked = 0;
  for (std::size_t i = 0; i < all.size(); i += 7)
    for (std::size_t j = 0; j < all.size(); j += 11) {
      std::vector<DyadicRectangle> R{all[i], all[j]};
      if (mean_zero_predicate(R)) {
        EXPECT_EQ(mean(R), Rational(0));
        ++checked;
      }
    }
  EXPECT_GT(checked, 20u);
  std::vector<DyadicRectangle> same{all[7], all[7]};
  EXPECT_FALSE(mean_zero_predicate(same));
  EXPECT_EQ(mean(same), all[7].volume());
  // tied minima in every coordinate: predicate silent, mean from the grid
  std::vector<DyadicRectangle> tied{{DyadicInterval(1, 0), DyadicInterval(1, 0), DyadicInterval(1, 0)},
                                    {DyadicInterval(1, 0), DyadicInterval(1, 0), DyadicInterval(1, 0)},
                                    {DyadicInterval(0, 0), DyadicInterval(0, 0), DyadicInterval(0, 0)}};
  EXPECT_FALSE(mean_zero_predicate(tied));
  EXPECT_EQ(mean(tied), Rational(-1, 8));
}

TEST(Classes, C2AtTwo) {
  auto c = c2_class(2);
  std::set<std::set<Shape>> got;
  for (const auto& t : c.tuples) got.insert({t[0], t[1]});
  std::set<std::set<Shape>> expected{{Shape{2, 0, 0}, Shape{1, 0, 1}},
                                     {Shape{2, 0, 0}, Shape{0, 0, 2}},
                                     {Shape{1, 0, 1}, Shape{0, 0, 2}},
                                     {Shape{1, 1, 0}, Shape{0, 1, 1}}};
  EXPECT_EQ(c.size(), 4u);
  EXPECT_EQ(got, expected);
}

TEST(Classes, B4AgainstFilter) {
  const int n = 3;
  auto shapes = enumerate_shapes(n, 3);
  std::set<ShapeTuple> with, without;
  for (const auto& r : shapes)
    for (const auto& s : shapes)
      for (const auto& t : shapes)
        for (const auto& u : shapes) {
          std::set<Shape> distinct{r, s, t, u};
          if (distinct.size() != 4 || r[1] != s[1] || t[1] != u[1]) continue;
          ShapeTuple tu{r, s, t, u};
          without.insert(tu);
          auto twice = [&](int c) {
            int m = std::max({r[c], s[c], t[c], u[c]});
            return (r[c] == m) + (s[c] == m) + (t[c] == m) + (u[c] == m) >= 2;
          };
          if (twice(0) && twice(2)) with.insert(tu);
        }
  auto b4 = b4_class(n);
  std::set<ShapeTuple> got(b4.tuples.begin(), b4.tuples.end());
  EXPECT_EQ(got, with);
  EXPECT_LT(with.size(), without.size());
  EXPECT_LE(b4.exactly_twice, b4.size());
}

TEST(Classes, OtherKinds) {
  auto cb = c2b_class(4, 1);
  for (const auto& t : cb.tuples) {
    EXPECT_EQ(t[0][0], 1);
    EXPECT_EQ(t[0][1], t[1][1]);
    EXPECT_NE(t[0], t[1]);
  }
  auto ba = b4a_class(4, 2);
  EXPECT_GT(ba.size(), 0u);
  for (const auto& t : ba.tuples) {
    EXPECT_EQ(t[1][0], 2);
    EXPECT_EQ(t[3][0], 2);
  }
  auto p = make_params_q(4, 2);
  auto cr = c2_restricted_class(p, 0, 1);
  for (const auto& t : cr.tuples) {
    EXPECT_EQ(p.block_of(t[0]), 0);
    EXPECT_EQ(p.block_of(t[1]), 1);
  }
}

TEST(Classes, ProdOverEmptyAndPairs) {
  auto alpha = signs(3, 1);
  Resolution res = default_resolution(3, 3);
  auto z = prod_over({}, alpha, res);
  for (auto v : z.values()) EXPECT_EQ(v, 0);
  auto c = c2_class(3);
  auto g = prod_over(c.tuples, alpha, res);
  GridFunction<Integer> direct(res, Integer{0});
  for (const auto& t : c.tuples)
    direct = direct + r_function_grid(r_function(alpha, t[0]), res) * r_function_grid(r_function(alpha, t[1]), res);
  EXPECT_EQ(g, direct);
  EXPECT_LE(sup_norm(g), static_cast<Integer>(c.size()));
}

TEST(BeckGain, TwoL2Routes) {
  auto p = make_params_q(5, 2);
  auto alpha = signs(5, 3);
  auto rep = l2_two_ways(c2_restricted_class(p, 0, 1), alpha);
  EXPECT_TRUE(rep.agree());
  EXPECT_GT(rep.other_quadruples, 0u);
  auto rep2 = l2_two_ways(c2_class(4), signs(4, 4));
  EXPECT_TRUE(rep2.agree()) << to_string(rep2.grid) << " " << to_string(rep2.expansion);
}

TEST(BeckGain, TableAndInfinityColumn) {
  BeckGainConfig cfg;
  cfg.kind = ClassKind::C2;
  cfg.n_list = {3, 4, 5};
  cfg.p_list = {2.0, 4.0, kInfinity};
  auto t = beck_gain_measure(cfg);
  EXPECT_EQ(t.rows.size(), 9u);
  for (const auto& r : t.rows)
    if (std::isinf(r.p)) EXPECT_LE(r.norm, r.trivial);
  EXPECT_EQ(t.fits.size(), 3u);
  auto again = beck_gain_measure(cfg);
  EXPECT_EQ(t.csv(), again.csv());
}

TEST(Graphs, TwoVertices) {
  auto gs = enumerate_admissible({1, 2});
  ASSERT_EQ(gs.size(), 2u);
  CoincidenceGraph both({1, 2});
  both.add_edge(2, 1, 2);
  both.add_edge(3, 1, 2);
  EXPECT_FALSE(is_admissible(both));
  CoincidenceGraph empty({1, 2});
  EXPECT_FALSE(is_admissible(empty));
}

TEST(Graphs, EnumerationMatchesBruteForce) {
  std::vector<std::size_t> counts;
  for (int m = 1; m <= 4; ++m) {
    std::vector<int> V;
    for (int v = 1; v <= m; ++v) V.push_back(v);
    auto fast = enumerate_admissible(V);
    EXPECT_EQ(fast, brute_force_admissible(V));
    counts.push_back(fast.size());
  }
  // frozen from the brute-force pass
  EXPECT_EQ(counts, (std::vector<std::size_t>{0, 2, 8, 68}));
}

TEST(Graphs, WedgeAndPrimes) {
  std::vector<int> V{1, 2, 3, 4};
  auto L = graph_lattice(V);
  for (const auto& g : L.graphs) {
    auto w = wedge(g, g);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(*w, g);
  }
  // literal definition: not a wedge of two different admissible graphs
  for (std::size_t i = 0; i < L.graphs.size(); ++i) {
    bool is_wedge = false;
    for (const auto& a : L.graphs)
      for (const auto& b : L.graphs)
        if (a != b) {
          auto w = wedge(a, b);
          if (w && *w == L.graphs[i]) is_wedge = true;
        }
    EXPECT_EQ(L.prime[i], !is_wedge) << L.graphs[i].str();
  }
  for (int m : {2, 3}) {
    std::vector<int> W;
    for (int v = 1; v <= m; ++v) W.push_back(v);
    for (const auto& g : enumerate_admissible(W)) EXPECT_TRUE(is_prime(g));
  }
  auto g2 = CoincidenceGraph::from_cliques({1, 2}, {{1, 2}}, {});
  auto g3 = CoincidenceGraph::from_cliques({1, 2}, {}, {{1, 2}});
  EXPECT_FALSE(wedge(g2, g3).has_value());
  auto a = CoincidenceGraph::from_cliques(V, {{1, 2}, {3, 4}}, {});
  auto b = CoincidenceGraph::from_cliques(V, {{1, 3}, {2, 4}}, {});
  auto w = wedge(a, b);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(cliques(*w, 2), (std::vector<std::vector<int>>{{1, 2, 3, 4}}));
  EXPECT_EQ(grade(*w), 2);
  EXPECT_TRUE(is_connected(*w));
  EXPECT_FALSE(is_connected(a));
}

TEST(Graphs, JsonRoundTrip) {
  auto g = CoincidenceGraph::from_cliques({1, 2, 3, 5}, {{1, 2, 3}}, {{3, 5}});
  auto j = graph_to_json(g);
  EXPECT_EQ(graph_from_json(j), g);
  EXPECT_THROW(graph_from_json(nlohmann::json{{"vertices", 3}}), FormatError);
}

TEST(Exponent, SixVertexExample) {
  auto g = CoincidenceGraph::from_cliques({1, 2, 3, 4, 5, 6}, {{1, 2, 3}}, {{1, 4}, {2, 5}, {3, 6}});
  auto rep = exponent_recursion(g);
  EXPECT_EQ(rep.v32.size(), 3u);
  EXPECT_EQ(rep.v12.size(), 1u);
  EXPECT_EQ(rep.exponent, Rational(-1, 6));
}

TEST(Exponent, TwoVertices) {
  auto g = CoincidenceGraph::from_cliques({1, 2}, {{1, 2}}, {});
  auto rep = exponent_recursion(g);
  EXPECT_EQ(rep.v32, (std::vector<int>{2}));
  EXPECT_EQ(rep.v12, (std::vector<int>{1}));
  EXPECT_EQ(rep.exponent, Rational(0));
  auto split = CoincidenceGraph::from_cliques({1, 2, 3, 4}, {{1, 2}, {3, 4}}, {});
  EXPECT_THROW(exponent_recursion(split), DomainError);
}

TEST(Nsd, SingleEdgeGraph) {
  auto p = make_params_q(4, 2);
  auto g = CoincidenceGraph::from_cliques({1, 2}, {{1, 2}}, {});
  auto X = x_of_graph(g, p);
  std::size_t expected = 0;
  for (const auto& r : p.blocks[0])
    for (const auto& s : p.blocks[1]) expected += r[1] == s[1];
  EXPECT_EQ(X.size(), expected);
  for (const auto& t : X) EXPECT_EQ(t[0][1], t[1][1]);
}

TEST(Nsd, TwoBlocksSplitByColor) {
  auto p = make_params_q(4, 2);
  auto X2 = x_of_graph(CoincidenceGraph::from_cliques({1, 2}, {{1, 2}}, {}), p);
  auto X3 = x_of_graph(CoincidenceGraph::from_cliques({1, 2}, {}, {{1, 2}}), p);
  auto N = nsd_tuples({1, 2}, p);
  std::set<ShapeTuple> a(X2.begin(), X2.end()), b(X3.begin(), X3.end()), all(N.begin(), N.end());
  std::set<ShapeTuple> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(common, common.end()));
  EXPECT_TRUE(common.empty());
  a.insert(b.begin(), b.end());
  EXPECT_EQ(a, all);
  EXPECT_TRUE(nsd_tuples({}, p).empty());
}

TEST(InclusionExclusion, TwoVerticesPositiveSigns) {
  auto p = make_params_q(4, 2);
  auto rep = inclusion_exclusion_check({1, 2}, signs(4, 5), p);
  EXPECT_TRUE(rep.holds);
  ASSERT_EQ(rep.coefficients.size(), 2u);
  for (const auto& [g, c] : rep.coefficients) EXPECT_EQ(c, 1);
  EXPECT_TRUE(rep.literal_holds);
  EXPECT_TRUE(rep.exact_partition_holds);
}

TEST(InclusionExclusion, EmptyVertexSet) {
  auto p = make_params_q(3, 2);
  auto rep = inclusion_exclusion_check({}, signs(3, 6), p);
  EXPECT_TRUE(rep.holds);
  EXPECT_EQ(rep.nsd_count, 0u);
}

TEST(InclusionExclusion, ThreeVertices) {
  auto p = make_params_q(5, 3);
  auto rep = inclusion_exclusion_check({1, 2, 3}, signs(5, 7), p);
  EXPECT_TRUE(rep.holds);
  EXPECT_TRUE(rep.exact_partition_holds);
  EXPECT_GT(rep.nsd_count, 0u);
}

TEST(Factorization, Fixtures) {
  auto p = make_params_q(5, 4);
  auto alpha = signs(5, 8);
  auto g1 = CoincidenceGraph::from_cliques({1, 2}, {{1, 2}}, {});
  auto g2 = CoincidenceGraph::from_cliques({3, 4}, {}, {{3, 4}});
  auto rep = factorization_check({g1, g2}, alpha, p);
  EXPECT_TRUE(rep.holds);
  EXPECT_EQ(rep.lhs_terms, rep.component_terms[0] * rep.component_terms[1]);
  EXPECT_TRUE(factorization_check({g1}, alpha, p).holds);
  auto with_empty = factorization_check({g1, CoincidenceGraph(std::vector<int>{})}, alpha, p);
  EXPECT_TRUE(with_empty.holds);
  EXPECT_THROW(factorization_check({g1, g1}, alpha, p), DomainError);
}

TEST(ProductRule, SelfCheckAndFault) {
  auto ok = check_product_rule(3);
  EXPECT_FALSE(ok.failure.has_value());
  EXPECT_GT(ok.tuples, 1000u);
  set_product_rule_fault(true);
  auto bad = check_product_rule(3);
  set_product_rule_fault(false);
  ASSERT_TRUE(bad.failure.has_value());
  EXPECT_NE(bad.failure->find('*'), std::string::npos);
}
