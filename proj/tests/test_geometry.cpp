#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "semigeo/catalog.hpp"
#include "semigeo/geometry.hpp"
#include "support.hpp"

using namespace semigeo;

namespace {

  ExtDist F(std::int64_t n) {
    return ExtDist::finite(n);
  }
  ExtDist const INF = ExtDist::infinite();

  std::vector<std::string> labels(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back("p" + std::to_string(i));
    }
    return out;
  }

  FiniteSemimetricSpace space(DistanceEntries d) {
    auto n = d.size();
    return FiniteSemimetricSpace(labels(n), std::move(d));
  }

  // γ_0..γ_n with d(γ_i, γ_j) = j - i forwards and 1 backwards.
  FiniteSemimetricSpace constants_line(std::size_t n) {
    DistanceEntries d(n + 1, std::vector<ExtDist>(n + 1));
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j <= n; ++j) {
        d[i][j] = j >= i ? F(static_cast<std::int64_t>(j - i)) : F(1);
      }
    }
    return space(d);
  }

  FiniteSemimetricSpace path_metric(std::size_t n) {
    DistanceEntries d(n, std::vector<ExtDist>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        d[i][j] = F(i > j ? static_cast<std::int64_t>(i - j) : static_cast<std::int64_t>(j - i));
      }
    }
    return space(d);
  }

  // Shortest paths over a random digraph with rational weights, containing
  // a Hamiltonian cycle so that it is strongly connected.
  FiniteSemimetricSpace random_strong_space(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<int> num(1, 12), den(1, 4), coin(0, 2);
    DistanceEntries d(n, std::vector<ExtDist>(n, INF));
    for (std::size_t i = 0; i < n; ++i) {
      d[i][i] = F(0);
      d[i][(i + 1) % n] = ExtDist::finite(Rational(num(rng), den(rng)));
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && coin(rng) == 0) {
          auto w = ExtDist::finite(Rational(num(rng), den(rng)));
          if (!d[i][j].is_finite() || w.value() < d[i][j].value()) {
            d[i][j] = w;
          }
        }
      }
    }
    if (n == 1) {
      d[0][0] = F(0);
    }
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          auto via = d[i][k] + d[k][j];
          if (via.is_finite() && (!d[i][j].is_finite() || via.value() < d[i][j].value())) {
            d[i][j] = via;
          }
        }
      }
    }
    return space(d);
  }

}  // namespace

TEST(Geometry, ValidateSpace) {
  EXPECT_FALSE(validate_space({{F(0), F(1)}, {INF, F(0)}}));
  auto z = validate_space({{F(0), F(0)}, {F(0), F(0)}});
  ASSERT_TRUE(z);
  EXPECT_EQ(z->kind, SpaceViolation::Kind::zero_distance);
  auto t = validate_space({{F(0), F(1), F(3)}, {INF, F(0), F(1)}, {INF, INF, F(0)}});
  ASSERT_TRUE(t);
  EXPECT_EQ(t->kind, SpaceViolation::Kind::triangle);
  EXPECT_EQ(t->x, 0U);
  EXPECT_EQ(t->y, 1U);
  EXPECT_EQ(t->z, 2U);
  EXPECT_THROW(space({{F(0), F(0)}, {F(0), F(0)}}), InvalidSpace);
}

TEST(Geometry, Basepoints) {
  EXPECT_EQ(basepoints(space({{F(0), F(1)}, {INF, F(0)}})), std::vector<std::size_t>{0});
  EXPECT_EQ(basepoints(path_metric(3)).size(), 3U);
  EXPECT_TRUE(basepoints(space({{F(0), INF}, {INF, F(0)}})).empty());
}

TEST(Geometry, QuasiMetricityConstant) {
  EXPECT_EQ(quasi_metricity_constant(path_metric(4), Rational(0)), Rational(1));
  EXPECT_EQ(quasi_metricity_constant(constants_line(5), Rational(0)), Rational(5));
  EXPECT_FALSE(quasi_metricity_constant(space({{F(0), F(1)}, {INF, F(0)}}), Rational(0)));
}

TEST(Geometry, QuasiMetricityMonotoneInEpsilon) {
  std::mt19937 rng(1);
  for (int i = 0; i < 30; ++i) {
    auto x    = random_strong_space(rng, 2 + i % 7);
    auto prev = *quasi_metricity_constant(x, Rational(0));
    for (auto e : {Rational(1, 2), Rational(1), Rational(3), Rational(10)}) {
      auto l = *quasi_metricity_constant(x, e);
      EXPECT_LE(l, prev);
      EXPECT_FALSE(check_quasi_metric(x, l, e));
      prev = l;
    }
  }
}

TEST(Geometry, Symmetrize) {
  auto p = path_metric(4);
  auto s = symmetrize(p, Rational(1));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_EQ(s.metric.d(i, j), p.d(i, j) + p.d(i, j));
    }
  }
  EXPECT_EQ(s.forward.lambda, Rational(2));
  PointMap id = {0, 1, 2, 3};
  EXPECT_TRUE(check_quasi_isometry(id, p, s.metric, s.forward).ok());

  auto line = constants_line(4);
  auto t    = symmetrize(line);
  EXPECT_EQ(t.lambda, Rational(4));
  EXPECT_EQ(t.forward.lambda, Rational(5));
  for (std::size_t i = 1; i <= 4; ++i) {
    EXPECT_EQ(t.metric.d(0, i), F(static_cast<std::int64_t>(i) + 1));
  }
  PointMap id5 = {0, 1, 2, 3, 4};
  EXPECT_TRUE(check_quasi_isometry(id5, line, t.metric, t.forward).ok());

  auto one = symmetrize(space({{F(0)}}));
  EXPECT_EQ(one.metric.size(), 1U);

  EXPECT_THROW(symmetrize(space({{F(0), F(1)}, {INF, F(0)}})), NotStronglyConnected);
}

TEST(Geometry, SymmetrizeRoundTripRandom) {
  std::mt19937 rng(2);
  for (int i = 0; i < 50; ++i) {
    auto     x = random_strong_space(rng, 1 + i % 12);
    Rational eps(i % 3, 2);
    auto     s = symmetrize(x, eps);
    EXPECT_TRUE(is_metric(s.metric));
    PointMap id(x.size());
    for (std::size_t k = 0; k < id.size(); ++k) {
      id[k] = k;
    }
    EXPECT_TRUE(check_quasi_isometry(id, x, s.metric, s.forward).ok());
    EXPECT_FALSE(check_quasi_metric(x, s.back_lambda, s.back_epsilon));
  }
}

TEST(Geometry, QiEmbeddingExamples) {
  auto     p  = path_metric(5);
  PointMap id = {0, 1, 2, 3, 4};
  EXPECT_FALSE(check_qi_embedding(id, p, p, Rational(1), Rational(1, 2)));

  auto line = space({{F(0), F(1), F(2)}, {INF, F(0), F(1)}, {INF, INF, F(0)}});
  auto pt   = space({{F(0)}});
  PointMap collapse = {0, 0, 0};
  auto v = check_qi_embedding(collapse, line, pt, Rational(1), Rational(1, 2));
  ASSERT_TRUE(v);
  EXPECT_EQ(*v, (PairViolation{0, 1, Bound::lower}));
  auto all = qi_embedding_violations(collapse, line, pt, Rational(1), Rational(1, 2));
  EXPECT_NE(std::find(all.begin(), all.end(), PairViolation{0, 2, Bound::lower}), all.end());
  EXPECT_NE(std::find(all.begin(), all.end(), PairViolation{1, 0, Bound::lower}), all.end());

  // Bicyclic geodesics never leave the ball spanned by their endpoints.
  auto     m     = catalog::bicyclic();
  auto     small = build_cayley_ball(m, Side::right, 3);
  auto     big   = build_cayley_ball(m, Side::right, 5);
  auto     xs    = in_ball_space(small);
  auto     ys    = in_ball_space(big);
  PointMap inc(small.size());
  for (std::size_t v2 = 0; v2 < small.size(); ++v2) {
    inc[v2] = big.index_of(small.vertices[v2].element);
  }
  EXPECT_FALSE(check_qi_embedding(inc, xs, ys, Rational(1), Rational(0)));
}

TEST(Geometry, QuasiDensity) {
  auto     p    = path_metric(5);
  PointMap onto = {0, 1, 2, 3, 4};
  EXPECT_EQ(quasi_density(onto, p, p), F(0));
  auto     evens = path_metric(3);
  PointMap half  = {0, 2, 4};
  EXPECT_EQ(quasi_density(half, evens, p), F(1));
  auto     two = space({{F(0), INF}, {INF, F(0)}});
  PointMap one = {0};
  EXPECT_TRUE(quasi_density(one, space({{F(0)}}), two).is_infinite());
}

TEST(Geometry, ComposeEmbeddings) {
  EXPECT_EQ(compose_embeddings({Rational(1), Rational(1)}, {Rational(1), Rational(1)}),
            std::make_pair(Rational(1), Rational(2)));
  EXPECT_EQ(compose_embeddings({Rational(1), Rational(3)}, {Rational(2), Rational(1)}),
            std::make_pair(Rational(2), Rational(7)));

  std::mt19937 rng(4);
  int          composed = 0;
  for (int i = 0; i < 200; ++i) {
    auto x = random_strong_space(rng, 2 + i % 7);
    auto y = random_strong_space(rng, 2 + (i / 7) % 7);
    auto z = random_strong_space(rng, 2 + (i / 3) % 7);
    PointMap f(x.size()), g(y.size());
    std::uniform_int_distribution<std::size_t> fy(0, y.size() - 1), gz(0, z.size() - 1);
    for (auto& v : f) {
      v = fy(rng);
    }
    for (auto& v : g) {
      v = gz(rng);
    }
    // Least ε on a coarse grid for λ = 2; all spaces are strongly connected.
    auto certify = [](PointMap const& h, FiniteSemimetricSpace const& a,
                      FiniteSemimetricSpace const& b) -> std::optional<Rational> {
      for (std::int64_t e = 0; e <= 200; ++e) {
        if (!check_qi_embedding(h, a, b, Rational(2), Rational(e, 2))) {
          return Rational(e, 2);
        }
      }
      return std::nullopt;
    };
    auto e1 = certify(f, x, y);
    auto e2 = certify(g, y, z);
    if (!e1 || !e2) {
      continue;
    }
    ++composed;
    auto [l, e] = compose_embeddings({Rational(2), *e1}, {Rational(2), *e2});
    EXPECT_FALSE(check_qi_embedding(compose_maps(f, g), x, z, l, e));
  }
  EXPECT_GT(composed, 100);
}

TEST(Geometry, SearchExamples) {
  auto p  = path_metric(4);
  auto id = search_quasi_isometry(p, p, Rational(3), Rational(4), Rational(2));
  ASSERT_TRUE(id);
  EXPECT_EQ(id->map, (PointMap{0, 1, 2, 3}));
  EXPECT_EQ(id->constants, (QiConstants{Rational(1), Rational(1, 2), Rational(0)}));

  auto two = path_metric(2);
  auto pt  = space({{F(0)}});
  auto c   = search_quasi_isometry(two, pt, Rational(3), Rational(4), Rational(2));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->constants, (QiConstants{Rational(1), Rational(1), Rational(0)}));

  auto chain = space({{F(0), F(1)}, {INF, F(0)}});
  auto split = space({{F(0), INF}, {INF, F(0)}});
  for (int b : {1, 4, 16}) {
    EXPECT_FALSE(search_quasi_isometry(chain, split, Rational(b), Rational(b), Rational(b)));
  }
  EXPECT_THROW((void) search_quasi_isometry(path_metric(11), p, Rational(1), Rational(1),
                                            Rational(1)),
               CapExceeded);
}

TEST(Geometry, SearchWitnessesReplay) {
  std::mt19937 rng(8);
  for (int i = 0; i < 40; ++i) {
    auto x = random_strong_space(rng, 1 + i % 6);
    auto y = random_strong_space(rng, 1 + (i / 6) % 6);
    auto w = search_quasi_isometry(x, y, Rational(3), Rational(8), Rational(8));
    if (w) {
      EXPECT_TRUE(check_quasi_isometry(w->map, x, y, w->constants).ok());
    }
  }
}

TEST(Geometry, QuotientExamples) {
  auto p   = FiniteMonoid::from(direct_product(catalog::a_squared_zero(), catalog::cyclic_group(2)));
  auto rep = check_quotient_qi(p, projection_kernel(p));
  EXPECT_FALSE(rep.not_congruence);
  EXPECT_EQ(rep.diameter, F(1));
  EXPECT_EQ(rep.quotient.size(), 3U);
  EXPECT_TRUE(rep.ok);

  std::vector<std::size_t> discrete(p.size());
  for (std::size_t i = 0; i < discrete.size(); ++i) {
    discrete[i] = i;
  }
  auto same = check_quotient_qi(p, discrete);
  EXPECT_EQ(same.diameter, F(0));
  EXPECT_TRUE(same.ok);

  auto t2  = FiniteMonoid::from(catalog::full_transformation(2));
  auto all = check_quotient_qi(t2, std::vector<std::size_t>(t2.size(), 0));
  EXPECT_TRUE(all.trivial_quotient);
  EXPECT_TRUE(all.diameter.is_infinite());
  EXPECT_FALSE(all.ok);

  auto z3 = FiniteMonoid::from(catalog::cyclic_group(3));
  auto zq = check_quotient_qi(z3, std::vector<std::size_t>(3, 0));
  EXPECT_TRUE(zq.trivial_quotient);
  EXPECT_EQ(zq.diameter, F(2));
  EXPECT_TRUE(zq.ok);

  std::vector<std::size_t> bad(t2.size());
  for (std::size_t i = 0; i < t2.size(); ++i) {
    auto n = t2.name(i);
    bad[i] = n == "[0,1]" || n == "[0,0]" ? 0 : n == "[1,0]" ? 1 : 2;
  }
  EXPECT_TRUE(check_quotient_qi(t2, bad).not_congruence);
}

TEST(Geometry, ProjectionEvidence) {
  for (auto const& m : {catalog::naturals(), catalog::integers()}) {
    auto p = std::make_shared<ProductMonoid>(m, catalog::cyclic_group(2));
    auto r = check_projection_qi(p, 8);
    EXPECT_EQ(r.fiber_diameter, F(1));
    EXPECT_TRUE(r.ok);
    EXPECT_GT(r.pairs_checked, 0U);
  }
}

TEST(Geometry, ExploredBallsAreSpaces) {
  for (auto const& m : {catalog::full_transformation(3), catalog::a_squared_zero(true),
                        catalog::cyclic_group(6)}) {
    auto fm = FiniteMonoid::from(m);
    EXPECT_NO_THROW((void) space_from_ball(build_cayley_ball(m, Side::right, fm.size())));
  }
}

// Right simple S (aS = S for all a) iff the Cayley graph of S over A = S is
// strongly connected, with λ bounded by max d_A(ba, a).
TEST(Geometry, RightSimpleIffQuasiMetric) {
  std::size_t right_simple = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    for (auto const& t : test_support::all_semigroup_tables(n)) {
      std::vector<std::string> names;
      for (std::size_t i = 0; i < n; ++i) {
        names.push_back("s" + std::to_string(i));
      }
      auto m = std::make_shared<TableMonoid>(names, t, std::nullopt, names);
      bool simple = true;
      for (std::size_t a = 0; a < n; ++a) {
        std::set<std::uint32_t> row(t[a].begin(), t[a].end());
        simple = simple && row.size() == n;
      }
      auto g    = build_cayley_ball(m, Side::right, n + 1);
      auto full = space_from_ball(g);
      std::vector<std::size_t> keep;
      for (std::size_t v = 0; v < g.size(); ++v) {
        if (g.vertices[v].element != m->identity()) {
          keep.push_back(v);
        }
      }
      DistanceEntries d(keep.size(), std::vector<ExtDist>(keep.size()));
      for (std::size_t i = 0; i < keep.size(); ++i) {
        for (std::size_t j = 0; j < keep.size(); ++j) {
          d[i][j] = full.d(keep[i], keep[j]);
        }
      }
      auto s = FiniteSemimetricSpace(labels(keep.size()), d);
      auto l = quasi_metricity_constant(s, Rational(0));
      EXPECT_EQ(simple, l.has_value());
      if (simple) {
        ++right_simple;
        Rational bound(1);
        for (std::size_t a = 0; a < n; ++a) {
          for (std::size_t b = 0; b < n; ++b) {
            auto ba = g.index_of(m->make({t[b][a]}));
            auto av = g.index_of(m->make({static_cast<std::uint32_t>(a)}));
            bound   = std::max(bound, full.d(ba, av).value());
          }
        }
        EXPECT_LE(*l, bound);
      }
    }
  }
  EXPECT_GT(right_simple, 0U);
}
