#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "semigeo/catalog.hpp"
#include "semigeo/green.hpp"
#include "support.hpp"

using namespace semigeo;

namespace {

  std::set<std::set<std::string>> named(FiniteMonoid const& fm, Partition const& p) {
    std::set<std::set<std::string>> out;
    for (auto const& c : p.classes) {
      std::set<std::string> s;
      for (auto i : c) {
        s.insert(fm.name(i));
      }
      out.insert(s);
    }
    return out;
  }

  // x R y by direct comparison of the sets xM and yM.
  bool brute_r(FiniteMonoid const& fm, std::size_t x, std::size_t y) {
    std::set<std::size_t> a, b;
    for (std::size_t z = 0; z < fm.size(); ++z) {
      a.insert(fm.product(x, z));
      b.insert(fm.product(y, z));
    }
    return a == b;
  }

  std::size_t rank(Element const& x) {
    return std::set<std::uint32_t>(x.data.begin(), x.data.end()).size();
  }

  std::vector<std::size_t> class_containing(GreenStructure const& g, std::size_t x) {
    return g.h.classes[g.h.of[x]];
  }

}  // namespace

TEST(Green, T2Classes) {
  auto fm = FiniteMonoid::from(catalog::full_transformation(2));
  auto g  = green_relations(fm);
  EXPECT_EQ(named(fm, g.r),
            (std::set<std::set<std::string>>{{"[0,1]", "[1,0]"}, {"[0,0]", "[1,1]"}}));
  EXPECT_EQ(named(fm, g.l),
            (std::set<std::set<std::string>>{{"[0,1]", "[1,0]"}, {"[0,0]"}, {"[1,1]"}}));
  EXPECT_EQ(g.h.size(), 3U);
  EXPECT_EQ(g.r_order.size(), 1U);
}

TEST(Green, T3Classes) {
  auto fm = FiniteMonoid::from(catalog::full_transformation(3));
  auto g  = green_relations(fm);
  EXPECT_EQ(g.r.size(), 5U);
  EXPECT_EQ(g.l.size(), 7U);
  EXPECT_EQ(g.h.size(), 13U);
  std::multiset<std::size_t> sizes;
  for (auto const& c : g.h.classes) {
    sizes.insert(c.size());
  }
  EXPECT_EQ(sizes, (std::multiset<std::size_t>{6, 2, 2, 2, 2, 2, 2, 2, 2, 2, 1, 1, 1}));
}

TEST(Green, TrivialMonoid) {
  auto fm = FiniteMonoid::from(catalog::trivial_monoid());
  auto g  = green_relations(fm);
  EXPECT_EQ(g.r.size(), 1U);
  EXPECT_EQ(g.l.size(), 1U);
  EXPECT_EQ(g.h.size(), 1U);
}

TEST(Green, RMatchesBruteForceAndSccs) {
  std::mt19937 rng(3);
  std::vector<MonoidPtr> ms = {catalog::full_transformation(3), catalog::a_squared_zero(),
                               catalog::a_squared_zero(true), catalog::cyclic_group(5)};
  for (int i = 0; i < 20; ++i) {
    ms.push_back(test_support::random_transformation_monoid(rng));
  }
  for (auto const& m : ms) {
    auto fm   = FiniteMonoid::from(m);
    auto g    = green_relations(fm);
    auto ball = build_cayley_ball(m, Side::right, fm.size());
    auto c    = strongly_connected_components(ball);
    for (std::size_t x = 0; x < fm.size(); ++x) {
      for (std::size_t y = 0; y < fm.size(); ++y) {
        EXPECT_EQ(g.r.of[x] == g.r.of[y], brute_r(fm, x, y));
        auto bx = ball.index_of(fm.element(x));
        auto by = ball.index_of(fm.element(y));
        EXPECT_EQ(g.r.of[x] == g.r.of[y], c.of[bx] == c.of[by]);
      }
    }
    for (bool v : c.verified) {
      EXPECT_TRUE(v);
    }
    // H refines R and L.
    for (auto const& h : g.h.classes) {
      for (auto x : h) {
        EXPECT_EQ(g.r.of[x], g.r.of[h.front()]);
        EXPECT_EQ(g.l.of[x], g.l.of[h.front()]);
      }
    }
  }
}

TEST(Green, SchutzenbergerGroupExamples) {
  auto fm = FiniteMonoid::from(catalog::full_transformation(2));
  auto g  = green_relations(fm);
  auto id = fm.identity();
  EXPECT_EQ(schutzenberger_group(fm, g, class_containing(g, id)).order(), 2U);
  auto c1 = fm.index_of(fm.backend()->parse("[0,0]"));
  EXPECT_EQ(schutzenberger_group(fm, g, {c1}).order(), 1U);
  EXPECT_THROW((void) schutzenberger_group(fm, g, {id}), NotAnHClass);

  auto f3 = FiniteMonoid::from(catalog::full_transformation(3));
  auto g3 = green_relations(f3);
  for (auto const& h : g3.h.classes) {
    auto grp = schutzenberger_group(f3, g3, h);
    auto r   = rank(f3.element(h.front()));
    EXPECT_EQ(grp.order(), r == 3 ? 6U : r == 2 ? 2U : 1U);
  }
}

TEST(Green, GroupOrderEqualsHClassSize) {
  std::mt19937 rng(5);
  for (int i = 0; i < 40; ++i) {
    auto fm = FiniteMonoid::from(test_support::random_transformation_monoid(rng));
    auto g  = green_relations(fm);
    for (auto const& h : g.h.classes) {
      auto grp = schutzenberger_group(fm, g, h);
      EXPECT_EQ(grp.order(), h.size());
      EXPECT_TRUE(grp.closed);
      // Group axioms on the table.
      auto n = grp.order();
      for (std::size_t a = 0; a < n; ++a) {
        EXPECT_EQ(grp.table[0][a], a);
        EXPECT_EQ(grp.table[a][0], a);
        std::set<std::size_t> row(grp.table[a].begin(), grp.table[a].end());
        EXPECT_EQ(row.size(), n);
        for (std::size_t b = 0; b < n; ++b) {
          for (std::size_t c = 0; c < n; ++c) {
            EXPECT_EQ(grp.table[grp.table[a][b]][c], grp.table[a][grp.table[b][c]]);
          }
        }
      }
    }
  }
}

TEST(Green, OneRClassMeansGroup) {
  for (auto const& m : {catalog::cyclic_group(4), catalog::trivial_monoid(),
                        catalog::transformation_monoid(3, {{"a", {1, 2, 0}}, {"t", {1, 0, 2}}})}) {
    auto fm = FiniteMonoid::from(m);
    auto g  = green_relations(fm);
    ASSERT_EQ(g.r.size(), 1U);
    for (std::size_t x = 0; x < fm.size(); ++x) {
      bool invertible = false;
      for (std::size_t y = 0; y < fm.size(); ++y) {
        invertible = invertible
                     || (fm.product(x, y) == fm.identity() && fm.product(y, x) == fm.identity());
      }
      EXPECT_TRUE(invertible);
    }
  }
}

TEST(Green, ActionOnFiniteMonoids) {
  for (auto const& m : {catalog::full_transformation(2), catalog::full_transformation(3)}) {
    auto fm = FiniteMonoid::from(m);
    auto g  = green_relations(fm);
    for (auto const& h : g.h.classes) {
      auto a   = schutz_action(fm, g, h);
      auto rep = check_schutz_action(a, 3);
      EXPECT_TRUE(rep.isometric);
      EXPECT_TRUE(rep.outward_proper);
      EXPECT_TRUE(rep.cocompact);
      EXPECT_EQ(a.graph.size(), g.r.classes[g.r.of[h.front()]].size());
    }
  }
  auto fm  = FiniteMonoid::from(catalog::cyclic_group(5));
  auto g   = green_relations(fm);
  auto rep = check_schutz_action(schutz_action(fm, g, g.h.classes[0]), 2);
  EXPECT_EQ(rep.covering_radius, 0U);
}

TEST(Green, BicyclicActionIsNotCocompact) {
  auto m   = catalog::bicyclic();
  auto a   = bounded_schutz_action(m, m->identity(), 8);
  auto rep = check_schutz_action(a, 3);
  EXPECT_EQ(a.group.order(), 1U);
  EXPECT_EQ(a.group.h_class.size(), 1U);
  EXPECT_TRUE(rep.isometric);
  EXPECT_TRUE(rep.outward_proper);
  EXPECT_FALSE(rep.cocompact);
  EXPECT_EQ(rep.largest_radius_tried, 7U);
}

TEST(Green, SvarcMilnor) {
  auto f2 = FiniteMonoid::from(catalog::full_transformation(2));
  auto g2 = green_relations(f2);
  auto s2 = svarc_milnor_generators(schutz_action(f2, g2, g2.h.classes[g2.h.of[0]]), 0);
  EXPECT_EQ(s2.generators.size(), 2U);
  EXPECT_EQ(s2.zero_set.size(), 1U);
  EXPECT_TRUE(s2.generates);
  EXPECT_TRUE(s2.upper_bound);
  EXPECT_TRUE(s2.lower_bound);

  auto f3 = FiniteMonoid::from(catalog::full_transformation(3));
  auto g3 = green_relations(f3);
  auto a3 = schutz_action(f3, g3, g3.h.classes[g3.h.of[0]]);
  ASSERT_EQ(a3.group.order(), 6U);
  auto s3 = svarc_milnor_generators(a3, 1);
  EXPECT_TRUE(s3.ball_covers);
  EXPECT_TRUE(s3.generates);
  EXPECT_TRUE(s3.upper_bound);
  EXPECT_TRUE(s3.lower_bound);
  EXPECT_TRUE(s3.failures.empty());

  auto ft = FiniteMonoid::from(catalog::trivial_monoid());
  auto gt = green_relations(ft);
  auto st = svarc_milnor_generators(schutz_action(ft, gt, {0}), 0);
  EXPECT_EQ(st.generators, std::vector<std::size_t>{0});
  EXPECT_TRUE(st.generates);
}
