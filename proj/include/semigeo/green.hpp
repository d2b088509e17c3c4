// Green's relations, Schützenberger groups and their action on
// Schützenberger graphs.
//
// Everything exact here needs a finite monoid; R and L are read off by
// comparing the principal ideals xM and Mx as sets.  For an infinite monoid
// the only H-class handled is the one of a chosen element, approximated inside
// a ball and reported as bounded evidence.

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "semigeo/cayley.hpp"
#include "semigeo/errors.hpp"
#include "semigeo/monoid.hpp"
#include "semigeo/rational.hpp"

namespace semigeo {

  // Classes listed by smallest member; members sorted.
  struct Partition {
    std::vector<std::vector<std::size_t>> classes;
    std::vector<std::size_t>              of;

    [[nodiscard]] std::size_t size() const noexcept {
      return classes.size();
    }
  };

  namespace detail {
    template <typename Key>
    Partition partition_by(std::vector<Key> const& keys) {
      Partition                   p;
      std::map<Key, std::size_t>  seen;
      p.of.resize(keys.size());
      for (std::size_t i = 0; i < keys.size(); ++i) {
        auto [it, fresh] = seen.emplace(keys[i], p.classes.size());
        if (fresh) {
          p.classes.emplace_back();
        }
        p.of[i] = it->second;
        p.classes[it->second].push_back(i);
      }
      return p;
    }
  }  // namespace detail

  struct GreenStructure {
    Partition r;
    Partition l;
    Partition h;
    // (i, j) whenever R-class i lies strictly below R-class j, i.e. xM ⊂ yM.
    std::vector<std::pair<std::size_t, std::size_t>> r_order;
  };

  inline GreenStructure green_relations(FiniteMonoid const& fm) {
    auto n = fm.size();
    std::vector<std::vector<bool>> right(n, std::vector<bool>(n, false));
    std::vector<std::vector<bool>> left(n, std::vector<bool>(n, false));
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        right[x][fm.product(x, y)] = true;
        left[x][fm.product(y, x)]  = true;
      }
    }
    GreenStructure g;
    g.r = detail::partition_by(right);
    g.l = detail::partition_by(left);
    std::vector<std::pair<std::size_t, std::size_t>> both(n);
    for (std::size_t x = 0; x < n; ++x) {
      both[x] = {g.r.of[x], g.l.of[x]};
    }
    g.h = detail::partition_by(both);
    for (std::size_t i = 0; i < g.r.size(); ++i) {
      auto const& a = right[g.r.classes[i].front()];
      for (std::size_t j = 0; j < g.r.size(); ++j) {
        auto const& b = right[g.r.classes[j].front()];
        if (i == j) {
          continue;
        }
        bool subset = true;
        for (std::size_t z = 0; z < n && subset; ++z) {
          subset = !a[z] || b[z];
        }
        if (subset) {
          g.r_order.emplace_back(i, j);
        }
      }
    }
    return g;
  }

  ////////////////////////////////////////////////////////////////////////
  // Schützenberger groups
  ////////////////////////////////////////////////////////////////////////

  // Stab(H)/σ, each σ-class stored as the permutation of H it induces by left
  // multiplication together with the first stabilizer element found inducing
  // it.  Element 0 is the identity permutation.
  struct SchutzGroup {
    MonoidPtr                             monoid;
    std::vector<Element>                  h_class;
    std::vector<std::vector<std::size_t>> perms;  // perms[g][i]: s_g · h_i = h_{perms[g][i]}
    std::vector<Element>                  representatives;
    std::vector<std::vector<std::size_t>> table;  // table[g][k] acts as "k, then g"
    bool                                  closed = true;

    [[nodiscard]] std::size_t order() const noexcept {
      return perms.size();
    }

    [[nodiscard]] std::optional<std::size_t> find(std::vector<std::size_t> const& p) const {
      auto it = std::find(perms.begin(), perms.end(), p);
      if (it == perms.end()) {
        return std::nullopt;
      }
      return static_cast<std::size_t>(it - perms.begin());
    }
  };

  // The stabilizer is scanned over `candidates`; it must contain the
  // identity.  With a finite monoid and all elements as candidates this is
  // exactly G(H).
  inline SchutzGroup group_from_stabilizer(MonoidPtr                   m,
                                           std::vector<Element>        h_class,
                                           std::vector<Element> const& candidates) {
    SchutzGroup g;
    g.monoid  = m;
    g.h_class = std::move(h_class);
    ElementMap<std::size_t> pos;
    for (std::size_t i = 0; i < g.h_class.size(); ++i) {
      pos.emplace(g.h_class[i], i);
    }
    std::vector<std::size_t> id(g.h_class.size());
    for (std::size_t i = 0; i < id.size(); ++i) {
      id[i] = i;
    }
    g.perms.push_back(id);
    g.representatives.push_back(m->identity());
    for (auto const& s : candidates) {
      std::vector<std::size_t> p;
      p.reserve(g.h_class.size());
      for (auto const& h : g.h_class) {
        auto it = pos.find(m->multiply(s, h));
        if (it == pos.end()) {
          break;
        }
        p.push_back(it->second);
      }
      if (p.size() != g.h_class.size()) {
        continue;
      }
      // sH ⊆ H with |sH| = |H| means sH = H.
      auto sorted = p;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        continue;
      }
      if (!g.find(p)) {
        g.perms.push_back(std::move(p));
        g.representatives.push_back(s);
      }
    }
    auto n = g.order();
    g.table.assign(n, std::vector<std::size_t>(n, 0));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        std::vector<std::size_t> c(g.h_class.size());
        for (std::size_t i = 0; i < c.size(); ++i) {
          c[i] = g.perms[a][g.perms[b][i]];
        }
        auto k = g.find(c);
        if (!k) {
          g.closed = false;
        } else {
          g.table[a][b] = *k;
        }
      }
    }
    return g;
  }

  inline SchutzGroup schutzenberger_group(FiniteMonoid const&             fm,
                                          GreenStructure const&           green,
                                          std::vector<std::size_t> const& h) {
    auto sorted = h;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.empty() || sorted.back() >= fm.size()
        || green.h.classes[green.h.of[sorted.front()]] != sorted) {
      throw NotAnHClass("the given elements do not form an H-class");
    }
    std::vector<Element> hs;
    for (auto i : sorted) {
      hs.push_back(fm.element(i));
    }
    return group_from_stabilizer(fm.backend(), std::move(hs), fm.elements());
  }

  ////////////////////////////////////////////////////////////////////////
  // The action of G(H) on the Schützenberger graph
  ////////////////////////////////////////////////////////////////////////

  // G(H) acting on the R-class of H by (s/σ)·r = sr.  In exact mode the graph
  // is the whole R-class; in bounded mode it is the part of the strongly
  // connected component of h seen inside an out-ball, with distances carrying
  // horizons from that ball.
  struct SchutzAction {
    SchutzGroup                                        group;
    DigraphBall                                        graph;
    DistanceMatrix                                     dist;
    std::vector<std::vector<std::optional<std::size_t>>> act;  // act[g][v]
    std::size_t                                        base = 0;  // vertex of h_0
    bool                                               exact = true;
    std::size_t                                        horizon = 0;
    std::size_t                                        h_classes_in_r = 0;
  };

  namespace detail {
    inline void fill_action(SchutzAction& a) {
      auto const& m = *a.group.monoid;
      a.act.assign(a.group.order(), {});
      for (std::size_t g = 0; g < a.group.order(); ++g) {
        a.act[g].resize(a.graph.size());
        for (std::size_t v = 0; v < a.graph.size(); ++v) {
          a.act[g][v]
              = a.graph.find(m.multiply(a.group.representatives[g], a.graph.vertices[v].element));
        }
      }
      a.base = a.graph.index_of(a.group.h_class.front());
    }

    // Distances of the full ball restricted to the kept vertices.
    inline DistanceMatrix restrict_distances(DigraphBall const&              ball,
                                             std::vector<std::size_t> const& keep) {
      auto sorted = keep;
      std::sort(sorted.begin(), sorted.end());
      DistanceMatrix d(sorted.size(), std::vector<ExtDist>(sorted.size()));
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        auto row = distances_from(ball, sorted[i]).dist;
        for (std::size_t j = 0; j < sorted.size(); ++j) {
          d[i][j] = row[sorted[j]];
        }
      }
      return d;
    }
  }  // namespace detail

  inline SchutzAction schutz_action(FiniteMonoid const&             fm,
                                    GreenStructure const&           green,
                                    std::vector<std::size_t> const& h) {
    SchutzAction a;
    a.group     = schutzenberger_group(fm, green, h);
    auto x0     = a.group.h_class.front();
    auto ball   = build_cayley_ball(fm.backend(), Side::right, fm.size(), fm.size() + 1, x0);
    auto comp   = strongly_connected_components(ball);
    auto keep   = comp.members[comp.of[0]];
    a.graph     = induced_subgraph(ball, keep);
    a.dist      = detail::restrict_distances(ball, keep);
    a.exact     = true;
    a.horizon   = fm.size();
    auto r      = green.r.of[fm.index_of(x0)];
    std::set<std::size_t> hs;
    for (auto x : green.r.classes[r]) {
      hs.insert(green.h.of[x]);
    }
    a.h_classes_in_r = hs.size();
    detail::fill_action(a);
    return a;
  }

  // Bounded evidence for an infinite monoid: H is approximated by the
  // elements strongly connected to h in both the right and the left
  // radius-r balls around h, and the stabilizer is scanned over the
  // radius-r out-ball of the identity.
  inline SchutzAction bounded_schutz_action(MonoidPtr      m,
                                            Element const& h,
                                            std::size_t    radius,
                                            std::size_t    cap = kDefaultElementCap) {
    auto right = build_cayley_ball(m, Side::right, radius, cap, h);
    auto left  = build_cayley_ball(m, Side::left, radius, cap, h);
    auto rc    = strongly_connected_components(right);
    auto lc    = strongly_connected_components(left);
    std::vector<Element> hs;
    for (auto v : rc.members[rc.of[0]]) {
      auto const& x = right.vertices[v].element;
      auto        w = left.find(x);
      if (w && lc.of[*w] == lc.of[0]) {
        hs.push_back(x);
      }
    }
    std::vector<Element> candidates;
    for (auto& le : enumerate_out_ball(*m, radius, cap).elements) {
      candidates.push_back(std::move(le.element));
    }
    SchutzAction a;
    a.group   = group_from_stabilizer(m, std::move(hs), candidates);
    auto keep = rc.members[rc.of[0]];
    a.graph   = induced_subgraph(right, keep);
    a.dist    = detail::restrict_distances(right, keep);
    a.exact   = false;
    a.horizon = radius;
    detail::fill_action(a);
    return a;
  }

  struct IsometryViolation {
    std::size_t element;
    std::size_t x;
    std::size_t y;
    ExtDist     before;
    ExtDist     after;
  };

  struct ActionReport {
    bool        exact   = true;
    std::size_t horizon = 0;
    std::size_t group_order = 0;
    std::size_t vertices    = 0;
    std::size_t h_classes_in_r = 0;

    bool                             isometric = true;
    std::optional<IsometryViolation> isometry_violation;
    std::size_t                      pairs_compared = 0;

    bool outward_proper = true;
    // (ρ, |{g : gB ∩ B ≠ ∅}|) for the out-ball B of radius ρ at the base.
    std::vector<std::pair<std::size_t, std::size_t>> proper_counts;

    bool                       cocompact = false;
    std::optional<std::size_t> covering_radius;
    std::size_t                largest_radius_tried = 0;

    std::vector<std::string> notes;
  };

  namespace detail {
    inline bool within(ExtDist const& d, std::size_t r) {
      return d.is_finite() && d.value() <= Rational(static_cast<std::int64_t>(r));
    }

    inline std::vector<std::size_t> strong_ball(SchutzAction const& a, std::size_t r) {
      std::vector<std::size_t> out;
      for (std::size_t v = 0; v < a.graph.size(); ++v) {
        if (within(a.dist[a.base][v], r) && within(a.dist[v][a.base], r)) {
          out.push_back(v);
        }
      }
      return out;
    }

    inline bool translates_cover(SchutzAction const& a, std::vector<std::size_t> const& ball) {
      std::vector<bool> hit(a.graph.size(), false);
      for (std::size_t g = 0; g < a.group.order(); ++g) {
        for (auto v : ball) {
          if (auto w = a.act[g][v]) {
            hit[*w] = true;
          }
        }
      }
      return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    }
  }  // namespace detail

  // `max_ball` bounds the out-balls used for the properness counts.
  inline ActionReport check_schutz_action(SchutzAction const& a, std::size_t max_ball) {
    ActionReport rep;
    rep.exact          = a.exact;
    rep.horizon        = a.horizon;
    rep.group_order    = a.group.order();
    rep.vertices       = a.graph.size();
    rep.h_classes_in_r = a.h_classes_in_r;
    auto n             = a.graph.size();

    for (std::size_t g = 0; g < a.group.order() && rep.isometric; ++g) {
      for (std::size_t x = 0; x < n && rep.isometric; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          auto gx = a.act[g][x];
          auto gy = a.act[g][y];
          if (!gx || !gy) {
            if (a.exact) {
              rep.isometric = false;
              rep.notes.push_back("a translate left the R-class");
              break;
            }
            continue;
          }
          auto const& before = a.dist[x][y];
          auto const& after  = a.dist[*gx][*gy];
          if (before.exceeds_horizon() || after.exceeds_horizon()) {
            continue;
          }
          ++rep.pairs_compared;
          if (before != after) {
            rep.isometric          = false;
            rep.isometry_violation = IsometryViolation{g, x, y, before, after};
            break;
          }
        }
      }
    }

    for (std::size_t rho = 1; rho <= max_ball; ++rho) {
      std::vector<bool> in_ball(n, false);
      for (std::size_t v = 0; v < n; ++v) {
        in_ball[v] = detail::within(a.dist[a.base][v], rho);
      }
      std::size_t count = 0;
      for (std::size_t g = 0; g < a.group.order(); ++g) {
        for (std::size_t v = 0; v < n; ++v) {
          if (in_ball[v] && a.act[g][v] && in_ball[*a.act[g][v]]) {
            ++count;
            break;
          }
        }
      }
      rep.proper_counts.emplace_back(rho, count);
    }
    // The group is finite, so every such set is.
    rep.outward_proper = true;

    auto top = a.exact ? n : (a.horizon == 0 ? 0 : a.horizon - 1);
    for (std::size_t lambda = 0; lambda <= top; ++lambda) {
      rep.largest_radius_tried = lambda;
      if (detail::translates_cover(a, detail::strong_ball(a, lambda))) {
        rep.cocompact       = true;
        rep.covering_radius = lambda;
        break;
      }
    }
    if (!a.exact) {
      rep.notes.push_back("bounded evidence inside the out-ball of radius "
                          + std::to_string(a.horizon));
      if (!rep.cocompact) {
        rep.notes.push_back("no strong ball of radius < " + std::to_string(a.horizon)
                            + " has translates covering the truncated graph");
      }
    }
    return rep;
  }

  ////////////////////////////////////////////////////////////////////////
  // Švarc-Milnor
  ////////////////////////////////////////////////////////////////////////

  struct SvarcReport {
    std::size_t              ball_radius = 0;
    std::vector<std::size_t> ball;         // vertices of B
    bool                     ball_covers = false;
    std::vector<std::size_t> zero_set;     // {g : d(B, gB) = 0}
    std::vector<std::size_t> generators;   // S = {g : d(B, gB) <= l}
    Rational                 l = 1;
    bool                     generates = false;
    std::vector<std::size_t> unreachable;
    std::vector<std::optional<std::size_t>> word_length;   // d_S(e, g)
    std::vector<ExtDist>                    displacement;  // d(x0, g x0)
    Rational                                lambda = 0;    // max_s d(x0, s x0)
    bool                                    upper_bound = true;  // d_S <= d/l + 1
    bool                                    lower_bound = true;  // d <= λ d_S
    std::vector<std::size_t>                failures;
  };

  inline SvarcReport svarc_milnor_generators(SchutzAction const& a, std::size_t ball_radius) {
    SvarcReport rep;
    rep.ball_radius = ball_radius;
    rep.ball        = detail::strong_ball(a, ball_radius);
    rep.ball_covers = detail::translates_cover(a, rep.ball);
    auto order      = a.group.order();

    for (std::size_t g = 0; g < order; ++g) {
      std::optional<Rational> best;
      for (auto b : rep.ball) {
        for (auto c : rep.ball) {
          auto gc = a.act[g][c];
          if (!gc) {
            continue;
          }
          auto const& d = a.dist[b][*gc];
          if (d.is_finite() && (!best || d.value() < *best)) {
            best = d.value();
          }
        }
      }
      if (best && *best == Rational(0)) {
        rep.zero_set.push_back(g);
      }
      if (best && *best <= rep.l) {
        rep.generators.push_back(g);
      }
    }

    // Word lengths over S, multiplying on the right.
    rep.word_length.assign(order, std::nullopt);
    rep.word_length[0] = 0;
    std::vector<std::size_t> frontier = {0};
    while (!frontier.empty()) {
      std::vector<std::size_t> next;
      for (auto g : frontier) {
        for (auto s : rep.generators) {
          auto h = a.group.table[g][s];
          if (!rep.word_length[h]) {
            rep.word_length[h] = *rep.word_length[g] + 1;
            next.push_back(h);
          }
        }
      }
      frontier = std::move(next);
    }
    for (std::size_t g = 0; g < order; ++g) {
      if (!rep.word_length[g]) {
        rep.unreachable.push_back(g);
      }
    }
    rep.generates = rep.unreachable.empty();

    rep.displacement.resize(order);
    for (std::size_t g = 0; g < order; ++g) {
      auto gx = a.act[g][a.base];
      rep.displacement[g] = gx ? a.dist[a.base][*gx] : ExtDist::exceeds(a.horizon);
    }
    for (auto s : rep.generators) {
      if (rep.displacement[s].is_finite()) {
        rep.lambda = std::max(rep.lambda, rep.displacement[s].value());
      }
    }
    for (std::size_t g = 0; g < order; ++g) {
      auto const& d  = rep.displacement[g];
      auto const& ds = rep.word_length[g];
      bool        ok = true;
      if (!ds || !d.is_finite()) {
        ok = false;
      } else {
        Rational n(static_cast<std::int64_t>(*ds));
        if (n > d.value() / rep.l + 1) {
          rep.upper_bound = false;
          ok              = false;
        }
        if (d.value() > rep.lambda * n) {
          rep.lower_bound = false;
          ok              = false;
        }
      }
      if (!ok) {
        rep.failures.push_back(g);
      }
    }
    if (!rep.generates) {
      rep.upper_bound = false;
      rep.lower_bound = false;
    }
    return rep;
  }

}  // namespace semigeo
