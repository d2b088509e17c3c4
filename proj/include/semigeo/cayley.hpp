// Radius-bounded Cayley and Schützenberger graphs.
//
// A DigraphBall is the out-ball of radius r around a base element, with an
// edge x -> xa (right) or x -> ax (left) for every generator a whose product
// lands inside the ball.  Vertices at length < r have all their out-edges;
// vertices on the outer sphere may not, and are flagged incomplete.
//
// Distances inside a ball are exact only up to a horizon.  A shortest path
// that leaves the ball has to pass through an incomplete vertex, so with k the
// distance from u to the nearest incomplete vertex, every in-ball distance
// <= k + 1 is the true distance, anything longer is reported as "> k + 1",
// and if no incomplete vertex is reachable the in-ball answer is exact,
// including "no path".

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "semigeo/errors.hpp"
#include "semigeo/monoid.hpp"
#include "semigeo/rational.hpp"

namespace semigeo {

  enum class Side { right, left };

  inline char const* to_string(Side s) {
    return s == Side::right ? "right" : "left";
  }

  struct Edge {
    std::size_t source;
    std::size_t target;
    std::size_t label;  // generator index
  };

  class DigraphBall {
   public:
    MonoidPtr                    monoid;
    Side                         side   = Side::right;
    std::size_t                  radius = 0;
    std::vector<LengthedElement> vertices;
    std::vector<Edge>            edges;
    std::vector<bool>            complete;

    [[nodiscard]] std::size_t size() const noexcept {
      return vertices.size();
    }

    [[nodiscard]] std::optional<std::size_t> find(Element const& x) const {
      auto it = _index.find(x);
      if (it == _index.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    [[nodiscard]] std::size_t index_of(Element const& x) const {
      auto i = find(x);
      if (!i) {
        throw InvalidElement("element " + monoid->format(x) + " is not in the ball");
      }
      return *i;
    }

    [[nodiscard]] std::string name(std::size_t v) const {
      return monoid->format(vertices.at(v).element);
    }

    [[nodiscard]] std::string const& label(Edge const& e) const {
      return monoid->generators().at(e.label).name;
    }

    // Edge indices leaving / entering each vertex, in edge order.
    [[nodiscard]] std::vector<std::size_t> const& out_edges(std::size_t v) const {
      return _out.at(v);
    }
    [[nodiscard]] std::vector<std::size_t> const& in_edges(std::size_t v) const {
      return _in.at(v);
    }

    [[nodiscard]] std::size_t out_degree(std::size_t v) const {
      return _out.at(v).size();
    }
    [[nodiscard]] std::size_t in_degree(std::size_t v) const {
      return _in.at(v).size();
    }

    // Appends a vertex; call finish() once edges are in place.
    void add_vertex(LengthedElement le, bool is_complete) {
      _index.emplace(le.element, vertices.size());
      vertices.push_back(std::move(le));
      complete.push_back(is_complete);
    }

    void finish() {
      _out.assign(vertices.size(), {});
      _in.assign(vertices.size(), {});
      for (std::size_t i = 0; i < edges.size(); ++i) {
        _out[edges[i].source].push_back(i);
        _in[edges[i].target].push_back(i);
      }
    }

   private:
    ElementMap<std::size_t>               _index;
    std::vector<std::vector<std::size_t>> _out;
    std::vector<std::vector<std::size_t>> _in;
  };

  namespace detail {
    inline Element act(MonoidBackend const& m,
                       Side                 side,
                       Element const&       x,
                       Element const&       a) {
      return side == Side::right ? m.multiply(x, a) : m.multiply(a, x);
    }
  }  // namespace detail

  inline DigraphBall build_cayley_ball(MonoidPtr                     m,
                                       Side                          side,
                                       std::size_t                   radius,
                                       std::size_t                   cap = kDefaultElementCap,
                                       std::optional<Element> const& base = std::nullopt) {
    DigraphBall g;
    g.monoid    = m;
    g.side      = side;
    g.radius    = radius;
    auto start  = base ? *base : m->identity();
    auto const& gens = m->generators();
    m->check_owner(start);

    // Breadth-first, remembering every product so edges need no recomputation.
    // All sphere vertices exist before the first one is expanded, so their
    // in-ball products are found on the single pass.
    std::vector<LengthedElement>                             order;
    ElementMap<std::size_t>                                  index;
    std::vector<std::vector<std::optional<std::size_t>>>     targets;
    index.emplace(start, 0);
    order.push_back({start, 0});
    for (std::size_t i = 0; i < order.size(); ++i) {
      std::vector<std::optional<std::size_t>> row(gens.size());
      for (std::size_t a = 0; a < gens.size(); ++a) {
        auto y  = detail::act(*m, side, order[i].element, gens[a].element);
        auto it = index.find(y);
        if (it != index.end()) {
          row[a] = it->second;
        } else if (order[i].length < radius) {
          if (order.size() >= cap) {
            throw CapExceeded("Cayley ball of radius " + std::to_string(radius)
                                  + " has more than " + std::to_string(cap)
                                  + " vertices (raise --cap)",
                              cap);
          }
          row[a] = order.size();
          index.emplace(y, order.size());
          order.push_back({std::move(y), order[i].length + 1});
        }
      }
      targets.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
      bool full = std::all_of(targets[i].begin(), targets[i].end(),
                              [](auto const& t) { return t.has_value(); });
      g.add_vertex(order[i], full);
      for (std::size_t a = 0; a < gens.size(); ++a) {
        if (targets[i][a]) {
          g.edges.push_back({i, *targets[i][a], a});
        }
      }
    }
    g.finish();
    return g;
  }

  ////////////////////////////////////////////////////////////////////////
  // Distances
  ////////////////////////////////////////////////////////////////////////

  struct DistanceRow {
    std::vector<ExtDist>                    dist;
    std::vector<std::optional<std::size_t>> parent_edge;  // BFS tree
  };

  inline DistanceRow distances_from(DigraphBall const& g, std::size_t u) {
    constexpr auto unseen = std::numeric_limits<std::size_t>::max();
    auto           n      = g.size();
    std::vector<std::size_t> level(n, unseen);
    DistanceRow              row;
    row.parent_edge.assign(n, std::nullopt);
    std::deque<std::size_t> queue = {u};
    level.at(u)                   = 0;
    auto nearest_incomplete       = unseen;
    while (!queue.empty()) {
      auto x = queue.front();
      queue.pop_front();
      if (!g.complete[x] && nearest_incomplete == unseen) {
        nearest_incomplete = level[x];
      }
      for (auto e : g.out_edges(x)) {
        auto y = g.edges[e].target;
        if (level[y] == unseen) {
          level[y]           = level[x] + 1;
          row.parent_edge[y] = e;
          queue.push_back(y);
        }
      }
    }
    row.dist.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
      if (nearest_incomplete == unseen) {
        row.dist[v] = level[v] == unseen
                          ? ExtDist::infinite()
                          : ExtDist::finite(static_cast<std::int64_t>(level[v]));
      } else {
        auto h = nearest_incomplete + 1;
        row.dist[v]
            = level[v] <= h ? ExtDist::finite(static_cast<std::int64_t>(level[v]))
                            : ExtDist::exceeds(h);
      }
    }
    return row;
  }

  inline ExtDist graph_distance(DigraphBall const& g, std::size_t u, std::size_t v) {
    return distances_from(g, u).dist.at(v);
  }

  using DistanceMatrix = std::vector<std::vector<ExtDist>>;

  inline DistanceMatrix all_distances(DigraphBall const& g) {
    DistanceMatrix d;
    d.reserve(g.size());
    for (std::size_t u = 0; u < g.size(); ++u) {
      d.push_back(distances_from(g, u).dist);
    }
    return d;
  }

  // Generator indices along a shortest path u ⇝ v, when one is certified.
  inline std::optional<std::vector<std::size_t>> geodesic_word(DigraphBall const& g,
                                                               std::size_t        u,
                                                               std::size_t        v) {
    auto row = distances_from(g, u);
    if (!row.dist.at(v).is_finite()) {
      return std::nullopt;
    }
    std::vector<std::size_t> word;
    for (auto x = v; x != u;) {
      auto const& e = g.edges[*row.parent_edge[x]];
      word.push_back(e.label);
      x = e.source;
    }
    std::reverse(word.begin(), word.end());
    return word;
  }

  ////////////////////////////////////////////////////////////////////////
  // The geodesic realization Γ*
  ////////////////////////////////////////////////////////////////////////

  // A vertex, or the point at fraction mu along an edge (0 < mu < 1).
  class RealizedPoint {
   public:
    static RealizedPoint vertex(std::size_t v) {
      RealizedPoint p;
      p._index = v;
      return p;
    }

    static RealizedPoint on_edge(std::size_t e, Rational mu) {
      if (mu <= Rational(0) || mu >= Rational(1)) {
        throw InvalidElement("edge parameter must lie strictly between 0 and 1, got "
                             + semigeo::to_string(mu));
      }
      RealizedPoint p;
      p._index   = e;
      p._on_edge = true;
      p._mu      = mu;
      return p;
    }

    [[nodiscard]] bool is_vertex() const noexcept {
      return !_on_edge;
    }
    [[nodiscard]] std::size_t index() const noexcept {
      return _index;
    }
    [[nodiscard]] Rational const& mu() const noexcept {
      return _mu;
    }

    [[nodiscard]] std::string to_string(DigraphBall const& g) const {
      if (!_on_edge) {
        return g.name(_index);
      }
      auto const& e = g.edges.at(_index);
      return "(" + g.name(e.source) + "-" + g.label(e) + "->" + g.name(e.target) + ","
             + semigeo::to_string(_mu) + ")";
    }

    friend bool operator==(RealizedPoint const&, RealizedPoint const&) = default;

   private:
    std::size_t _index   = 0;
    bool        _on_edge = false;
    Rational    _mu      = 0;
  };

  inline ExtDist realized_distance(DigraphBall const&    g,
                                   DistanceMatrix const& d,
                                   RealizedPoint const&  p,
                                   RealizedPoint const&  q) {
    if (p.is_vertex() && q.is_vertex()) {
      return d.at(p.index()).at(q.index());
    }
    if (q.is_vertex()) {
      auto const& e = g.edges.at(p.index());
      return ExtDist::finite(1 - p.mu()) + d.at(e.target).at(q.index());
    }
    auto const& f = g.edges.at(q.index());
    if (p.is_vertex()) {
      return d.at(p.index()).at(f.source) + q.mu();
    }
    if (p.index() == q.index() && q.mu() >= p.mu()) {
      return ExtDist::finite(q.mu() - p.mu());
    }
    auto const& e = g.edges.at(p.index());
    return ExtDist::finite(1 - p.mu()) + d.at(e.target).at(f.source) + q.mu();
  }

  inline ExtDist realized_distance(DigraphBall const&   g,
                                   RealizedPoint const& p,
                                   RealizedPoint const& q) {
    return realized_distance(g, all_distances(g), p, q);
  }

  // Every vertex, then `per_edge` evenly spaced interior points of each edge
  // (at j / (per_edge + 1)), edges in order.
  inline std::vector<RealizedPoint> sample_points(DigraphBall const& g,
                                                  std::size_t        per_edge) {
    std::vector<RealizedPoint> out;
    for (std::size_t v = 0; v < g.size(); ++v) {
      out.push_back(RealizedPoint::vertex(v));
    }
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      for (std::size_t j = 1; j <= per_edge; ++j) {
        out.push_back(RealizedPoint::on_edge(
            e,
            Rational(static_cast<std::int64_t>(j),
                     static_cast<std::int64_t>(per_edge + 1))));
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Strongly connected components
  ////////////////////////////////////////////////////////////////////////

  struct Components {
    std::vector<std::vector<std::size_t>> members;  // each sorted
    std::vector<std::size_t>              of;       // vertex -> component
    // True when nothing forward-reachable from the component within the
    // ball is incomplete, so it is also a strongly connected component of
    // the whole (possibly infinite) graph.
    std::vector<bool> verified;
  };

  // Tarjan's algorithm, iterative; components are numbered in order of their
  // smallest vertex.
  inline Components strongly_connected_components(DigraphBall const& g) {
    constexpr auto unset = std::numeric_limits<std::size_t>::max();
    auto           n     = g.size();
    std::vector<std::size_t> index(n, unset), low(n, 0), raw_of(n, unset);
    std::vector<bool>        on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> raw;
    std::size_t              counter = 0;

    for (std::size_t root = 0; root < n; ++root) {
      if (index[root] != unset) {
        continue;
      }
      std::vector<std::pair<std::size_t, std::size_t>> call = {{root, 0}};
      index[root] = low[root] = counter++;
      stack.push_back(root);
      on_stack[root] = true;
      while (!call.empty()) {
        auto& [v, pos] = call.back();
        auto const& out = g.out_edges(v);
        if (pos < out.size()) {
          auto w = g.edges[out[pos++]].target;
          if (index[w] == unset) {
            index[w] = low[w] = counter++;
            stack.push_back(w);
            on_stack[w] = true;
            call.emplace_back(w, 0);
          } else if (on_stack[w]) {
            low[v] = std::min(low[v], index[w]);
          }
          continue;
        }
        if (low[v] == index[v]) {
          std::vector<std::size_t> comp;
          std::size_t              w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            raw_of[w]   = raw.size();
            comp.push_back(w);
          } while (w != v);
          std::sort(comp.begin(), comp.end());
          raw.push_back(std::move(comp));
        }
        auto finished = v;
        call.pop_back();
        if (!call.empty()) {
          auto parent = call.back().first;
          low[parent] = std::min(low[parent], low[finished]);
        }
      }
    }

    // Renumber by smallest member.
    std::vector<std::size_t> perm(raw.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
      perm[i] = i;
    }
    std::sort(perm.begin(), perm.end(),
              [&](auto a, auto b) { return raw[a].front() < raw[b].front(); });
    std::vector<std::size_t> rename(raw.size());
    Components               c;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      rename[perm[i]] = i;
      c.members.push_back(raw[perm[i]]);
    }
    c.of.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
      c.of[v] = rename[raw_of[v]];
    }

    // Tarjan emits components in reverse topological order, so every
    // successor component is settled before its predecessors.
    std::vector<bool> closed(raw.size(), true);
    for (std::size_t k = 0; k < raw.size(); ++k) {
      bool ok = true;
      for (auto v : raw[k]) {
        ok = ok && g.complete[v];
        for (auto e : g.out_edges(v)) {
          auto t = raw_of[g.edges[e].target];
          if (t != k) {
            ok = ok && closed[t];
          }
        }
      }
      closed[k] = ok;
    }
    c.verified.resize(raw.size());
    for (std::size_t k = 0; k < raw.size(); ++k) {
      c.verified[rename[k]] = closed[k];
    }
    return c;
  }

  ////////////////////////////////////////////////////////////////////////
  // Component poset on sampled points of Γ*
  ////////////////////////////////////////////////////////////////////////

  enum class Comparison { below, above, equivalent, incomparable, unknown };

  inline char const* to_string(Comparison c) {
    switch (c) {
      case Comparison::below:
        return "below";
      case Comparison::above:
        return "above";
      case Comparison::equivalent:
        return "equivalent";
      case Comparison::incomparable:
        return "incomparable";
      default:
        return "unknown";
    }
  }

  struct ComparabilityTable {
    std::vector<RealizedPoint>           points;
    std::vector<std::vector<Comparison>> relation;  // relation[i][j]: i vs j

    [[nodiscard]] std::size_t count(Comparison c) const {
      std::size_t n = 0;
      for (auto const& row : relation) {
        n += static_cast<std::size_t>(std::count(row.begin(), row.end(), c));
      }
      return n;
    }
  };

  // x ≲ y when y reaches x, i.e. d(y, x) < ∞.  relation[i][j] is "below"
  // when point i ≲ point j only.
  inline ComparabilityTable component_comparability(DigraphBall const& g,
                                                    std::size_t        per_edge) {
    ComparabilityTable t;
    t.points = sample_points(g, per_edge);
    auto d   = all_distances(g);
    auto n   = t.points.size();
    std::vector<std::vector<ExtDist>> rd(n, std::vector<ExtDist>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        rd[i][j] = realized_distance(g, d, t.points[i], t.points[j]);
      }
    }
    t.relation.assign(n, std::vector<Comparison>(n, Comparison::unknown));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        auto const& down = rd[j][i];  // i ≲ j
        auto const& up   = rd[i][j];  // j ≲ i
        if (down.exceeds_horizon() || up.exceeds_horizon()) {
          continue;
        }
        if (down.is_finite() && up.is_finite()) {
          t.relation[i][j] = Comparison::equivalent;
        } else if (down.is_finite()) {
          t.relation[i][j] = Comparison::below;
        } else if (up.is_finite()) {
          t.relation[i][j] = Comparison::above;
        } else {
          t.relation[i][j] = Comparison::incomparable;
        }
      }
    }
    return t;
  }

  ////////////////////////////////////////////////////////////////////////
  // Schützenberger graphs
  ////////////////////////////////////////////////////////////////////////

  // The subgraph of a ball induced on a vertex subset (kept in ball order).
  inline DigraphBall induced_subgraph(DigraphBall const&              g,
                                      std::vector<std::size_t> const& keep) {
    DigraphBall s;
    s.monoid = g.monoid;
    s.side   = g.side;
    s.radius = g.radius;
    std::vector<std::size_t> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::optional<std::size_t>> rename(g.size());
    for (auto v : sorted) {
      rename[v] = s.size();
      s.add_vertex(g.vertices[v], g.complete[v]);
    }
    for (auto const& e : g.edges) {
      if (rename[e.source] && rename[e.target]) {
        s.edges.push_back({*rename[e.source], *rename[e.target], e.label});
      }
    }
    s.finish();
    return s;
  }

  // The strongly connected component of h in the right Cayley graph, as far
  // as the radius-r out-ball of h sees it: every vertex kept is joined to h
  // both ways by paths inside the ball.  Vertex lengths are distances from h.
  inline DigraphBall schutzenberger_graph_ball(MonoidPtr      m,
                                               Element const& h,
                                               std::size_t    radius,
                                               std::size_t    cap = kDefaultElementCap) {
    auto g    = build_cayley_ball(std::move(m), Side::right, radius, cap, h);
    auto comp = strongly_connected_components(g);
    return induced_subgraph(g, comp.members[comp.of[0]]);
  }

  ////////////////////////////////////////////////////////////////////////
  // Output
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline std::string dot_quote(std::string const& s) {
      std::string out = "\"";
      for (char c : s) {
        if (c == '"' || c == '\\') {
          out += '\\';
        }
        out += c;
      }
      return out + "\"";
    }
  }  // namespace detail

  inline std::string export_dot(DigraphBall const& g, std::string const& name = "G") {
    std::ostringstream os;
    os << "digraph " << detail::dot_quote(name) << " {\n";
    for (std::size_t v = 0; v < g.size(); ++v) {
      os << "  " << detail::dot_quote(g.name(v)) << ";\n";
    }
    for (auto const& e : g.edges) {
      os << "  " << detail::dot_quote(g.name(e.source)) << " -> "
         << detail::dot_quote(g.name(e.target))
         << " [label=" << detail::dot_quote(g.label(e)) << "];\n";
    }
    os << "}\n";
    return os.str();
  }

  // One "u<TAB>v<TAB>d" line per ordered pair, in vertex order.
  inline void write_distance_table(std::ostream& os, DigraphBall const& g) {
    auto d = all_distances(g);
    for (std::size_t u = 0; u < g.size(); ++u) {
      for (std::size_t v = 0; v < g.size(); ++v) {
        os << g.name(u) << '\t' << g.name(v) << '\t' << d[u][v] << '\n';
      }
    }
  }

}  // namespace semigeo
