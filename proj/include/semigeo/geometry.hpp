// Finite semimetric spaces and quasi-isometries between them.
//
// Distances are exact nonnegative rationals or ∞.  An inequality with ∞ on
// its smaller side holds only when the larger side is ∞ too; ∞ on the larger
// side always holds.  ε = 0 is accepted everywhere and reported as
// "isometric-grade" by callers that care.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "semigeo/cayley.hpp"
#include "semigeo/errors.hpp"
#include "semigeo/green.hpp"
#include "semigeo/monoid.hpp"
#include "semigeo/rational.hpp"

namespace semigeo {

  inline constexpr std::size_t kDefaultSearchCap = 10;

  struct SpaceViolation {
    enum class Kind { shape, negative, diagonal, zero_distance, triangle, horizon };

    Kind        kind;
    std::size_t x = 0;
    std::size_t y = 0;
    std::size_t z = 0;

    [[nodiscard]] std::string to_string() const {
      auto p = [](std::size_t i) { return std::to_string(i); };
      switch (kind) {
        case Kind::shape:
          return "distance matrix is not square";
        case Kind::negative:
          return "negative distance at (" + p(x) + "," + p(y) + ")";
        case Kind::diagonal:
          return "nonzero diagonal entry at " + p(x);
        case Kind::zero_distance:
          return "distinct points " + p(x) + " and " + p(y) + " at distance 0";
        case Kind::triangle:
          return "triangle inequality fails on (" + p(x) + "," + p(y) + "," + p(z) + ")";
        default:
          return "distance (" + p(x) + "," + p(y) + ") is only known beyond a horizon";
      }
    }
  };

  using DistanceEntries = std::vector<std::vector<ExtDist>>;

  namespace detail {
    // a <= b in [0, ∞].
    inline bool ext_le(ExtDist const& a, ExtDist const& b) {
      if (b.is_infinite()) {
        return true;
      }
      if (a.is_infinite()) {
        return false;
      }
      return a.value() <= b.value();
    }
  }  // namespace detail

  inline std::optional<SpaceViolation> validate_space(DistanceEntries const& d) {
    using K = SpaceViolation::Kind;
    auto n  = d.size();
    for (auto const& row : d) {
      if (row.size() != n) {
        return SpaceViolation{K::shape};
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        auto const& v = d[x][y];
        if (v.exceeds_horizon()) {
          return SpaceViolation{K::horizon, x, y};
        }
        if (v.is_finite() && v.value() < Rational(0)) {
          return SpaceViolation{K::negative, x, y};
        }
        if (x == y && !(v.is_finite() && v.value() == Rational(0))) {
          return SpaceViolation{K::diagonal, x, x};
        }
        if (x != y && v.is_finite() && v.value() == Rational(0)) {
          return SpaceViolation{K::zero_distance, x, y};
        }
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t z = 0; z < n; ++z) {
          if (!detail::ext_le(d[x][z], d[x][y] + d[y][z])) {
            return SpaceViolation{K::triangle, x, y, z};
          }
        }
      }
    }
    return std::nullopt;
  }

  class FiniteSemimetricSpace {
   public:
    FiniteSemimetricSpace() = default;

    FiniteSemimetricSpace(std::vector<std::string> names, DistanceEntries dist)
        : _names(std::move(names)), _dist(std::move(dist)) {
      if (_names.size() != _dist.size()) {
        throw InvalidSpace("space has " + std::to_string(_names.size()) + " names but "
                           + std::to_string(_dist.size()) + " matrix rows");
      }
      if (auto v = validate_space(_dist)) {
        auto msg = v->to_string();
        throw InvalidSpace(msg);
      }
      for (std::size_t i = 0; i < _names.size(); ++i) {
        if (!_index.emplace(_names[i], i).second) {
          throw InvalidSpace("duplicate point name \"" + _names[i] + "\"");
        }
      }
    }

    [[nodiscard]] std::size_t size() const noexcept {
      return _names.size();
    }
    [[nodiscard]] std::vector<std::string> const& names() const noexcept {
      return _names;
    }
    [[nodiscard]] std::string const& name(std::size_t i) const {
      return _names.at(i);
    }
    [[nodiscard]] DistanceEntries const& matrix() const noexcept {
      return _dist;
    }
    [[nodiscard]] ExtDist const& d(std::size_t x, std::size_t y) const {
      return _dist[x][y];
    }
    [[nodiscard]] std::optional<std::size_t> find(std::string const& name) const {
      auto it = _index.find(name);
      if (it == _index.end()) {
        return std::nullopt;
      }
      return it->second;
    }

    friend bool operator==(FiniteSemimetricSpace const& a, FiniteSemimetricSpace const& b) {
      return a._names == b._names && a._dist == b._dist;
    }

   private:
    std::vector<std::string>                     _names;
    DistanceEntries                              _dist;
    std::unordered_map<std::string, std::size_t> _index;
  };

  // The vertex set of a ball with its certified distances; throws when some
  // distance is only known beyond a horizon.
  inline FiniteSemimetricSpace space_from_ball(DigraphBall const& g) {
    std::vector<std::string> names;
    for (std::size_t v = 0; v < g.size(); ++v) {
      names.push_back(g.name(v));
    }
    return FiniteSemimetricSpace(std::move(names), all_distances(g));
  }

  // The vertex set of a ball with its in-ball path distances (unreachable
  // pairs at ∞).  Always a valid semimetric space; it agrees with the monoid's
  // distances only where the ball happens to contain the geodesics.
  inline FiniteSemimetricSpace in_ball_space(DigraphBall const& g) {
    auto            n = g.size();
    DistanceEntries d(n, std::vector<ExtDist>(n, ExtDist::infinite()));
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<std::size_t> frontier = {s};
      d[s][s]                           = ExtDist::finite(0);
      for (std::int64_t k = 1; !frontier.empty(); ++k) {
        std::vector<std::size_t> next;
        for (auto x : frontier) {
          for (auto e : g.out_edges(x)) {
            auto y = g.edges[e].target;
            if (d[s][y].is_infinite()) {
              d[s][y] = ExtDist::finite(k);
              next.push_back(y);
            }
          }
        }
        frontier = std::move(next);
      }
    }
    std::vector<std::string> names;
    for (std::size_t v = 0; v < n; ++v) {
      names.push_back(g.name(v));
    }
    return FiniteSemimetricSpace(std::move(names), std::move(d));
  }

  inline std::vector<std::size_t> basepoints(FiniteSemimetricSpace const& x) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < x.size(); ++i) {
      auto const& row = x.matrix()[i];
      if (std::none_of(row.begin(), row.end(), [](auto const& d) { return d.is_infinite(); })) {
        out.push_back(i);
      }
    }
    return out;
  }

  inline bool strongly_connected(FiniteSemimetricSpace const& x) {
    return basepoints(x).size() == x.size();
  }

  // Least λ >= 1 with d(y,x) <= λ d(x,y) + ε for all x, y; nullopt when the
  // space is not strongly connected.
  inline std::optional<Rational> quasi_metricity_constant(FiniteSemimetricSpace const& x,
                                                          Rational const& epsilon) {
    if (!strongly_connected(x)) {
      return std::nullopt;
    }
    Rational lambda(1);
    for (std::size_t a = 0; a < x.size(); ++a) {
      for (std::size_t b = 0; b < x.size(); ++b) {
        if (a != b) {
          lambda = std::max(lambda, (x.d(b, a).value() - epsilon) / x.d(a, b).value());
        }
      }
    }
    return lambda;
  }

  struct QiConstants {
    Rational lambda  = 1;
    Rational epsilon = 0;
    Rational mu      = 0;

    friend bool operator==(QiConstants const&, QiConstants const&) = default;
  };

  struct SymmetrizeResult {
    FiniteSemimetricSpace metric;
    Rational              lambda;        // quasi-metricity constant of X at ε
    Rational              epsilon;
    QiConstants           forward;       // identity X -> X' is a (λ', ε, 0)-quasi-isometry
    Rational              back_lambda;   // X is (λ'², 2λ'ε)-quasi-metric
    Rational              back_epsilon;
  };

  // d'(x,y) = d(x,y) + d(y,x), with λ' = max(λ + 1, λ/(λ + 1)) = λ + 1.
  inline SymmetrizeResult symmetrize(FiniteSemimetricSpace const& x,
                                     Rational const&              epsilon = Rational(0)) {
    auto lambda = quasi_metricity_constant(x, epsilon);
    if (!lambda) {
      throw NotStronglyConnected("space is not strongly connected");
    }
    auto            n = x.size();
    DistanceEntries d(n, std::vector<ExtDist>(n));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        d[a][b] = x.d(a, b) + x.d(b, a);
      }
    }
    SymmetrizeResult r{FiniteSemimetricSpace(x.names(), std::move(d)), *lambda, epsilon, {}, 0, 0};
    auto lp          = std::max(*lambda + 1, *lambda / (*lambda + 1));
    r.forward        = {lp, epsilon, Rational(0)};
    r.back_lambda    = lp * lp;
    r.back_epsilon   = 2 * lp * epsilon;
    return r;
  }

  inline bool is_metric(FiniteSemimetricSpace const& x) {
    for (std::size_t a = 0; a < x.size(); ++a) {
      for (std::size_t b = 0; b < x.size(); ++b) {
        if (x.d(a, b) != x.d(b, a)) {
          return false;
        }
      }
    }
    return true;
  }

  // d(y,x) <= λ d(x,y) + ε for every ordered pair.
  inline std::optional<std::pair<std::size_t, std::size_t>> check_quasi_metric(
      FiniteSemimetricSpace const& x,
      Rational const&              lambda,
      Rational const&              epsilon) {
    for (std::size_t a = 0; a < x.size(); ++a) {
      for (std::size_t b = 0; b < x.size(); ++b) {
        auto bound = x.d(a, b).is_infinite() ? ExtDist::infinite()
                                             : ExtDist::finite(lambda * x.d(a, b).value() + epsilon);
        if (!detail::ext_le(x.d(b, a), bound)) {
          return std::make_pair(a, b);
        }
      }
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Quasi-isometric embeddings
  ////////////////////////////////////////////////////////////////////////

  using PointMap = std::vector<std::size_t>;

  enum class Bound { lower, upper };

  inline char const* to_string(Bound b) {
    return b == Bound::lower ? "lower" : "upper";
  }

  struct PairViolation {
    std::size_t x;
    std::size_t y;
    Bound       side;

    friend bool operator==(PairViolation const&, PairViolation const&) = default;
  };

  namespace detail {
    // (1/λ) d − ε <= d' and d' <= λ d + ε for one ordered pair.
    inline std::optional<Bound> pair_violation(ExtDist const&  d,
                                               ExtDist const&  dp,
                                               Rational const& lambda,
                                               Rational const& epsilon) {
      if (d.is_infinite()) {
        if (!dp.is_infinite()) {
          return Bound::lower;
        }
        return std::nullopt;
      }
      if (dp.is_infinite()) {
        return Bound::upper;
      }
      if (d.value() / lambda - epsilon > dp.value()) {
        return Bound::lower;
      }
      if (dp.value() > lambda * d.value() + epsilon) {
        return Bound::upper;
      }
      return std::nullopt;
    }

    inline void check_map(PointMap const& f, FiniteSemimetricSpace const& x,
                          FiniteSemimetricSpace const& y) {
      if (f.size() != x.size()) {
        throw InvalidSpace("map has " + std::to_string(f.size()) + " entries for "
                           + std::to_string(x.size()) + " source points");
      }
      for (auto v : f) {
        if (v >= y.size()) {
          throw InvalidSpace("map target " + std::to_string(v) + " out of range");
        }
      }
    }
  }  // namespace detail

  // All violations of the (λ, ε) embedding inequalities, ordered pairs in
  // lexicographic order, the lower bound checked before the upper.
  inline std::vector<PairViolation> qi_embedding_violations(PointMap const&              f,
                                                            FiniteSemimetricSpace const& x,
                                                            FiniteSemimetricSpace const& y,
                                                            Rational const&              lambda,
                                                            Rational const&              epsilon,
                                                            bool first_only = false) {
    detail::check_map(f, x, y);
    std::vector<PairViolation> out;
    for (std::size_t a = 0; a < x.size(); ++a) {
      for (std::size_t b = 0; b < x.size(); ++b) {
        if (auto side = detail::pair_violation(x.d(a, b), y.d(f[a], f[b]), lambda, epsilon)) {
          out.push_back({a, b, *side});
          if (first_only) {
            return out;
          }
        }
      }
    }
    return out;
  }

  inline std::optional<PairViolation> check_qi_embedding(PointMap const&              f,
                                                         FiniteSemimetricSpace const& x,
                                                         FiniteSemimetricSpace const& y,
                                                         Rational const&              lambda,
                                                         Rational const&              epsilon) {
    auto v = qi_embedding_violations(f, x, y, lambda, epsilon, true);
    if (v.empty()) {
      return std::nullopt;
    }
    return v.front();
  }

  // max over y of the strong distance from y to the nearest image point.
  inline ExtDist quasi_density(PointMap const&              f,
                               FiniteSemimetricSpace const& x,
                               FiniteSemimetricSpace const& y) {
    detail::check_map(f, x, y);
    std::vector<bool> image(y.size(), false);
    for (auto v : f) {
      image[v] = true;
    }
    Rational worst(0);
    for (std::size_t q = 0; q < y.size(); ++q) {
      std::optional<Rational> best;
      for (std::size_t p = 0; p < y.size(); ++p) {
        if (!image[p] || !y.d(p, q).is_finite() || !y.d(q, p).is_finite()) {
          continue;
        }
        auto s = std::max(y.d(p, q).value(), y.d(q, p).value());
        if (!best || s < *best) {
          best = s;
        }
      }
      if (!best) {
        return ExtDist::infinite();
      }
      worst = std::max(worst, *best);
    }
    return ExtDist::finite(worst);
  }

  struct QiCheck {
    std::optional<PairViolation> violation;
    ExtDist                      density;
    bool                         dense = false;

    [[nodiscard]] bool ok() const noexcept {
      return !violation && dense;
    }
  };

  inline QiCheck check_quasi_isometry(PointMap const&              f,
                                      FiniteSemimetricSpace const& x,
                                      FiniteSemimetricSpace const& y,
                                      QiConstants const&           c) {
    QiCheck r;
    r.violation = check_qi_embedding(f, x, y, c.lambda, c.epsilon);
    r.density   = quasi_density(f, x, y);
    r.dense     = r.density.is_finite() && r.density.value() <= c.mu;
    return r;
  }

  // (λ1, ε1) then (λ2, ε2): (λ1λ2, λ2ε1 + ε2).
  inline std::pair<Rational, Rational> compose_embeddings(std::pair<Rational, Rational> const& first,
                                                          std::pair<Rational, Rational> const& second) {
    return {first.first * second.first, second.first * first.second + second.second};
  }

  inline PointMap compose_maps(PointMap const& f, PointMap const& g) {
    PointMap h(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
      h[i] = g.at(f[i]);
    }
    return h;
  }

  ////////////////////////////////////////////////////////////////////////
  // Exhaustive search
  ////////////////////////////////////////////////////////////////////////

  // Integer λ from 1 up to λmax (and λmax itself if not an integer).
  inline std::vector<Rational> lambda_grid(Rational const& lambda_max) {
    std::vector<Rational> out;
    for (std::int64_t l = 1; Rational(l) <= lambda_max; ++l) {
      out.emplace_back(l);
    }
    if (out.empty() || out.back() != lambda_max) {
      if (lambda_max >= Rational(1)) {
        out.push_back(lambda_max);
      }
    }
    return out;
  }

  // 1/2, 1, 2, 4, ... up to εmax.
  inline std::vector<Rational> epsilon_grid(Rational const& epsilon_max) {
    std::vector<Rational> out;
    for (Rational e(1, 2); e <= epsilon_max; e *= 2) {
      out.push_back(e);
    }
    return out;
  }

  struct QiWitness {
    PointMap    map;
    QiConstants constants;
  };

  // For each λ on the grid, then each ε, the lexicographically first map
  // X -> Y whose embedding inequalities hold and whose image is μmax-dense;
  // μ is reported at its least value for that map.
  inline std::optional<QiWitness> search_quasi_isometry(FiniteSemimetricSpace const& x,
                                                        FiniteSemimetricSpace const& y,
                                                        Rational const&              lambda_max,
                                                        Rational const&              epsilon_max,
                                                        Rational const&              mu_max,
                                                        std::size_t cap = kDefaultSearchCap) {
    if (x.size() > cap || y.size() > cap) {
      throw CapExceeded("quasi-isometry search is limited to spaces of at most "
                            + std::to_string(cap) + " points (raise --search-cap)",
                        cap);
    }
    auto n = x.size();
    auto m = y.size();
    if (n == 0 || m == 0) {
      return std::nullopt;
    }
    for (auto const& lambda : lambda_grid(lambda_max)) {
      for (auto const& epsilon : epsilon_grid(epsilon_max)) {
        PointMap                 f(n, 0);
        std::optional<QiWitness> found;
        auto fits = [&](std::size_t i) {
          for (std::size_t j = 0; j <= i; ++j) {
            if (detail::pair_violation(x.d(i, j), y.d(f[i], f[j]), lambda, epsilon)
                || detail::pair_violation(x.d(j, i), y.d(f[j], f[i]), lambda, epsilon)) {
              return false;
            }
          }
          return true;
        };
        std::function<bool(std::size_t)> rec = [&](std::size_t i) {
          if (i == n) {
            auto mu = quasi_density(f, x, y);
            if (mu.is_finite() && mu.value() <= mu_max) {
              found = QiWitness{f, {lambda, epsilon, mu.value()}};
              return true;
            }
            return false;
          }
          for (std::size_t v = 0; v < m; ++v) {
            f[i] = v;
            if (fits(i) && rec(i + 1)) {
              return true;
            }
          }
          return false;
        };
        if (rec(0)) {
          return found;
        }
      }
    }
    return std::nullopt;
  }

  ////////////////////////////////////////////////////////////////////////
  // Quotient maps
  ////////////////////////////////////////////////////////////////////////

  struct CongruenceWitness {
    // a η b and c η d but ac and bd fall in different classes.
    std::size_t a, b, c, d;
  };

  struct QuotientReport {
    std::optional<CongruenceWitness> not_congruence;
    ExtDist                          diameter;  // R: largest d_A-diameter of a class
    FiniteSemimetricSpace            source;
    FiniteSemimetricSpace            quotient;
    PointMap                         map;
    QiCheck                          check;
    bool                             trivial_quotient = false;
    bool                             ok               = false;
  };

  namespace detail {
    // d_A on a finite monoid, by breadth-first search over the table.
    inline DistanceEntries word_distances(FiniteMonoid const& fm) {
      auto            n = fm.size();
      DistanceEntries d(n, std::vector<ExtDist>(n, ExtDist::infinite()));
      for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> frontier = {s};
        d[s][s]                           = ExtDist::finite(0);
        for (std::int64_t k = 1; !frontier.empty(); ++k) {
          std::vector<std::size_t> next;
          for (auto x : frontier) {
            for (auto a : fm.generators()) {
              auto y = fm.product(x, a);
              if (d[s][y].is_infinite()) {
                d[s][y] = ExtDist::finite(k);
                next.push_back(y);
              }
            }
          }
          frontier = std::move(next);
        }
      }
      return d;
    }
  }  // namespace detail

  // η is given as a class label per element (FiniteMonoid order).  The
  // quotient is generated by the classes of the generators; its distances
  // are computed in S/η directly, from any representative.
  inline QuotientReport check_quotient_qi(FiniteMonoid const&             fm,
                                          std::vector<std::size_t> const& eta) {
    auto n = fm.size();
    if (eta.size() != n) {
      throw InvalidElement("partition has " + std::to_string(eta.size()) + " labels for "
                           + std::to_string(n) + " elements");
    }
    QuotientReport rep;
    // Relabel classes by first occurrence.
    std::unordered_map<std::size_t, std::size_t> relabel;
    std::vector<std::size_t>                     cls(n);
    std::vector<std::size_t>                     first;
    for (std::size_t i = 0; i < n; ++i) {
      auto [it, fresh] = relabel.emplace(eta[i], first.size());
      if (fresh) {
        first.push_back(i);
      }
      cls[i] = it->second;
    }
    for (std::size_t a = 0; a < n && !rep.not_congruence; ++a) {
      for (std::size_t b = 0; b < n && !rep.not_congruence; ++b) {
        if (cls[a] != cls[b]) {
          continue;
        }
        for (std::size_t c = 0; c < n && !rep.not_congruence; ++c) {
          for (std::size_t d = 0; d < n; ++d) {
            if (cls[c] == cls[d] && cls[fm.product(a, c)] != cls[fm.product(b, d)]) {
              rep.not_congruence = CongruenceWitness{a, b, c, d};
              break;
            }
          }
        }
      }
    }
    if (rep.not_congruence) {
      return rep;
    }

    auto dist = detail::word_distances(fm);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back(fm.name(i));
    }
    rep.source = FiniteSemimetricSpace(names, dist);

    rep.diameter = ExtDist::finite(0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (cls[a] == cls[b] && !detail::ext_le(dist[a][b], rep.diameter)) {
          rep.diameter = dist[a][b];
        }
      }
    }

    auto            k = first.size();
    DistanceEntries q(k, std::vector<ExtDist>(k, ExtDist::infinite()));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t y = 0; y < n; ++y) {
        auto const& d = dist[first[i]][y];
        if (!detail::ext_le(q[i][cls[y]], d)) {
          q[i][cls[y]] = d;
        }
      }
    }
    std::vector<std::string> qnames;
    for (auto i : first) {
      qnames.push_back("[" + fm.name(i) + "]");
    }
    rep.quotient         = FiniteSemimetricSpace(std::move(qnames), std::move(q));
    rep.map              = cls;
    rep.trivial_quotient = k == 1;
    if (rep.diameter.is_finite()) {
      rep.check = check_quasi_isometry(rep.map, rep.source, rep.quotient,
                                        {Rational(1), rep.diameter.value(), Rational(0)});
      rep.ok    = rep.check.ok();
    }
    return rep;
  }

  // The kernel of the projection M × G -> M on a finite product.
  inline std::vector<std::size_t> projection_kernel(FiniteMonoid const& fm) {
    auto const* p = dynamic_cast<ProductMonoid const*>(fm.backend().get());
    if (p == nullptr) {
      throw InvalidElement("projection kernel needs a product monoid");
    }
    ElementMap<std::size_t>  label;
    std::vector<std::size_t> eta;
    for (auto const& x : fm.elements()) {
      auto [it, fresh] = label.emplace(p->first(x), label.size());
      eta.push_back(it->second);
    }
    return eta;
  }

  // Horizon-stamped evidence for an infinite M: the projection from the
  // radius-r ball of M × G to M, compared on pairs whose distances are
  // certified in both balls (the M ball is taken with radius 2r so that
  // images are well inside it).
  struct ProjectionReport {
    std::size_t                  radius = 0;
    ExtDist                      fiber_diameter;
    std::size_t                  pairs_checked = 0;
    std::size_t                  pairs_skipped = 0;
    std::optional<PairViolation> violation;
    bool                         surjective = false;
    bool                         ok         = false;
  };

  inline ProjectionReport check_projection_qi(std::shared_ptr<ProductMonoid const> const& p,
                                              std::size_t radius,
                                              std::size_t cap = kDefaultElementCap) {
    ProjectionReport rep;
    rep.radius  = radius;
    auto big    = build_cayley_ball(p, Side::right, radius, cap);
    auto base   = build_cayley_ball(p->left(), Side::right, 2 * radius, cap);
    auto dbig   = all_distances(big);
    auto dbase  = all_distances(base);
    std::vector<std::size_t> image(big.size());
    for (std::size_t v = 0; v < big.size(); ++v) {
      image[v] = base.index_of(p->first(big.vertices[v].element));
    }
    rep.fiber_diameter = ExtDist::finite(0);
    for (std::size_t a = 0; a < big.size(); ++a) {
      for (std::size_t b = 0; b < big.size(); ++b) {
        if (image[a] == image[b] && !dbig[a][b].exceeds_horizon()
            && !detail::ext_le(dbig[a][b], rep.fiber_diameter)) {
          rep.fiber_diameter = dbig[a][b];
        }
      }
    }
    if (!rep.fiber_diameter.is_finite()) {
      return rep;
    }
    auto R = rep.fiber_diameter.value();
    for (std::size_t a = 0; a < big.size() && !rep.violation; ++a) {
      for (std::size_t b = 0; b < big.size(); ++b) {
        auto const& d  = dbig[a][b];
        auto const& dp = dbase[image[a]][image[b]];
        if (d.exceeds_horizon() || dp.exceeds_horizon()) {
          ++rep.pairs_skipped;
          continue;
        }
        ++rep.pairs_checked;
        if (auto side = detail::pair_violation(d, dp, Rational(1), R)) {
          rep.violation = PairViolation{a, b, *side};
          break;
        }
      }
    }
    // Every element of the radius-r ball of M lifts to (x, 1) in the ball.
    std::vector<bool> hit(base.size(), false);
    for (auto i : image) {
      hit[i] = true;
    }
    rep.surjective = true;
    for (std::size_t v = 0; v < base.size(); ++v) {
      if (base.vertices[v].length <= radius && !hit[v]) {
        rep.surjective = false;
      }
    }
    rep.ok = !rep.violation && rep.surjective;
    return rep;
  }

}  // namespace semigeo
