// Growth functions and ends of monoids, estimated from finite balls.
//
// Nothing here decides an asymptotic property.  Domination witnesses hold on
// the window they were checked on, and ends counts come from a truncated
// undirected Cayley graph.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "semigeo/errors.hpp"
#include "semigeo/monoid.hpp"

namespace semigeo {

  struct GrowthSequence {
    std::vector<std::uint64_t> values;
    std::string                fingerprint;
    std::string                generators;

    [[nodiscard]] std::size_t window() const noexcept {
      return values.size();
    }
  };

  inline std::string generator_names(MonoidBackend const& m) {
    std::string out;
    for (auto const& g : m.generators()) {
      out += out.empty() ? g.name : "," + g.name;
    }
    return out;
  }

  namespace detail {
    // Aho-Corasick automaton over the left-hand sides; counts words of each
    // length with no left-hand side as a factor.
    inline std::vector<std::uint64_t> count_irreducible(RewritingSystem const& rs,
                                                        std::size_t            mmax) {
      auto k = rs.alphabet().size();
      std::vector<std::vector<std::size_t>> next(1, std::vector<std::size_t>(k, 0));
      std::vector<bool>                     dead(1, false);
      for (auto const& rule : rs.rules()) {
        std::size_t s = 0;
        for (auto a : rule.lhs) {
          if (next[s][a] == 0) {
            next[s][a] = next.size();
            next.emplace_back(k, 0);
            dead.push_back(false);
          }
          s = next[s][a];
        }
        dead[s] = true;
      }
      std::vector<std::size_t> fail(next.size(), 0), queue;
      for (std::size_t a = 0; a < k; ++a) {
        if (next[0][a] != 0) {
          queue.push_back(next[0][a]);
        }
      }
      for (std::size_t i = 0; i < queue.size(); ++i) {
        auto s = queue[i];
        dead[s] = dead[s] || dead[fail[s]];
        for (std::size_t a = 0; a < k; ++a) {
          auto t = next[s][a];
          if (t != 0) {
            fail[t] = next[fail[s]][a];
            queue.push_back(t);
          } else {
            next[s][a] = next[fail[s]][a];
          }
        }
      }
      std::vector<std::uint64_t> layer(next.size(), 0), out;
      layer[0] = 1;
      for (std::size_t len = 0; len <= mmax; ++len) {
        std::uint64_t total = 0;
        std::vector<std::uint64_t> step(next.size(), 0);
        for (std::size_t s = 0; s < next.size(); ++s) {
          if (layer[s] == 0) {
            continue;
          }
          if (__builtin_add_overflow(total, layer[s], &total)) {
            throw CapExceeded("growth value at length " + std::to_string(len)
                                  + " overflows 64 bits",
                              len);
          }
          for (std::size_t a = 0; a < k; ++a) {
            auto t = next[s][a];
            if (!dead[t] && __builtin_add_overflow(step[t], layer[s], &step[t])) {
              throw CapExceeded("growth value at length " + std::to_string(len + 1)
                                    + " overflows 64 bits",
                                len + 1);
            }
          }
        }
        out.push_back(total);
        layer = std::move(step);
      }
      return out;
    }
  }  // namespace detail

  // g(0..mmax), where g(j) counts elements of word length at most j.
  //
  // A rewriting monoid on its own letters is counted through its normal
  // forms: shortlex rules never lengthen a word, so each normal form is a
  // geodesic.  Everything else is enumerated.
  inline GrowthSequence growth_sequence(MonoidBackend const& m,
                                        std::size_t          mmax,
                                        std::size_t          cap = kDefaultElementCap) {
    GrowthSequence g;
    auto const*    rw = dynamic_cast<RewritingMonoid const*>(&m);
    if (rw != nullptr && !rw->custom_generators()) {
      g.values = detail::count_irreducible(rw->system(), mmax);
    } else {
      auto ball = enumerate_out_ball(m, mmax, cap);
      g.values.assign(mmax + 1, 0);
      for (auto const& le : ball.elements) {
        ++g.values[le.length];
      }
    }
    for (std::size_t j = 1; j < g.values.size(); ++j) {
      if (__builtin_add_overflow(g.values[j], g.values[j - 1], &g.values[j])) {
        throw CapExceeded("growth value at length " + std::to_string(j) + " overflows 64 bits", j);
      }
    }
    g.fingerprint = std::string(to_string(m.kind())) + "/" + std::to_string(m.id());
    g.generators  = generator_names(m);
    return g;
  }

  struct DominationWitness {
    std::uint64_t lambda = 1;
    std::uint64_t c      = 0;
    std::size_t   checked = 0;  // values of t the inequality was tested at
  };

  // The least (λ, C), by λ then C, with α1(t) ≤ λ α2(λt + C) + C at every t
  // where λt + C lies in α2's window.  A pair that tests no t at all is not a
  // witness.  nullopt means only that no pair within the bounds works on these
  // windows.
  inline std::optional<DominationWitness> dominates_within(GrowthSequence const& a1,
                                                           GrowthSequence const& a2,
                                                           std::uint64_t         lambda_max,
                                                           std::uint64_t         c_max) {
    for (std::uint64_t l = 1; l <= lambda_max; ++l) {
      for (std::uint64_t c = 0; c <= c_max; ++c) {
        bool        holds   = true;
        std::size_t checked = 0;
        for (std::size_t t = 0; t < a1.window() && holds; ++t) {
          auto s = l * t + c;
          if (s >= a2.window()) {
            break;
          }
          ++checked;
          holds = a1.values[t] <= l * a2.values[s] + c;
        }
        if (holds && checked > 0) {
          return DominationWitness{l, c, checked};
        }
      }
    }
    return std::nullopt;
  }

  struct GrowthFitOptions {
    double residual_threshold = 0.05;
    double tail_fraction      = 0.5;
    std::size_t min_window    = 8;
  };

  struct GrowthClass {
    enum class Kind { polynomial, exponential, inconclusive };

    Kind   kind     = Kind::inconclusive;
    int    degree   = 0;
    double base     = 0;
    double residual = 0;  // of the reported fit; of the better one if inconclusive

    [[nodiscard]] std::string to_string() const {
      switch (kind) {
        case Kind::polynomial:
          return "Polynomial(" + std::to_string(degree) + ")";
        case Kind::exponential: {
          char buf[32];
          std::snprintf(buf, sizeof buf, "Exponential(%.2f)", base);
          return buf;
        }
        default:
          return "Inconclusive";
      }
    }
  };

  namespace detail {
    struct LineFit {
      double slope    = 0;
      double residual = 0;  // RMS residual divided by the range of y
    };

    inline LineFit fit_line(std::vector<double> const& x, std::vector<double> const& y) {
      auto   n  = static_cast<double>(x.size());
      double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
      double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
      double sxx = 0, sxy = 0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
      }
      LineFit f;
      f.slope  = sxx > 0 ? sxy / sxx : 0;
      double ss = 0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        double e = y[i] - (my + f.slope * (x[i] - mx));
        ss += e * e;
      }
      auto [lo, hi] = std::minmax_element(y.begin(), y.end());
      double range  = *hi - *lo;
      f.residual    = range > 0 ? std::sqrt(ss / n) / range : 0;
      return f;
    }
  }  // namespace detail

  // Fits log g(m) against log m and against m on the tail of the window.
  inline GrowthClass classify_growth(GrowthSequence const& a, GrowthFitOptions const& opt = {}) {
    GrowthClass out;
    auto        n = a.window();
    if (n < opt.min_window) {
      return out;
    }
    auto begin = std::max<std::size_t>(1, static_cast<std::size_t>(
                                              std::floor(static_cast<double>(n) * (1 - opt.tail_fraction))));
    std::vector<double> m, logm, logg;
    for (auto t = begin; t < n; ++t) {
      m.push_back(static_cast<double>(t));
      logm.push_back(std::log(static_cast<double>(t)));
      logg.push_back(std::log(static_cast<double>(a.values[t])));
    }
    if (a.values[begin] == a.values[n - 1]) {
      out.kind = GrowthClass::Kind::polynomial;
      return out;
    }
    auto poly  = detail::fit_line(logm, logg);
    auto expo  = detail::fit_line(m, logg);
    bool prefer_poly = poly.residual <= expo.residual;
    out.residual     = prefer_poly ? poly.residual : expo.residual;
    if (out.residual >= opt.residual_threshold) {
      return out;
    }
    if (prefer_poly) {
      out.kind   = GrowthClass::Kind::polynomial;
      out.degree = static_cast<int>(std::lround(poly.slope));
    } else {
      out.kind = GrowthClass::Kind::exponential;
      out.base = std::round(std::exp(expo.slope) * 100) / 100;
    }
    return out;
  }

  struct EndsProfile {
    enum class Verdict { stable, growing, inconclusive };

    std::vector<std::size_t> ks;
    std::size_t              radius = 0;
    std::vector<std::size_t> counts;        // e(k, r)
    std::vector<std::size_t> inner_counts;  // e(k, r - 1)
    Verdict                  verdict = Verdict::inconclusive;
    std::size_t              stable_value = 0;

    [[nodiscard]] std::string verdict_string() const {
      switch (verdict) {
        case Verdict::stable:
          return "Stable(" + std::to_string(stable_value) + ")";
        case Verdict::growing: {
          std::string s = "GrowingAtLeast(";
          for (std::size_t i = 0; i < counts.size(); ++i) {
            s += (i == 0 ? "" : ",") + std::to_string(counts[i]);
          }
          return s + ")";
        }
        default:
          return "Inconclusive";
      }
    }

    // Every profile is read off a truncation: in-edges from outside the ball
    // are not seen.
    [[nodiscard]] std::string horizon() const {
      return "estimate from the undirected ball of radius " + std::to_string(radius);
    }
  };

  namespace detail {
    class DisjointSets {
     public:
      explicit DisjointSets(std::size_t n) : _parent(n) {
        std::iota(_parent.begin(), _parent.end(), 0);
      }

      std::size_t find(std::size_t x) {
        while (_parent[x] != x) {
          _parent[x] = _parent[_parent[x]];
          x          = _parent[x];
        }
        return x;
      }

      void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) {
          _parent[std::max(a, b)] = std::min(a, b);
        }
      }

     private:
      std::vector<std::size_t> _parent;
    };

    // Components of the undirected graph on {x : k < l(x) <= outer} meeting
    // the sphere l(x) = outer.
    inline std::size_t count_outer_components(
        Ball const&                                           ball,
        std::vector<std::pair<std::size_t, std::size_t>> const& edges,
        std::size_t                                           k,
        std::size_t                                           outer) {
      auto keep = [&](std::size_t v) {
        auto l = ball.elements[v].length;
        return l > k && l <= outer;
      };
      DisjointSets ds(ball.size());
      for (auto [u, v] : edges) {
        if (keep(u) && keep(v)) {
          ds.unite(u, v);
        }
      }
      std::vector<bool> seen(ball.size(), false);
      std::size_t       count = 0;
      for (std::size_t v = 0; v < ball.size(); ++v) {
        if (ball.elements[v].length == outer && keep(v)) {
          auto root = ds.find(v);
          if (!seen[root]) {
            seen[root] = true;
            ++count;
          }
        }
      }
      return count;
    }
  }  // namespace detail

  inline EndsProfile ends_profile(MonoidBackend const& m,
                                  std::size_t          kmax,
                                  std::size_t          r,
                                  std::size_t          cap = kDefaultElementCap) {
    if (kmax >= r) {
      throw Error("ends profile needs kmax < r (got kmax " + std::to_string(kmax)
                  + ", r " + std::to_string(r) + ")");
    }
    auto ball = enumerate_out_ball(m, r, cap);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t v = 0; v < ball.size(); ++v) {
      for (auto const& g : m.generators()) {
        if (auto w = ball.find(m.multiply(ball.elements[v].element, g.element))) {
          edges.emplace_back(v, *w);
        }
      }
    }
    EndsProfile p;
    p.radius = r;
    for (std::size_t k = 0; k <= kmax; ++k) {
      p.ks.push_back(k);
      p.counts.push_back(detail::count_outer_components(ball, edges, k, r));
      p.inner_counts.push_back(detail::count_outer_components(ball, edges, k, r - 1));
    }
    auto n      = p.counts.size();
    auto target = p.counts.back();
    bool stable = true;
    for (auto i = n / 2; i < n; ++i) {
      stable = stable && p.counts[i] == target && p.inner_counts[i] == target;
    }
    bool growing = n > 1;
    for (std::size_t i = 1; i < n; ++i) {
      growing = growing && p.counts[i] > p.counts[i - 1];
    }
    if (stable) {
      p.verdict      = EndsProfile::Verdict::stable;
      p.stable_value = target;
    } else if (growing) {
      p.verdict = EndsProfile::Verdict::growing;
    }
    return p;
  }

}  // namespace semigeo
