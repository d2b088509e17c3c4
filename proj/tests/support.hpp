// Helpers shared by the unit tests and the acceptance runner.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "semigeo/catalog.hpp"
#include "semigeo/cayley.hpp"
#include "semigeo/geometry.hpp"
#include "semigeo/monoid.hpp"
#include "semigeo/rewrite.hpp"

namespace semigeo::test_support {

  // Degree 1..4, one to three random maps.
  inline MonoidPtr random_transformation_monoid(std::mt19937& rng) {
    std::uniform_int_distribution<std::size_t> deg(1, 4), count(1, 3);
    auto                                       n = deg(rng);
    std::uniform_int_distribution<std::uint32_t> image(0, static_cast<std::uint32_t>(n - 1));
    std::vector<std::pair<std::string, std::vector<std::uint32_t>>> gens;
    auto k = count(rng);
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<std::uint32_t> f(n);
      for (auto& v : f) {
        v = image(rng);
      }
      gens.emplace_back(std::string(1, static_cast<char>('a' + i)), f);
    }
    return catalog::transformation_monoid(n, gens);
  }

  // Every associative table on {0..n-1}, by backtracking over cells in row
  // order and checking each associativity triple as soon as its entries are
  // known.
  inline std::vector<std::vector<std::vector<std::uint32_t>>> all_semigroup_tables(std::size_t n) {
    std::vector<std::vector<std::vector<std::uint32_t>>> out;
    constexpr std::uint32_t unset = 0xffffffffU;
    std::vector<std::vector<std::uint32_t>> t(n, std::vector<std::uint32_t>(n, unset));
    auto consistent = [&]() {
      for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
          auto xy = t[x][y];
          if (xy == unset) {
            continue;
          }
          for (std::size_t z = 0; z < n; ++z) {
            auto yz = t[y][z];
            if (yz == unset) {
              continue;
            }
            auto l = t[xy][z];
            auto r = t[x][yz];
            if (l != unset && r != unset && l != r) {
              return false;
            }
          }
        }
      }
      return true;
    };
    auto rec = [&](auto&& self, std::size_t cell) -> void {
      if (cell == n * n) {
        out.push_back(t);
        return;
      }
      auto x = cell / n;
      auto y = cell % n;
      for (std::uint32_t v = 0; v < n; ++v) {
        t[x][y] = v;
        if (consistent()) {
          self(self, cell + 1);
        }
      }
      t[x][y] = unset;
    };
    rec(rec, 0);
    return out;
  }


  // In-ball shortest paths by repeated relaxation; -1 for no path.
  inline std::vector<std::vector<long>> relaxation(DigraphBall const& g) {
    auto                           n = g.size();
    std::vector<std::vector<long>> d(n, std::vector<long>(n, -1));
    for (std::size_t i = 0; i < n; ++i) {
      d[i][i] = 0;
    }
    for (auto const& e : g.edges) {
      if (e.source != e.target) {
        d[e.source][e.target] = 1;
      }
    }
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (d[i][k] >= 0 && d[k][j] >= 0 && (d[i][j] < 0 || d[i][k] + d[k][j] < d[i][j])) {
            d[i][j] = d[i][k] + d[k][j];
          }
        }
      }
    }
    return d;
  }

  // Every word reachable by one rewrite anywhere, with any rule.
  inline std::vector<Word> one_step(RewritingSystem const& rs, Word const& w) {
    std::vector<Word> out;
    for (auto const& r : rs.rules()) {
      for (std::size_t p = 0; p + r.lhs.size() <= w.size(); ++p) {
        if (std::equal(r.lhs.begin(), r.lhs.end(), w.begin() + p)) {
          Word v(w.begin(), w.begin() + p);
          v.insert(v.end(), r.rhs.begin(), r.rhs.end());
          v.insert(v.end(), w.begin() + p + r.lhs.size(), w.end());
          out.push_back(std::move(v));
        }
      }
    }
    return out;
  }

  // All irreducible descendants under every strategy.
  inline std::set<Word> const& irreducible_descendants(RewritingSystem const&          rs,
                                                       Word const&                     w,
                                                       std::map<Word, std::set<Word>>& memo) {
    auto it = memo.find(w);
    if (it != memo.end()) {
      return it->second;
    }
    std::set<Word> result;
    auto           next = one_step(rs, w);
    if (next.empty()) {
      result.insert(w);
    }
    for (auto const& v : next) {
      auto const& sub = irreducible_descendants(rs, v, memo);
      result.insert(sub.begin(), sub.end());
    }
    return memo.emplace(w, std::move(result)).first->second;
  }

  // True when every word of length <= max_len has a single irreducible
  // descendant.
  inline bool brute_force_confluent(RewritingSystem const& rs, std::size_t max_len) {
    std::map<Word, std::set<Word>> memo;
    std::vector<Word>              layer = {Word{}};
    for (std::size_t n = 0; n <= max_len; ++n) {
      std::vector<Word> next;
      for (auto const& w : layer) {
        if (irreducible_descendants(rs, w, memo).size() != 1) {
          return false;
        }
        for (Letter a = 0; a < rs.alphabet().size(); ++a) {
          auto v = w;
          v.push_back(a);
          next.push_back(std::move(v));
        }
      }
      layer = std::move(next);
    }
    return true;
  }

  // Shortest paths over a random weighted digraph that contains a
  // Hamiltonian cycle, so the result is strongly connected.
  inline FiniteSemimetricSpace random_strong_space(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<int> num(1, 12), den(1, 4), coin(0, 2);
    DistanceEntries d(n, std::vector<ExtDist>(n, ExtDist::infinite()));
    auto better = [](ExtDist const& a, ExtDist const& b) {
      return a.is_finite() && (!b.is_finite() || a.value() < b.value());
    };
    for (std::size_t i = 0; i < n; ++i) {
      if (n > 1) {
        d[i][(i + 1) % n] = ExtDist::finite(Rational(num(rng), den(rng)));
      }
      for (std::size_t j = 0; j < n; ++j) {
        auto w = ExtDist::finite(Rational(num(rng), den(rng)));
        if (i != j && coin(rng) == 0 && better(w, d[i][j])) {
          d[i][j] = w;
        }
      }
      d[i][i] = ExtDist::finite(0);
    }
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          auto via = d[i][k] + d[k][j];
          if (better(via, d[i][j])) {
            d[i][j] = via;
          }
        }
      }
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back("p" + std::to_string(i));
    }
    return FiniteSemimetricSpace(names, d);
  }

  // A semigroup table S viewed through the Cayley graph of S over A = S.
  struct RightSimpleCase {
    bool                    right_simple = false;  // every row of the table is onto
    std::optional<Rational> lambda;                // least λ at ε = 0, if quasi-metric
    Rational                bound{1};              // max d_A(ba, a), at least 1
  };

  inline RightSimpleCase right_simple_case(std::vector<std::vector<std::uint32_t>> const& t) {
    auto                     n = t.size();
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back("s" + std::to_string(i));
    }
    RightSimpleCase c;
    c.right_simple = true;
    for (std::size_t a = 0; a < n; ++a) {
      std::set<std::uint32_t> row(t[a].begin(), t[a].end());
      c.right_simple = c.right_simple && row.size() == n;
    }
    // Distances among the elements of S, by breadth-first search on the table.
    DistanceEntries d(n, std::vector<ExtDist>(n, ExtDist::infinite()));
    for (std::size_t s = 0; s < n; ++s) {
      d[s][s]                      = ExtDist::finite(0);
      std::vector<std::size_t> now = {s};
      for (std::int64_t k = 1; !now.empty(); ++k) {
        std::vector<std::size_t> next;
        for (auto x : now) {
          for (std::size_t a = 0; a < n; ++a) {
            auto y = t[x][a];
            if (d[s][y].is_infinite()) {
              d[s][y] = ExtDist::finite(k);
              next.push_back(y);
            }
          }
        }
        now = std::move(next);
      }
    }
    FiniteSemimetricSpace x(names, d);
    c.lambda = quasi_metricity_constant(x, Rational(0));
    if (c.right_simple) {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          auto const& dist = d[t[b][a]][a];
          if (dist.is_finite()) {
            c.bound = std::max(c.bound, dist.value());
          }
        }
      }
    }
    return c;
  }

}  // namespace semigeo::test_support
